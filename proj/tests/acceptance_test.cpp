// Acceptance suite: runs the project's acceptance checks at fixed tolerances
// and prints one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "gaussact/capacity.hpp"
#include "gaussact/channels.hpp"
#include "gaussact/dilation.hpp"
#include "gaussact/experiments.hpp"
#include "gaussact/records_io.hpp"
#include "test_util.hpp"

using namespace gaussact;
namespace gt = gaussact::test;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << '\n';
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_binary(const std::string& args, int& code) {
    const std::string cmd = std::string(GAUSSACT_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        code = -1;
        return out;
    }
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

double parse_field(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + ": ");
    if (pos == std::string::npos) return std::numeric_limits<double>::quiet_NaN();
    return std::strtod(text.c_str() + pos + key.size() + 2, nullptr);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- criterion 1: CLI point evaluation lands in the asymptote window ----
void criterion_1() {
    const auto t0 = Clock::now();
    int code = 0;
    const std::string out = run_binary("eval --T 0.51 --nbar 20", code);
    const double secs = seconds_since(t0);
    const double gap = parse_field(out, "gap_bits");
    const bool in_window = gap >= 0.02 && gap <= 0.04;
    const bool pass = code == 0 && in_window && secs < 5.0;
    std::string detail = "gap = " + fmt(gap) + " bits, window [0.02, 0.04], " + fmt(secs) + " s";
    if (!in_window) {
        detail += "; family maximum at nbar = 20 sits below the window (the"
                  " asymptotic value ~0.03 is only approached for nbar >~ 100)";
    }
    report(1, pass, "eval --T 0.51 --nbar 20 gap in [0.02, 0.04] bits, < 5 s", detail);
}

// ---- criterion 2: activation threshold near T ~ 0.52 ----
void criterion_2() {
    const auto t0 = Clock::now();
    const ThresholdResult res = find_threshold(0.0, 10.0);
    const double secs = seconds_since(t0);
    const bool pass = res.T_star >= 0.505 && res.T_star <= 0.53 && secs < 30.0;
    report(2, pass, "threshold at nbar = 10 lies in [0.505, 0.53], < 30 s",
           "T* = " + fmt(res.T_star) + ", " + fmt(secs) + " s");
}

// ---- criterion 3: superactivation at T = 0.5 ----
void criterion_3() {
    const OptimizeResult opt = optimize_input(ChannelKind::Lossy, 0.5, 0.0, 20.0);
    const bool pass = opt.info.i_c > 1e-3;
    report(3, pass, "optimized combined I_c > 1e-3 bits at T = 0.5",
           "I_c = " + fmt(opt.info.i_c) + " bits");
}

// ---- criterion 4: attenuator gap ordering on the default grid ----
void criterion_4() {
    SweepSpec lossy;
    lossy.kind = ChannelKind::Lossy;
    lossy.T_grid = {0.51};
    lossy.nbar_grid = SweepSpec::defaults(ChannelKind::Lossy).nbar_grid;

    SweepSpec ta = lossy;
    ta.kind = ChannelKind::ThermalAttenuator;
    ta.Nbar = 0.01;

    const auto lossy_rows = run_sweep(lossy);
    const auto ta_rows = run_sweep(ta);
    int compared = 0, violations = 0;
    double worst = 0.0, worst_nbar = 0.0;
    for (std::size_t i = 0; i < lossy_rows.size(); ++i) {
        if (lossy_rows[i].nbar_in < 1.0) continue;
        ++compared;
        const double margin = ta_rows[i].gap_bits - lossy_rows[i].gap_bits;
        if (!(margin > 0.0)) {
            ++violations;
            if (margin < worst) {
                worst = margin;
                worst_nbar = lossy_rows[i].nbar_in;
            }
        }
    }
    const bool pass = compared > 0 && violations == 0;
    std::string detail = std::to_string(violations) + "/" + std::to_string(compared) +
                         " points violate the ordering";
    if (violations > 0) {
        detail += "; worst margin " + fmt(worst) + " bits at nbar = " + fmt(worst_nbar) +
                  "; with the purified (Stinespring) environment the attenuator gap stays below"
                  " the lossy gap everywhere, so the reference ordering is not reproduced";
    }
    report(4, pass, "TA gap (vs bound) exceeds lossy gap (vs capacity) at T = 0.51 for nbar >= 1", detail);
}

// ---- criterion 5: closed-form coherent-information oracle ----
void criterion_5() {
    double worst = 0.0;
    for (double T : {0.3, 0.5, 0.7}) {
        const Dilation<double> d = dilate(make_lossy(T));
        for (double nb : {0.5, 1.0, 5.0}) {
            const double pipeline = coherent_information(d, thermal_state(nb)).i_c;
            const double closed = entropy_g(2 * T * nb + 1) - entropy_g(2 * (1 - T) * nb + 1);
            worst = std::max(worst, std::abs(pipeline - closed));
        }
    }
    report(5, worst < 1e-7, "lossy-on-thermal pipeline matches the closed form within 1e-7 bits",
           "max |diff| = " + fmt(worst) + " bits");
}

// ---- criterion 6: entropy against the truncated-Fock oracle ----
void criterion_6() {
    double worst = 0.0;
    for (double nb : {0.3, 1.7, 5.0}) {
        const double viag = gaussian_entropy(thermal_state(nb));
        const double fock = gt::fock_thermal_entropy_bits(nb, 200);
        worst = std::max(worst, std::abs(viag - fock));
    }
    report(6, worst < 1e-6, "Gaussian entropy matches the dim-200 Fock thermal oracle within 1e-6 bits",
           "max |diff| = " + fmt(worst) + " bits");
}

// ---- criterion 7: dilation residuals and dilation-independence of H(E) ----
void criterion_7() {
    gt::Rng rng(20240817);
    double worst_symp = 0.0, worst_rec = 0.0;
    const std::vector<GaussianChannel<double>> named = {
        make_identity<double>(1), make_lossy(0.3),  make_lossy(0.5),
        make_lossy(0.51),         make_lossy(0.97), make_thermal_attenuator(0.51, 0.01),
        make_thermal_attenuator(0.7, 1.2),          make_ssy_ppt<double>()};
    for (const auto& ch : named) {
        const Dilation<double> d = dilate(ch);
        worst_symp = std::max(worst_symp, d.S.residual());
        for (int trial = 0; trial < 50; ++trial) {
            const CovarianceMatrixd g = gt::random_physical_state(ch.in_modes, rng);
            const Mat<double> direct = ch.X * g.data * ch.X.transpose() + ch.Y;
            worst_rec = std::max(worst_rec,
                                 (joint_output(d, g).out_block.data - direct).lpNorm<Eigen::Infinity>());
        }
    }

    // two structurally distinct dilations of the combined channels
    double worst_henv = 0.0;
    for (auto [kind, Nbar] : {std::pair{ChannelKind::Lossy, 0.0},
                              std::pair{ChannelKind::ThermalAttenuator, 0.01}}) {
        const GaussianChannel<double> arm =
            kind == ChannelKind::Lossy ? make_lossy(0.51) : make_thermal_attenuator(0.51, Nbar);
        const Dilation<double> factored = tensor_dilation(dilate(make_ssy_ppt<double>()), dilate(arm));
        const Dilation<double> monolithic = dilate(tensor(make_ssy_ppt<double>(), arm));
        for (double nb : {0.5, 5.0, 20.0}) {
            const double x = diagonal_x(nb);
            const CovarianceMatrixd g = gamma_in<double>(x, x);
            const double ha = complementary_entropy(factored, g);
            const double hb = complementary_entropy(monolithic, g);
            worst_henv = std::max(worst_henv, std::abs(ha - hb));
        }
        for (int trial = 0; trial < 5; ++trial) {
            const CovarianceMatrixd g = gt::random_physical_state(3, rng);
            worst_henv = std::max(worst_henv, std::abs(complementary_entropy(factored, g) -
                                                       complementary_entropy(monolithic, g)));
        }
    }
    const bool pass = worst_symp < 1e-9 && worst_rec < 1e-8 && worst_henv < 1e-7;
    report(7, pass, "dilations: S J S^t < 1e-9, reconstruction < 1e-8, H(E) agreement < 1e-7",
           "residuals " + fmt(worst_symp) + " / " + fmt(worst_rec) + " / " + fmt(worst_henv));
}

// ---- criterion 8: the attenuator at Nbar = 0 is the lossy channel ----
void criterion_8() {
    double worst = 0.0;
    for (double T : {0.5, 0.51, 0.55, 0.7, 0.9, 0.99}) {
        const auto lossy = make_lossy(T);
        const auto ta = make_thermal_attenuator(T, 0.0);
        worst = std::max(worst, (lossy.X - ta.X).lpNorm<Eigen::Infinity>());
        worst = std::max(worst, (lossy.Y - ta.Y).lpNorm<Eigen::Infinity>());
        worst = std::max(worst, std::abs(lossy_capacity(T).value - ta_capacity_upper_bound(T, 0.0).value));
    }
    const bool inf_match = lossy_capacity(1.0).is_infinite() && ta_capacity_upper_bound(1.0, 0.0).is_infinite();

    SweepSpec spec;
    spec.kind = ChannelKind::Lossy;
    spec.T_grid = SweepSpec::defaults(ChannelKind::Lossy).T_grid;
    spec.nbar_grid = SweepSpec::defaults(ChannelKind::Lossy).nbar_grid;
    SweepSpec ta_spec = spec;
    ta_spec.kind = ChannelKind::ThermalAttenuator;
    ta_spec.Nbar = 0.0;
    const auto a = run_sweep(spec);
    const auto b = run_sweep(ta_spec);
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i].ic_bits - b[i].ic_bits));
        worst = std::max(worst, std::abs(a[i].capacity_bits - b[i].capacity_bits));
        worst = std::max(worst, std::abs(a[i].gap_bits - b[i].gap_bits));
    }
    report(8, worst < 1e-9 && inf_match,
           "thermal attenuator at Nbar = 0 equals the lossy channel within 1e-9",
           "max |diff| = " + fmt(worst));
}

// ---- criterion 9: qualitative activation structure on the default grid ----
void criterion_9() {
    const SweepSpec spec = SweepSpec::defaults(ChannelKind::Lossy);
    const auto rows = run_sweep(spec);
    const std::size_t nt = spec.T_grid.size(), nn = spec.nbar_grid.size();
    int violations = 0;
    for (std::size_t in = 0; in < nn; ++in) {
        for (std::size_t it = 0; it + 1 < nt; ++it) {
            if (rows[it * nn + in].gap_bits < rows[(it + 1) * nn + in].gap_bits - 1e-9) ++violations;
        }
    }
    for (std::size_t it = 0; it < nt; ++it) {
        for (std::size_t in = 0; in + 1 < nn; ++in) {
            if (rows[it * nn + in].gap_bits > rows[it * nn + in + 1].gap_bits + 1e-9) ++violations;
        }
    }
    report(9, violations == 0,
           "default-grid gap is nonincreasing in T and nondecreasing in nbar",
           std::to_string(violations) + " monotonicity violations");
}

} // namespace

int main() {
    std::cout << "gaussact acceptance suite\n";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0) {
        std::cout << "all criteria passed\n";
    } else {
        std::cout << failures << " criterion(s) failed\n";
    }
    return failures;
}
