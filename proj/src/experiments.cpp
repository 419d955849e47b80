#include "gaussact/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "gaussact/dilation.hpp"

namespace gaussact {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Dilation<double> combined_dilation(ChannelKind kind, double T, double Nbar, const Tolerances& tol) {
    GaussianChannel<double> arm;
    switch (kind) {
        case ChannelKind::Lossy:
            if (Nbar != 0.0) throw DomainError("optimize_input: lossy channel has Nbar = 0");
            arm = make_lossy(T);
            break;
        case ChannelKind::ThermalAttenuator:
            arm = make_thermal_attenuator(T, Nbar);
            break;
        default:
            throw DomainError("optimize_input: attenuator kind must be lossy or thermal-attenuator");
    }
    return tensor_dilation(dilate(make_ssy_ppt<double>(), tol), dilate(arm, tol));
}

double ic_at(const Dilation<double>& d, double x, double y, const Tolerances& tol) {
    return coherent_information(d, CovarianceMatrixd(gamma_in<double>(x, y).data), tol).i_c;
}

struct BestPoint {
    double value = -std::numeric_limits<double>::infinity();
    InputParams params;
};

// I_c maximized over the y branches reachable at this x (the canonical root
// and its reciprocal mirror); -inf if the constraint has no solution here.
BestPoint branch_max(const Dilation<double>& d, double x, double nbar_target, const Tolerances& tol) {
    BestPoint best;
    std::vector<double> roots;
    try {
        roots = solve_y(x, nbar_target);
    } catch (const NoSolution&) {
        return best;
    }
    for (double y0 : roots) {
        const double mirror = 1.0 / y0;
        for (double y : {y0, mirror}) {
            const double v = ic_at(d, x, y, tol);
            if (v > best.value) best = {v, {x, y}};
            if (y0 == mirror) break;
        }
    }
    return best;
}

OptimizeResult finish(const Dilation<double>& d, const BestPoint& best, const Tolerances& tol) {
    OptimizeResult res;
    res.params = best.params;
    res.info = coherent_information(d, gamma_in(best.params), tol);
    return res;
}

OptimizeResult optimize_with(const Dilation<double>& d, double nbar_target,
                             const OptimizerSettings& settings, const Tolerances& tol) {
    if (!(nbar_target >= 0.0)) throw DomainError("optimize_input: nbar must be >= 0");
    if (nbar_target == 0.0) {
        // single feasible point x = y = 1
        return finish(d, {ic_at(d, 1.0, 1.0, tol), {1.0, 1.0}}, tol);
    }

    const int np = std::max(settings.coarse_points, 2);
    const double xm = x_max(nbar_target) * (1.0 - 1e-12);
    const double lxm = std::log(xm);
    std::vector<double> xs(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
        xs[static_cast<std::size_t>(i)] = std::exp(lxm * static_cast<double>(i) / static_cast<double>(np - 1));
    }

    BestPoint best;
    int best_idx = -1;
    for (int i = 0; i < np; ++i) {
        BestPoint cand = branch_max(d, xs[static_cast<std::size_t>(i)], nbar_target, tol);
        if (cand.value > best.value) {
            best = cand;
            best_idx = i;
        }
    }
    if (best_idx < 0) throw NoFeasiblePoint("optimize_input: no feasible (x, y) for the requested nbar");

    // golden-section refinement between the coarse neighbors of the best point
    double a = xs[static_cast<std::size_t>(std::max(best_idx - 1, 0))];
    double b = xs[static_cast<std::size_t>(std::min(best_idx + 1, np - 1))];
    if (b > a) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        auto probe = [&](double x) {
            BestPoint p = branch_max(d, x, nbar_target, tol);
            if (p.value > best.value) best = p;
            return p;
        };
        double c = b - gr * (b - a);
        double e = a + gr * (b - a);
        BestPoint fc = probe(c);
        BestPoint fe = probe(e);
        for (int it = 0; it < settings.max_golden_iters; ++it) {
            if (std::abs(fc.value - fe.value) <= settings.golden_tol_bits) break;
            if (fc.value > fe.value) {
                b = e;
                e = c;
                fe = fc;
                c = b - gr * (b - a);
                fc = probe(c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + gr * (b - a);
                fe = probe(e);
            }
        }
    }
    return finish(d, best, tol);
}

unsigned thread_budget(std::size_t points) {
    unsigned n = 0;
    if (const char* env = std::getenv("GAUSSACT_THREADS")) {
        n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(points, 1)));
}

} // namespace

SweepSpec SweepSpec::defaults(ChannelKind kind) {
    SweepSpec spec;
    spec.kind = kind;
    spec.Nbar = kind == ChannelKind::ThermalAttenuator ? 0.01 : 0.0;
    for (int i = 0; i <= 5; ++i) spec.T_grid.push_back(0.50 + 0.01 * i);
    const double lo = std::log(0.1), hi = std::log(20.0);
    for (int i = 0; i < 50; ++i) {
        spec.nbar_grid.push_back(std::exp(lo + (hi - lo) * static_cast<double>(i) / 49.0));
    }
    return spec;
}

CapacityValue<double> arm_capacity(ChannelKind kind, double T, double Nbar) {
    switch (kind) {
        case ChannelKind::Lossy:
            return lossy_capacity(T);
        case ChannelKind::ThermalAttenuator:
            return ta_capacity_upper_bound(T, Nbar);
        default:
            throw DomainError("arm_capacity: kind must be lossy or thermal-attenuator");
    }
}

OptimizeResult optimize_input(ChannelKind kind, double T, double Nbar, double nbar_target,
                              const OptimizerSettings& settings, const Tolerances& tol) {
    return optimize_with(combined_dilation(kind, T, Nbar, tol), nbar_target, settings, tol);
}

ActivationRecord evaluate_point(ChannelKind kind, double T, double Nbar, const InputParams& p,
                                const Tolerances& tol) {
    ActivationRecord rec;
    rec.T = T;
    rec.Nbar_env = Nbar;
    rec.x = p.x;
    rec.y = p.y;
    rec.nbar_in = nbar(p);
    const Dilation<double> d = combined_dilation(kind, T, Nbar, tol);
    const CoherentInfoResult<double> info = coherent_information(d, gamma_in(p), tol);
    const CapacityValue<double> cap = arm_capacity(kind, T, Nbar);
    rec.ic_bits = info.i_c;
    rec.capacity_bits = cap.value;
    rec.capacity_kind = cap.kind;
    rec.gap_bits = activation_gap(info.i_c, cap);
    return rec;
}

std::vector<ActivationRecord> run_sweep(const SweepSpec& spec, const Tolerances& tol) {
    if (spec.T_grid.empty() || spec.nbar_grid.empty()) {
        throw DomainError("run_sweep: T and nbar grids must be nonempty");
    }
    for (double T : spec.T_grid) {
        if (!(T >= 0.0 && T <= 1.0)) throw DomainError("run_sweep: T grid values must lie in [0, 1]");
    }
    for (double nb : spec.nbar_grid) {
        if (!(nb >= 0.0)) throw DomainError("run_sweep: nbar grid values must be >= 0");
    }
    if (!(spec.Nbar >= 0.0)) throw DomainError("run_sweep: Nbar must be >= 0");

    const std::size_t nt = spec.T_grid.size(), nn = spec.nbar_grid.size();

    // one dilation per T row, shared read-only by the workers
    std::vector<Dilation<double>> dilations;
    dilations.reserve(nt);
    for (double T : spec.T_grid) dilations.push_back(combined_dilation(spec.kind, T, spec.Nbar, tol));

    std::vector<ActivationRecord> records(nt * nn);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= records.size()) break;
            const std::size_t it = idx / nn, in = idx % nn;
            const double T = spec.T_grid[it];
            const double nb = spec.nbar_grid[in];
            ActivationRecord rec;
            rec.T = T;
            rec.Nbar_env = spec.Nbar;
            rec.nbar_in = nb;
            try {
                OptimizeResult opt;
                if (spec.input == InputChoice::Diagonal) {
                    const double xd = diagonal_x(nb);
                    opt.params = {xd, xd};
                    opt.info = coherent_information(dilations[it], gamma_in(opt.params), tol);
                } else {
                    opt = optimize_with(dilations[it], nb, spec.optimizer, tol);
                }
                const CapacityValue<double> cap = arm_capacity(spec.kind, T, spec.Nbar);
                rec.x = opt.params.x;
                rec.y = opt.params.y;
                rec.nbar_in = nbar(opt.params);
                rec.ic_bits = opt.info.i_c;
                rec.capacity_bits = cap.value;
                rec.capacity_kind = cap.kind;
                rec.gap_bits = activation_gap(opt.info.i_c, cap);
            } catch (const std::exception& e) {
                rec.x = rec.y = rec.ic_bits = rec.capacity_bits = rec.gap_bits = kNan;
                rec.error = e.what();
            }
            records[idx] = rec;
        }
    };

    const unsigned budget = thread_budget(records.size());
    if (budget <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(budget);
        for (unsigned i = 0; i < budget; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return records;
}

ThresholdResult find_threshold(double Nbar, double nbar_target,
                               const OptimizerSettings& settings, const Tolerances& tol) {
    if (!(nbar_target > 0.0)) throw DomainError("find_threshold: nbar must be > 0");
    if (!(Nbar >= 0.0)) throw DomainError("find_threshold: Nbar must be >= 0");
    const ChannelKind kind = Nbar > 0.0 ? ChannelKind::ThermalAttenuator : ChannelKind::Lossy;

    auto gap_at = [&](double T) {
        const OptimizeResult opt = optimize_input(kind, T, Nbar, nbar_target, settings, tol);
        return activation_gap(opt.info.i_c, arm_capacity(kind, T, Nbar));
    };

    constexpr double kTol = 1e-4;
    double lo = 0.5 + 1e-6;
    double hi = 0.6;
    double gap_lo = gap_at(lo);
    if (gap_lo <= 0.0) {
        throw NoActivation("find_threshold: gap is nonpositive already at T = 0.5 + 1e-6");
    }
    double gap_hi = gap_at(hi);
    if (gap_hi > 0.0) {
        return {hi, gap_hi, gap_hi};  // positive on the whole search window
    }
    while (hi - lo > kTol) {
        const double mid = (lo + hi) / 2.0;
        const double g = gap_at(mid);
        if (g > 0.0) {
            lo = mid;
            gap_lo = g;
        } else {
            hi = mid;
        }
    }
    ThresholdResult res;
    res.T_star = lo;
    res.gap_at_T_star = gap_lo;
    res.gap_above = gap_at(std::min(lo + 2.0 * kTol, 0.6));
    return res;
}

} // namespace gaussact
