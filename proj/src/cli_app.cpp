#include "gaussact/cli_app.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaussact/capacity.hpp"
#include "gaussact/channels.hpp"
#include "gaussact/config.hpp"
#include "gaussact/dilation.hpp"
#include "gaussact/errors.hpp"
#include "gaussact/experiments.hpp"
#include "gaussact/records_io.hpp"
#include "gaussact/version.hpp"

namespace gaussact::cli {

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct ChannelArgs {
    std::string channel = "lossy";
    double T = 0.5;
    double Nbar = 0.0;
    int n_modes = 1;
    std::string file;
};

void add_channel_options(CLI::App* cmd, ChannelArgs& args) {
    cmd->add_option("--channel", args.channel,
                    "Channel: lossy | thermal-attenuator | ssy-ppt | identity | custom")
        ->required();
    cmd->add_option("--T", args.T, "Transmissivity (lossy / thermal-attenuator)");
    cmd->add_option("--N", args.Nbar, "Attenuator thermal photon number Nbar");
    cmd->add_option("--n-modes", args.n_modes, "Mode count (identity)");
    cmd->add_option("--file", args.file, "JSON file with X and Y matrices (custom)");
}

Mat<double> matrix_from_json(const nlohmann::json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) throw ConfigError("custom channel: '" + name + "' must be a 2D array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat<double> m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ConfigError("custom channel: '" + name + "' rows have inconsistent lengths");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw ConfigError("custom channel: '" + name + "' holds a non-number");
            m(static_cast<Index>(r), static_cast<Index>(c)) = j[r][c].get<double>();
        }
    }
    return m;
}

GaussianChannel<double> load_custom_channel(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("custom channel: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("custom channel: invalid JSON: ") + e.what());
    }
    if (!j.contains("X") || !j.contains("Y")) {
        throw ConfigError("custom channel: JSON must contain 'X' and 'Y'");
    }
    return GaussianChannel<double>(matrix_from_json(j["X"], "X"), matrix_from_json(j["Y"], "Y"),
                                   ChannelKind::Custom);
}

GaussianChannel<double> build_channel(const ChannelArgs& args) {
    const ChannelKind kind = channel_kind_from_string(args.channel);
    switch (kind) {
        case ChannelKind::Lossy: return make_lossy(args.T);
        case ChannelKind::ThermalAttenuator: return make_thermal_attenuator(args.T, args.Nbar);
        case ChannelKind::SsyPpt: return make_ssy_ppt<double>();
        case ChannelKind::Identity:
            if (args.n_modes < 1) throw DomainError("identity channel needs --n-modes >= 1");
            return make_identity<double>(args.n_modes);
        case ChannelKind::Custom:
            if (args.file.empty()) throw ConfigError("custom channel needs --file");
            return load_custom_channel(args.file);
    }
    throw ConfigError("unknown channel kind");
}

std::string describe(const GaussianChannel<double>& ch) {
    std::ostringstream os;
    os << to_string(ch.kind);
    if (ch.kind == ChannelKind::Lossy) {
        os << " (T=" << format_double(ch.transmissivity) << ")";
    } else if (ch.kind == ChannelKind::ThermalAttenuator) {
        os << " (T=" << format_double(ch.transmissivity) << ", Nbar=" << format_double(ch.env_nbar) << ")";
    }
    return os.str();
}

void print_matrix(std::ostream& os, const Mat<double>& m) {
    for (Index r = 0; r < m.rows(); ++r) {
        os << "  ";
        for (Index c = 0; c < m.cols(); ++c) {
            os << format_double(m(r, c));
            if (c + 1 < m.cols()) os << ' ';
        }
        os << '\n';
    }
    if (m.rows() == 0) os << "  (empty)\n";
}

void print_record(std::ostream& os, const ActivationRecord& rec) {
    os << "T: " << format_double(rec.T) << '\n'
       << "Nbar_env: " << format_double(rec.Nbar_env) << '\n'
       << "nbar_in: " << format_double(rec.nbar_in) << '\n'
       << "x: " << format_double(rec.x) << '\n'
       << "y: " << format_double(rec.y) << '\n'
       << "Ic_bits: " << format_double(rec.ic_bits) << '\n'
       << "capacity_bits: " << format_double(rec.capacity_bits) << '\n'
       << "capacity_kind: " << to_string(rec.capacity_kind) << '\n'
       << "gap_bits: " << format_double(rec.gap_bits) << '\n';
}

// Deterministic non-trivial physical states: Williamson spectra conjugated by
// stacked squeezers and beam splitters.
std::vector<CovarianceMatrixd> probe_states(Index n_modes) {
    std::vector<CovarianceMatrixd> states;
    for (int j = 0; j < 10; ++j) {
        Mat<double> sym = Mat<double>::Identity(2 * n_modes, 2 * n_modes);
        for (Index i = 0; i < n_modes; ++i) {
            const double s = 0.1 + 0.07 * static_cast<double>((i + j) % 5);
            Mat<double> sq = Mat<double>::Identity(2 * n_modes, 2 * n_modes);
            sq(2 * i, 2 * i) = std::exp(s);
            sq(2 * i + 1, 2 * i + 1) = std::exp(-s);
            sym = sq * sym;
        }
        for (Index i = 0; i + 1 < n_modes; ++i) {
            const double t = 0.3 + 0.05 * static_cast<double>((j + static_cast<int>(i)) % 7);
            Mat<double> bs = Mat<double>::Identity(2 * n_modes, 2 * n_modes);
            const double st = std::sqrt(t), ct = std::sqrt(1.0 - t);
            bs.block(2 * i, 2 * i, 2, 2) = st * Mat<double>::Identity(2, 2);
            bs.block(2 * i, 2 * i + 2, 2, 2) = ct * Mat<double>::Identity(2, 2);
            bs.block(2 * i + 2, 2 * i, 2, 2) = -ct * Mat<double>::Identity(2, 2);
            bs.block(2 * i + 2, 2 * i + 2, 2, 2) = st * Mat<double>::Identity(2, 2);
            sym = bs * sym;
        }
        Mat<double> d = Mat<double>::Zero(2 * n_modes, 2 * n_modes);
        for (Index i = 0; i < n_modes; ++i) {
            const double lam = 1.0 + 0.4 * static_cast<double>((static_cast<int>(i) + 2 * j) % 4);
            d(2 * i, 2 * i) = d(2 * i + 1, 2 * i + 1) = lam;
        }
        states.emplace_back((sym * d * sym.transpose()).eval());
    }
    return states;
}

int cmd_validate(const ChannelArgs& args, std::ostream& out) {
    const GaussianChannel<double> ch = build_channel(args);
    const ValidationReport<double> rep = validate(ch);
    out << "channel: " << describe(ch) << '\n';
    out << "CP_valid: " << (rep.valid ? "true" : "false") << '\n';
    out << "CP_min_eigenvalue: " << format_double(rep.min_eigenvalue) << '\n';
    if (ch.in_modes == ch.out_modes) {
        out << "PPT_channel: " << (is_ppt_channel(ch) ? "true" : "false") << '\n';
    } else {
        out << "PPT_channel: n/a (non-square channel)\n";
    }
    if (ch.kind == ChannelKind::ThermalAttenuator || ch.kind == ChannelKind::Lossy) {
        const bool eb = is_entanglement_breaking_ta(ch.transmissivity, ch.env_nbar);
        out << "entanglement_breaking: " << (eb ? "true" : "false") << '\n';
    }
    return rep.valid ? kOk : kDomain;
}

int cmd_dilate(const ChannelArgs& args, std::ostream& out) {
    const GaussianChannel<double> ch = build_channel(args);
    const Dilation<double> d = dilate(ch);
    out << "channel: " << describe(ch) << '\n';
    out << "env_modes: " << d.env_modes << '\n';
    out << "S:\n";
    print_matrix(out, d.S.data);
    out << "env_state:\n";
    print_matrix(out, d.env_state.data);

    const double symp_res = d.S.residual();
    double rec_res = 0.0;
    for (const CovarianceMatrixd& g : probe_states(ch.in_modes)) {
        const Mat<double> direct = ch.X * g.data * ch.X.transpose() + ch.Y;
        const Mat<double> via_s = joint_output(d, g).out_block.data;
        rec_res = std::max(rec_res, (direct - via_s).lpNorm<Eigen::Infinity>());
    }
    out << "symplectic_residual: " << format_double(symp_res) << '\n';
    out << "reconstruction_residual: " << format_double(rec_res) << '\n';
    return kOk;
}

struct EvalArgs {
    double T = 0.5;
    double Nbar = 0.0;
    std::optional<double> nbar_target;
    std::optional<double> x;
    std::optional<double> y;
};

int cmd_eval(const EvalArgs& args, std::ostream& out) {
    if (!(args.Nbar >= 0.0)) throw DomainError("eval: --N must be >= 0");
    const ChannelKind kind = args.Nbar > 0.0 ? ChannelKind::ThermalAttenuator : ChannelKind::Lossy;
    if (args.nbar_target && (args.x || args.y)) {
        throw ConfigError("eval: give either --nbar or --x/--y, not both");
    }
    ActivationRecord rec;
    if (args.nbar_target) {
        const OptimizeResult opt = optimize_input(kind, args.T, args.Nbar, *args.nbar_target);
        rec = evaluate_point(kind, args.T, args.Nbar, opt.params);
    } else if (args.x && args.y) {
        rec = evaluate_point(kind, args.T, args.Nbar, InputParams{*args.x, *args.y});
    } else {
        throw ConfigError("eval: need --nbar (optimizer) or both --x and --y");
    }
    print_record(out, rec);
    return kOk;
}

struct SweepArgs {
    std::string config_path;
    std::string channel;
    std::optional<double> Nbar;
    std::string T_grid;
    std::string nbar_grid;
    std::optional<double> nbar_min, nbar_max;
    std::optional<int> nbar_count;
    std::string input;
    std::string format;
    std::string out_path;
    bool stamp = false;
};

std::vector<double> parse_list_flag(const std::string& flag, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError(flag + ": malformed number '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError(flag + ": expected a comma-separated list");
    return out;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (!args.config_path.empty()) {
        cfg = load_config_file(args.config_path);
    }
    // flags win over file values
    if (!args.channel.empty()) {
        const ChannelKind k = channel_kind_from_string(args.channel);
        if (k != ChannelKind::Lossy && k != ChannelKind::ThermalAttenuator) {
            throw ConfigError("sweep: channel must be lossy or thermal-attenuator");
        }
        cfg.sweep.kind = k;
        if (k == ChannelKind::Lossy && !args.Nbar) cfg.sweep.Nbar = 0.0;
    }
    if (args.Nbar) cfg.sweep.Nbar = *args.Nbar;
    if (!args.T_grid.empty()) cfg.sweep.T_grid = parse_list_flag("--T-grid", args.T_grid);
    if (!args.nbar_grid.empty() && (args.nbar_min || args.nbar_max || args.nbar_count)) {
        throw ConfigError("sweep: give either --nbar-grid or the min/max/count flags, not both");
    }
    if (!args.nbar_grid.empty()) cfg.sweep.nbar_grid = parse_list_flag("--nbar-grid", args.nbar_grid);
    if (args.nbar_min || args.nbar_max || args.nbar_count) {
        const double lo = args.nbar_min.value_or(0.1);
        const double hi = args.nbar_max.value_or(20.0);
        const int count = args.nbar_count.value_or(50);
        if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
            throw ConfigError("sweep: need 0 < nbar-min <= nbar-max and nbar-count >= 1");
        }
        cfg.sweep.nbar_grid.clear();
        for (int i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            cfg.sweep.nbar_grid.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * f));
        }
    }
    if (!args.input.empty()) {
        if (args.input == "optimized") {
            cfg.sweep.input = InputChoice::Optimized;
        } else if (args.input == "diagonal") {
            cfg.sweep.input = InputChoice::Diagonal;
        } else {
            throw ConfigError("sweep: --input must be optimized or diagonal");
        }
    }
    if (!args.format.empty()) cfg.format = output_format_from_string(args.format);
    if (!args.out_path.empty()) cfg.out = args.out_path;
    if (cfg.sweep.kind == ChannelKind::Lossy && cfg.sweep.Nbar != 0.0) {
        throw ConfigError("sweep: channel lossy requires Nbar = 0");
    }

    const std::vector<ActivationRecord> records = run_sweep(cfg.sweep);
    for (const ActivationRecord& r : records) {
        if (!r.ok()) {
            err << "warning: point (T=" << format_double(r.T) << ", nbar=" << format_double(r.nbar_in)
                << ") failed: " << r.error << '\n';
        }
    }

    const std::optional<std::string> stamp =
        args.stamp ? std::optional<std::string>("gaussact " + std::string(kVersion)) : std::nullopt;
    auto emit = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::Csv) {
            write_records_csv(os, records, stamp);
        } else {
            write_records_json(os, records);
        }
    };
    if (cfg.out.empty()) {
        emit(out);
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "error: cannot open output file '" << cfg.out << "'\n";
            return kIo;
        }
        emit(f);
        if (!f.good()) {
            err << "error: write failed for '" << cfg.out << "'\n";
            return kIo;
        }
    }
    return kOk;
}

struct ThresholdArgs {
    double nbar_target = 1.0;
    double Nbar = 0.0;
};

int cmd_threshold(const ThresholdArgs& args, std::ostream& out) {
    const ThresholdResult res = find_threshold(args.Nbar, args.nbar_target);
    out << "T_star: " << format_double(res.T_star) << '\n';
    out << "gap_at_T_star: " << format_double(res.gap_at_T_star) << '\n';
    out << "gap_above: " << format_double(res.gap_above) << '\n';
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gaussian channel coherent-information and capacity-activation toolkit"};
    app.set_version_flag("--version", std::string("gaussact ") + kVersion);
    app.require_subcommand(1);

    ChannelArgs validate_args;
    CLI::App* validate_cmd = app.add_subcommand("validate", "Check CP validity and the PPT/EB predicates");
    add_channel_options(validate_cmd, validate_args);

    ChannelArgs dilate_args;
    CLI::App* dilate_cmd = app.add_subcommand("dilate", "Print the symplectic dilation and its residuals");
    add_channel_options(dilate_cmd, dilate_args);

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Coherent information of the combined channel at one point");
    eval_cmd->add_option("--T", eval_args.T, "Attenuator transmissivity")->required();
    eval_cmd->add_option("--N", eval_args.Nbar, "Attenuator thermal photon number (0 = lossy)");
    double nbar_flag = 0.0, x_flag = 0.0, y_flag = 0.0;
    CLI::Option* nbar_opt = eval_cmd->add_option("--nbar", nbar_flag, "Mode-A photon number (input optimized)");
    CLI::Option* x_opt = eval_cmd->add_option("--x", x_flag, "Squeezing parameter x (explicit input)");
    CLI::Option* y_opt = eval_cmd->add_option("--y", y_flag, "Squeezing parameter y (explicit input)");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Grid sweep over (T, nbar); emits CSV or JSON records");
    sweep_cmd->add_option("--config", sweep_args.config_path, "Flat key=value config file");
    sweep_cmd->add_option("--channel", sweep_args.channel, "lossy | thermal-attenuator");
    double sweep_nbar_env = 0.0;
    CLI::Option* sweep_nbar_opt = sweep_cmd->add_option("--Nbar", sweep_nbar_env, "Attenuator photon number");
    sweep_cmd->add_option("--T-grid", sweep_args.T_grid, "Comma-separated T values");
    sweep_cmd->add_option("--nbar-grid", sweep_args.nbar_grid, "Comma-separated nbar values");
    double nb_min = 0.0, nb_max = 0.0;
    int nb_count = 0;
    CLI::Option* nb_min_opt = sweep_cmd->add_option("--nbar-min", nb_min, "Log-grid lower end");
    CLI::Option* nb_max_opt = sweep_cmd->add_option("--nbar-max", nb_max, "Log-grid upper end");
    CLI::Option* nb_count_opt = sweep_cmd->add_option("--nbar-count", nb_count, "Log-grid point count");
    sweep_cmd->add_option("--input", sweep_args.input, "optimized | diagonal");
    sweep_cmd->add_option("--format", sweep_args.format, "csv | json");
    sweep_cmd->add_option("--out", sweep_args.out_path, "Output path (default stdout)");
    sweep_cmd->add_flag("--stamp", sweep_args.stamp, "Prefix CSV output with a version comment");

    ThresholdArgs threshold_args;
    CLI::App* threshold_cmd = app.add_subcommand("threshold", "Largest T in [0.5, 0.6] with positive gap");
    threshold_cmd->add_option("--nbar", threshold_args.nbar_target, "Mode-A photon number")->required();
    threshold_cmd->add_option("--N", threshold_args.Nbar, "Attenuator thermal photon number (0 = lossy)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(validate_args, out);
        if (*dilate_cmd) return cmd_dilate(dilate_args, out);
        if (*eval_cmd) {
            if (nbar_opt->count() > 0) eval_args.nbar_target = nbar_flag;
            if (x_opt->count() > 0) eval_args.x = x_flag;
            if (y_opt->count() > 0) eval_args.y = y_flag;
            return cmd_eval(eval_args, out);
        }
        if (*sweep_cmd) {
            if (sweep_nbar_opt->count() > 0) sweep_args.Nbar = sweep_nbar_env;
            if (nb_min_opt->count() > 0) sweep_args.nbar_min = nb_min;
            if (nb_max_opt->count() > 0) sweep_args.nbar_max = nb_max;
            if (nb_count_opt->count() > 0) sweep_args.nbar_count = nb_count;
            return cmd_sweep(sweep_args, out, err);
        }
        if (*threshold_cmd) return cmd_threshold(threshold_args, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NoActivation& e) {
        err << "no activation: " << e.what() << '\n';
        return kDomain;
    } catch (const InvalidChannel& e) {
        err << "invalid channel: " << e.what() << '\n';
        return kDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomain;
    }
    err << "error: no subcommand given\n";
    return kUsage;
}

} // namespace gaussact::cli
