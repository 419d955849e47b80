#include "gaussact/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace gaussact {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError("config: key '" + key + "' expects a finite number, got '" + value + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != std::floor(v)) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("config: key '" + key + "' has an empty list element");
        out.push_back(to_double(key, item));
    }
    if (out.empty()) throw ConfigError("config: key '" + key + "' expects a comma-separated list");
    return out;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
        throw ConfigError("config: nbar grid requires 0 < nbar_min <= nbar_max and nbar_count >= 1");
    }
    std::vector<double> grid;
    if (count == 1) {
        grid.push_back(lo);
        return grid;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        grid.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(count - 1)));
    }
    return grid;
}

} // namespace

ChannelKind channel_kind_from_string(const std::string& s) {
    if (s == "lossy") return ChannelKind::Lossy;
    if (s == "thermal-attenuator") return ChannelKind::ThermalAttenuator;
    if (s == "ssy-ppt") return ChannelKind::SsyPpt;
    if (s == "identity") return ChannelKind::Identity;
    if (s == "custom") return ChannelKind::Custom;
    throw ConfigError("config: unknown channel '" + s + "'");
}

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("config: unknown format '" + s + "', expected csv or json");
}

RunConfig parse_config(std::istream& is) {
    RunConfig cfg;
    bool have_nbar_grid = false;
    double nbar_min = 0.1, nbar_max = 20.0;
    int nbar_count = 50;
    bool have_range = false;

    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }

        if (key == "channel") {
            const ChannelKind k = channel_kind_from_string(value);
            if (k != ChannelKind::Lossy && k != ChannelKind::ThermalAttenuator) {
                throw ConfigError("config: sweep channel must be lossy or thermal-attenuator");
            }
            cfg.sweep.kind = k;
        } else if (key == "Nbar") {
            cfg.sweep.Nbar = to_double(key, value);
        } else if (key == "T_grid") {
            cfg.sweep.T_grid = to_list(key, value);
        } else if (key == "nbar_grid") {
            cfg.sweep.nbar_grid = to_list(key, value);
            have_nbar_grid = true;
        } else if (key == "nbar_min") {
            nbar_min = to_double(key, value);
            have_range = true;
        } else if (key == "nbar_max") {
            nbar_max = to_double(key, value);
            have_range = true;
        } else if (key == "nbar_count") {
            nbar_count = to_int(key, value);
            have_range = true;
        } else if (key == "input") {
            if (value == "optimized") {
                cfg.sweep.input = InputChoice::Optimized;
            } else if (value == "diagonal") {
                cfg.sweep.input = InputChoice::Diagonal;
            } else {
                throw ConfigError("config: input must be optimized or diagonal");
            }
        } else if (key == "coarse_points") {
            cfg.sweep.optimizer.coarse_points = to_int(key, value);
        } else if (key == "golden_tol_bits") {
            cfg.sweep.optimizer.golden_tol_bits = to_double(key, value);
        } else if (key == "format") {
            cfg.format = output_format_from_string(value);
        } else if (key == "out") {
            cfg.out = value;
        } else {
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (have_nbar_grid && have_range) {
        throw ConfigError("config: give either nbar_grid or nbar_min/nbar_max/nbar_count, not both");
    }
    if (have_range) {
        cfg.sweep.nbar_grid = log_grid(nbar_min, nbar_max, nbar_count);
    }
    // lossy sweeps ride on the attenuator's Nbar = 0 reduction
    if (cfg.sweep.kind == ChannelKind::Lossy && cfg.sweep.Nbar != 0.0) {
        throw ConfigError("config: channel lossy requires Nbar = 0");
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    return parse_config(f);
}

} // namespace gaussact
