// config.hpp — Flat key=value sweep configuration: '#' comments, one
// assignment per line, unknown keys rejected. Command-line flags override
// file values.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gaussact/experiments.hpp"

namespace gaussact {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    SweepSpec sweep = SweepSpec::defaults(ChannelKind::Lossy);
    OutputFormat format = OutputFormat::Csv;
    std::string out;  // empty = stdout
};

// Recognized keys: channel, Nbar, T_grid, nbar_grid, nbar_min, nbar_max,
// nbar_count, input, coarse_points, golden_tol_bits, format, out.
RunConfig parse_config(std::istream& is);
RunConfig load_config_file(const std::string& path);

ChannelKind channel_kind_from_string(const std::string& s);
OutputFormat output_format_from_string(const std::string& s);

} // namespace gaussact
