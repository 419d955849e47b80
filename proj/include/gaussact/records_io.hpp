// records_io.hpp — Deterministic CSV / JSON emission of sweep records, plus
// the CSV reader used for round-trip checks. Numbers are rendered with 17
// significant digits so parsing an emitted file reproduces the doubles
// exactly; no timestamps are ever written.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gaussact/experiments.hpp"

namespace gaussact {

inline constexpr const char* kRecordCsvHeader =
    "T,Nbar_env,nbar_in,x,y,Ic_bits,capacity_bits,capacity_kind,gap_bits";

// Full-precision rendering: 17 significant digits, "inf"/"nan" for
// non-finite values.
std::string format_double(double v);

// stamp, when given, is written as a leading "# <stamp>" comment line.
void write_records_csv(std::ostream& os, const std::vector<ActivationRecord>& records,
                       const std::optional<std::string>& stamp = std::nullopt);

void write_records_json(std::ostream& os, const std::vector<ActivationRecord>& records);

// Strict reader for the schema above; throws DomainError on malformed input.
std::vector<ActivationRecord> read_records_csv(std::istream& is);

} // namespace gaussact
