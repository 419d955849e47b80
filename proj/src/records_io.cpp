#include "gaussact/records_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gaussact/errors.hpp"

namespace gaussact {

namespace {

CapacityKind kind_from_string(const std::string& s) {
    if (s == "exact") return CapacityKind::Exact;
    if (s == "upper_bound") return CapacityKind::UpperBound;
    if (s == "lower_bound") return CapacityKind::LowerBound;
    throw DomainError("read_records_csv: unknown capacity kind '" + s + "'");
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw DomainError("read_records_csv: malformed number '" + s + "'");
    }
    return v;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // fold away negative zero
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_records_csv(std::ostream& os, const std::vector<ActivationRecord>& records,
                       const std::optional<std::string>& stamp) {
    if (stamp) os << "# " << *stamp << "\n";
    os << kRecordCsvHeader << "\n";
    for (const ActivationRecord& r : records) {
        os << format_double(r.T) << ',' << format_double(r.Nbar_env) << ',' << format_double(r.nbar_in)
           << ',' << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.ic_bits)
           << ',' << format_double(r.capacity_bits) << ',' << to_string(r.capacity_kind) << ','
           << format_double(r.gap_bits) << "\n";
    }
}

void write_records_json(std::ostream& os, const std::vector<ActivationRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ActivationRecord& r : records) {
        nlohmann::json row;
        row["T"] = r.T;
        row["Nbar_env"] = r.Nbar_env;
        row["nbar_in"] = r.nbar_in;
        row["x"] = r.x;
        row["y"] = r.y;
        row["Ic_bits"] = r.ic_bits;
        row["capacity_bits"] = r.capacity_bits;
        row["capacity_kind"] = to_string(r.capacity_kind);
        row["gap_bits"] = r.gap_bits;
        arr.push_back(std::move(row));
    }
    os << arr.dump(2) << "\n";
}

std::vector<ActivationRecord> read_records_csv(std::istream& is) {
    std::vector<ActivationRecord> records;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kRecordCsvHeader) {
                throw DomainError("read_records_csv: unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 9) {
            throw DomainError("read_records_csv: expected 9 fields, got " + std::to_string(fields.size()));
        }
        ActivationRecord r;
        r.T = parse_double(fields[0]);
        r.Nbar_env = parse_double(fields[1]);
        r.nbar_in = parse_double(fields[2]);
        r.x = parse_double(fields[3]);
        r.y = parse_double(fields[4]);
        r.ic_bits = parse_double(fields[5]);
        r.capacity_bits = parse_double(fields[6]);
        r.capacity_kind = kind_from_string(fields[7]);
        r.gap_bits = parse_double(fields[8]);
        records.push_back(r);
    }
    if (!header_seen) throw DomainError("read_records_csv: missing header line");
    return records;
}

} // namespace gaussact
