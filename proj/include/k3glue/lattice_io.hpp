#pragma once

// Lattice files and report documents. Exact integers are written as decimal
// strings, rationals as "p/q"; parsing is strict and never coerces numbers.
//
//   {"rank": 2, "gram": [["2", "1"], ["1", "-2"]], "isometry": [["1", "1"], ["1", "2"]]}

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"
#include "k3glue/integer.hpp"
#include "k3glue/k3_certify.hpp"
#include "k3glue/lattice.hpp"
#include "k3glue/matrix.hpp"
#include "k3glue/salem_traces.hpp"

namespace k3glue {

using Json = nlohmann::ordered_json;

/// Malformed input document.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct LatticeFile {
    IntMatrix gram;
    std::optional<IntMatrix> isometry;
};

inline Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntMatrix matrix_from_json(const Json& j, std::size_t n, const std::string& field) {
    if (!j.is_array() || j.size() != n) throw ParseError("'" + field + "' must be an array of " + std::to_string(n) + " rows");
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        const Json& row = j[r];
        if (!row.is_array() || row.size() != n)
            throw ParseError("'" + field + "' row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) {
            if (!row[c].is_string())
                throw ParseError("'" + field + "' entries must be decimal strings (row " + std::to_string(r) + ")");
            try {
                m(r, c) = parse_integer(row[c].get<std::string>());
            } catch (const std::exception& e) {
                throw ParseError("'" + field + "' entry (" + std::to_string(r) + ", " + std::to_string(c) + "): " + e.what());
            }
        }
    }
    return m;
}

inline Json lattice_file_to_json(const LatticeFile& f) {
    Json j;
    j["rank"] = f.gram.rows();
    j["gram"] = matrix_to_json(f.gram);
    if (f.isometry) j["isometry"] = matrix_to_json(*f.isometry);
    return j;
}

inline LatticeFile lattice_file_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("lattice document must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "rank" && key != "gram" && key != "isometry") throw ParseError("unknown field '" + key + "'");
    if (!j.contains("rank") || !j["rank"].is_number_unsigned()) throw ParseError("'rank' must be a nonnegative integer");
    if (!j.contains("gram")) throw ParseError("missing field 'gram'");
    auto n = j["rank"].get<std::size_t>();
    if (n == 0) throw ParseError("'rank' must be positive");
    LatticeFile f{matrix_from_json(j["gram"], n, "gram"), std::nullopt};
    if (j.contains("isometry")) f.isometry = matrix_from_json(j["isometry"], n, "isometry");
    return f;
}

inline LatticeFile parse_lattice_file(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return lattice_file_from_json(j);
}

inline LatticeFile read_lattice_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_lattice_file(ss.str());
}

inline std::string write_lattice_file(const LatticeFile& f) { return lattice_file_to_json(f).dump(2) + "\n"; }

inline Json report_to_json(const CertificationReport& r) {
    Json j;
    j["verdict"] = r.passed() ? "pass" : "fail";
    j["digits"] = r.digits;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["id"] = c.id;
        e["claim"] = c.claim;
        e["passed"] = c.passed;
        Json w = Json::object();
        for (const auto& x : c.witnesses) w[x.name] = x.value;
        e["witnesses"] = std::move(w);
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

inline std::string report_to_table(const CertificationReport& r) {
    std::size_t width = 0;
    for (const auto& c : r.checks) width = std::max(width, c.id.size());
    std::ostringstream out;
    for (const auto& c : r.checks) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.id << std::string(width - c.id.size() + 2, ' ') << c.claim << "\n";
        for (const auto& w : c.witnesses) out << std::string(width + 8, ' ') << w.name << " = " << w.value << "\n";
    }
    out << "verdict: " << (r.passed() ? "pass" : "fail") << " (" << r.checks.size() << " checks)\n";
    return out.str();
}

inline Json cross_validation_to_json(const CrossValidationReport& r) {
    Json j;
    j["pipeline_certified"] = r.pipeline_certified;
    j["mismatches"] = r.mismatches();
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json e;
        e["tau"] = row.tau.get_str();
        e["closed_form"] = row.closed_form;
        e["necessary"] = row.necessary;
        e["witness"] = row.witness;
        e["status"] = row.status();
        e["mismatch"] = row.mismatch;
        rows.push_back(std::move(e));
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace k3glue
