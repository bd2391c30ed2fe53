#pragma once

// Serialization: module files, decomposition lists, cup reports, resolution
// manifests (JSON via nlohmann), and the cohomology table CSV. Scalars
// serialize as their little-endian bit-vector integers 0 .. 2^e - 1.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kfour/cohom.hpp"
#include "kfour/cup.hpp"
#include "kfour/decomp.hpp"
#include "kfour/kgmod.hpp"
#include "kfour/relproj.hpp"

namespace kfour {

using nlohmann::json;

class ModuleFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < m.cols(); ++j) row.push_back(static_cast<unsigned>(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Field& f, const json& j, size_t rows, size_t cols,
                               const std::string& name) {
    if (!j.is_array() || j.size() != rows)
        throw ModuleFormatError("field '" + name + "': expected " + std::to_string(rows) + " rows");
    Matrix m(f, rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ModuleFormatError("field '" + name + "', row " + std::to_string(i) + ": expected " +
                                    std::to_string(cols) + " entries");
        for (size_t c = 0; c < cols; ++c) {
            if (!j[i][c].is_number_unsigned())
                throw ModuleFormatError("field '" + name + "', entry (" + std::to_string(i) + "," +
                                        std::to_string(c) + "): expected a non-negative integer");
            const unsigned v = j[i][c].get<unsigned>();
            if (v >= f.size())
                throw ModuleFormatError("field '" + name + "', entry (" + std::to_string(i) + "," +
                                        std::to_string(c) + "): value " + std::to_string(v) +
                                        " outside GF(2^" + std::to_string(f.degree()) + ")");
            m.at(i, c) = static_cast<uint8_t>(v);
        }
    }
    return m;
}

inline json module_to_json(const KGModule& m) {
    return json{{"field", {{"degree", m.field().degree()}}},
                {"dim", m.dim()},
                {"X", matrix_to_json(m.X())},
                {"Y", matrix_to_json(m.Y())}};
}

inline KGModule module_from_json(const json& j) {
    if (!j.is_object()) throw ModuleFormatError("module file must be a JSON object");
    if (!j.contains("field") || !j["field"].is_object() || !j["field"].contains("degree"))
        throw ModuleFormatError("field 'field.degree' is missing");
    if (!j["field"]["degree"].is_number_unsigned())
        throw ModuleFormatError("field 'field.degree': expected a positive integer");
    const unsigned degree = j["field"]["degree"].get<unsigned>();
    if (degree < 1 || degree > 8)
        throw ModuleFormatError("field 'field.degree': must be between 1 and 8");
    Field f = Field::gf(degree);
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        throw ModuleFormatError("field 'dim' is missing or not a non-negative integer");
    const size_t d = j["dim"].get<size_t>();
    if (!j.contains("X")) throw ModuleFormatError("field 'X' is missing");
    if (!j.contains("Y")) throw ModuleFormatError("field 'Y' is missing");
    Matrix X = matrix_from_json(f, j["X"], d, d, "X");
    Matrix Y = matrix_from_json(f, j["Y"], d, d, "Y");
    try {
        return KGModule(std::move(X), std::move(Y));
    } catch (const std::invalid_argument& e) {
        throw ModuleFormatError(e.what());  // keeps the failing identity in the message
    }
}

/// Load a module from a file path or build it from a catalogue label.
inline KGModule module_io(const std::string& spec, const Field& f) {
    if (std::filesystem::exists(spec)) {
        std::ifstream in(spec);
        if (!in) throw ModuleFormatError("cannot read '" + spec + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ModuleFormatError("'" + spec + "' is not valid JSON: " + e.what());
        }
        return module_from_json(j);
    }
    return build_indecomposable(IndecLabel::parse(spec, f), f);
}

inline json decomposition_to_json(const Decomposition& dec) {
    json parts = json::array();
    for (const auto& [label, mult] : dec.parts)
        parts.push_back(json{{"label", label.to_string()}, {"multiplicity", mult}});
    return parts;
}

/// Human-readable multiset, e.g. "V-3 + 2*P" or "0".
inline std::string decomposition_to_string(const std::map<IndecLabel, int>& parts) {
    if (parts.empty()) return "0";
    std::string out;
    for (const auto& [label, mult] : parts) {
        if (!out.empty()) out += " + ";
        if (mult != 1) out += std::to_string(mult) + "*";
        out += label.to_string();
    }
    return out;
}

inline json cup_report_to_json(const CupReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back(json{{"i", row.i},
                            {"j", row.j},
                            {"class_index_pair", {row.class_i, row.class_j}},
                            {"is_zero_class", row.is_zero_class},
                            {"is_zero_map", row.is_zero_map}});
    return json{{"chi", r.chi.to_string()},
                {"max_total_degree", r.max_total_degree},
                {"vacuous", r.vacuous},
                {"all_zero_class", r.all_zero_class},
                {"all_zero_map", r.all_zero_map},
                {"products", rows}};
}

inline std::string cohom_table_to_csv(const CohomTable& table) {
    std::ostringstream os;
    os << "module,degree,dim,method\n";
    for (const CohomRow& r : table.rows)
        os << r.module << "," << r.degree << "," << r.dim << "," << r.method << "\n";
    return os.str();
}

inline json cohom_table_to_json(const CohomTable& table) {
    json rows = json::array();
    for (const CohomRow& r : table.rows)
        rows.push_back(
            json{{"module", r.module}, {"degree", r.degree}, {"dim", r.dim}, {"method", r.method}});
    return json{{"rows", rows}, {"mismatches", table.mismatches}};
}

/// Resolution output: manifest JSON plus per-map matrix files in a directory.
inline void write_resolution(const std::filesystem::path& dir, const ResolutionData& res) {
    std::filesystem::create_directories(dir);
    json manifest{{"chi", res.chi.to_string()},
                  {"length", res.covers.size() == 0 ? 0 : res.covers.size() - 1},
                  {"modules", json::array()},
                  {"boundaries", json::array()},
                  {"syzygy_dims", json::array()},
                  {"augmentation", "augmentation.json"}};
    for (size_t i = 0; i < res.covers.size(); ++i) {
        const std::string qfile = "Q" + std::to_string(i) + ".json";
        std::ofstream(dir / qfile) << module_to_json(res.covers[i].total).dump(1) << "\n";
        manifest["modules"].push_back(qfile);
    }
    for (size_t i = 0; i < res.boundaries.size(); ++i) {
        const std::string dfile = "d" + std::to_string(i) + ".json";
        std::ofstream(dir / dfile) << matrix_to_json(res.boundaries[i]).dump(1) << "\n";
        manifest["boundaries"].push_back(dfile);
    }
    for (const KGModule& s : res.syzygies) manifest["syzygy_dims"].push_back(s.dim());
    std::ofstream(dir / "augmentation.json") << matrix_to_json(res.augmentation).dump(1) << "\n";
    std::ofstream(dir / "manifest.json") << manifest.dump(1) << "\n";
}

/// Split a comma-separated module list, gluing back label fragments like
/// "V4,inf" and "V4,theta:...": a fragment that continues a label starts
/// with "inf" or "theta:".
inline std::vector<std::string> split_module_list(const std::string& text) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!tok.empty()) {
            if (!out.empty() && (tok == "inf" || tok.rfind("theta:", 0) == 0))
                out.back() += "," + tok;
            else
                out.push_back(tok);
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

} // namespace kfour
