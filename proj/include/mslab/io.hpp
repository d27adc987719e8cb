#ifndef MSLAB_IO_HPP
#define MSLAB_IO_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "correspondence.hpp"
#include "errors.hpp"
#include "experiments.hpp"
#include "hyperspace.hpp"
#include "metric_space.hpp"
#include "rational.hpp"

namespace mslab {

using ordered_json = nlohmann::ordered_json;

struct SpaceFile {
    std::optional<std::string> name;
    FiniteMetricSpace space;
};

namespace detail {

inline Rat rat_from_json(const ordered_json& v) {
    if (v.is_number_integer())
        return Rat(v.get<std::int64_t>());
    if (v.is_string())
        return parse_rat(v.get<std::string>());
    throw Error(ErrorCode::ParseError, "distance entries must be integers or \"p/q\" strings, got " + v.dump());
}

inline std::string rat_to_json_text(const Rat& r) {
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return "\"" + to_string(r) + "\"";
}

inline std::string quoted(const std::string& s) { return ordered_json(s).dump(); }

} // namespace detail

/// Parses {"name": ..., "labels": [...], "d": [[...], ...]}.
inline SpaceFile parse_space_json(const std::string& text, ValidateOptions options = {}) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc["d"].is_array())
        throw Error(ErrorCode::ParseError, "space file needs an array field \"d\"");
    Matrix m;
    for (const auto& row : doc["d"]) {
        if (!row.is_array())
            throw Error(ErrorCode::ParseError, "rows of \"d\" must be arrays");
        std::vector<Rat> r;
        for (const auto& v : row)
            r.push_back(detail::rat_from_json(v));
        m.push_back(std::move(r));
    }
    SpaceFile out{std::nullopt, validate(m, options)};
    if (doc.contains("name")) {
        if (!doc["name"].is_string())
            throw Error(ErrorCode::ParseError, "\"name\" must be a string");
        out.name = doc["name"].get<std::string>();
    }
    if (doc.contains("labels")) {
        std::vector<std::string> labels;
        try {
            labels = doc["labels"].get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorCode::ParseError, "\"labels\" must be an array of strings");
        }
        out.space = out.space.with_labels(std::move(labels));
    }
    return out;
}

/// Canonical text: one matrix row per line, integers as JSON numbers and
/// other values as "p/q". Parsing this output and writing it again gives the
/// same bytes.
inline std::string write_space_json(const FiniteMetricSpace& space, const std::optional<std::string>& name = std::nullopt) {
    std::string out = "{\n";
    if (name)
        out += "  \"name\": " + detail::quoted(*name) + ",\n";
    if (!space.labels().empty()) {
        out += "  \"labels\": [";
        for (std::size_t i = 0; i < space.labels().size(); ++i)
            out += (i ? ", " : "") + detail::quoted(space.labels()[i]);
        out += "],\n";
    }
    out += "  \"d\": [\n";
    for (int i = 0; i < space.size(); ++i) {
        out += "    [";
        for (int j = 0; j < space.size(); ++j)
            out += (j ? ", " : "") + detail::rat_to_json_text(space.d(i, j));
        out += i + 1 < space.size() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_text_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::ParseError, "cannot write " + tmp.string());
        out << content;
        if (!out)
            throw Error(ErrorCode::ParseError, "write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline SpaceFile read_space_file(const std::filesystem::path& path, ValidateOptions options = {}) {
    return parse_space_json(read_text_file(path), options);
}

/// Sidecar for a hyperspace export: member index i -> subset bitmask (decimal).
inline std::string write_members_json(const Hyperspace& h) {
    ordered_json doc;
    doc["base_size"] = h.base.size();
    ordered_json members = ordered_json::array();
    for (const auto& s : h.members)
        members.push_back(s.bits());
    doc["members"] = std::move(members);
    return doc.dump() + "\n";
}

inline ordered_json pairs_json(const Correspondence& r) {
    ordered_json pairs = ordered_json::array();
    for (auto [x, y] : r.pairs())
        pairs.push_back({x, y});
    return pairs;
}

/// {"pairs": [[x, y], ...], "distortion": "p/q"}
inline ordered_json witness_json(const Correspondence& r, const Rat& distortion_value) {
    ordered_json doc;
    doc["pairs"] = pairs_json(r);
    doc["distortion"] = to_string(distortion_value);
    return doc;
}

inline Correspondence parse_witness_json(const std::string& text, int x_size, int y_size) {
    try {
        auto doc = ordered_json::parse(text);
        std::vector<IndexPair> pairs;
        for (const auto& p : doc.at("pairs"))
            pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        return Correspondence::make(x_size, y_size, std::move(pairs));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline ordered_json matrix_json(const FiniteMetricSpace& s) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < s.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < s.size(); ++j)
            row.push_back(to_string(s.d(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ordered_json sweep_row_json(const SweepRow& row) {
    ordered_json r;
    r["pair_id"] = row.pair_id;
    r["seed"] = row.seed;
    r["n_x"] = row.n_x;
    r["n_y"] = row.n_y;
    r["d_xy"] = to_string(row.d_xy);
    r["d_hxhy"] = to_string(row.d_hxhy);
    r["gap"] = to_string(row.gap);
    r["status"] = to_string(row.status);
    r["x"] = matrix_json(row.x);
    r["y"] = matrix_json(row.y);
    r["witness_xy"] = pairs_json(row.witness_xy);
    r["witness_h"] = pairs_json(row.witness_h);
    return r;
}

inline std::string sweep_report_json(const SweepReport& report) {
    ordered_json doc;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.rows)
        rows.push_back(sweep_row_json(row));
    doc["rows"] = std::move(rows);
    ordered_json summary;
    summary["count"] = report.rows.size();
    summary["min_gap"] = to_string(report.summary.min_gap);
    summary["max_gap"] = to_string(report.summary.max_gap);
    summary["violations"] = report.summary.violations;
    summary["inconclusive"] = report.summary.inconclusive;
    doc["summary"] = std::move(summary);
    if (report.largest_gap_row)
        doc["largest_gap"] = sweep_row_json(report.rows[*report.largest_gap_row]);
    return doc.dump(2) + "\n";
}

inline std::string sweep_report_csv(const SweepReport& report) {
    std::string out = "pair_id,seed,n_x,n_y,d_xy,d_hxhy,gap,status\n";
    for (const auto& r : report.rows)
        out += std::to_string(r.pair_id) + "," + std::to_string(r.seed) + "," + std::to_string(r.n_x) + "," +
               std::to_string(r.n_y) + "," + to_string(r.d_xy) + "," + to_string(r.d_hxhy) + "," + to_string(r.gap) +
               "," + to_string(r.status) + "\n";
    return out;
}

inline std::string simplex_table_json(const SimplexTable& table) {
    ordered_json doc;
    ordered_json simplex_rows = ordered_json::array();
    for (const auto& r : table.simplex_rows)
        simplex_rows.push_back({{"t", to_string(r.t)},
                                {"p", r.p},
                                {"s", to_string(r.s)},
                                {"q", r.q},
                                {"base", to_string(r.base)},
                                {"lifted", to_string(r.lifted)}});
    ordered_json finite_rows = ordered_json::array();
    for (const auto& r : table.finite_rows)
        finite_rows.push_back({{"space_id", r.space_id},
                               {"space_size", r.space_size},
                               {"t", to_string(r.t)},
                               {"n", r.n},
                               {"base", to_string(r.base)},
                               {"lifted", to_string(r.lifted)}});
    ordered_json spot_rows = ordered_json::array();
    for (const auto& r : table.spot_rows)
        spot_rows.push_back({{"t", to_string(r.t)},
                             {"space_id", r.space_id},
                             {"space_size", r.space_size},
                             {"base", to_string(r.base)},
                             {"lifted", to_string(r.lifted)}});
    ordered_json spaces = ordered_json::array();
    for (const auto& s : table.spaces)
        spaces.push_back(matrix_json(s));
    doc["simplex_rows"] = std::move(simplex_rows);
    doc["finite_rows"] = std::move(finite_rows);
    doc["spot_rows"] = std::move(spot_rows);
    doc["spaces"] = std::move(spaces);
    doc["all_agree"] = table.all_agree();
    return doc.dump(2) + "\n";
}

inline std::string simplex_table_csv(const SimplexTable& table) {
    std::string out = "kind,t,p,s,q,space_id,base,lifted\n";
    for (const auto& r : table.simplex_rows)
        out += "simplex," + to_string(r.t) + "," + std::to_string(r.p) + "," + to_string(r.s) + "," +
               std::to_string(r.q) + ",," + to_string(r.base) + "," + to_string(r.lifted) + "\n";
    for (const auto& r : table.finite_rows)
        out += "finite," + to_string(r.t) + "," + std::to_string(r.n) + ",," + std::to_string(r.space_size) + "," +
               std::to_string(r.space_id) + "," + to_string(r.base) + "," + to_string(r.lifted) + "\n";
    for (const auto& r : table.spot_rows)
        out += "spot," + to_string(r.t) + ",2,," + std::to_string(r.space_size) + "," + std::to_string(r.space_id) +
               "," + to_string(r.base) + "," + to_string(r.lifted) + "\n";
    return out;
}

} // namespace mslab

#endif // MSLAB_IO_HPP
