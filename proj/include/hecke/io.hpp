#pragma once

#include <fstream>
#include <iomanip>
#include <optional>

#include <json.hpp>

#include "hecke/schur.hpp"

namespace hecke {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Bindings: {"m": int, "n": int, "q": ["p/q", ...]}

inline Json binding_to_json(const ParamBinding& b) {
    Json j;
    j["m"] = b.m;
    j["n"] = b.n;
    Json q = Json::array();
    for (const auto& v : b.q) q.push_back(rational_to_string(v));
    j["q"] = q;
    return j;
}

inline ParamBinding binding_from_json(const Json& j) {
    if (!j.contains("m") || !j.contains("n") || !j.contains("q"))
        throw ConfigError("binding file needs m, n, q");
    int m = j.at("m").get<int>();
    int n = j.at("n").get<int>();
    std::vector<Rational> q;
    for (const auto& v : j.at("q")) q.push_back(rational_from_string(v.get<std::string>()));
    return make_binding(m, n, std::move(q));
}

inline ParamBinding load_binding_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open binding file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("bad binding file " + path + ": " + e.what());
    }
    return binding_from_json(j);
}

// ---------------------------------------------------------------------------
// Elements: list of {"exps": [...], "perm": [...], "coeff": "p/q"}

inline Json element_to_json(const Algebra& alg, const Element& e) {
    Json arr = Json::array();
    for (const auto& [k, c] : e.terms) {
        Json t;
        Json exps = Json::array(), perm = Json::array();
        for (int i = 0; i < alg.n(); ++i) {
            exps.push_back(int(k.exps[size_t(i)]));
            perm.push_back(int(k.perm[size_t(i)]) + 1);
        }
        t["exps"] = exps;
        t["perm"] = perm;
        t["coeff"] = rational_to_string(c);
        arr.push_back(t);
    }
    return arr;
}

inline Element element_from_json(const Algebra& alg, const Json& arr) {
    Element e = alg.zero();
    for (const auto& t : arr) {
        std::vector<int> exps;
        for (const auto& v : t.at("exps")) exps.push_back(v.get<int>());
        Perm w;
        for (const auto& v : t.at("perm")) w.img.push_back(v.get<int>());
        if (int(exps.size()) != alg.n() || w.n() != alg.n())
            throw IoError("element term has wrong arity");
        e += alg.monomial_term(exps, w, rational_from_string(t.at("coeff").get<std::string>()));
    }
    return e;
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Tabular emission: every record is a flat object; json/csv/md renderings
// share the column order of the first record.

enum class OutputFormat { json, csv, md };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "md") return OutputFormat::md;
    throw ConfigError("unknown output format: " + s);
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline std::string cell_to_string(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else out += c;
    }
    return out;
}

inline void emit(const Json& records, OutputFormat fmt, std::ostream& os) {
    if (fmt == OutputFormat::json) {
        os << records.dump(2) << '\n';
        return;
    }
    if (!records.is_array()) throw IoError("csv/md emission needs an array of records");
    std::vector<std::string> cols;
    if (!records.empty())
        for (auto it = records[0].begin(); it != records[0].end(); ++it) cols.push_back(it.key());
    if (fmt == OutputFormat::csv) {
        for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_escape(cols[i]);
        os << '\n';
        for (const auto& rec : records) {
            for (size_t i = 0; i < cols.size(); ++i)
                os << (i ? "," : "") << csv_escape(rec.contains(cols[i]) ? cell_to_string(rec[cols[i]]) : "");
            os << '\n';
        }
        return;
    }
    // markdown
    os << '|';
    for (const auto& c : cols) os << ' ' << md_escape(c) << " |";
    os << "\n|";
    for (size_t i = 0; i < cols.size(); ++i) os << " --- |";
    os << '\n';
    for (const auto& rec : records) {
        os << '|';
        for (const auto& c : cols)
            os << ' ' << (rec.contains(c) ? md_escape(cell_to_string(rec[c])) : "") << " |";
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// Content-addressed file cache.  Entries carry a digest header; anything that
// fails to parse or verify is recomputed.

inline uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

inline std::string cache_file_name(const std::string& dir, const std::string& kind,
                                   const ParamBinding& b) {
    std::ostringstream os;
    os << dir << "/hecke-" << kind << "-m" << b.m << "-n" << b.n << "-" << std::hex
       << fnv1a(b.key_string()) << ".cache";
    return os.str();
}

inline std::optional<std::string> cache_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string digestLine;
    if (!std::getline(in, digestLine)) return std::nullopt;
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::ostringstream expect;
    expect << std::hex << fnv1a(payload);
    if (digestLine != expect.str()) return std::nullopt;
    return payload;
}

inline void cache_store(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write cache file: " + path);
    out << std::hex << fnv1a(payload) << '\n' << payload;
}

inline std::string serialize_lu(const LuDecomposition& lu) {
    std::ostringstream os;
    os << lu.dim() << ' ' << lu.pivot_sign() << '\n';
    for (int v : lu.row_permutation()) os << v << ' ';
    os << '\n';
    const Matrix& m = lu.packed();
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) os << rational_to_string(m.at(i, j)) << ' ';
        os << '\n';
    }
    return os.str();
}

inline std::optional<LuDecomposition> deserialize_lu(const std::string& payload) {
    try {
        std::istringstream in(payload);
        int dim = 0, sign = 0;
        if (!(in >> dim >> sign) || dim <= 0) return std::nullopt;
        std::vector<int> perm(size_t(dim), 0);
        for (int& v : perm)
            if (!(in >> v)) return std::nullopt;
        Matrix m(dim, dim);
        std::string tok;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (!(in >> tok)) return std::nullopt;
                m.at(i, j) = rational_from_string(tok);
            }
        return LuDecomposition::from_parts(std::move(m), std::move(perm), sign);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace hecke
