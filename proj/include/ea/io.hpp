#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ea/algebra.hpp"
#include "ea/constructors.hpp"
#include "ea/observables.hpp"
#include "ea/rational.hpp"

namespace ea::io {

using Json = nlohmann::ordered_json;

inline constexpr std::uint32_t kMaxSerializableCarrier = 4096;

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError("invalid JSON in " + path.string() + ": " + e.what());
    }
}

inline std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StructuralError("cannot write file: " + path.string());
    out << bytes;
}

namespace detail {

inline const Json& field(const Json& j, const char* name, const char* where) {
    auto it = j.find(name);
    if (it == j.end())
        throw StructuralError(std::string(where) + ": missing field '" + name + "'");
    return *it;
}

inline std::string str_field(const Json& j, const char* name, const char* where) {
    const Json& f = field(j, name, where);
    if (!f.is_string())
        throw StructuralError(std::string(where) + ": field '" + name + "' must be a string");
    return f.get<std::string>();
}

} // namespace detail

// ---------------------------------------------------------------------------
// ea-table/1

/// Canonical serialization: elements in index order; plus-triples as labels,
/// lexicographic by label, omitting zero-rules and commutative duplicates
/// (kept orientation has label(a) <= label(b)).
inline std::string save_table(const EffectAlgebra& E) {
    if (E.size() > kMaxSerializableCarrier)
        throw BudgetError("save_table: carrier too large for a table file");
    Json j;
    j["format"] = "ea-table/1";
    j["name"] = E.name();
    j["elements"] = Json::array();
    for (Elem e = 0; e < E.size(); ++e) j["elements"].push_back(E.label(e));
    j["zero"] = E.label(E.zero());
    j["one"] = E.label(E.one());

    std::vector<std::array<std::string, 3>> triples;
    for (Elem a = 0; a < E.size(); ++a) {
        if (a == E.zero()) continue;
        for (Elem b = 0; b < E.size(); ++b) {
            if (b == E.zero()) continue;
            Elem c = E.plus(a, b);
            if (c == kNone) continue;
            if (E.label(a) > E.label(b)) continue; // commutative duplicate
            triples.push_back({E.label(a), E.label(b), E.label(c)});
        }
    }
    std::sort(triples.begin(), triples.end());
    j["plus"] = Json::array();
    for (auto& t : triples) j["plus"].push_back(Json::array({t[0], t[1], t[2]}));
    return j.dump(2) + "\n";
}

struct TableLoad {
    ValidationReport report;
    std::optional<EffectAlgebra> algebra;
};

inline TableLoad load_table_json(const Json& j, const ValidationOptions& opts = {}) {
    const char* where = "ea-table/1";
    if (detail::str_field(j, "format", where) != "ea-table/1")
        throw StructuralError("not an ea-table/1 file");
    TableData td;
    td.name = detail::str_field(j, "name", where);
    const Json& els = detail::field(j, "elements", where);
    if (!els.is_array() || els.size() < 2)
        throw StructuralError("ea-table/1: 'elements' must list at least two labels");
    std::unordered_map<std::string, Elem> index;
    for (auto& e : els) {
        if (!e.is_string()) throw StructuralError("ea-table/1: element labels must be strings");
        std::string lab = e.get<std::string>();
        if (!index.emplace(lab, static_cast<Elem>(td.labels.size())).second)
            throw StructuralError("ea-table/1: duplicate element label '" + lab + "'");
        td.labels.push_back(std::move(lab));
    }
    auto resolve = [&](const std::string& lab) -> Elem {
        auto it = index.find(lab);
        if (it == index.end())
            throw StructuralError("ea-table/1: unknown element label '" + lab + "'");
        return it->second;
    };
    td.zero = resolve(detail::str_field(j, "zero", where));
    td.one = resolve(detail::str_field(j, "one", where));
    const Json& plus = detail::field(j, "plus", where);
    if (!plus.is_array()) throw StructuralError("ea-table/1: 'plus' must be an array");
    for (auto& t : plus) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() || !t[1].is_string() ||
            !t[2].is_string())
            throw StructuralError("ea-table/1: each plus entry must be [a, b, c] labels");
        td.triples.push_back({resolve(t[0].get<std::string>()), resolve(t[1].get<std::string>()),
                              resolve(t[2].get<std::string>())});
    }
    auto res = validate_axioms(td, opts);
    return TableLoad{std::move(res.report), std::move(res.algebra)};
}

// ---------------------------------------------------------------------------
// ea-fuzzy/1

inline std::string save_fuzzy(const FuzzySetAlgebra& F) {
    Json j;
    j["format"] = "ea-fuzzy/1";
    j["omega"] = Json::array();
    for (auto& w : F.omega) j["omega"].push_back(w);
    j["functions"] = Json::array();
    for (auto& f : F.functions) {
        Json g;
        g["label"] = f.label;
        g["values"] = Json::array();
        for (auto& v : f.values) g["values"].push_back(rat_to_string(v));
        j["functions"].push_back(std::move(g));
    }
    return j.dump(2) + "\n";
}

/// Loads a fuzzy-set algebra file. The listed function set must already be
/// closed under complement and defined pointwise sums.
inline FuzzySetAlgebra load_fuzzy_json(const Json& j, const ValidationOptions& opts = {}) {
    const char* where = "ea-fuzzy/1";
    if (detail::str_field(j, "format", where) != "ea-fuzzy/1")
        throw StructuralError("not an ea-fuzzy/1 file");
    const Json& om = detail::field(j, "omega", where);
    if (!om.is_array() || om.empty())
        throw StructuralError("ea-fuzzy/1: 'omega' must be a non-empty array");
    std::vector<std::string> omega;
    for (auto& w : om) omega.push_back(w.get<std::string>());
    const std::size_t d = omega.size();

    const Json& fns = detail::field(j, "functions", where);
    if (!fns.is_array() || fns.empty())
        throw StructuralError("ea-fuzzy/1: 'functions' must be a non-empty array");
    std::vector<FuzzyFunction> functions;
    std::map<std::vector<Rat>, Elem> index;
    for (auto& f : fns) {
        FuzzyFunction fn;
        fn.label = detail::str_field(f, "label", where);
        const Json& vals = detail::field(f, "values", where);
        if (!vals.is_array() || vals.size() != d)
            throw StructuralError("ea-fuzzy/1: function arity mismatch");
        for (auto& v : vals) {
            Rat r = rat_parse_or_throw(v.get<std::string>());
            if (r < 0 || r > 1)
                throw StructuralError("ea-fuzzy/1: function values must lie in [0,1]");
            fn.values.push_back(std::move(r));
        }
        if (!index.emplace(fn.values, static_cast<Elem>(functions.size())).second)
            throw StructuralError("ea-fuzzy/1: duplicate function");
        functions.push_back(std::move(fn));
    }

    const std::uint32_t n = static_cast<std::uint32_t>(functions.size());
    std::vector<std::string> labels;
    for (auto& f : functions) labels.push_back(f.label);
    std::optional<Elem> zero, one;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (functions[i].values == std::vector<Rat>(d, Rat(0))) zero = static_cast<Elem>(i);
        if (functions[i].values == std::vector<Rat>(d, Rat(1))) one = static_cast<Elem>(i);
    }
    if (!zero || !one)
        throw StructuralError("ea-fuzzy/1: constant 0 and constant 1 must be present");

    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    std::vector<Rat> sum(d);
    for (std::uint32_t a = 0; a < n; ++a) {
        // closure under complement
        std::vector<Rat> comp(d);
        for (std::size_t i = 0; i < d; ++i) comp[i] = Rat(1) - functions[a].values[i];
        if (!index.count(comp))
            throw StructuralError("ea-fuzzy/1: set is not closed under f -> 1-f (at '" +
                                  functions[a].label + "')");
        for (std::uint32_t b = a; b < n; ++b) {
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i) {
                sum[i] = functions[a].values[i] + functions[b].values[i];
                if (sum[i] > 1) { ok = false; break; }
            }
            if (!ok) continue;
            auto it = index.find(sum);
            if (it == index.end())
                throw StructuralError("ea-fuzzy/1: set is not closed under defined pointwise sums");
            plus[std::size_t{a} * n + b] = it->second;
            plus[std::size_t{b} * n + a] = it->second;
        }
    }
    auto res = validate_dense("fuzzy", std::move(labels), *zero, *one, std::move(plus), opts);
    if (!res.report.ok) throw StructuralError("ea-fuzzy/1: functions do not form an effect algebra");
    return FuzzySetAlgebra{std::move(omega), std::move(functions), std::move(*res.algebra)};
}

// ---------------------------------------------------------------------------
// ea-spectral/1 and ea-obs/1

inline std::string save_spectral(const SpectralFamily& F, const EffectAlgebra& E) {
    Json j;
    j["format"] = "ea-spectral/1";
    j["algebra"] = E.name();
    j["jumps"] = Json::array();
    for (auto& [p, v] : F.jumps) j["jumps"].push_back(Json::array({rat_to_string(p), E.label(v)}));
    return j.dump(2) + "\n";
}

inline SpectralFamily load_spectral_json(const Json& j, const EffectAlgebra& E) {
    const char* where = "ea-spectral/1";
    if (detail::str_field(j, "format", where) != "ea-spectral/1")
        throw StructuralError("not an ea-spectral/1 file");
    if (detail::str_field(j, "algebra", where) != E.name())
        throw StructuralError("ea-spectral/1: file is for algebra '" +
                              detail::str_field(j, "algebra", where) + "', expected '" +
                              E.name() + "'");
    const Json& js = detail::field(j, "jumps", where);
    if (!js.is_array()) throw StructuralError("ea-spectral/1: 'jumps' must be an array");
    std::vector<std::pair<Rat, Elem>> jumps;
    for (auto& t : js) {
        if (!t.is_array() || t.size() != 2)
            throw StructuralError("ea-spectral/1: each jump must be [point, label]");
        jumps.push_back({rat_parse_or_throw(t[0].get<std::string>()),
                         E.find_or_throw(t[1].get<std::string>())});
    }
    return SpectralFamily::make(E, std::move(jumps));
}

inline std::string save_observable(const DiscreteObservable& x, const EffectAlgebra& E) {
    Json j;
    j["format"] = "ea-obs/1";
    j["algebra"] = E.name();
    j["atoms"] = Json::array();
    for (auto& [p, v] : x.atoms) j["atoms"].push_back(Json::array({rat_to_string(p), E.label(v)}));
    return j.dump(2) + "\n";
}

inline DiscreteObservable load_observable_json(const Json& j, const EffectAlgebra& E) {
    const char* where = "ea-obs/1";
    if (detail::str_field(j, "format", where) != "ea-obs/1")
        throw StructuralError("not an ea-obs/1 file");
    if (detail::str_field(j, "algebra", where) != E.name())
        throw StructuralError("ea-obs/1: file is for algebra '" +
                              detail::str_field(j, "algebra", where) + "', expected '" + E.name() +
                              "'");
    const Json& as = detail::field(j, "atoms", where);
    if (!as.is_array()) throw StructuralError("ea-obs/1: 'atoms' must be an array");
    std::vector<std::pair<Rat, Elem>> atoms;
    for (auto& t : as) {
        if (!t.is_array() || t.size() != 2)
            throw StructuralError("ea-obs/1: each atom must be [point, label]");
        atoms.push_back({rat_parse_or_throw(t[0].get<std::string>()),
                         E.find_or_throw(t[1].get<std::string>())});
    }
    return DiscreteObservable::make(E, std::move(atoms));
}

// ---------------------------------------------------------------------------
// generic algebra loading (table or fuzzy view)

inline TableLoad load_algebra_file(const std::filesystem::path& path,
                                   const ValidationOptions& opts = {}) {
    Json j = read_json_file(path);
    std::string format = detail::str_field(j, "format", "algebra file");
    if (format == "ea-table/1") return load_table_json(j, opts);
    if (format == "ea-fuzzy/1") {
        FuzzySetAlgebra F = load_fuzzy_json(j, opts);
        TableLoad out;
        out.report.ok = true;
        out.algebra = std::move(F.view);
        return out;
    }
    throw StructuralError("unsupported format '" + format + "' in " + path.string());
}

} // namespace ea::io
