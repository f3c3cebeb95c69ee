#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ea/algebra.hpp"
#include "ea/blocks.hpp"
#include "ea/compat.hpp"
#include "ea/properties.hpp"
#include "ea/states.hpp"

namespace ea {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit, hex; used as the input digest in reports.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hexd = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hexd[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

namespace rpt {

using Json = nlohmann::ordered_json;

inline Json labels_json(const EffectAlgebra& E, std::span<const Elem> elems) {
    Json a = Json::array();
    for (Elem e : elems) a.push_back(E.label(e));
    return a;
}

inline Json property_json(const EffectAlgebra& E, const PropertyResult& r) {
    Json j;
    j["verdict"] = verdict_name(r.verdict);
    if (!r.witness.empty()) j["witness"] = labels_json(E, r.witness);
    if (!r.note.empty()) j["note"] = r.note;
    j["checked"] = r.checked;
    return j;
}

inline Json block_json(const EffectAlgebra& E, const Block& b) {
    Json j;
    j["kind"] = block_kind_name(b.kind);
    j["members"] = labels_json(E, b.sorted);
    j["is_subalgebra"] = b.is_subalgebra;
    if (b.is_mv) j["is_mv"] = *b.is_mv;
    if (b.has_rdp) j["has_rdp"] = *b.has_rdp;
    return j;
}

inline Json state_json(const EffectAlgebra& E, const State& s) {
    Json j = Json::object();
    for (Elem e = 0; e < E.size(); ++e) j[E.label(e)] = rat_to_string(s.values[e]);
    return j;
}

inline Json compat_witness_json(const EffectAlgebra& E, const CompatWitness& w) {
    Json j;
    j["a1"] = E.label(w.a1);
    j["b1"] = E.label(w.b1);
    j["c"] = E.label(w.c);
    j["strong"] = w.strong;
    return j;
}

inline Json refinement_witness_json(const EffectAlgebra& E, const RefinementWitness& w) {
    Json j;
    j["parts"] = Json::array();
    for (Elem p : w.parts) j["parts"].push_back(E.label(p));
    j["assignment"] = Json::array();
    for (auto& sel : w.assignment) {
        Json a = Json::array();
        for (auto i : sel) a.push_back(i);
        j["assignment"].push_back(std::move(a));
    }
    return j;
}

inline Json verdict_legend() {
    Json j;
    j["holds-exhaustive"] = "property verified on the full tuple space";
    j["holds-sampled"] = "no counterexample found under seeded sampling";
    j["fails"] = "counterexample found; witness attached";
    j["not-applicable"] = "theorem hypothesis not satisfied by the instance";
    j["budget-limited"] = "search truncated by budget; not a verdict";
    return j;
}

inline Json validation_json(const ValidationReport& rep) {
    Json j;
    j["ok"] = rep.ok;
    if (rep.assoc_sampled) {
        j["associativity"] = "sampled";
        j["seed"] = rep.seed;
    } else {
        j["associativity"] = "exhaustive";
    }
    j["violations"] = Json::array();
    for (auto& v : rep.violations) {
        Json vj;
        vj["axiom"] = v.axiom;
        vj["kind"] = v.kind == Violation::Kind::Structural ? "structural" : "axiom";
        Json w = Json::array();
        for (Elem e : v.witness) w.push_back(e);
        vj["witness_indices"] = std::move(w);
        vj["message"] = v.message;
        j["violations"].push_back(std::move(vj));
    }
    return j;
}

} // namespace rpt
} // namespace ea
