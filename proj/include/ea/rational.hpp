#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "ea/errors.hpp"

namespace ea {

/// Exact rational arithmetic everywhere; no floating point in any
/// computation or interface.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Canonical text form: "p/q" in lowest terms, "/q" omitted when q == 1.
inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

inline std::optional<Rat> rat_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto parse_int = [](const std::string& t, Int& out) -> bool {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        out = Int(t);
        return true;
    };
    auto slash = s.find('/');
    Int num, den = 1;
    if (slash == std::string::npos) {
        if (!parse_int(s, num)) return std::nullopt;
    } else {
        if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
        if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    return Rat(num, den);
}

inline Rat rat_parse_or_throw(const std::string& s) {
    auto r = rat_parse(s);
    if (!r) throw StructuralError("invalid rational: '" + s + "'");
    return *r;
}

} // namespace ea
