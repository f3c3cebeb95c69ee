#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/rational.hpp"

namespace ea {

// ---------------------------------------------------------------------------
// interval algebras Gamma(G, u) over rational grid groups

enum class ConeKind {
    Standard,      // componentwise >= 0
    StrictQuadrant // zero, or all coordinates strictly positive
};

struct ConeSpec {
    ConeKind kind = ConeKind::Standard;
    std::uint32_t dim = 1;
    std::int64_t den = 1; // carrier lives on the grid (1/den) * Z^dim
};

inline bool cone_contains(const ConeSpec& cone, std::span<const std::int64_t> v) {
    if (cone.kind == ConeKind::Standard) {
        for (auto x : v)
            if (x < 0) return false;
        return true;
    }
    bool all_zero = true, all_pos = true;
    for (auto x : v) {
        if (x != 0) all_zero = false;
        if (x <= 0) all_pos = false;
    }
    return all_zero || all_pos;
}

namespace detail {

inline EffectAlgebra must_build(ValidationResult&& r, const std::string& who) {
    if (!r.report.ok) {
        std::string msg = who + ": constructed table failed validation:";
        for (auto& v : r.report.violations) msg += " [" + v.axiom + "] " + v.message;
        throw std::logic_error(msg);
    }
    return std::move(*r.algebra);
}

inline std::string grid_label(std::span<const std::int64_t> g, std::int64_t den) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(g[i]);
        s += '/';
        s += std::to_string(den);
    }
    s += ')';
    return s;
}

} // namespace detail

/// Carrier = { g on the grid : g and u-g lie in the cone }, with the group
/// addition wherever the sum stays in [0, u]. u is given in grid units
/// (numerators over cone.den).
inline EffectAlgebra interval_algebra(const ConeSpec& cone, std::vector<std::int64_t> u,
                                      const ValidationOptions& opts = {},
                                      std::string name = "") {
    if (cone.dim < 1 || u.size() != cone.dim)
        throw PreconditionError("interval_algebra: u must have exactly dim coordinates");
    if (cone.den < 1) throw PreconditionError("interval_algebra: denominator must be >= 1");
    if (!cone_contains(cone, u))
        throw PreconditionError("interval_algebra: u is not in the cone");
    bool u_zero = true;
    for (auto x : u)
        if (x != 0) u_zero = false;
    if (u_zero) throw PreconditionError("interval_algebra: u must be positive");

    std::uint64_t box = 1;
    for (auto x : u) {
        box *= static_cast<std::uint64_t>(x) + 1;
        if (box > 64'000'000) throw BudgetError("interval_algebra: coordinate box too large");
    }

    // enumerate the box lexicographically; carrier points get dense indices
    const std::uint32_t d = cone.dim;
    std::vector<std::int64_t> strides(d, 1);
    for (std::uint32_t i = d; i-- > 1;) strides[i - 1] = strides[i] * (u[i] + 1);

    std::vector<std::int32_t> box_index(box, -1);
    std::vector<std::vector<std::int64_t>> pts;
    {
        std::vector<std::int64_t> g(d, 0), ug(d);
        while (true) {
            for (std::uint32_t i = 0; i < d; ++i) ug[i] = u[i] - g[i];
            if (cone_contains(cone, g) && cone_contains(cone, ug)) {
                if (pts.size() >= opts.size_cap)
                    throw BudgetError("interval_algebra: carrier exceeds size cap " +
                                      std::to_string(opts.size_cap));
                std::uint64_t key = 0;
                for (std::uint32_t i = 0; i < d; ++i)
                    key += static_cast<std::uint64_t>(g[i] * strides[i]);
                box_index[key] = static_cast<std::int32_t>(pts.size());
                pts.push_back(g);
            }
            std::uint32_t i = d;
            while (i-- > 0) {
                if (++g[i] <= u[i]) break;
                g[i] = 0;
                if (i == 0) goto done;
            }
        }
    done:;
    }

    const std::uint32_t n = static_cast<std::uint32_t>(pts.size());
    std::vector<std::string> labels(n);
    Elem zero = 0, one = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        bool is_zero = true, is_one = true;
        for (std::uint32_t k = 0; k < d; ++k) {
            if (pts[i][k] != 0) is_zero = false;
            if (pts[i][k] != u[k]) is_one = false;
        }
        if (is_zero) { zero = static_cast<Elem>(i); labels[i] = "0"; }
        else if (is_one) { one = static_cast<Elem>(i); labels[i] = "1"; }
        else labels[i] = detail::grid_label(pts[i], cone.den);
    }

    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    std::vector<std::int64_t> s(d);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a; b < n; ++b) {
            bool in_box = true;
            std::uint64_t key = 0;
            for (std::uint32_t k = 0; k < d; ++k) {
                s[k] = pts[a][k] + pts[b][k];
                if (s[k] > u[k]) { in_box = false; break; }
                key += static_cast<std::uint64_t>(s[k] * strides[k]);
            }
            if (!in_box) continue;
            std::int32_t c = box_index[key];
            if (c < 0) continue; // sum in the box but outside the cone-interval
            plus[std::size_t{a} * n + b] = static_cast<Elem>(c);
            plus[std::size_t{b} * n + a] = static_cast<Elem>(c);
        }

    if (name.empty()) {
        name = "interval-";
        name += (cone.kind == ConeKind::Standard ? "std" : "strict");
        name += "-q" + std::to_string(cone.den) + "-u";
        for (std::uint32_t i = 0; i < d; ++i) {
            if (i) name += ',';
            name += std::to_string(u[i]);
        }
    }
    return detail::must_build(
        validate_dense(name, std::move(labels), zero, one, std::move(plus), opts),
        "interval_algebra");
}

// ---------------------------------------------------------------------------
// chains and Boolean algebras

/// The (k+1)-element chain Gamma(Z, k): i + j defined iff i + j <= k.
inline EffectAlgebra mv_chain(std::uint32_t k, const ValidationOptions& opts = {}) {
    if (k < 1) throw PreconditionError("mv_chain: k must be >= 1");
    const std::uint32_t n = k + 1;
    if (n > opts.size_cap) throw BudgetError("mv_chain: carrier exceeds size cap");
    std::vector<std::string> labels(n);
    for (std::uint32_t i = 0; i < n; ++i)
        labels[i] = (i == 0) ? "0" : (i == k) ? "1" : rat_to_string(Rat(i, k));
    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; i + j <= k && j < n; ++j)
            plus[std::size_t{i} * n + j] = static_cast<Elem>(i + j);
    return detail::must_build(validate_dense("L" + std::to_string(n), std::move(labels), 0,
                                             static_cast<Elem>(k), std::move(plus), opts),
                              "mv_chain");
}

/// Subsets of an m-element set; A + B defined iff disjoint, equal to the union.
inline EffectAlgebra boolean_algebra(std::uint32_t m, const ValidationOptions& opts = {}) {
    if (m < 1) throw PreconditionError("boolean_algebra: m must be >= 1");
    if (m > 12) throw BudgetError("boolean_algebra: m capped at 12");
    const std::uint32_t n = 1u << m;
    if (n > opts.size_cap) throw BudgetError("boolean_algebra: carrier exceeds size cap");
    std::vector<std::string> labels(n);
    for (std::uint32_t mask = 0; mask < n; ++mask) {
        if (mask == 0) { labels[mask] = "0"; continue; }
        if (mask == n - 1) { labels[mask] = "1"; continue; }
        std::string s = "{";
        bool first = true;
        for (std::uint32_t i = 0; i < m; ++i)
            if (mask & (1u << i)) {
                if (!first) s += ',';
                s += std::to_string(i + 1);
                first = false;
            }
        labels[mask] = s + "}";
    }
    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            if ((a & b) == 0) plus[std::size_t{a} * n + b] = static_cast<Elem>(a | b);
    return detail::must_build(validate_dense("B" + std::to_string(m), std::move(labels), 0,
                                             static_cast<Elem>(n - 1), std::move(plus), opts),
                              "boolean_algebra");
}

// ---------------------------------------------------------------------------
// horizontal sums and direct products

/// Carriers glued at shared 0 and 1; sums defined only within one summand.
/// Elements are relabeled "s<i>:<label>" to keep summands disjoint.
inline EffectAlgebra horizontal_sum(std::span<const EffectAlgebra* const> summands,
                                    const ValidationOptions& opts = {},
                                    std::string name = "") {
    if (summands.size() < 2)
        throw PreconditionError("horizontal_sum: needs at least 2 summands");
    std::uint64_t n64 = 2;
    for (auto* S : summands) {
        if (S->size() < 2) throw PreconditionError("horizontal_sum: summand carrier too small");
        n64 += S->size() - 2;
    }
    if (n64 > opts.size_cap) throw BudgetError("horizontal_sum: carrier exceeds size cap");
    const std::uint32_t n = static_cast<std::uint32_t>(n64);

    std::vector<std::string> labels = {"0", "1"};
    labels.reserve(n);
    std::vector<std::vector<Elem>> to_global(summands.size());
    for (std::size_t t = 0; t < summands.size(); ++t) {
        const EffectAlgebra& S = *summands[t];
        auto& map = to_global[t];
        map.assign(S.size(), kNone);
        map[S.zero()] = 0;
        map[S.one()] = 1;
        for (Elem e = 0; e < S.size(); ++e) {
            if (e == S.zero() || e == S.one()) continue;
            map[e] = static_cast<Elem>(labels.size());
            labels.push_back("s" + std::to_string(t + 1) + ":" + S.label(e));
        }
    }

    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    for (std::size_t t = 0; t < summands.size(); ++t) {
        const EffectAlgebra& S = *summands[t];
        const auto& map = to_global[t];
        for (Elem a = 0; a < S.size(); ++a) {
            if (a == S.zero()) continue;
            for (Elem b = 0; b < S.size(); ++b) {
                if (b == S.zero()) continue;
                Elem c = S.plus(a, b);
                if (c != kNone) plus[std::size_t{map[a]} * n + map[b]] = map[c];
            }
        }
    }

    if (name.empty()) {
        name = "hsum(";
        for (std::size_t t = 0; t < summands.size(); ++t) {
            if (t) name += ',';
            name += summands[t]->name();
        }
        name += ')';
    }
    return detail::must_build(validate_dense(name, std::move(labels), 0, 1, std::move(plus), opts),
                              "horizontal_sum");
}

inline EffectAlgebra horizontal_sum(const std::vector<const EffectAlgebra*>& summands,
                                    const ValidationOptions& opts = {}, std::string name = "") {
    return horizontal_sum(std::span<const EffectAlgebra* const>(summands), opts, std::move(name));
}

/// MO_n: the horizontal sum of n copies of the 4-element Boolean algebra
/// (n >= 2); MO_1 is that algebra itself.
inline EffectAlgebra mo_algebra(std::uint32_t n_pairs, const ValidationOptions& opts = {}) {
    if (n_pairs < 1) throw PreconditionError("mo_algebra: n must be >= 1");
    if (n_pairs == 1) return boolean_algebra(2, opts);
    std::vector<EffectAlgebra> squares;
    squares.reserve(n_pairs);
    for (std::uint32_t i = 0; i < n_pairs; ++i) squares.push_back(boolean_algebra(2, opts));
    std::vector<const EffectAlgebra*> ptrs;
    for (auto& s : squares) ptrs.push_back(&s);
    return horizontal_sum(ptrs, opts, "MO" + std::to_string(n_pairs));
}

/// Componentwise partial addition on the product carrier.
inline EffectAlgebra direct_product(std::span<const EffectAlgebra* const> factors,
                                    const ValidationOptions& opts = {},
                                    std::string name = "") {
    if (factors.empty()) throw PreconditionError("direct_product: needs at least 1 factor");
    std::uint64_t n64 = 1;
    for (auto* F : factors) {
        n64 *= F->size();
        if (n64 > opts.size_cap) throw BudgetError("direct_product: carrier exceeds size cap");
    }
    const std::uint32_t n = static_cast<std::uint32_t>(n64);
    const std::size_t k = factors.size();

    // tuple index: first factor most significant
    std::vector<std::uint32_t> stride(k, 1);
    for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * factors[i]->size();

    auto coords = [&](std::uint32_t idx, std::vector<Elem>& out) {
        for (std::size_t i = 0; i < k; ++i) {
            out[i] = static_cast<Elem>(idx / stride[i]);
            idx %= stride[i];
        }
    };

    std::vector<std::string> labels(n);
    std::vector<Elem> t(k);
    for (std::uint32_t i = 0; i < n; ++i) {
        coords(i, t);
        std::string s = "(";
        for (std::size_t j = 0; j < k; ++j) {
            if (j) s += ',';
            s += factors[j]->label(t[j]);
        }
        labels[i] = s + ")";
    }
    std::uint32_t zero = 0, one = 0;
    for (std::size_t j = 0; j < k; ++j) {
        zero += factors[j]->zero() * stride[j];
        one += factors[j]->one() * stride[j];
    }

    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    std::vector<Elem> ta(k), tb(k);
    for (std::uint32_t a = 0; a < n; ++a) {
        coords(a, ta);
        for (std::uint32_t b = a; b < n; ++b) {
            coords(b, tb);
            std::uint32_t c = 0;
            bool ok = true;
            for (std::size_t j = 0; j < k; ++j) {
                Elem cj = factors[j]->plus(ta[j], tb[j]);
                if (cj == kNone) { ok = false; break; }
                c += cj * stride[j];
            }
            if (!ok) continue;
            plus[std::size_t{a} * n + b] = static_cast<Elem>(c);
            plus[std::size_t{b} * n + a] = static_cast<Elem>(c);
        }
    }

    if (name.empty()) {
        name = "prod(";
        for (std::size_t j = 0; j < k; ++j) {
            if (j) name += ',';
            name += factors[j]->name();
        }
        name += ')';
    }
    return detail::must_build(validate_dense(name, std::move(labels), static_cast<Elem>(zero),
                                             static_cast<Elem>(one), std::move(plus), opts),
                              "direct_product");
}

inline EffectAlgebra direct_product(const std::vector<const EffectAlgebra*>& factors,
                                    const ValidationOptions& opts = {}, std::string name = "") {
    return direct_product(std::span<const EffectAlgebra* const>(factors), opts, std::move(name));
}

// ---------------------------------------------------------------------------
// fuzzy-set algebras

struct FuzzyFunction {
    std::string label;
    std::vector<Rat> values; // one value per omega point
};

/// A finite system of [0,1]-valued functions containing the constant 1,
/// closed under f -> 1-f and under defined pointwise addition, together
/// with its effect-algebra view (function index = element index).
struct FuzzySetAlgebra {
    std::vector<std::string> omega;
    std::vector<FuzzyFunction> functions;
    EffectAlgebra view;

    static bool pointwise_leq(const std::vector<Rat>& f, const std::vector<Rat>& g) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] > g[i]) return false;
        return true;
    }
};

namespace detail {

inline std::string fuzzy_label(const std::vector<Rat>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += rat_to_string(v[i]);
    }
    return s + "]";
}

} // namespace detail

/// Smallest set of functions containing the generators and the constant 1,
/// closed under complement and defined pointwise addition.
inline FuzzySetAlgebra fuzzy_closure(std::vector<std::string> omega,
                                     const std::vector<std::vector<Rat>>& generators,
                                     const ValidationOptions& opts = {},
                                     std::string name = "") {
    if (omega.empty()) throw PreconditionError("fuzzy_closure: omega must be non-empty");
    const std::size_t d = omega.size();

    std::map<std::vector<Rat>, std::size_t> seen;
    std::vector<std::vector<Rat>> items;
    auto add = [&](std::vector<Rat> v) -> bool {
        auto [it, fresh] = seen.emplace(std::move(v), items.size());
        if (fresh) {
            if (items.size() >= opts.size_cap)
                throw BudgetError("fuzzy_closure: closure exceeds size cap " +
                                  std::to_string(opts.size_cap));
            items.push_back(it->first);
        }
        return fresh;
    };

    add(std::vector<Rat>(d, Rat(1)));
    for (auto& g : generators) {
        if (g.size() != d)
            throw PreconditionError("fuzzy_closure: generator arity mismatch");
        for (auto& v : g)
            if (v < 0 || v > 1)
                throw PreconditionError("fuzzy_closure: generator values must lie in [0,1]");
        add(g);
    }

    // breadth-first closure with a work queue
    for (std::size_t head = 0; head < items.size(); ++head) {
        std::vector<Rat> comp(d);
        for (std::size_t i = 0; i < d; ++i) comp[i] = Rat(1) - items[head][i];
        add(std::move(comp));
        for (std::size_t other = 0; other <= head; ++other) {
            bool ok = true;
            std::vector<Rat> sum(d);
            for (std::size_t i = 0; i < d; ++i) {
                sum[i] = items[head][i] + items[other][i];
                if (sum[i] > 1) { ok = false; break; }
            }
            if (ok) add(std::move(sum));
        }
    }

    // canonical order: lexicographic by value vector
    std::sort(items.begin(), items.end());
    const std::uint32_t n = static_cast<std::uint32_t>(items.size());

    std::vector<FuzzyFunction> functions;
    std::map<std::vector<Rat>, Elem> index;
    std::vector<std::string> labels(n);
    Elem zero = 0, one = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        index.emplace(items[i], static_cast<Elem>(i));
        labels[i] = detail::fuzzy_label(items[i]);
        if (items[i] == std::vector<Rat>(d, Rat(0))) zero = static_cast<Elem>(i);
        if (items[i] == std::vector<Rat>(d, Rat(1))) one = static_cast<Elem>(i);
        functions.push_back({labels[i], items[i]});
    }

    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    std::vector<Rat> sum(d);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a; b < n; ++b) {
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i) {
                sum[i] = items[a][i] + items[b][i];
                if (sum[i] > 1) { ok = false; break; }
            }
            if (!ok) continue;
            Elem c = index.at(sum);
            plus[std::size_t{a} * n + b] = c;
            plus[std::size_t{b} * n + a] = c;
        }

    if (name.empty()) name = "fuzzy-closure";
    EffectAlgebra view = detail::must_build(
        validate_dense(std::move(name), std::move(labels), zero, one, std::move(plus), opts),
        "fuzzy_closure");
    return FuzzySetAlgebra{std::move(omega), std::move(functions), std::move(view)};
}

// ---------------------------------------------------------------------------
// generated effect subalgebras

/// Least effect subalgebra containing S: fixpoint of closure under
/// orthosupplement and defined addition.
inline Bits subalgebra_generated(const EffectAlgebra& E, const Bits& seed) {
    Bits s(E.size());
    s.set(E.zero());
    s.set(E.one());
    seed.for_each([&](std::size_t i) { s.set(i); });
    bool changed = true;
    while (changed) {
        changed = false;
        auto members = s.to_indices();
        for (auto a : members) {
            Elem oa = E.ortho(static_cast<Elem>(a));
            if (!s.test(oa)) { s.set(oa); changed = true; }
            for (auto b : members) {
                Elem c = E.plus(static_cast<Elem>(a), static_cast<Elem>(b));
                if (c != kNone && !s.test(c)) { s.set(c); changed = true; }
            }
        }
    }
    return s;
}

inline Bits subalgebra_generated(const EffectAlgebra& E, std::span<const Elem> seed) {
    Bits s(E.size());
    for (Elem e : seed) s.set(e);
    return subalgebra_generated(E, s);
}

} // namespace ea
