#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/constructors.hpp"
#include "ea/exactlp.hpp"
#include "ea/rational.hpp"

namespace ea {

/// A normalized additive [0,1]-valued functional, as exact rationals.
struct State {
    std::vector<Rat> values; // one per carrier element

    bool validate(const EffectAlgebra& E) const {
        if (values.size() != E.size()) return false;
        if (values[E.one()] != 1 || values[E.zero()] != 0) return false;
        for (auto& v : values)
            if (v < 0 || v > 1) return false;
        for (Elem a = 0; a < E.size(); ++a)
            for (Elem b = a; b < E.size(); ++b) {
                Elem c = E.plus(a, b);
                if (c != kNone && values[a] + values[b] != values[c]) return false;
            }
        return true;
    }
};

/// The defining linear system: s(0)=0, s(1)=1 and one additivity equation
/// per stored sum (closure rules are implied).
inline lp::EqSystem state_system(const EffectAlgebra& E) {
    lp::EqSystem sys;
    const std::uint32_t n = E.size();
    sys.nvars = n;
    auto unit = [&](Elem e, Rat v) {
        lp::Row r(n, Rat(0));
        r[e] = 1;
        sys.A.push_back(std::move(r));
        sys.b.push_back(std::move(v));
    };
    unit(E.zero(), Rat(0));
    unit(E.one(), Rat(1));
    for (auto& t : E.canonical_triples()) {
        lp::Row r(n, Rat(0));
        r[t[0]] += 1;
        r[t[1]] += 1;
        r[t[2]] -= 1;
        bool zero_row = true;
        for (auto& v : r)
            if (v != 0) zero_row = false;
        if (zero_row) continue; // a + a = a style rows carry no information
        sys.A.push_back(std::move(r));
        sys.b.push_back(Rat(0));
    }
    return sys;
}

struct StateSearch {
    std::optional<State> state;
    std::optional<lp::FarkasCertificate> certificate; // over state_system rows, when stateless
};

/// An exact state, or a verified infeasibility certificate.
inline StateSearch find_state(const EffectAlgebra& E) {
    StateSearch out;
    lp::EqSystem sys = state_system(E);
    lp::Reduced red = lp::rref(sys);

    auto lift_certificate = [&](const std::vector<Rat>& y_red,
                                std::vector<Rat> lower,
                                std::vector<Rat> upper) {
        lp::Reduced tr = lp::rref(sys, true); // deterministic: same elimination
        lp::FarkasCertificate cert;
        cert.eq.assign(sys.A.size(), Rat(0));
        for (std::size_t r = 0; r < y_red.size(); ++r) {
            if (y_red[r] == 0) continue;
            for (std::size_t i = 0; i < sys.A.size(); ++i)
                cert.eq[i] += y_red[r] * tr.track[r][i];
        }
        cert.lower = std::move(lower);
        cert.upper = std::move(upper);
        if (!cert.verify(sys))
            throw std::logic_error("find_state: lifted certificate failed verification");
        return cert;
    };

    if (red.inconsistent) {
        std::vector<Rat> y(red.rows.size(), Rat(0));
        // the bad row reads 0 = rhs with rhs != 0; scale to make the value negative
        std::vector<Rat> y_all(red.rhs.size(), Rat(0));
        y_all[red.bad_row] = (red.rhs[red.bad_row] > 0) ? Rat(-1) : Rat(1);
        lp::Reduced tr = lp::rref(sys, true);
        lp::FarkasCertificate cert;
        cert.eq.assign(sys.A.size(), Rat(0));
        for (std::size_t i = 0; i < sys.A.size(); ++i)
            cert.eq[i] = y_all[red.bad_row] * tr.track[red.bad_row][i];
        cert.lower.assign(sys.nvars, Rat(0));
        cert.upper.assign(sys.nvars, Rat(0));
        if (!cert.verify(sys))
            throw std::logic_error("find_state: inconsistency certificate failed verification");
        out.certificate = std::move(cert);
        return out;
    }

    lp::EqSystem reduced_sys{sys.nvars, red.rows, red.rhs};
    lp::BoxSolve sol = lp::solve_box(reduced_sys);
    if (sol.feasible) {
        State s{std::move(sol.x)};
        if (!s.validate(E))
            throw std::logic_error("find_state: solver returned an invalid state");
        out.state = std::move(s);
        return out;
    }
    out.certificate = lift_certificate(sol.certificate->eq, std::move(sol.certificate->lower),
                                       std::move(sol.certificate->upper));
    return out;
}

/// All vertices of the state polytope, exact and canonically ordered.
inline std::vector<State> extreme_states(const EffectAlgebra& E, std::uint32_t carrier_cap = 64,
                                         std::size_t free_dim_cap = 12) {
    if (E.size() > carrier_cap)
        throw BudgetError("extreme_states: carrier " + std::to_string(E.size()) +
                          " exceeds cap " + std::to_string(carrier_cap));
    lp::EqSystem sys = state_system(E);
    lp::VertexEnum ve = lp::enumerate_vertices(sys, free_dim_cap);
    std::vector<State> out;
    for (auto& x : ve.vertices) {
        State s{std::move(x)};
        if (!s.validate(E))
            throw std::logic_error("extreme_states: enumerated vertex is not a state");
        out.push_back(std::move(s));
    }
    return out;
}

struct OrderDetermination {
    bool order_determining = false;
    Elem witness_a = kNone, witness_b = kNone; // s(a) <= s(b) for all s, yet not a <= b
};

/// True iff a <= b exactly when s(a) <= s(b) for every given state. The
/// forward direction follows from additivity and is asserted.
inline OrderDetermination is_order_determining(const EffectAlgebra& E,
                                               std::span<const State> states) {
    for (auto& s : states)
        if (!s.validate(E)) throw PreconditionError("is_order_determining: invalid state input");
    OrderDetermination out;
    for (Elem a = 0; a < E.size(); ++a)
        for (Elem b = 0; b < E.size(); ++b) {
            bool pointwise = true;
            for (auto& s : states)
                if (s.values[a] > s.values[b]) { pointwise = false; break; }
            if (E.leq(a, b) && !pointwise)
                throw std::logic_error(
                    "is_order_determining: a valid state decreased along <= (internal error)");
            if (!E.leq(a, b) && pointwise) {
                out.witness_a = a;
                out.witness_b = b;
                return out;
            }
        }
    out.order_determining = true;
    return out;
}

/// The function representation over an order-determining state system:
/// a |-> a^ with a^(s) = s(a); the image is an effect algebra of fuzzy
/// sets and the map is an isomorphism onto it.
struct Representation {
    std::vector<State> states;
    FuzzySetAlgebra image;
    std::vector<Elem> to_image;   // E element -> image element
    std::vector<Elem> from_image; // image element -> E element
};

inline Representation function_representation(const EffectAlgebra& E,
                                              std::vector<State> states) {
    auto od = is_order_determining(E, states);
    if (!od.order_determining)
        throw PreconditionError("function_representation: states are not order-determining");

    const std::uint32_t n = E.size();
    const std::size_t k = states.size();
    std::vector<std::vector<Rat>> hat(n, std::vector<Rat>(k));
    for (Elem a = 0; a < n; ++a)
        for (std::size_t s = 0; s < k; ++s) hat[a][s] = states[s].values[a];

    // order-determining makes a |-> a^ injective
    std::map<std::vector<Rat>, Elem> index;
    for (Elem a = 0; a < n; ++a)
        if (!index.emplace(hat[a], a).second)
            throw std::logic_error("function_representation: map is not injective");

    std::vector<std::vector<Rat>> items;
    for (auto& [vals, el] : index) items.push_back(vals);

    std::vector<std::string> omega(k);
    for (std::size_t s = 0; s < k; ++s) omega[s] = "s" + std::to_string(s);

    std::vector<FuzzyFunction> functions;
    std::vector<std::string> labels;
    Elem zero = 0, one = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        std::string lab = detail::fuzzy_label(items[i]);
        labels.push_back(lab);
        functions.push_back({lab, items[i]});
        if (index.at(items[i]) == E.zero()) zero = static_cast<Elem>(i);
        if (index.at(items[i]) == E.one()) one = static_cast<Elem>(i);
    }

    // pointwise sums: closed by order-determination (f <= 1-g pointwise
    // reflects a <= b' in E, so a+b is defined and maps to the sum)
    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    std::vector<Rat> sum(k);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a; b < n; ++b) {
            bool ok = true;
            for (std::size_t s = 0; s < k; ++s) {
                sum[s] = items[a][s] + items[b][s];
                if (sum[s] > 1) { ok = false; break; }
            }
            if (!ok) continue;
            auto it = index.find(sum);
            if (it == index.end())
                throw std::logic_error(
                    "function_representation: image not closed under defined pointwise sums");
            // locate image position of the sum
            Elem pos = 0;
            for (std::size_t i = 0; i < items.size(); ++i)
                if (items[i] == sum) { pos = static_cast<Elem>(i); break; }
            plus[std::size_t{a} * n + b] = pos;
            plus[std::size_t{b} * n + a] = pos;
        }

    EffectAlgebra view = detail::must_build(
        validate_dense(E.name() + "^", std::move(labels), zero, one, std::move(plus), {}),
        "function_representation");

    Representation rep{std::move(states),
                       FuzzySetAlgebra{std::move(omega), std::move(functions), std::move(view)},
                       {},
                       {}};
    rep.to_image.assign(n, 0);
    rep.from_image.assign(n, 0);
    for (std::size_t i = 0; i < items.size(); ++i) {
        Elem parent = index.at(items[i]);
        rep.to_image[parent] = static_cast<Elem>(i);
        rep.from_image[i] = parent;
    }

    if (!is_homomorphism(E, rep.image.view, rep.to_image) ||
        !is_homomorphism(rep.image.view, E, rep.from_image))
        throw std::logic_error("function_representation: map is not an isomorphism");
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (E.leq(a, b) !=
                FuzzySetAlgebra::pointwise_leq(hat[a], hat[b]))
                throw std::logic_error("function_representation: map is not an order isomorphism");
    return rep;
}

} // namespace ea
