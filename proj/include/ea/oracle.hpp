#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ea/algebra.hpp"

namespace ea::oracle {

// Naive, definition-verbatim reference procedures for differential testing.
// They share only the core table representation (plus lookups); everything
// else - order, meets, searches - is recomputed here from the definitions
// by exhaustive scans. No sampling, no pruning beyond lazy conjuncts.

inline constexpr std::uint32_t kCheckCap = 64;
inline constexpr std::uint32_t kBlocksCap = 24;

struct OracleVerdict {
    std::string query;
    bool holds = false;
    std::uint64_t tuples = 0; // elementary checks performed
};

namespace detail {

inline void require_cap(const EffectAlgebra& E, std::uint32_t cap, const char* who) {
    if (E.size() > cap)
        throw BudgetError(std::string(who) + ": oracle cap " + std::to_string(cap) +
                          " exceeded (carrier " + std::to_string(E.size()) + ")");
}

inline bool o_leq(const EffectAlgebra& E, Elem a, Elem b) {
    for (Elem c = 0; c < E.size(); ++c)
        if (E.plus(a, c) == b) return true;
    return false;
}

inline Elem o_diff(const EffectAlgebra& E, Elem b, Elem a) {
    for (Elem c = 0; c < E.size(); ++c)
        if (E.plus(a, c) == b) return c;
    return kNone;
}

inline Elem o_ortho(const EffectAlgebra& E, Elem a) {
    for (Elem c = 0; c < E.size(); ++c)
        if (E.plus(a, c) == E.one()) return c;
    return kNone;
}

inline Elem o_meet(const EffectAlgebra& E, Elem a, Elem b) {
    std::vector<Elem> lower;
    for (Elem w = 0; w < E.size(); ++w)
        if (o_leq(E, w, a) && o_leq(E, w, b)) lower.push_back(w);
    Elem greatest = kNone;
    for (Elem m : lower) {
        bool top = true;
        for (Elem l : lower)
            if (!o_leq(E, l, m)) { top = false; break; }
        if (top) { greatest = m; break; }
    }
    return greatest;
}

inline Elem o_join(const EffectAlgebra& E, Elem a, Elem b) {
    std::vector<Elem> upper;
    for (Elem w = 0; w < E.size(); ++w)
        if (o_leq(E, a, w) && o_leq(E, b, w)) upper.push_back(w);
    Elem least = kNone;
    for (Elem m : upper) {
        bool bottom = true;
        for (Elem u : upper)
            if (!o_leq(E, m, u)) { bottom = false; break; }
        if (bottom) { least = m; break; }
    }
    return least;
}

inline bool o_compat(const EffectAlgebra& E, Elem a, Elem b, std::uint64_t& tuples) {
    for (Elem a1 = 0; a1 < E.size(); ++a1)
        for (Elem b1 = 0; b1 < E.size(); ++b1)
            for (Elem c = 0; c < E.size(); ++c) {
                ++tuples;
                if (E.plus(a1, c) != a || E.plus(b1, c) != b) continue;
                Elem t = E.plus(a1, b1);
                if (t != kNone && E.plus(t, c) != kNone) return true;
            }
    return false;
}

inline bool o_strong(const EffectAlgebra& E, Elem a, Elem b, std::uint64_t& tuples) {
    for (Elem a1 = 0; a1 < E.size(); ++a1)
        for (Elem b1 = 0; b1 < E.size(); ++b1)
            for (Elem c = 0; c < E.size(); ++c) {
                ++tuples;
                if (E.plus(a1, c) != a || E.plus(b1, c) != b) continue;
                Elem t = E.plus(a1, b1);
                if (t == kNone || E.plus(t, c) == kNone) continue;
                if (o_meet(E, a1, b1) == E.zero()) return true;
            }
    return false;
}

/// Joint compatibility via parts indexed by nonempty target subsets:
/// literal expansion of "there is a summable family (d_T) with
/// a_i = sum over T owning i".
inline bool o_joint(const EffectAlgebra& E, std::span<const Elem> targets,
                    std::uint64_t& tuples) {
    const std::size_t n = targets.size();
    const std::uint32_t nvars = (1u << n) - 1;
    std::vector<Elem> d(nvars, 0);
    std::vector<Elem> rem(targets.begin(), targets.end());

    auto rec = [&](auto&& self, std::uint32_t vi, Elem total) -> bool {
        if (vi == nvars) {
            for (Elem r : rem)
                if (r != E.zero()) return false;
            return true;
        }
        const std::uint32_t T = vi + 1; // subsets enumerated as 1..2^n-1
        for (Elem v = 0; v < E.size(); ++v) {
            ++tuples;
            Elem t2 = (v == E.zero()) ? total : E.plus(total, v);
            if (t2 == kNone) continue;
            bool ok = true;
            std::vector<std::pair<std::size_t, Elem>> saved;
            for (std::size_t i = 0; i < n && ok; ++i) {
                if (!((T >> i) & 1)) continue;
                Elem nd = o_diff(E, rem[i], v);
                if (nd == kNone) ok = false;
                else { saved.push_back({i, rem[i]}); rem[i] = nd; }
            }
            bool win = ok && self(self, vi + 1, t2);
            for (auto it = saved.rbegin(); it != saved.rend(); ++it) rem[it->first] = it->second;
            if (win) return true;
        }
        return false;
    };
    return rec(rec, 0, E.zero());
}

/// Internal compatibility: a summable sequence of members of M refining
/// every member of M; nonzero parts in nondecreasing order, length bounded
/// by the longest chain.
inline bool o_internal(const EffectAlgebra& E, std::span<const Elem> members,
                       std::uint64_t& tuples) {
    std::vector<Elem> pool;
    for (Elem m : members)
        if (m != E.zero()) pool.push_back(m);
    // longest chain length, computed naively
    std::size_t height = 0;
    {
        std::vector<std::size_t> depth(E.size(), 0);
        std::vector<Elem> order(E.size());
        for (Elem e = 0; e < E.size(); ++e) order[e] = e;
        std::stable_sort(order.begin(), order.end(), [&](Elem x, Elem y) {
            std::size_t cx = 0, cy = 0;
            for (Elem w = 0; w < E.size(); ++w) {
                if (o_leq(E, w, x)) ++cx;
                if (o_leq(E, w, y)) ++cy;
            }
            return cx < cy;
        });
        for (Elem e : order)
            for (Elem w = 0; w < E.size(); ++w)
                if (w != e && o_leq(E, w, e)) depth[e] = std::max(depth[e], depth[w] + 1);
        height = depth[E.one()];
    }

    std::vector<Elem> parts;
    auto covers_all = [&]() {
        for (Elem m : members) {
            // m must be a sum of a subset of parts
            bool found = false;
            auto sub = [&](auto&& self, std::size_t idx, Elem acc) -> void {
                if (found) return;
                ++tuples;
                if (acc == m) { found = true; return; }
                if (idx == parts.size()) return;
                Elem nxt = E.plus(acc, parts[idx]);
                if (nxt != kNone) self(self, idx + 1, nxt);
                if (!found) self(self, idx + 1, acc);
            };
            sub(sub, 0, E.zero());
            if (!found) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t pi, Elem total) -> bool {
        ++tuples;
        if (covers_all()) return true;
        if (parts.size() >= height) return false;
        for (std::size_t i = pi; i < pool.size(); ++i) {
            Elem t2 = E.plus(total, pool[i]);
            if (t2 == kNone) continue;
            parts.push_back(pool[i]);
            if (self(self, i, t2)) return true;
            parts.pop_back();
        }
        return false;
    };
    return rec(rec, 0, E.zero());
}

} // namespace detail

// ---------------------------------------------------------------------------
// property verdicts by literal quantifier expansion

inline OracleVerdict oracle_check(const EffectAlgebra& E, const std::string& query) {
    detail::require_cap(E, kCheckCap, "oracle_check");
    OracleVerdict v;
    v.query = query;
    const std::uint32_t n = E.size();

    if (query == "rdp") {
        v.holds = true;
        for (Elem a1 = 0; a1 < n && v.holds; ++a1)
            for (Elem a2 = 0; a2 < n && v.holds; ++a2) {
                Elem s = E.plus(a1, a2);
                if (s == kNone) continue;
                for (Elem b1 = 0; b1 < n && v.holds; ++b1)
                    for (Elem b2 = 0; b2 < n; ++b2) {
                        if (E.plus(b1, b2) != s) continue;
                        ++v.tuples;
                        bool refined = false;
                        for (Elem c11 = 0; c11 < n && !refined; ++c11) {
                            Elem c12 = detail::o_diff(E, a1, c11);
                            Elem c21 = detail::o_diff(E, b1, c11);
                            if (c12 == kNone || c21 == kNone) continue;
                            Elem c22 = detail::o_diff(E, a2, c21);
                            if (c22 != kNone && E.plus(c12, c22) == b2) refined = true;
                        }
                        if (!refined) { v.holds = false; break; }
                    }
            }
    } else if (query == "rip") {
        v.holds = true;
        for (Elem x1 = 0; x1 < n && v.holds; ++x1)
            for (Elem x2 = 0; x2 < n && v.holds; ++x2)
                for (Elem y1 = 0; y1 < n && v.holds; ++y1)
                    for (Elem y2 = 0; y2 < n; ++y2) {
                        if (!detail::o_leq(E, x1, y1) || !detail::o_leq(E, x1, y2) ||
                            !detail::o_leq(E, x2, y1) || !detail::o_leq(E, x2, y2))
                            continue;
                        ++v.tuples;
                        bool found = false;
                        for (Elem z = 0; z < n && !found; ++z)
                            if (detail::o_leq(E, x1, z) && detail::o_leq(E, x2, z) &&
                                detail::o_leq(E, z, y1) && detail::o_leq(E, z, y2))
                                found = true;
                        if (!found) { v.holds = false; break; }
                    }
    } else if (query == "dmp") {
        v.holds = true;
        for (Elem x = 0; x < n && v.holds; ++x)
            for (Elem y = 0; y < n && v.holds; ++y) {
                if (!detail::o_leq(E, x, y)) continue;
                Elem d = detail::o_diff(E, y, x);
                for (Elem z = 0; z < n; ++z) {
                    ++v.tuples;
                    if (detail::o_meet(E, x, z) == kNone) continue;
                    if (detail::o_meet(E, y, z) == kNone) continue;
                    if (detail::o_meet(E, d, z) == kNone) { v.holds = false; break; }
                }
            }
    } else if (query == "homog") {
        v.holds = true;
        for (Elem b = 0; b < n && v.holds; ++b)
            for (Elem c = 0; c < n && v.holds; ++c) {
                Elem s = E.plus(b, c);
                if (s == kNone) continue;
                Elem sp = detail::o_ortho(E, s);
                for (Elem a = 0; a < n; ++a) {
                    if (!detail::o_leq(E, a, s) || !detail::o_leq(E, a, sp)) continue;
                    ++v.tuples;
                    bool split = false;
                    for (Elem a1 = 0; a1 < n && !split; ++a1) {
                        if (!detail::o_leq(E, a1, b)) continue;
                        Elem a2 = detail::o_diff(E, a, a1);
                        if (a2 != kNone && detail::o_leq(E, a2, c)) split = true;
                    }
                    if (!split) { v.holds = false; break; }
                }
            }
    } else if (query == "lattice") {
        v.holds = true;
        for (Elem a = 0; a < n && v.holds; ++a)
            for (Elem b = 0; b < n; ++b) {
                ++v.tuples;
                if (detail::o_meet(E, a, b) == kNone || detail::o_join(E, a, b) == kNone) {
                    v.holds = false;
                    break;
                }
            }
    } else if (query == "antilattice") {
        v.holds = true;
        for (Elem a = 0; a < n && v.holds; ++a)
            for (Elem b = 0; b < n; ++b) {
                ++v.tuples;
                bool comparable = detail::o_leq(E, a, b) || detail::o_leq(E, b, a);
                if ((detail::o_meet(E, a, b) != kNone) != comparable ||
                    (detail::o_join(E, a, b) != kNone) != comparable) {
                    v.holds = false;
                    break;
                }
            }
    } else if (query == "omp") {
        v.holds = true;
        for (Elem a = 0; a < n && v.holds; ++a) {
            Elem ap = detail::o_ortho(E, a);
            if (detail::o_ortho(E, ap) != a) { v.holds = false; break; }
            if (detail::o_join(E, a, ap) != E.one()) { v.holds = false; break; }
            for (Elem b = 0; b < n; ++b) {
                ++v.tuples;
                Elem bp = detail::o_ortho(E, b);
                if (detail::o_leq(E, a, b) && !detail::o_leq(E, bp, ap)) { v.holds = false; break; }
                if (detail::o_leq(E, a, bp) && detail::o_join(E, a, b) == kNone) {
                    v.holds = false;
                    break;
                }
                if (detail::o_leq(E, a, b)) {
                    Elem j1 = detail::o_join(E, a, bp);
                    if (j1 == kNone ||
                        detail::o_join(E, a, detail::o_ortho(E, j1)) != b) {
                        v.holds = false;
                        break;
                    }
                }
            }
        }
    } else if (query == "mv") {
        v.holds = true;
        for (Elem a = 0; a < n && v.holds; ++a)
            for (Elem b = 0; b < n; ++b) {
                ++v.tuples;
                Elem m = detail::o_meet(E, a, b), j = detail::o_join(E, a, b);
                if (m == kNone || j == kNone) { v.holds = false; break; }
                if (detail::o_diff(E, j, b) != detail::o_diff(E, a, m)) {
                    v.holds = false;
                    break;
                }
            }
        if (v.holds) {
            // Chang axioms for x(+)y := x + (y ^ x'), x* := x'
            auto oplus = [&](Elem x, Elem y) -> Elem {
                Elem m = detail::o_meet(E, y, detail::o_ortho(E, x));
                return m == kNone ? kNone : E.plus(x, m);
            };
            auto star = [&](Elem x) { return detail::o_ortho(E, x); };
            for (Elem a = 0; a < n && v.holds; ++a) {
                if (oplus(a, E.zero()) != a || oplus(a, E.one()) != E.one() ||
                    star(star(a)) != a || oplus(a, star(a)) != E.one())
                    v.holds = false;
                for (Elem b = 0; b < n && v.holds; ++b) {
                    ++v.tuples;
                    if (oplus(a, b) != oplus(b, a)) v.holds = false;
                    if (v.holds &&
                        oplus(star(oplus(star(a), b)), b) != oplus(star(oplus(a, star(b))), a))
                        v.holds = false;
                    for (Elem c = 0; c < n && v.holds; ++c)
                        if (oplus(oplus(a, b), c) != oplus(a, oplus(b, c))) v.holds = false;
                }
            }
            if (v.holds && star(E.zero()) != E.one()) v.holds = false;
        }
    } else {
        throw PreconditionError("oracle_check: unknown query '" + query + "'");
    }
    return v;
}

inline OracleVerdict oracle_compat(const EffectAlgebra& E, Elem a, Elem b) {
    detail::require_cap(E, kCheckCap, "oracle_compat");
    OracleVerdict v;
    v.query = "compat";
    v.holds = detail::o_compat(E, a, b, v.tuples);
    return v;
}

inline OracleVerdict oracle_strong(const EffectAlgebra& E, Elem a, Elem b) {
    detail::require_cap(E, kCheckCap, "oracle_strong");
    OracleVerdict v;
    v.query = "strong";
    v.holds = detail::o_strong(E, a, b, v.tuples);
    return v;
}

inline OracleVerdict oracle_joint(const EffectAlgebra& E, std::span<const Elem> targets) {
    detail::require_cap(E, kCheckCap, "oracle_joint");
    OracleVerdict v;
    v.query = "joint";
    v.holds = detail::o_joint(E, targets, v.tuples);
    return v;
}

inline OracleVerdict oracle_internal(const EffectAlgebra& E, std::span<const Elem> members) {
    detail::require_cap(E, kCheckCap, "oracle_internal");
    OracleVerdict v;
    v.query = "internal";
    v.holds = detail::o_internal(E, members, v.tuples);
    return v;
}

// ---------------------------------------------------------------------------
// cap-free witness rechecks: evaluate the definitional failure condition
// at one tuple, using only naive primitives

inline bool witness_confirms_failure(const EffectAlgebra& E, const std::string& prop,
                                     std::span<const Elem> w) {
    using namespace detail;
    if (prop == "rdp" && w.size() == 4) {
        Elem a1 = w[0], a2 = w[1], b1 = w[2], b2 = w[3];
        Elem s = E.plus(a1, a2);
        if (s == kNone || E.plus(b1, b2) != s) return false;
        for (Elem c11 = 0; c11 < E.size(); ++c11) {
            Elem c12 = o_diff(E, a1, c11);
            Elem c21 = o_diff(E, b1, c11);
            if (c12 == kNone || c21 == kNone) continue;
            Elem c22 = o_diff(E, a2, c21);
            if (c22 != kNone && E.plus(c12, c22) == b2) return false; // refinement exists
        }
        return true;
    }
    if (prop == "rip" && w.size() == 4) {
        Elem x1 = w[0], x2 = w[1], y1 = w[2], y2 = w[3];
        if (!o_leq(E, x1, y1) || !o_leq(E, x1, y2) || !o_leq(E, x2, y1) || !o_leq(E, x2, y2))
            return false;
        for (Elem z = 0; z < E.size(); ++z)
            if (o_leq(E, x1, z) && o_leq(E, x2, z) && o_leq(E, z, y1) && o_leq(E, z, y2))
                return false;
        return true;
    }
    if (prop == "dmp" && w.size() == 3) {
        Elem x = w[0], y = w[1], z = w[2];
        if (!o_leq(E, x, y)) return false;
        if (o_meet(E, x, z) == kNone || o_meet(E, y, z) == kNone) return false;
        return o_meet(E, o_diff(E, y, x), z) == kNone;
    }
    if (prop == "homogeneous" && w.size() == 3) {
        Elem a = w[0], b = w[1], c = w[2];
        Elem s = E.plus(b, c);
        if (s == kNone || !o_leq(E, a, s) || !o_leq(E, a, o_ortho(E, s))) return false;
        for (Elem a1 = 0; a1 < E.size(); ++a1) {
            if (!o_leq(E, a1, b)) continue;
            Elem a2 = o_diff(E, a, a1);
            if (a2 != kNone && o_leq(E, a2, c)) return false;
        }
        return true;
    }
    if (prop == "lattice" && w.size() == 2)
        return o_meet(E, w[0], w[1]) == kNone || o_join(E, w[0], w[1]) == kNone;
    if (prop == "antilattice" && w.size() == 2) {
        bool comparable = o_leq(E, w[0], w[1]) || o_leq(E, w[1], w[0]);
        return (o_meet(E, w[0], w[1]) != kNone) != comparable ||
               (o_join(E, w[0], w[1]) != kNone) != comparable;
    }
    if (prop == "omp" && (w.size() == 1 || w.size() == 2)) {
        Elem a = w[0];
        Elem ap = o_ortho(E, a);
        if (o_ortho(E, ap) != a) return true;
        if (o_join(E, a, ap) != E.one()) return true;
        if (w.size() == 2) {
            Elem b = w[1], bp = o_ortho(E, b);
            if (o_leq(E, a, b) && !o_leq(E, bp, ap)) return true;
            if (o_leq(E, a, bp) && o_join(E, a, b) == kNone) return true;
            if (o_leq(E, a, b)) {
                Elem j1 = o_join(E, a, bp);
                if (j1 == kNone || o_join(E, a, o_ortho(E, j1)) != b) return true;
            }
        }
        return false;
    }
    if (prop == "mv" && w.size() == 2) {
        Elem x = w[0], y = w[1];
        Elem m = o_meet(E, x, y), jn = o_join(E, x, y);
        if (m == kNone || jn == kNone) return true; // not lattice-ordered
        return o_diff(E, jn, y) != o_diff(E, x, m);
    }
    if (prop == "not-compatible" && w.size() == 2) {
        std::uint64_t t = 0;
        return !o_compat(E, w[0], w[1], t);
    }
    throw PreconditionError("witness_confirms_failure: unknown property/arity '" + prop + "'");
}

// ---------------------------------------------------------------------------
// block families by literal maximality testing over all subsets

struct OracleBlocks {
    std::vector<std::vector<Elem>> strong;
    std::vector<std::vector<Elem>> ic;
    std::vector<std::vector<Elem>> rdp;
};

inline OracleBlocks oracle_blocks(const EffectAlgebra& E) {
    detail::require_cap(E, kBlocksCap, "oracle_blocks");
    const std::uint32_t n = E.size();
    std::uint64_t scratch = 0;

    // pairwise strong-compatibility matrix (naive per pair)
    std::vector<bool> strong(std::size_t{n} * n, false);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b) {
            bool s = detail::o_strong(E, a, b, scratch);
            strong[std::size_t{a} * n + b] = s;
            strong[std::size_t{b} * n + a] = s;
        }

    auto members_of = [&](std::uint32_t mask) {
        std::vector<Elem> ms;
        for (Elem e = 0; e < n; ++e)
            if ((mask >> e) & 1) ms.push_back(e);
        return ms;
    };

    OracleBlocks out;
    const std::uint32_t total = (n >= 32) ? 0xFFFFFFFFu : ((1u << n) - 1);

    // strong blocks: maximal mutually-strongly-compatible subsets
    {
        auto clique = [&](std::uint32_t mask) {
            auto ms = members_of(mask);
            for (std::size_t i = 0; i < ms.size(); ++i)
                for (std::size_t j = i + 1; j < ms.size(); ++j)
                    if (!strong[std::size_t{ms[i]} * n + ms[j]]) return false;
            return true;
        };
        for (std::uint32_t mask = 1; mask <= total && mask != 0; ++mask) {
            if (!clique(mask)) continue;
            bool maximal = true;
            for (Elem x = 0; x < n && maximal; ++x) {
                if ((mask >> x) & 1) continue;
                if (clique(mask | (1u << x))) maximal = false;
            }
            if (maximal) out.strong.push_back(members_of(mask));
        }
    }
    // ic-blocks: maximal internally compatible subsets containing 1
    {
        std::vector<std::uint32_t> ic_masks;
        for (std::uint32_t mask = 1; mask <= total && mask != 0; ++mask) {
            auto ms = members_of(mask);
            if (detail::o_internal(E, ms, scratch)) ic_masks.push_back(mask);
        }
        for (auto mask : ic_masks) {
            if (!((mask >> E.one()) & 1)) continue;
            bool maximal = true;
            for (auto other : ic_masks)
                if (other != mask && (mask & other) == mask) { maximal = false; break; }
            if (maximal) out.ic.push_back(members_of(mask));
        }
    }
    // RDP-blocks: maximal effect subalgebras whose induced algebra has RDP
    {
        auto is_subalgebra = [&](const std::vector<Elem>& ms) {
            bool has0 = false, has1 = false;
            for (Elem e : ms) {
                if (e == E.zero()) has0 = true;
                if (e == E.one()) has1 = true;
            }
            if (!has0 || !has1) return false;
            for (Elem a : ms) {
                bool found = false;
                for (Elem b : ms)
                    if (detail::o_ortho(E, a) == b) found = true;
                if (!found) return false;
                for (Elem b : ms) {
                    Elem c = E.plus(a, b);
                    if (c == kNone) continue;
                    bool in = false;
                    for (Elem m : ms)
                        if (m == c) in = true;
                    if (!in) return false;
                }
            }
            return true;
        };
        auto induced_rdp = [&](const std::vector<Elem>& ms) {
            for (Elem a1 : ms)
                for (Elem a2 : ms) {
                    Elem s = E.plus(a1, a2);
                    if (s == kNone) continue;
                    for (Elem b1 : ms)
                        for (Elem b2 : ms) {
                            if (E.plus(b1, b2) != s) continue;
                            bool refined = false;
                            for (Elem c11 : ms) {
                                if (refined) break;
                                Elem c12 = detail::o_diff(E, a1, c11);
                                Elem c21 = detail::o_diff(E, b1, c11);
                                if (c12 == kNone || c21 == kNone) continue;
                                bool c12in = false, c21in = false;
                                for (Elem m : ms) {
                                    if (m == c12) c12in = true;
                                    if (m == c21) c21in = true;
                                }
                                if (!c12in || !c21in) continue;
                                Elem c22 = detail::o_diff(E, a2, c21);
                                if (c22 == kNone) continue;
                                bool c22in = false;
                                for (Elem m : ms)
                                    if (m == c22) c22in = true;
                                if (c22in && E.plus(c12, c22) == b2) refined = true;
                            }
                            if (!refined) return false;
                        }
                }
            return true;
        };
        std::vector<std::uint32_t> good;
        for (std::uint32_t mask = 1; mask <= total && mask != 0; ++mask) {
            auto ms = members_of(mask);
            if (is_subalgebra(ms) && induced_rdp(ms)) good.push_back(mask);
        }
        for (auto mask : good) {
            bool maximal = true;
            for (auto other : good)
                if (other != mask && (mask & other) == mask) { maximal = false; break; }
            if (maximal) out.rdp.push_back(members_of(mask));
        }
    }
    auto canon = [](std::vector<std::vector<Elem>>& fam) { std::sort(fam.begin(), fam.end()); };
    canon(out.strong);
    canon(out.ic);
    canon(out.rdp);
    return out;
}

} // namespace ea::oracle
