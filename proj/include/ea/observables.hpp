#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/compat.hpp"
#include "ea/properties.hpp"
#include "ea/rational.hpp"

namespace ea {

// ---------------------------------------------------------------------------
// finite unions of rational intervals in canonical disjoint normal form

struct Interval {
    std::optional<Rat> lo;  // nullopt = -infinity
    bool lo_closed = false; // meaningful only for finite lo
    std::optional<Rat> hi;  // nullopt = +infinity
    bool hi_closed = false;

    bool valid() const {
        if (!lo || !hi) return true;
        if (*lo < *hi) return true;
        return *lo == *hi && lo_closed && hi_closed; // singleton
    }
    bool contains(const Rat& t) const {
        if (lo) {
            if (t < *lo) return false;
            if (t == *lo && !lo_closed) return false;
        }
        if (hi) {
            if (t > *hi) return false;
            if (t == *hi && !hi_closed) return false;
        }
        return true;
    }
    static Interval point(Rat p) { return {p, true, p, true}; }
    static Interval below(Rat t) { return {std::nullopt, false, std::move(t), false}; }
    static Interval all() { return {std::nullopt, false, std::nullopt, false}; }

    friend bool operator==(const Interval& a, const Interval& b) {
        auto key = [](const Interval& i) {
            return std::tuple(i.lo.has_value(), i.lo ? *i.lo : Rat(0), i.lo_closed,
                              i.hi.has_value(), i.hi ? *i.hi : Rat(0), i.hi_closed);
        };
        return key(a) == key(b);
    }
};

/// Canonical description of a finite union of rational intervals and
/// singletons: parts sorted, pairwise disjoint and non-mergeable.
/// Normalization is idempotent; membership is decided exactly.
class BorelSetDesc {
public:
    BorelSetDesc() = default;

    static BorelSetDesc empty() { return {}; }
    static BorelSetDesc real_line() { return from_intervals({Interval::all()}); }
    static BorelSetDesc point(Rat p) { return from_intervals({Interval::point(std::move(p))}); }
    static BorelSetDesc below(Rat t) { return from_intervals({Interval::below(std::move(t))}); }

    static BorelSetDesc from_intervals(std::vector<Interval> parts) {
        for (auto& p : parts)
            if (!p.valid()) throw PreconditionError("BorelSetDesc: degenerate interval");
        BorelSetDesc s;
        s.parts_ = normalize(std::move(parts));
        return s;
    }

    bool is_empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }

    bool contains(const Rat& t) const {
        for (auto& p : parts_)
            if (p.contains(t)) return true;
        return false;
    }

    BorelSetDesc unite(const BorelSetDesc& o) const {
        std::vector<Interval> all = parts_;
        all.insert(all.end(), o.parts_.begin(), o.parts_.end());
        return from_intervals(std::move(all));
    }

    BorelSetDesc complement() const {
        std::vector<Interval> out;
        std::optional<Rat> cur_lo;  // current gap start (nullopt = -inf)
        bool cur_closed = false;    // gap start included?
        bool open_gap = true;
        for (auto& p : parts_) {
            if (p.lo) {
                // close the running gap just before p
                Interval g{cur_lo, cur_closed, *p.lo, !p.lo_closed};
                if (g.valid()) out.push_back(g);
            } else {
                // part starts at -inf: no gap before it
            }
            if (p.hi) {
                cur_lo = *p.hi;
                cur_closed = !p.hi_closed;
                open_gap = true;
            } else {
                open_gap = false; // part runs to +inf
            }
        }
        if (open_gap) {
            Interval g{cur_lo, cur_closed, std::nullopt, false};
            if (g.valid()) out.push_back(g);
        }
        return from_intervals(std::move(out));
    }

    BorelSetDesc intersect(const BorelSetDesc& o) const {
        std::vector<Interval> out;
        for (auto& a : parts_)
            for (auto& b : o.parts_) {
                Interval r;
                if (!a.lo) { r.lo = b.lo; r.lo_closed = b.lo_closed; }
                else if (!b.lo) { r.lo = a.lo; r.lo_closed = a.lo_closed; }
                else if (*a.lo > *b.lo) { r.lo = a.lo; r.lo_closed = a.lo_closed; }
                else if (*b.lo > *a.lo) { r.lo = b.lo; r.lo_closed = b.lo_closed; }
                else { r.lo = a.lo; r.lo_closed = a.lo_closed && b.lo_closed; }
                if (!a.hi) { r.hi = b.hi; r.hi_closed = b.hi_closed; }
                else if (!b.hi) { r.hi = a.hi; r.hi_closed = a.hi_closed; }
                else if (*a.hi < *b.hi) { r.hi = a.hi; r.hi_closed = a.hi_closed; }
                else if (*b.hi < *a.hi) { r.hi = b.hi; r.hi_closed = b.hi_closed; }
                else { r.hi = a.hi; r.hi_closed = a.hi_closed && b.hi_closed; }
                if (r.lo && r.hi && (*r.lo > *r.hi || (*r.lo == *r.hi && !(r.lo_closed && r.hi_closed))))
                    continue;
                out.push_back(r);
            }
        return from_intervals(std::move(out));
    }

    BorelSetDesc difference(const BorelSetDesc& o) const { return intersect(o.complement()); }

    friend bool operator==(const BorelSetDesc& a, const BorelSetDesc& b) {
        return a.parts_ == b.parts_;
    }

private:
    static std::vector<Interval> normalize(std::vector<Interval> parts) {
        if (parts.empty()) return parts;
        std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) {
            // -inf first; then by lo value, closed before open
            if (!x.lo || !y.lo) return !x.lo && y.lo;
            if (*x.lo != *y.lo) return *x.lo < *y.lo;
            if (x.lo_closed != y.lo_closed) return x.lo_closed;
            return false;
        });
        std::vector<Interval> out;
        for (auto& p : parts) {
            if (out.empty()) { out.push_back(p); continue; }
            Interval& last = out.back();
            // mergeable iff last.hi reaches p.lo
            bool merge;
            if (!last.hi || !p.lo)
                merge = true;
            else if (*last.hi > *p.lo)
                merge = true;
            else
                merge = (*last.hi == *p.lo) && (last.hi_closed || p.lo_closed);
            if (!merge) { out.push_back(p); continue; }
            // extend last.hi to max(last.hi, p.hi)
            if (!last.hi) continue;
            if (!p.hi) { last.hi = std::nullopt; last.hi_closed = false; continue; }
            if (*p.hi > *last.hi || (*p.hi == *last.hi && p.hi_closed)) {
                last.hi = p.hi;
                last.hi_closed = p.hi_closed;
            }
        }
        return out;
    }

    std::vector<Interval> parts_;
};

// ---------------------------------------------------------------------------
// discrete observables and spectral families

/// Finitely many atoms (point, element) with strictly increasing points,
/// elements summable with total 1, zero atoms dropped. x(A) is the sum of
/// the atoms whose points lie in A.
struct DiscreteObservable {
    std::vector<std::pair<Rat, Elem>> atoms;

    static DiscreteObservable make(const EffectAlgebra& E,
                                   std::vector<std::pair<Rat, Elem>> atoms) {
        std::sort(atoms.begin(), atoms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i + 1 < atoms.size(); ++i)
            if (atoms[i].first == atoms[i + 1].first)
                throw PreconditionError("DiscreteObservable: duplicate atom points");
        std::vector<std::pair<Rat, Elem>> kept;
        for (auto& a : atoms)
            if (a.second != E.zero()) kept.push_back(std::move(a));
        std::vector<Elem> elems;
        for (auto& a : kept) elems.push_back(a.second);
        if (!E.is_summable(elems))
            throw PreconditionError("DiscreteObservable: atoms are not summable");
        if (E.sum_family(elems) != E.one())
            throw PreconditionError("DiscreteObservable: atom total is not 1");
        return DiscreteObservable{std::move(kept)};
    }

    Elem eval(const EffectAlgebra& E, const BorelSetDesc& A) const {
        std::vector<Elem> sel;
        for (auto& a : atoms)
            if (A.contains(a.first)) sel.push_back(a.second);
        return E.sum_family(sel);
    }

    friend bool operator==(const DiscreteObservable& a, const DiscreteObservable& b) {
        return a.atoms == b.atoms;
    }
};

/// Jump encoding of t |-> x((-inf, t)): x_t = v_{#{j : p_j < t}} with
/// v_0 = 0; values form a chain ending at 1. Left-continuity is automatic
/// for this encoding.
struct SpectralFamily {
    std::vector<std::pair<Rat, Elem>> jumps;

    static SpectralFamily make(const EffectAlgebra& E, std::vector<std::pair<Rat, Elem>> jumps) {
        std::sort(jumps.begin(), jumps.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i + 1 < jumps.size(); ++i)
            if (jumps[i].first == jumps[i + 1].first)
                throw PreconditionError("SpectralFamily: duplicate jump points");
        if (jumps.empty()) throw PreconditionError("SpectralFamily: needs at least one jump");
        Elem prev = E.zero();
        for (auto& j : jumps) {
            if (!E.leq(prev, j.second))
                throw PreconditionError("SpectralFamily: values do not form an ascending chain");
            prev = j.second;
        }
        if (jumps.back().second != E.one())
            throw PreconditionError("SpectralFamily: top value must be 1");
        // canonical: drop no-op jumps (value equal to the previous one)
        std::vector<std::pair<Rat, Elem>> kept;
        prev = E.zero();
        for (auto& j : jumps) {
            if (j.second != prev) kept.push_back(j);
            prev = j.second;
        }
        return SpectralFamily{std::move(kept)};
    }

    /// x_t = value just below t.
    Elem at(const EffectAlgebra& E, const Rat& t) const {
        Elem v = E.zero();
        for (auto& j : jumps) {
            if (j.first < t) v = j.second;
            else break;
        }
        return v;
    }

    friend bool operator==(const SpectralFamily& a, const SpectralFamily& b) {
        return a.jumps == b.jumps;
    }
};

inline SpectralFamily spectral_family_of(const EffectAlgebra& E, const DiscreteObservable& x) {
    std::vector<std::pair<Rat, Elem>> jumps;
    Elem acc = E.zero();
    for (auto& a : x.atoms) {
        acc = E.plus(acc, a.second);
        if (acc == kNone)
            throw std::logic_error("spectral_family_of: atoms not summable (internal error)");
        jumps.push_back({a.first, acc});
    }
    if (jumps.empty()) jumps.push_back({Rat(0), E.one()}); // cannot happen: total is 1
    return SpectralFamily::make(E, std::move(jumps));
}

struct ReconstructionReport {
    DiscreteObservable observable;
    bool unique = false;          // reconstruction is the only discrete observable with x_t = F
    std::uint32_t probes = 0;     // probe points used for the uniqueness confirmation
    // hypothesis flags for the instance, reported alongside (reconstruction
    // itself only needs the chain structure; finite carriers are trivially
    // monotone sigma-complete and their subsets strongly so)
    bool rdp = false, dmp = false, rip = false, homogeneous = false;
    bool hyp_rdp_dmp = false;     // one reading of the reconstruction theorem
    bool hyp_rip_dmp = false;     // the other reading
    bool hyp_homogeneous = false; // homogeneity reading (RDP-block clause trivial here)
};

/// Atoms are the consecutive differences along the chain; asserts the
/// round trip and confirms uniqueness by probing every equivalence class
/// of rational probe points against the input family.
inline ReconstructionReport observable_from_spectral(const EffectAlgebra& E,
                                                     const SpectralFamily& F,
                                                     const ScanBudget& budget = {}) {
    std::vector<std::pair<Rat, Elem>> atoms;
    Elem prev = E.zero();
    for (auto& j : F.jumps) {
        Elem d = E.diff(j.second, prev); // chain: always defined
        if (d == kNone)
            throw PreconditionError("observable_from_spectral: values do not form a chain");
        atoms.push_back({j.first, d});
        prev = j.second;
    }
    ReconstructionReport rep{DiscreteObservable::make(E, std::move(atoms))};

    SpectralFamily back = spectral_family_of(E, rep.observable);
    if (!(back == F))
        throw std::logic_error("observable_from_spectral: round trip failed (internal error)");

    // uniqueness: partial sums along a chain determine the atoms
    // (cancellativity), and support outside the jump points would shift
    // x_t on some probe; probe one point per equivalence class
    std::vector<Rat> probes;
    for (std::size_t i = 0; i < F.jumps.size(); ++i) {
        probes.push_back(F.jumps[i].first);
        if (i + 1 < F.jumps.size())
            probes.push_back((F.jumps[i].first + F.jumps[i + 1].first) / 2);
    }
    probes.push_back(F.jumps.front().first - 1);
    probes.push_back(F.jumps.back().first + 1);
    rep.unique = true;
    for (auto& t : probes) {
        ++rep.probes;
        if (F.at(E, t) != rep.observable.eval(E, BorelSetDesc::below(t)))
            rep.unique = false;
    }
    if (!rep.unique)
        throw std::logic_error("observable_from_spectral: probe mismatch (internal error)");

    rep.rdp = check_rdp(E, budget).holds();
    rep.dmp = check_dmp(E, budget).holds();
    rep.rip = check_rip(E, budget).holds();
    rep.homogeneous = check_homogeneous(E, budget).holds();
    rep.hyp_rdp_dmp = rep.rdp && rep.dmp;
    rep.hyp_rip_dmp = rep.rip && rep.dmp;
    rep.hyp_homogeneous = rep.homogeneous;
    return rep;
}

/// The range construction from a joint-compatibility witness: part c_i
/// becomes an atom at the integer point i (1-based), and the complement
/// of the total sits at 0; zero atoms are dropped.
inline DiscreteObservable observable_from_jointly_compatible(const EffectAlgebra& E,
                                                             std::span<const Elem> targets,
                                                             const RefinementWitness& witness) {
    if (!witness.revalidate(E, targets))
        throw PreconditionError("observable_from_jointly_compatible: invalid witness");
    std::vector<std::pair<Rat, Elem>> atoms;
    Elem total = E.sum_family(witness.parts);
    atoms.push_back({Rat(0), E.ortho(total)});
    for (std::size_t i = 0; i < witness.parts.size(); ++i)
        atoms.push_back({Rat(i + 1), witness.parts[i]});
    return DiscreteObservable::make(E, std::move(atoms));
}

/// Points of the witness's assigned parts for one target, as a Borel set.
inline BorelSetDesc assigned_point_set(const RefinementWitness& witness, std::size_t target_idx) {
    std::vector<Interval> parts;
    for (auto idx : witness.assignment[target_idx])
        parts.push_back(Interval::point(Rat(idx + 1)));
    return BorelSetDesc::from_intervals(std::move(parts));
}

struct RangeResult {
    std::vector<Elem> range; // deduplicated, ascending
    RefinementWitness internal_witness; // the atom list refines the whole range
};

/// Range = all values x(A): only the atom subset hit by A matters, so the
/// range is the set of subset-sums of the atoms. The atom list itself
/// witnesses internal compatibility of the range.
inline RangeResult range_of(const EffectAlgebra& E, const DiscreteObservable& x) {
    if (x.atoms.size() > 20)
        throw BudgetError("range_of: more than 2^20 subset sums");
    const std::size_t m = x.atoms.size();
    std::vector<Elem> parts;
    for (auto& a : x.atoms) parts.push_back(a.second);

    std::map<Elem, std::vector<std::uint32_t>> first_subset;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        Elem acc = E.zero();
        bool ok = true;
        std::vector<std::uint32_t> sel;
        for (std::size_t i = 0; i < m && ok; ++i)
            if ((mask >> i) & 1) {
                acc = E.plus(acc, parts[i]);
                if (acc == kNone) ok = false;
                sel.push_back(static_cast<std::uint32_t>(i));
            }
        if (!ok)
            throw std::logic_error("range_of: subset of summable atoms not summable");
        first_subset.emplace(acc, sel); // keeps the first (lowest mask) subset
    }

    RangeResult res;
    res.internal_witness.parts = parts;
    for (auto& [val, sel] : first_subset) {
        res.range.push_back(val);
        res.internal_witness.assignment.push_back(sel);
    }
    if (!res.internal_witness.revalidate(E, res.range))
        throw std::logic_error("range_of: internal-compatibility witness failed revalidation");
    return res;
}

} // namespace ea
