#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/properties.hpp"

namespace ea {

/// A triple (a1, b1, c) with a = a1+c, b = b1+c and a1+b1+c defined;
/// strong additionally means a1 ^ b1 = 0.
struct CompatWitness {
    Elem a1 = kNone, b1 = kNone, c = kNone;
    bool strong = false;

    bool revalidate(const EffectAlgebra& E, Elem a, Elem b) const {
        if (E.plus(a1, c) != a || E.plus(b1, c) != b) return false;
        Elem t = E.plus(a1, b1);
        if (t == kNone || E.plus(t, c) == kNone) return false;
        if (strong && E.meet(a1, b1) != E.zero()) return false;
        return true;
    }
};

/// Witness candidates c are tried over the common lower bounds of {a,b}
/// in decreasing rank order; correctness does not depend on the order.
inline std::optional<CompatWitness> compatible(const EffectAlgebra& E, Elem a, Elem b) {
    const std::uint64_t* da = E.down().row(a);
    const std::uint64_t* db = E.down().row(b);
    for (Elem c : E.by_rank_desc()) {
        if (!((da[c >> 6] >> (c & 63)) & 1) || !((db[c >> 6] >> (c & 63)) & 1)) continue;
        Elem a1 = E.diff(a, c), b1 = E.diff(b, c);
        Elem t = E.plus(a1, b1);
        if (t != kNone && E.plus(t, c) != kNone) return CompatWitness{a1, b1, c, false};
    }
    return std::nullopt;
}

inline std::optional<CompatWitness> strongly_compatible(const EffectAlgebra& E, Elem a, Elem b) {
    const std::uint64_t* da = E.down().row(a);
    const std::uint64_t* db = E.down().row(b);
    for (Elem c : E.by_rank_desc()) {
        if (!((da[c >> 6] >> (c & 63)) & 1) || !((db[c >> 6] >> (c & 63)) & 1)) continue;
        Elem a1 = E.diff(a, c), b1 = E.diff(b, c);
        Elem t = E.plus(a1, b1);
        if (t == kNone || E.plus(t, c) == kNone) continue;
        if (E.meet(a1, b1) == E.zero()) return CompatWitness{a1, b1, c, true};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// joint and internal compatibility

/// A summable list refining every target as a subset-sum.
struct RefinementWitness {
    std::vector<Elem> parts;
    std::vector<std::vector<std::uint32_t>> assignment; // per target: indices into parts

    bool revalidate(const EffectAlgebra& E, std::span<const Elem> targets) const {
        if (!E.is_summable(parts)) return false;
        if (assignment.size() != targets.size()) return false;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            std::vector<Elem> sel;
            for (auto idx : assignment[i]) {
                if (idx >= parts.size()) return false;
                sel.push_back(parts[idx]);
            }
            if (!E.is_summable(sel) || E.sum_family(sel) != targets[i]) return false;
        }
        return true;
    }
};

enum class SearchOutcome { Witness, NoWitness, BudgetExceeded };

struct JointResult {
    SearchOutcome outcome = SearchOutcome::NoWitness;
    std::optional<RefinementWitness> witness;
    std::uint64_t nodes = 0;
};

struct SearchBudget {
    std::size_t max_targets = 5;
    std::uint64_t max_nodes = 5'000'000;
};

namespace detail {

/// Joint compatibility search over parts indexed by nonempty target
/// subsets: a summable family (d_T) with a_i = sum of { d_T : T owns i }
/// exists iff the targets are jointly compatible (group any witness's
/// parts by the set of targets they serve). Shared variables (|T| >= 2)
/// are branched in canonical order with memoized failure states; the
/// singleton parts are then forced as remainders.
class JointSearch {
public:
    JointSearch(const EffectAlgebra& E, std::span<const Elem> targets, const SearchBudget& b)
        : E_(E), targets_(targets.begin(), targets.end()), budget_(b) {
        const std::size_t n = targets_.size();
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
            if (std::popcount(mask) >= 2) shared_.push_back(mask);
        std::sort(shared_.begin(), shared_.end(), [](std::uint32_t x, std::uint32_t y) {
            int px = std::popcount(x), py = std::popcount(y);
            return px != py ? px > py : x < y;
        });
    }

    JointResult run() {
        JointResult res;
        std::vector<Elem> rem = targets_;
        std::vector<std::pair<std::uint32_t, Elem>> chosen;
        SearchOutcome out = dfs(0, rem, E_.zero(), chosen, res);
        res.outcome = out;
        res.nodes = nodes_;
        if (out == SearchOutcome::Witness) res.witness = std::move(found_);
        return res;
    }

private:
    SearchOutcome dfs(std::size_t vi, std::vector<Elem>& rem, Elem total,
                      std::vector<std::pair<std::uint32_t, Elem>>& chosen, JointResult& res) {
        if (++nodes_ > budget_.max_nodes) return SearchOutcome::BudgetExceeded;
        if (vi == shared_.size()) return finish(rem, total, chosen);

        std::uint64_t key = state_key(vi, rem, total);
        if (failed_.count(key)) return SearchOutcome::NoWitness;

        const std::uint32_t T = shared_[vi];
        bool truncated = false;
        // d = 0 first: this subset contributes nothing
        {
            SearchOutcome out = dfs(vi + 1, rem, total, chosen, res);
            if (out == SearchOutcome::Witness) return out;
            if (out == SearchOutcome::BudgetExceeded) truncated = true;
        }
        if (!truncated) {
            for (Elem d = 0; d < E_.size(); ++d) {
                if (d == E_.zero()) continue;
                if (E_.plus(total, d) == kNone) continue;
                bool fits = true;
                for (std::size_t i = 0; i < targets_.size() && fits; ++i)
                    if ((T >> i) & 1)
                        if (!E_.leq(d, rem[i])) fits = false;
                if (!fits) continue;
                std::vector<Elem> rem2 = rem;
                for (std::size_t i = 0; i < targets_.size(); ++i)
                    if ((T >> i) & 1) rem2[i] = E_.diff(rem2[i], d);
                chosen.push_back({T, d});
                SearchOutcome out = dfs(vi + 1, rem2, E_.plus(total, d), chosen, res);
                chosen.pop_back();
                if (out == SearchOutcome::Witness) return out;
                if (out == SearchOutcome::BudgetExceeded) { truncated = true; break; }
            }
        }
        if (truncated) return SearchOutcome::BudgetExceeded;
        failed_.insert(key);
        return SearchOutcome::NoWitness;
    }

    SearchOutcome finish(const std::vector<Elem>& rem, Elem total,
                         const std::vector<std::pair<std::uint32_t, Elem>>& chosen) {
        // singleton parts are the remainders; the whole family must be summable
        Elem t = total;
        for (std::size_t i = 0; i < targets_.size(); ++i) {
            if (rem[i] == E_.zero()) continue;
            t = E_.plus(t, rem[i]);
            if (t == kNone) return SearchOutcome::NoWitness;
        }
        RefinementWitness w;
        w.assignment.assign(targets_.size(), {});
        for (auto [T, d] : chosen) {
            for (std::size_t i = 0; i < targets_.size(); ++i)
                if ((T >> i) & 1) w.assignment[i].push_back(static_cast<std::uint32_t>(w.parts.size()));
            w.parts.push_back(d);
        }
        for (std::size_t i = 0; i < targets_.size(); ++i)
            if (rem[i] != E_.zero()) {
                w.assignment[i].push_back(static_cast<std::uint32_t>(w.parts.size()));
                w.parts.push_back(rem[i]);
            }
        if (!w.revalidate(E_, targets_))
            throw std::logic_error("jointly_compatible: constructed witness failed revalidation");
        found_ = std::move(w);
        return SearchOutcome::Witness;
    }

    std::uint64_t state_key(std::size_t vi, const std::vector<Elem>& rem, Elem total) const {
        // packs: var index, remainders, running total (targets_.size() <= 5)
        std::uint64_t h = vi;
        for (Elem r : rem) h = h * 16411 + r;
        h = h * 16411 + total;
        return h;
    }

    const EffectAlgebra& E_;
    std::vector<Elem> targets_;
    SearchBudget budget_;
    std::vector<std::uint32_t> shared_;
    std::unordered_set<std::uint64_t> failed_;
    std::optional<RefinementWitness> found_;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Exact bounded search for a common refinement of the targets.
inline JointResult jointly_compatible(const EffectAlgebra& E, std::span<const Elem> targets,
                                      const SearchBudget& budget = {}) {
    if (targets.empty() || targets.size() > budget.max_targets)
        throw PreconditionError("jointly_compatible: target count outside budget (1.." +
                                std::to_string(budget.max_targets) + ")");
    detail::JointSearch search(E, targets, budget);
    return search.run();
}

struct InternalResult {
    SearchOutcome outcome = SearchOutcome::NoWitness;
    /// One summable sequence of members refining every element of M; its
    /// restriction witnesses every finite subset at once.
    std::optional<RefinementWitness> witness;
    std::uint64_t nodes = 0;
};

/// M is internally compatible iff some summable sequence of elements OF M
/// refines every element of M (on a finite carrier, the subset with all of
/// M is the binding case; any witness for it restricts to every subset).
/// Parts are nonzero and chosen in nondecreasing index order; a summable
/// list of nonzero parts has length at most height(E).
inline InternalResult internally_compatible(const EffectAlgebra& E, const Bits& members,
                                            const SearchBudget& budget = {}) {
    InternalResult res;
    std::vector<Elem> ms;
    members.for_each([&](std::size_t i) { ms.push_back(static_cast<Elem>(i)); });

    std::vector<Elem> targets = ms; // every member must be covered
    std::vector<Elem> pool;
    for (Elem m : ms)
        if (m != E.zero()) pool.push_back(m);

    const std::uint32_t n = E.size();
    const std::size_t maxlen = E.height();
    std::uint64_t nodes = 0;
    std::vector<Elem> parts;
    std::optional<RefinementWitness> found;
    bool truncated = false;

    // reach = bitset of achievable subset-sums of the chosen parts
    std::vector<std::uint64_t> reach((n + 63) / 64, 0);
    auto set_bit = [](std::vector<std::uint64_t>& v, Elem e) {
        v[e >> 6] |= std::uint64_t{1} << (e & 63);
    };
    auto covered = [&](const std::vector<std::uint64_t>& v) {
        for (Elem t : targets)
            if (!((v[t >> 6] >> (t & 63)) & 1)) return false;
        return true;
    };
    set_bit(reach, E.zero());

    std::unordered_set<std::uint64_t> failed;
    auto state_key = [&](std::size_t pi, Elem total, const std::vector<std::uint64_t>& v) {
        std::uint64_t h = pi * 1000003ULL + total;
        for (auto w : v) h = h * 1099511628211ULL + w;
        return h;
    };

    auto dfs = [&](auto&& self, std::size_t pi, Elem total,
                   const std::vector<std::uint64_t>& v) -> bool {
        if (covered(v)) {
            RefinementWitness w;
            w.parts = parts;
            // assignments recovered per target by subset-sum search over parts
            for (Elem t : targets) {
                std::vector<std::uint32_t> sel;
                // DFS over parts for an exact decomposition of t
                auto pick = [&](auto&& pick_self, std::size_t idx, Elem acc) -> bool {
                    if (acc == t) return true;
                    if (idx == w.parts.size()) return false;
                    Elem nxt = E.plus(acc, w.parts[idx]);
                    if (nxt != kNone && E.leq(nxt, t)) {
                        sel.push_back(static_cast<std::uint32_t>(idx));
                        if (pick_self(pick_self, idx + 1, nxt)) return true;
                        sel.pop_back();
                    }
                    return pick_self(pick_self, idx + 1, acc);
                };
                if (!pick(pick, 0, E.zero()))
                    throw std::logic_error("internally_compatible: cover lost an assignment");
                w.assignment.push_back(std::move(sel));
            }
            if (!w.revalidate(E, targets))
                throw std::logic_error("internally_compatible: witness failed revalidation");
            found = std::move(w);
            return true;
        }
        if (parts.size() >= maxlen) return false;
        if (++nodes > budget.max_nodes) { truncated = true; return false; }
        std::uint64_t key = state_key(pi, total, v);
        if (failed.count(key)) return false;
        for (std::size_t i = pi; i < pool.size(); ++i) {
            Elem c = pool[i];
            Elem t2 = E.plus(total, c);
            if (t2 == kNone) continue;
            auto v2 = v;
            for (std::uint32_t w = 0; w < v.size(); ++w) {
                std::uint64_t bits = v[w];
                while (bits) {
                    unsigned b = std::countr_zero(bits);
                    bits &= bits - 1;
                    Elem s = static_cast<Elem>(w * 64 + b);
                    Elem s2 = E.plus(s, c);
                    if (s2 != kNone) set_bit(v2, s2);
                }
            }
            parts.push_back(c);
            if (self(self, i, t2, v2)) return true;
            parts.pop_back();
            if (truncated) return false;
        }
        failed.insert(key);
        return false;
    };

    bool ok = dfs(dfs, 0, E.zero(), reach);
    res.nodes = nodes;
    if (ok) {
        res.outcome = SearchOutcome::Witness;
        res.witness = std::move(found);
    } else {
        res.outcome = truncated ? SearchOutcome::BudgetExceeded : SearchOutcome::NoWitness;
    }
    return res;
}

inline InternalResult internally_compatible(const EffectAlgebra& E, std::span<const Elem> members,
                                            const SearchBudget& budget = {}) {
    Bits b(E.size());
    for (Elem m : members) b.set(m);
    return internally_compatible(E, b, budget);
}

// ---------------------------------------------------------------------------
// instance verification of the distributivity and difference propositions

struct VerifyStatus {
    enum class Outcome { Ok, Violated, PreconditionFailed } outcome = Outcome::Ok;
    std::string detail;
    bool ok() const { return outcome == Outcome::Ok; }
};

/// For an ascending chain a_1 <= ... <= a_m with b strongly compatible with
/// every a_i (in a RIP instance): b is strongly compatible with the join
/// and b ^ (V a_i) = V (b ^ a_i). A violation on a conforming instance is
/// a library bug, reported as Violated.
inline VerifyStatus verify_prop_3_2(const EffectAlgebra& E, Elem b, std::span<const Elem> chain,
                                    const ScanBudget& budget = {}) {
    VerifyStatus st;
    auto pre = [&](const std::string& msg) {
        st.outcome = VerifyStatus::Outcome::PreconditionFailed;
        st.detail = msg;
        return st;
    };
    if (chain.empty()) return pre("empty chain");
    auto rip = check_rip(E, budget);
    if (!rip.holds()) return pre("instance does not satisfy RIP");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        if (!E.leq(chain[i], chain[i + 1])) return pre("elements do not form an ascending chain");
    for (Elem a : chain)
        if (!strongly_compatible(E, b, a)) return pre("b is not strongly compatible with a chain element");

    // finite joins a_1 v ... v a_i (trivially the prefix maxima here)
    Elem join_all = chain[0];
    for (std::size_t i = 1; i < chain.size(); ++i) {
        join_all = E.join(join_all, chain[i]);
        if (join_all == kNone) return pre("finite join of the chain does not exist");
    }
    if (!strongly_compatible(E, b, join_all)) {
        st.outcome = VerifyStatus::Outcome::Violated;
        st.detail = "b is not strongly compatible with the join";
        return st;
    }
    Elem lhs = E.meet(b, join_all);
    if (lhs == kNone) {
        st.outcome = VerifyStatus::Outcome::Violated;
        st.detail = "b ^ (join) does not exist";
        return st;
    }
    Elem rhs = kNone;
    for (Elem a : chain) {
        Elem m = E.meet(b, a);
        if (m == kNone) {
            st.outcome = VerifyStatus::Outcome::Violated;
            st.detail = "b ^ a_i does not exist for a chain element";
            return st;
        }
        rhs = (rhs == kNone) ? m : E.join(rhs, m);
        if (rhs == kNone) {
            st.outcome = VerifyStatus::Outcome::Violated;
            st.detail = "join of the meets does not exist";
            return st;
        }
    }
    if (lhs != rhs) {
        st.outcome = VerifyStatus::Outcome::Violated;
        st.detail = "b ^ (V a_i) != V (b ^ a_i)";
    }
    return st;
}

struct Prop34Result {
    bool applicable_rdp_dmp = false; // one reading of the hypothesis
    bool applicable_rip_dmp = false; // the other reading
    VerifyStatus clause_i;  // a scom b  =>  a scom b'
    VerifyStatus clause_ii; // a scom b, a scom c, b <= c  =>  a scom (c - b)
};

inline Prop34Result verify_prop_3_4(const EffectAlgebra& E, Elem a, Elem b, Elem c,
                                    const ScanBudget& budget = {}) {
    Prop34Result res;
    auto dmp = check_dmp(E, budget);
    res.applicable_rdp_dmp = dmp.holds() && check_rdp(E, budget).holds();
    res.applicable_rip_dmp = dmp.holds() && check_rip(E, budget).holds();
    if (!res.applicable_rdp_dmp && !res.applicable_rip_dmp) {
        res.clause_i.outcome = VerifyStatus::Outcome::PreconditionFailed;
        res.clause_i.detail = "instance satisfies neither hypothesis reading";
        res.clause_ii = res.clause_i;
        return res;
    }
    if (!strongly_compatible(E, a, b)) {
        res.clause_i.outcome = VerifyStatus::Outcome::PreconditionFailed;
        res.clause_i.detail = "a is not strongly compatible with b";
        res.clause_ii = res.clause_i;
        return res;
    }
    if (!strongly_compatible(E, a, E.ortho(b))) {
        res.clause_i.outcome = VerifyStatus::Outcome::Violated;
        res.clause_i.detail = "a is not strongly compatible with b'";
    }
    if (!strongly_compatible(E, a, c)) {
        res.clause_ii.outcome = VerifyStatus::Outcome::PreconditionFailed;
        res.clause_ii.detail = "a is not strongly compatible with c";
        return res;
    }
    if (!E.leq(b, c)) {
        res.clause_ii.outcome = VerifyStatus::Outcome::PreconditionFailed;
        res.clause_ii.detail = "b is not below c";
        return res;
    }
    if (!strongly_compatible(E, a, E.diff(c, b))) {
        res.clause_ii.outcome = VerifyStatus::Outcome::Violated;
        res.clause_ii.detail = "a is not strongly compatible with c - b";
    }
    return res;
}

} // namespace ea
