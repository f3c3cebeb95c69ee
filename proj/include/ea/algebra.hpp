#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ea/bits.hpp"
#include "ea/errors.hpp"

namespace ea {

/// Carrier element, identified by its dense index in [0, n).
using Elem = std::uint16_t;

/// Marker for "undefined" in partial-operation tables and for
/// "does not exist" results (meet/join/diff).
inline constexpr Elem kNone = 0xFFFF;

/// Soft carrier cap; larger inputs need an explicit override.
inline constexpr std::uint32_t kDefaultCarrierCap = 16384;

/// Raw partial-addition data, index level. The io layer resolves labels
/// to indices before validation.
struct TableData {
    std::string name;
    std::vector<std::string> labels;
    Elem zero = 0;
    Elem one = 0;
    std::vector<std::array<Elem, 3>> triples; // a + b = c
};

struct ValidationOptions {
    std::uint32_t size_cap = kDefaultCarrierCap;
    // Associativity is cubic; above this tuple count it is checked on a
    // deterministic seeded sample instead, and the report says so.
    std::uint64_t max_assoc_tuples = 100'000'000;
    std::uint64_t assoc_samples = 200'000;
    std::uint64_t seed = 0xEA5EED;
};

struct Violation {
    enum class Kind { Structural, Axiom };
    Kind kind = Kind::Axiom;
    std::string axiom;               // "i", "ii", "iii", "iv", "cancellation", "structural"
    std::vector<Elem> witness;       // minimal witness elements, if applicable
    std::string message;
};

struct ValidationReport {
    bool ok = false;
    bool assoc_sampled = false;      // axiom (ii) checked on a sample only
    std::uint64_t seed = 0;
    std::vector<Violation> violations;

    bool has_structural() const {
        for (auto& v : violations)
            if (v.kind == Violation::Kind::Structural) return true;
        return false;
    }
};

class EffectAlgebra;
struct ValidationResult;
struct Restriction;

namespace detail {

/// Lazily filled meet/join cache. Dense atomic tables for small carriers,
/// mutex-guarded hash map otherwise. Entries are deterministic, so a
/// racing recomputation stores the same value; observable behavior equals
/// eager precomputation.
class MeetJoinCache {
public:
    static constexpr Elem kUnknown = 0xFFFE;

    void init(std::uint32_t n) {
        n_ = n;
        dense_ = (static_cast<std::uint64_t>(n) * n) <= (2048ULL * 2048ULL);
        if (dense_) {
            meet_d_ = std::make_unique<std::atomic<Elem>[]>(std::size_t{n} * n);
            join_d_ = std::make_unique<std::atomic<Elem>[]>(std::size_t{n} * n);
            for (std::size_t i = 0; i < std::size_t{n} * n; ++i) {
                meet_d_[i].store(kUnknown, std::memory_order_relaxed);
                join_d_[i].store(kUnknown, std::memory_order_relaxed);
            }
        } else {
            sparse_ = std::make_unique<Sparse>();
        }
    }

    template <typename Compute>
    Elem get(bool meet, Elem a, Elem b, Compute&& compute) const {
        if (a > b) std::swap(a, b);
        if (dense_) {
            auto& tab = meet ? meet_d_ : join_d_;
            std::size_t idx = std::size_t{a} * n_ + b;
            Elem v = tab[idx].load(std::memory_order_relaxed);
            if (v != kUnknown) return v;
            Elem r = compute(a, b);
            tab[idx].store(r, std::memory_order_relaxed);
            return r;
        }
        std::uint32_t key = (std::uint32_t{a} << 16) | b;
        {
            std::shared_lock lk(sparse_->mx);
            const auto& m = meet ? sparse_->meet : sparse_->join;
            auto it = m.find(key);
            if (it != m.end()) return it->second;
        }
        Elem r = compute(a, b);
        {
            std::unique_lock lk(sparse_->mx);
            auto& m = meet ? sparse_->meet : sparse_->join;
            m.emplace(key, r);
        }
        return r;
    }

private:
    struct Sparse {
        std::shared_mutex mx;
        std::unordered_map<std::uint32_t, Elem> meet, join;
    };
    std::uint32_t n_ = 0;
    bool dense_ = false;
    mutable std::unique_ptr<std::atomic<Elem>[]> meet_d_, join_d_;
    std::unique_ptr<Sparse> sparse_;
};

} // namespace detail

/// A finite effect algebra: partial commutative/associative addition with
/// unique orthosupplements, plus the derived order-theoretic vocabulary.
/// Immutable after construction; all queries are safe to run concurrently.
class EffectAlgebra {
public:
    EffectAlgebra(EffectAlgebra&&) = default;
    EffectAlgebra& operator=(EffectAlgebra&&) = default;

    std::uint32_t size() const { return n_; }
    const std::string& name() const { return name_; }
    Elem zero() const { return zero_; }
    Elem one() const { return one_; }

    const std::string& label(Elem e) const { return labels_[e]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Elem> find(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    Elem find_or_throw(const std::string& label) const {
        auto e = find(label);
        if (!e) throw StructuralError("no element labeled '" + label + "' in " + name_);
        return *e;
    }

    bool defined(Elem a, Elem b) const { return plus_[idx(a, b)] != kNone; }
    /// a + b, or kNone when undefined.
    Elem plus(Elem a, Elem b) const { return plus_[idx(a, b)]; }

    bool leq(Elem a, Elem b) const { return diff_[idx(b, a)] != kNone; }
    /// b - a: the unique c with a + c = b, or kNone when not a <= b.
    Elem diff(Elem b, Elem a) const { return diff_[idx(b, a)]; }
    Elem diff_checked(Elem b, Elem a) const {
        Elem c = diff(b, a);
        if (c == kNone)
            throw PreconditionError("diff(" + label(b) + ", " + label(a) + "): '" +
                                    label(a) + "' is not below '" + label(b) + "'");
        return c;
    }

    Elem ortho(Elem a) const { return ortho_[a]; }

    /// Greatest lower bound, or kNone when it does not exist
    /// (nonexistence is a normal result, not an error).
    Elem meet(Elem a, Elem b) const {
        return cache_.get(true, a, b, [this](Elem x, Elem y) { return compute_meet(x, y); });
    }
    Elem join(Elem a, Elem b) const {
        return cache_.get(false, a, b, [this](Elem x, Elem y) { return compute_join(x, y); });
    }

    /// Length of the longest chain from zero to e.
    std::uint16_t rank(Elem e) const { return rank_[e]; }
    std::uint16_t height() const { return rank_[one_]; }
    /// All elements ordered by decreasing rank (ties by ascending index).
    const std::vector<Elem>& by_rank_desc() const { return by_rank_desc_; }

    const Bitmat& up() const { return up_; }     // row(a) = { b : a <= b }
    const Bitmat& down() const { return down_; } // row(a) = { b : b <= a }
    std::size_t row_words() const { return up_.words_per_row(); }

    bool is_summable(std::span<const Elem> xs) const {
        Elem acc = zero_;
        for (Elem x : xs) {
            acc = plus(acc, x);
            if (acc == kNone) return false;
        }
        return true;
    }

    /// Total of a summable list; the empty sum is zero.
    Elem sum_family(std::span<const Elem> xs) const {
        Elem acc = zero_;
        std::size_t k = 0;
        for (Elem x : xs) {
            ++k;
            acc = plus(acc, x);
            if (acc == kNone)
                throw NotSummableError("family is not summable: prefix of length " +
                                           std::to_string(k) + " has undefined sum",
                                       k);
        }
        return acc;
    }

    bool is_effect_subalgebra(const Bits& s) const {
        if (!s.test(zero_) || !s.test(one_)) return false;
        bool ok = true;
        s.for_each([&](std::size_t a) {
            if (!ok) return;
            if (!s.test(ortho_[static_cast<Elem>(a)])) { ok = false; return; }
            s.for_each([&](std::size_t b) {
                if (!ok) return;
                Elem c = plus(static_cast<Elem>(a), static_cast<Elem>(b));
                if (c != kNone && !s.test(c)) ok = false;
            });
        });
        return ok;
    }
    bool is_effect_subalgebra(std::span<const Elem> members) const {
        Bits s(n_);
        for (Elem e : members) s.set(e);
        return is_effect_subalgebra(s);
    }

    /// The induced algebra on an effect subalgebra, with element mapping
    /// back into the parent. Defined below as ea::Restriction.
    Restriction restriction(const Bits& members, const std::string& sub_name) const;

    /// Raw triples in canonical order (a <= b by index), excluding
    /// zero-rules; used by serialization and the state equations.
    std::vector<std::array<Elem, 3>> canonical_triples() const {
        std::vector<std::array<Elem, 3>> out;
        for (Elem a = 0; a < n_; ++a) {
            if (a == zero_) continue;
            for (Elem b = a; b < n_; ++b) {
                if (b == zero_) continue;
                Elem c = plus(a, b);
                if (c != kNone) out.push_back({a, b, c});
            }
        }
        return out;
    }

private:
    friend ValidationResult validate_dense(std::string, std::vector<std::string>, Elem, Elem,
                                           std::vector<Elem>, const ValidationOptions&);

    EffectAlgebra() = default;

    std::size_t idx(Elem a, Elem b) const { return std::size_t{a} * n_ + b; }

    Elem compute_meet(Elem a, Elem b) const {
        if (leq(a, b)) return a;
        if (leq(b, a)) return b;
        // lower bounds = down(a) & down(b); the greatest element, if any,
        // is the unique one of maximal rank.
        const std::uint64_t* ra = down_.row(a);
        const std::uint64_t* rb = down_.row(b);
        std::size_t words = down_.words_per_row();
        Elem best = kNone;
        std::uint16_t best_rank = 0;
        detail::rows_and_for_each(ra, rb, words, [&](std::size_t i) {
            Elem e = static_cast<Elem>(i);
            if (best == kNone || rank_[e] > best_rank) { best = e; best_rank = rank_[e]; }
        });
        if (best == kNone) return kNone; // cannot happen: zero is always below
        if (detail::rows_and_subset(ra, rb, down_.row(best), words)) return best;
        return kNone;
    }

    Elem compute_join(Elem a, Elem b) const {
        if (leq(a, b)) return b;
        if (leq(b, a)) return a;
        const std::uint64_t* ra = up_.row(a);
        const std::uint64_t* rb = up_.row(b);
        std::size_t words = up_.words_per_row();
        Elem best = kNone;
        std::uint16_t best_rank = 0;
        detail::rows_and_for_each(ra, rb, words, [&](std::size_t i) {
            Elem e = static_cast<Elem>(i);
            if (best == kNone || rank_[e] < best_rank) { best = e; best_rank = rank_[e]; }
        });
        if (best == kNone) return kNone;
        if (detail::rows_and_subset(ra, rb, up_.row(best), words)) return best;
        return kNone;
    }

    std::string name_;
    std::uint32_t n_ = 0;
    Elem zero_ = 0, one_ = 0;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Elem> index_;
    std::vector<Elem> plus_;  // n*n, kNone = undefined
    std::vector<Elem> diff_;  // diff_[b*n+a] = b - a when a <= b
    std::vector<Elem> ortho_;
    Bitmat up_, down_;
    std::vector<std::uint16_t> rank_;
    std::vector<Elem> by_rank_desc_;
    mutable detail::MeetJoinCache cache_;
};

struct ValidationResult {
    ValidationReport report;
    std::optional<EffectAlgebra> algebra; // present iff report.ok
};

/// Result of EffectAlgebra::restriction: the induced algebra on an effect
/// subalgebra plus the element mapping back into the parent.
struct Restriction {
    EffectAlgebra algebra;
    std::vector<Elem> to_parent; // sub index -> parent index
};

ValidationResult validate_axioms(const TableData& data, const ValidationOptions& opts = {});

/// Same checks, but takes the dense n*n table directly (kNone = undefined).
/// Constructors use this to avoid materializing huge triple lists.
ValidationResult validate_dense(std::string name, std::vector<std::string> labels, Elem zero,
                                Elem one, std::vector<Elem> plus,
                                const ValidationOptions& opts = {});

/// h : E -> F is a homomorphism iff h(1)=1 and h preserves every defined
/// sum. On finite algebras every homomorphism is automatically a
/// sigma-homomorphism.
inline bool is_homomorphism(const EffectAlgebra& E, const EffectAlgebra& F,
                            std::span<const Elem> map) {
    if (map.size() != E.size()) return false;
    for (Elem x : map)
        if (x >= F.size()) return false;
    if (map[E.one()] != F.one()) return false;
    for (Elem a = 0; a < E.size(); ++a)
        for (Elem b = a; b < E.size(); ++b) {
            Elem c = E.plus(a, b);
            if (c == kNone) continue;
            Elem fc = F.plus(map[a], map[b]);
            if (fc == kNone || fc != map[c]) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// validation

inline ValidationResult validate_dense(std::string name, std::vector<std::string> labels,
                                       Elem zero, Elem one, std::vector<Elem> plus,
                                       const ValidationOptions& opts) {
    ValidationResult result;
    ValidationReport& rep = result.report;
    rep.seed = opts.seed;
    auto structural = [&](const std::string& msg) {
        rep.violations.push_back({Violation::Kind::Structural, "structural", {}, msg});
    };
    auto axiom = [&](const std::string& id, std::vector<Elem> w, const std::string& msg) {
        rep.violations.push_back({Violation::Kind::Axiom, id, std::move(w), msg});
    };

    const std::uint64_t n64 = labels.size();
    if (n64 < 2) { structural("carrier must have at least 2 elements"); return result; }
    if (n64 > opts.size_cap)
        throw BudgetError("carrier size " + std::to_string(n64) + " exceeds cap " +
                          std::to_string(opts.size_cap));
    const std::uint32_t n = static_cast<std::uint32_t>(n64);
    if (plus.size() != std::size_t{n} * n)
        throw StructuralError("dense table has wrong size");

    {
        std::unordered_map<std::string, Elem> seen;
        for (Elem i = 0; i < n; ++i) {
            auto [it, fresh] = seen.emplace(labels[i], i);
            if (!fresh) structural("duplicate label '" + labels[i] + "'");
        }
    }
    if (zero >= n || one >= n) { structural("zero/one out of range"); return result; }
    if (zero == one) structural("zero and one must differ");
    for (Elem v : plus)
        if (v != kNone && v >= n) { structural("table value out of range"); break; }
    if (rep.has_structural()) return result;

    auto at = [&](Elem a, Elem b) -> Elem& { return plus[std::size_t{a} * n + b]; };

    // commutative closure; asymmetric conflicts violate axiom (i)
    for (Elem a = 0; a < n; ++a)
        for (Elem b = static_cast<Elem>(a + 1); b < n; ++b) {
            Elem c = at(a, b), d = at(b, a);
            if (c == kNone && d == kNone) continue;
            if (c == kNone)
                at(a, b) = d;
            else if (d == kNone)
                at(b, a) = c;
            else if (c != d)
                axiom("i", {a, b}, "a+b and b+a are both defined but differ");
        }
    // forced rules 0 + x = x
    for (Elem x = 0; x < n; ++x) {
        Elem& z = at(zero, x);
        if (z != kNone && z != x) {
            structural("entry conflicts with forced rule 0+x=x at x=" + labels[x]);
            return result;
        }
        z = x;
        at(x, zero) = x;
    }

    // axiom (iv): a + 1 defined implies a = 0
    for (Elem a = 0; a < n; ++a)
        if (a != zero && at(a, one) != kNone)
            axiom("iv", {a}, "a+1 is defined but a is not zero");

    // axiom (iii): unique orthosupplement for every element
    std::vector<Elem> ortho(n, kNone);
    for (Elem a = 0; a < n; ++a) {
        Elem found = kNone;
        bool unique = true;
        for (Elem x = 0; x < n; ++x) {
            if (at(a, x) != one) continue;
            if (found == kNone)
                found = x;
            else {
                unique = false;
                axiom("iii", {a, found, x}, "two distinct orthosupplements for the same element");
                break;
            }
        }
        if (found == kNone)
            axiom("iii", {a}, "element has no orthosupplement");
        else if (unique)
            ortho[a] = found;
    }

    // cancellation / uniqueness of differences (validated rather than assumed)
    std::vector<Elem> diff(std::size_t{n} * n, kNone);
    auto dslot = [&](Elem b, Elem a) -> Elem& { return diff[std::size_t{b} * n + a]; };
    for (Elem a = 0; a < n; ++a)
        for (Elem c = 0; c < n; ++c) {
            Elem b = at(a, c);
            if (b == kNone) continue;
            Elem& s = dslot(b, a);
            if (s == kNone)
                s = c;
            else if (s != c)
                axiom("cancellation", {a, s, c}, "a+c1 = a+c2 with c1 != c2");
        }

    // axiom (ii): associativity, exhaustive when the cube fits the budget
    const std::uint64_t cube = n64 * n64 * n64;
    auto check_assoc = [&](Elem a, Elem b, Elem c) -> bool {
        Elem ab = at(a, b);
        Elem bc = at(b, c);
        bool L = ab != kNone && at(ab, c) != kNone;
        bool R = bc != kNone && at(a, bc) != kNone;
        if (L != R) {
            axiom("ii", {a, b, c}, "one association order is defined, the other is not");
            return false;
        }
        if (L && at(ab, c) != at(a, bc)) {
            axiom("ii", {a, b, c}, "(a+b)+c != a+(b+c)");
            return false;
        }
        return true;
    };
    if (cube <= opts.max_assoc_tuples) {
        bool stop = false;
        for (Elem a = 0; a < n && !stop; ++a)
            for (Elem b = a; b < n && !stop; ++b)
                for (Elem c = b; c < n; ++c) {
                    // (ii) is symmetric in outer arguments given (i); checking
                    // ordered triples of each multiset covers all by closure
                    if (!check_assoc(a, b, c) || !check_assoc(a, c, b) || !check_assoc(b, a, c)) {
                        stop = true;
                        break;
                    }
                }
    } else {
        rep.assoc_sampled = true;
        std::mt19937_64 rng(opts.seed);
        auto draw = [&]() { return static_cast<Elem>(rng() % n); };
        for (std::uint64_t i = 0; i < opts.assoc_samples; ++i)
            if (!check_assoc(draw(), draw(), draw())) break;
    }

    // antisymmetry of the derived order (a theorem when all axioms hold
    // exhaustively; rechecked cheaply to guard the sampled mode)
    if (rep.violations.empty()) {
        for (Elem a = 0; a < n && rep.violations.empty(); ++a)
            for (Elem b = 0; b < n; ++b)
                if (a != b && dslot(b, a) != kNone && dslot(a, b) != kNone) {
                    axiom("cancellation", {a, b}, "derived order is not antisymmetric");
                    break;
                }
    }

    rep.ok = rep.violations.empty();
    if (!rep.ok) return result;

    EffectAlgebra E;
    E.name_ = std::move(name);
    E.n_ = n;
    E.zero_ = zero;
    E.one_ = one;
    E.labels_ = std::move(labels);
    for (Elem i = 0; i < n; ++i) E.index_.emplace(E.labels_[i], i);
    E.plus_ = std::move(plus);
    E.diff_ = std::move(diff);
    E.ortho_ = std::move(ortho);

    E.up_ = Bitmat(n);
    E.down_ = Bitmat(n);
    for (Elem b = 0; b < n; ++b)
        for (Elem a = 0; a < n; ++a)
            if (E.diff_[std::size_t{b} * n + a] != kNone) {
                E.up_.set(a, b);
                E.down_.set(b, a);
            }

    // longest-chain ranks via topological order by down-set size
    E.rank_.assign(n, 0);
    {
        std::vector<Elem> order(n);
        for (Elem i = 0; i < n; ++i) order[i] = i;
        std::vector<std::size_t> dsz(n);
        for (Elem i = 0; i < n; ++i) dsz[i] = E.down_.row_bits(i).count();
        std::sort(order.begin(), order.end(), [&](Elem x, Elem y) {
            return dsz[x] != dsz[y] ? dsz[x] < dsz[y] : x < y;
        });
        for (Elem e : order) {
            std::uint16_t r = 0;
            E.down_.row_bits(e).for_each([&](std::size_t i) {
                if (static_cast<Elem>(i) != e)
                    r = std::max<std::uint16_t>(r, static_cast<std::uint16_t>(E.rank_[i] + 1));
            });
            E.rank_[e] = r;
        }
    }
    E.by_rank_desc_.resize(n);
    for (Elem i = 0; i < n; ++i) E.by_rank_desc_[i] = i;
    std::sort(E.by_rank_desc_.begin(), E.by_rank_desc_.end(), [&](Elem x, Elem y) {
        return E.rank_[x] != E.rank_[y] ? E.rank_[x] > E.rank_[y] : x < y;
    });

    E.cache_.init(n);
    result.algebra = std::move(E);
    return result;
}

inline ValidationResult validate_axioms(const TableData& data, const ValidationOptions& opts) {
    ValidationResult result;
    auto structural = [&](const std::string& msg) {
        result.report.violations.push_back(
            {Violation::Kind::Structural, "structural", {}, msg});
    };
    const std::uint64_t n64 = data.labels.size();
    if (n64 < 2) { structural("carrier must have at least 2 elements"); return result; }
    if (n64 > opts.size_cap)
        throw BudgetError("carrier size " + std::to_string(n64) + " exceeds cap " +
                          std::to_string(opts.size_cap));
    const std::uint32_t n = static_cast<std::uint32_t>(n64);
    for (auto& t : data.triples)
        if (t[0] >= n || t[1] >= n || t[2] >= n) {
            structural("triple references out-of-range index");
            return result;
        }

    std::vector<Elem> plus(std::size_t{n} * n, kNone);
    for (auto& t : data.triples) {
        Elem& slot = plus[std::size_t{t[0]} * n + t[1]];
        if (slot != kNone && slot != t[2]) {
            structural("conflicting entries for the same pair (" + data.labels[t[0]] + ", " +
                       data.labels[t[1]] + ")");
            return result;
        }
        slot = t[2];
    }
    return validate_dense(data.name, data.labels, data.zero, data.one, std::move(plus), opts);
}

inline Restriction EffectAlgebra::restriction(const Bits& members,
                                              const std::string& sub_name) const {
    if (!is_effect_subalgebra(members))
        throw PreconditionError("restriction: subset is not an effect subalgebra of " + name_);
    TableData td;
    td.name = sub_name;
    std::vector<Elem> to_parent;
    std::vector<Elem> to_sub(n_, kNone);
    members.for_each([&](std::size_t i) {
        to_sub[i] = static_cast<Elem>(to_parent.size());
        to_parent.push_back(static_cast<Elem>(i));
        td.labels.push_back(labels_[i]);
    });
    td.zero = to_sub[zero_];
    td.one = to_sub[one_];
    for (Elem a : to_parent)
        for (Elem b : to_parent) {
            Elem c = plus(a, b);
            if (c != kNone) td.triples.push_back({to_sub[a], to_sub[b], to_sub[c]});
        }
    auto res = validate_axioms(td);
    if (!res.report.ok)
        throw PreconditionError("restriction: induced table failed validation (internal error)");
    return {std::move(*res.algebra), std::move(to_parent)};
}

} // namespace ea
