#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ea/algebra.hpp"
#include "ea/compat.hpp"
#include "ea/constructors.hpp"
#include "ea/properties.hpp"

namespace ea {

enum class BlockKind { Strong, Ic, Rdp };

inline const char* block_kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::Strong: return "strong";
        case BlockKind::Ic: return "ic";
        case BlockKind::Rdp: return "rdp";
    }
    return "?";
}

struct Block {
    BlockKind kind = BlockKind::Strong;
    Bits members;
    std::vector<Elem> sorted; // ascending element indices
    bool is_subalgebra = false;
    std::optional<bool> is_mv;   // induced algebra passes check_mv
    std::optional<bool> has_rdp; // induced algebra passes check_rdp
};

struct BlocksBudget {
    std::uint32_t strong_cap = 512; // clique enumeration
    std::uint32_t ic_cap = 16;      // subset enumeration with search checks
    std::uint32_t rdp_cap = 64;     // subalgebra enumeration
    std::uint64_t subalgebra_cap = 200'000;
    SearchBudget search;
    ScanBudget scan;
};

namespace detail {

inline Block make_block(const EffectAlgebra& E, BlockKind kind, Bits members) {
    Block b;
    b.kind = kind;
    b.sorted.reserve(members.count());
    members.for_each([&](std::size_t i) { b.sorted.push_back(static_cast<Elem>(i)); });
    b.members = std::move(members);
    b.is_subalgebra = E.is_effect_subalgebra(b.members);
    return b;
}

inline void fill_block_flags(const EffectAlgebra& E, Block& b, const ScanBudget& scan) {
    if (!b.is_subalgebra) return;
    auto sub = E.restriction(b.members, E.name() + "|block");
    if (b.kind == BlockKind::Strong || b.kind == BlockKind::Ic)
        b.is_mv = check_mv(sub.algebra, scan).holds();
    if (b.kind == BlockKind::Rdp || b.kind == BlockKind::Ic)
        b.has_rdp = check_rdp(sub.algebra, scan).holds();
}

inline void sort_blocks(std::vector<Block>& blocks) {
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& x, const Block& y) { return x.sorted < y.sorted; });
}

/// Keeps only subsets that are maximal under inclusion.
inline std::vector<Bits> maximal_only(std::vector<Bits> sets) {
    std::vector<Bits> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < sets.size() && !dominated; ++j)
            if (i != j && !(sets[i] == sets[j]) && sets[i].is_subset_of(sets[j]))
                dominated = true;
        if (!dominated) out.push_back(sets[i]);
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// strong blocks: maximal cliques of the strong-compatibility graph

inline Bitmat strong_compat_graph(const EffectAlgebra& E) {
    const std::uint32_t n = E.size();
    Bitmat g(n);
    // simple graph: no self-loops (every element is trivially strongly
    // compatible with itself; cliques need the off-diagonal relation only)
    for (Elem a = 0; a < n; ++a)
        for (Elem b = static_cast<Elem>(a + 1); b < n; ++b)
            if (strongly_compatible(E, a, b)) {
                g.set(a, b);
                g.set(b, a);
            }
    return g;
}

/// All maximal sets of mutually strongly compatible elements, in canonical
/// order. Bron-Kerbosch with pivoting; 0 and 1 are strongly compatible
/// with everything, so they sit in every block.
inline std::vector<Block> enumerate_blocks(const EffectAlgebra& E,
                                           const BlocksBudget& budget = {}) {
    const std::uint32_t n = E.size();
    if (n > budget.strong_cap)
        throw BudgetError("enumerate_blocks: carrier " + std::to_string(n) + " exceeds cap " +
                          std::to_string(budget.strong_cap));
    Bitmat g = strong_compat_graph(E);

    std::vector<Bits> cliques;
    Bits all(n);
    for (Elem i = 0; i < n; ++i) all.set(i);

    auto neighbors = [&](Elem v) { return g.row_bits(v); };

    auto bk = [&](auto&& self, Bits R, Bits P, Bits X) -> void {
        if (P.none() && X.none()) {
            cliques.push_back(R);
            return;
        }
        // pivot: vertex of P|X with most neighbors inside P
        Elem pivot = kNone;
        std::size_t best = 0;
        (P | X).for_each([&](std::size_t u) {
            Bits t = neighbors(static_cast<Elem>(u));
            t &= P;
            std::size_t c = t.count();
            if (pivot == kNone || c > best) { pivot = static_cast<Elem>(u); best = c; }
        });
        Bits cand = P;
        if (pivot != kNone) {
            Bits nb = neighbors(pivot);
            for (std::size_t w = 0; w < cand.words().size(); ++w)
                cand.words()[w] &= ~nb.words()[w];
        }
        std::vector<std::uint32_t> vs = cand.to_indices();
        for (auto vi : vs) {
            Elem v = static_cast<Elem>(vi);
            Bits nv = neighbors(v);
            Bits R2 = R;
            R2.set(v);
            self(self, R2, P & nv, X & nv);
            P.reset(v);
            X.set(v);
        }
    };
    bk(bk, Bits(n), all, Bits(n));

    std::vector<Block> out;
    out.reserve(cliques.size());
    for (auto& c : cliques) {
        Block b = detail::make_block(E, BlockKind::Strong, std::move(c));
        detail::fill_block_flags(E, b, budget.scan);
        out.push_back(std::move(b));
    }
    detail::sort_blocks(out);
    return out;
}

// ---------------------------------------------------------------------------
// ic-blocks and RDP-blocks

/// All maximal internally compatible subsets that contain 1. Internal
/// compatibility is neither up- nor downward hereditary, so the search
/// enumerates every candidate subset (0 belongs to every maximal one)
/// and filters maximal sets afterwards.
inline std::vector<Block> enumerate_ic_blocks(const EffectAlgebra& E,
                                              const BlocksBudget& budget = {}) {
    const std::uint32_t n = E.size();
    if (n > budget.ic_cap)
        throw BudgetError("enumerate_ic_blocks: carrier " + std::to_string(n) + " exceeds cap " +
                          std::to_string(budget.ic_cap));

    std::vector<Elem> others;
    for (Elem e = 0; e < n; ++e)
        if (e != E.zero()) others.push_back(e);

    bool truncated = false;
    std::vector<Bits> good;
    const std::uint64_t total = 1ull << others.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        Bits s(n);
        s.set(E.zero());
        for (std::size_t i = 0; i < others.size(); ++i)
            if ((mask >> i) & 1) s.set(others[i]);
        auto res = internally_compatible(E, s, budget.search);
        if (res.outcome == SearchOutcome::BudgetExceeded) { truncated = true; continue; }
        if (res.outcome == SearchOutcome::Witness) good.push_back(std::move(s));
    }
    if (truncated)
        throw BudgetError("enumerate_ic_blocks: an internal-compatibility check was truncated");

    std::vector<Block> out;
    for (auto& s : detail::maximal_only(std::move(good))) {
        if (!s.test(E.one())) continue; // ic-blocks must contain 1
        Block b = detail::make_block(E, BlockKind::Ic, std::move(s));
        detail::fill_block_flags(E, b, budget.scan);
        out.push_back(std::move(b));
    }
    detail::sort_blocks(out);
    return out;
}

/// Every effect subalgebra arises by repeatedly adjoining one element and
/// closing; enumerate them all, keep those whose induced algebra has RDP,
/// and filter for maximality. Exact-set caching only: "fails RDP" is not
/// monotone under generated extension.
inline std::vector<Block> enumerate_rdp_blocks(const EffectAlgebra& E,
                                               const BlocksBudget& budget = {}) {
    const std::uint32_t n = E.size();
    if (n > budget.rdp_cap)
        throw BudgetError("enumerate_rdp_blocks: carrier " + std::to_string(n) + " exceeds cap " +
                          std::to_string(budget.rdp_cap));

    std::map<std::vector<std::uint64_t>, bool> seen; // subalgebra -> has_rdp
    std::vector<Bits> queue;
    auto push = [&](Bits s) -> bool {
        auto [it, fresh] = seen.emplace(s.words(), false);
        if (fresh) {
            if (seen.size() > budget.subalgebra_cap)
                throw BudgetError("enumerate_rdp_blocks: subalgebra enumeration exceeds cap");
            queue.push_back(std::move(s));
        }
        return fresh;
    };
    push(subalgebra_generated(E, Bits(n)));
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Bits s = queue[head];
        for (Elem x = 0; x < n; ++x) {
            if (s.test(x)) continue;
            Bits s2 = s;
            s2.set(x);
            push(subalgebra_generated(E, s2));
        }
    }

    std::vector<Bits> rdp_sets;
    for (auto& s : queue) {
        auto sub = E.restriction(s, E.name() + "|sub");
        if (check_rdp(sub.algebra, budget.scan).holds()) rdp_sets.push_back(s);
    }

    std::vector<Block> out;
    for (auto& s : detail::maximal_only(std::move(rdp_sets))) {
        Block b = detail::make_block(E, BlockKind::Rdp, std::move(s));
        detail::fill_block_flags(E, b, budget.scan);
        out.push_back(std::move(b));
    }
    detail::sort_blocks(out);
    return out;
}

// ---------------------------------------------------------------------------
// theorem verification on instances

struct BlockTheoremReport {
    bool applicable = false; // RIP and DMP hold (finiteness gives monotone sigma-completeness)
    PropertyResult rip, dmp;
    std::vector<Block> blocks;
    bool all_subalgebras = false;
    bool all_mv = false;
    bool all_lattice_closed = false; // blocks closed under existing meets/joins
    bool covers = false;
    bool ok() const {
        return applicable && all_subalgebras && all_mv && all_lattice_closed && covers;
    }
};

/// Every block of a RIP+DMP instance is an effect subalgebra and an
/// MV-algebra, blocks are closed under meet/join, and their union is the
/// whole carrier.
inline BlockTheoremReport verify_block_theorem(const EffectAlgebra& E,
                                               const BlocksBudget& budget = {}) {
    BlockTheoremReport rep;
    rep.rip = check_rip(E, budget.scan);
    rep.dmp = check_dmp(E, budget.scan);
    rep.applicable = rep.rip.holds() && rep.dmp.holds();
    if (!rep.applicable) return rep;

    rep.blocks = enumerate_blocks(E, budget);
    rep.all_subalgebras = true;
    rep.all_mv = true;
    rep.all_lattice_closed = true;
    Bits covered(E.size());
    for (auto& b : rep.blocks) {
        if (!b.is_subalgebra) rep.all_subalgebras = false;
        if (!b.is_mv.value_or(false)) rep.all_mv = false;
        for (Elem x : b.sorted) {
            covered.set(x);
            for (Elem y : b.sorted) {
                Elem m = E.meet(x, y), j = E.join(x, y);
                if (m == kNone || j == kNone || !b.members.test(m) || !b.members.test(j))
                    rep.all_lattice_closed = false;
            }
        }
    }
    rep.covers = covered.count() == E.size();
    return rep;
}

struct HomogeneousBlockReport {
    bool applicable = false; // instance is homogeneous
    PropertyResult homogeneous;
    std::vector<Block> ic_blocks;
    std::vector<Block> rdp_blocks;
    bool families_equal = false; // as families of subsets
    bool covers = false;         // union of ic-blocks is the carrier
    bool ok() const { return applicable && families_equal && covers; }
};

/// On a homogeneous instance the ic-blocks coincide with the RDP-blocks
/// and cover the carrier.
inline HomogeneousBlockReport verify_homogeneous_block_theorem(const EffectAlgebra& E,
                                                               const BlocksBudget& budget = {}) {
    HomogeneousBlockReport rep;
    rep.homogeneous = check_homogeneous(E, budget.scan);
    rep.applicable = rep.homogeneous.holds();
    if (!rep.applicable) return rep;

    rep.ic_blocks = enumerate_ic_blocks(E, budget);
    rep.rdp_blocks = enumerate_rdp_blocks(E, budget);
    rep.families_equal = rep.ic_blocks.size() == rep.rdp_blocks.size();
    if (rep.families_equal)
        for (std::size_t i = 0; i < rep.ic_blocks.size(); ++i)
            if (!(rep.ic_blocks[i].sorted == rep.rdp_blocks[i].sorted)) rep.families_equal = false;
    Bits covered(E.size());
    for (auto& b : rep.ic_blocks)
        for (Elem x : b.sorted) covered.set(x);
    rep.covers = covered.count() == E.size();
    return rep;
}

} // namespace ea
