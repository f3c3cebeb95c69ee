#include <catch2/catch_amalgamated.hpp>

#include "ea/constructors.hpp"
#include "ea/properties.hpp"

using namespace ea;

TEST_CASE("mv_chain sizes and MV structure") {
    CHECK(mv_chain(1).size() == 2);
    auto l3 = mv_chain(2);
    CHECK(l3.size() == 3);
    Elem h = l3.find_or_throw("1/2");
    CHECK(l3.plus(h, h) == l3.one());
    auto l5 = mv_chain(4);
    CHECK(check_mv(l5).holds());
    CHECK_THROWS_AS(mv_chain(0), PreconditionError);
}

TEST_CASE("boolean_algebra") {
    CHECK(boolean_algebra(1).size() == 2);
    auto b2 = boolean_algebra(2);
    CHECK(b2.size() == 4);
    CHECK(b2.ortho(b2.find_or_throw("{1}")) == b2.find_or_throw("{2}"));
    auto b3 = boolean_algebra(3);
    CHECK(b3.size() == 8);
    CHECK(check_rdp(b3).holds());
    CHECK_THROWS_AS(boolean_algebra(13), BudgetError);
}

TEST_CASE("interval_algebra over the standard cone") {
    ConeSpec line{ConeKind::Standard, 1, 1};
    auto g5 = interval_algebra(line, {5});
    CHECK(g5.size() == 6);
    CHECK(check_rdp(g5).holds());
    CHECK(check_lattice(g5).holds());

    ConeSpec plane{ConeKind::Standard, 2, 2};
    auto box = interval_algebra(plane, {2, 2});
    CHECK(box.size() == 9);
    CHECK(check_rdp(box).holds()); // interval in a lattice-ordered group
    CHECK(check_lattice(box).holds());
}

TEST_CASE("interval_algebra over the strict-quadrant cone") {
    ConeSpec strict{ConeKind::StrictQuadrant, 2, 10};
    auto E = interval_algebra(strict, {10, 10});
    CHECK(E.size() == 83); // {0, u} plus the 9x9 interior grid
    SECTION("grid discretization: RDP, lattice, and antilattice all fail") {
        // unlike the continuous real-plane original, the coarse grid has
        // incomparable pairs with empty strict lower boxes
        CHECK(check_rdp(E).fails());
        CHECK(check_lattice(E).fails());
        CHECK(check_antilattice(E).fails());
        CHECK(check_rip(E).fails());
    }
    SECTION("9803 elements at denominator 100") {
        ConeSpec s100{ConeKind::StrictQuadrant, 2, 100};
        auto big = interval_algebra(s100, {100, 100});
        CHECK(big.size() == 9803);
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(interval_algebra(strict, {0, 0}), PreconditionError);
        CHECK_THROWS_AS(interval_algebra(strict, {10}), PreconditionError);
        ValidationOptions tight;
        tight.size_cap = 50;
        CHECK_THROWS_AS(interval_algebra(strict, {10, 10}, tight), BudgetError);
    }
}

TEST_CASE("horizontal_sum") {
    auto b2a = boolean_algebra(2);
    auto b2b = boolean_algebra(2);
    auto mo2 = horizontal_sum({&b2a, &b2b});
    CHECK(mo2.size() == 6); // 4 + 4 - 2
    SECTION("one summand is rejected") {
        std::vector<const EffectAlgebra*> one = {&b2a};
        CHECK_THROWS_AS(horizontal_sum(one), PreconditionError);
    }
    SECTION("hsum(L3, B2) has 5 elements and is a lattice") {
        auto l3 = mv_chain(2);
        auto h = horizontal_sum({&l3, &b2a});
        CHECK(h.size() == 5);
        CHECK(check_lattice(h).holds());
        CHECK(check_rdp(h).fails()); // glued tops have no cross refinement
    }
    SECTION("MO2 fails RDP at the glued top decompositions") {
        auto r = check_rdp(mo2);
        REQUIRE(r.fails());
        REQUIRE(r.witness.size() == 4);
        // witness decomposes 1 as a+a' state and b+b' across summands
        CHECK(mo2.plus(r.witness[0], r.witness[1]) == mo2.plus(r.witness[2], r.witness[3]));
    }
}

TEST_CASE("direct_product") {
    auto two = mv_chain(1);
    auto prod22 = direct_product({&two, &two});
    CHECK(prod22.size() == 4);
    SECTION("2-chain x 2-chain is Boolean 2^2 up to labeling") {
        auto b2 = boolean_algebra(2);
        // explicit isomorphism by coordinates
        std::vector<Elem> map(prod22.size());
        for (Elem e = 0; e < prod22.size(); ++e) {
            const std::string& lab = prod22.label(e); // "(x,y)"
            bool first = lab[1] == '1';
            bool second = lab[3] == '1';
            std::uint32_t mask = (first ? 1u : 0u) | (second ? 2u : 0u);
            map[e] = static_cast<Elem>(mask);
        }
        CHECK(is_homomorphism(prod22, b2, map));
        std::vector<Elem> inv(b2.size());
        for (Elem e = 0; e < prod22.size(); ++e) inv[map[e]] = e;
        CHECK(is_homomorphism(b2, prod22, inv));
    }
    SECTION("L3 x L3 has 9 elements and keeps RDP") {
        auto l3 = mv_chain(2);
        auto p = direct_product({&l3, &l3});
        CHECK(p.size() == 9);
        CHECK(check_rdp(p).holds());
    }
    SECTION("an extra 2-chain coordinate doubles the carrier") {
        auto l3 = mv_chain(2);
        auto p = direct_product({&l3, &two});
        CHECK(p.size() == 2 * l3.size());
    }
}

TEST_CASE("fuzzy_closure") {
    SECTION("constant 1 alone gives the 2-chain") {
        auto F = fuzzy_closure({"w"}, {{Rat(1)}});
        CHECK(F.view.size() == 2);
    }
    SECTION("{1/2} closes to the three-element chain") {
        auto F = fuzzy_closure({"w"}, {{Rat(1, 2)}});
        CHECK(F.view.size() == 3);
        CHECK(check_mv(F.view).holds());
    }
    SECTION("a characteristic function closes to the Boolean square") {
        auto F = fuzzy_closure({"w1", "w2"}, {{Rat(1), Rat(0)}});
        CHECK(F.view.size() == 4);
        CHECK(check_mv(F.view).holds());
    }
    SECTION("closure cap raises a distinct error") {
        ValidationOptions tight;
        tight.size_cap = 5;
        CHECK_THROWS_AS(fuzzy_closure({"w"}, {{Rat(1, 7)}}, tight), BudgetError);
    }
    SECTION("output is order-embedded in [0,1]^Omega") {
        auto F = fuzzy_closure({"w1", "w2"}, {{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1)}});
        const auto& E = F.view;
        for (Elem a = 0; a < E.size(); ++a)
            for (Elem b = 0; b < E.size(); ++b)
                CHECK(E.leq(a, b) == FuzzySetAlgebra::pointwise_leq(F.functions[a].values,
                                                                    F.functions[b].values));
    }
}

TEST_CASE("subalgebra_generated") {
    SECTION("empty seed gives {0,1}") {
        auto E = mo_algebra(2);
        CHECK(subalgebra_generated(E, Bits(E.size())).count() == 2);
    }
    SECTION("one MO2 atom generates its diamond") {
        auto E = mo_algebra(2);
        Bits s(E.size());
        s.set(E.find_or_throw("s1:{1}"));
        auto g = subalgebra_generated(E, s);
        CHECK(g.count() == 4);
        CHECK(E.is_effect_subalgebra(g));
    }
    SECTION("1/4 generates all of L5") {
        auto E = mv_chain(4);
        Bits s(E.size());
        s.set(E.find_or_throw("1/4"));
        CHECK(subalgebra_generated(E, s).count() == E.size());
    }
    SECTION("3/4 also generates all of L5 (its complement is 1/4)") {
        auto E = mv_chain(4);
        Bits s(E.size());
        s.set(E.find_or_throw("3/4"));
        CHECK(subalgebra_generated(E, s).count() == E.size());
    }
}

TEST_CASE("every constructor output satisfies the axioms") {
    std::vector<EffectAlgebra> all;
    all.push_back(mv_chain(5));
    all.push_back(boolean_algebra(3));
    all.push_back(mo_algebra(3));
    ConeSpec strict{ConeKind::StrictQuadrant, 2, 4};
    all.push_back(interval_algebra(strict, {4, 4}));
    {
        auto l3 = mv_chain(2);
        auto b2 = boolean_algebra(2);
        all.push_back(horizontal_sum({&l3, &b2}));
        all.push_back(direct_product({&b2, &l3}));
    }
    all.push_back(fuzzy_closure({"w"}, {{Rat(1, 3)}}).view);
    for (auto& E : all) {
        TableData td{E.name(), E.labels(), E.zero(), E.one(), E.canonical_triples()};
        CHECK(validate_axioms(td).report.ok);
    }
}
