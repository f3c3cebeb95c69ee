#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <thread>

#include "ea/algebra.hpp"
#include "ea/constructors.hpp"

using namespace ea;

namespace {

EffectAlgebra two_chain() {
    TableData td;
    td.name = "two";
    td.labels = {"0", "1"};
    td.zero = 0;
    td.one = 1;
    // {0+0=0, 0+1=1, 1+0=1} - the zero rules are forced by the loader
    td.triples = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};
    auto r = validate_axioms(td);
    REQUIRE(r.report.ok);
    return std::move(*r.algebra);
}

std::vector<EffectAlgebra> small_corpus() {
    std::vector<EffectAlgebra> out;
    out.push_back(mv_chain(1));
    out.push_back(mv_chain(2));
    out.push_back(mv_chain(4));
    out.push_back(boolean_algebra(2));
    out.push_back(boolean_algebra(3));
    out.push_back(mo_algebra(2));
    {
        auto l3 = mv_chain(2);
        out.push_back(direct_product({&l3, &l3}));
    }
    {
        auto l3 = mv_chain(2);
        auto b2 = boolean_algebra(2);
        out.push_back(horizontal_sum({&l3, &b2}));
    }
    return out;
}

} // namespace

TEST_CASE("validate_axioms accepts the smallest effect algebra") {
    auto E = two_chain();
    CHECK(E.size() == 2);
    CHECK(E.ortho(E.zero()) == E.one());
}

TEST_CASE("validate_axioms accepts the three-element chain with h+h=1") {
    auto E = mv_chain(2);
    CHECK(E.size() == 3);
    Elem h = E.find_or_throw("1/2");
    CHECK(E.plus(h, h) == E.one());
    CHECK(E.ortho(h) == h);
}

TEST_CASE("axiom (iii) rejects a second orthosupplement") {
    TableData td;
    td.name = "bad";
    td.labels = {"0", "a", "b", "c", "1"};
    td.zero = 0;
    td.one = 4;
    td.triples = {{1, 2, 4}, {1, 3, 4}}; // a+b = 1 and a+c = 1
    auto r = validate_axioms(td);
    REQUIRE_FALSE(r.report.ok);
    bool found_iii = false;
    for (auto& v : r.report.violations)
        if (v.axiom == "iii" && !v.witness.empty() && v.witness[0] == 1) found_iii = true;
    CHECK(found_iii);
}

TEST_CASE("structural errors are distinct from axiom violations") {
    SECTION("conflicting entries for the same pair") {
        TableData td;
        td.name = "conflict";
        td.labels = {"0", "a", "b", "1"};
        td.zero = 0;
        td.one = 3;
        td.triples = {{1, 2, 3}, {1, 2, 0}};
        auto r = validate_axioms(td);
        REQUIRE_FALSE(r.report.ok);
        CHECK(r.report.has_structural());
    }
    SECTION("out-of-range index") {
        TableData td;
        td.name = "range";
        td.labels = {"0", "1"};
        td.zero = 0;
        td.one = 1;
        td.triples = {{0, 5, 1}};
        auto r = validate_axioms(td);
        CHECK(r.report.has_structural());
    }
    SECTION("duplicate labels") {
        TableData td;
        td.name = "dup";
        td.labels = {"0", "x", "x", "1"};
        td.zero = 0;
        td.one = 3;
        auto r = validate_axioms(td);
        CHECK(r.report.has_structural());
    }
    SECTION("zero equals one") {
        TableData td;
        td.name = "z1";
        td.labels = {"0", "a"};
        td.zero = 0;
        td.one = 0;
        auto r = validate_axioms(td);
        CHECK(r.report.has_structural());
    }
}

TEST_CASE("leq: zero is the bottom, h below one in the chain") {
    auto E = mv_chain(2);
    Elem h = E.find_or_throw("1/2");
    for (Elem x = 0; x < E.size(); ++x) CHECK(E.leq(E.zero(), x));
    CHECK(E.leq(h, E.one()));
    CHECK(E.diff(E.one(), h) == h);
}

TEST_CASE("leq: atoms of different MO2 summands are incomparable") {
    auto E = mo_algebra(2);
    Elem a = E.find_or_throw("s1:{1}");
    Elem b = E.find_or_throw("s2:{1}");
    CHECK_FALSE(E.leq(a, b));
    CHECK_FALSE(E.leq(b, a));
}

TEST_CASE("diff basics") {
    auto E = mv_chain(4);
    for (Elem x = 0; x < E.size(); ++x) {
        CHECK(E.diff(x, E.zero()) == x);
        CHECK(E.diff(E.one(), x) == E.ortho(x));
    }
    SECTION("not-below raises") {
        Elem q = E.find_or_throw("1/4");
        Elem t = E.find_or_throw("3/4");
        CHECK(E.diff(q, t) == kNone);
        CHECK_THROWS_AS(E.diff_checked(q, t), PreconditionError);
    }
}

TEST_CASE("ortho is an involutive anti-isomorphism on every instance") {
    for (auto& E : small_corpus()) {
        CHECK(E.ortho(E.zero()) == E.one());
        CHECK(E.ortho(E.one()) == E.zero());
        for (Elem a = 0; a < E.size(); ++a) {
            CHECK(E.ortho(E.ortho(a)) == a);
            for (Elem b = 0; b < E.size(); ++b)
                CHECK(E.leq(a, b) == E.leq(E.ortho(b), E.ortho(a)));
        }
    }
}

TEST_CASE("meet and join") {
    SECTION("meet with the top is the identity") {
        for (auto& E : small_corpus())
            for (Elem a = 0; a < E.size(); ++a) CHECK(E.meet(a, E.one()) == a);
    }
    SECTION("MO2 cross-summand atoms meet at zero") {
        auto E = mo_algebra(2);
        Elem a = E.find_or_throw("s1:{1}");
        Elem b = E.find_or_throw("s2:{1}");
        CHECK(E.meet(a, b) == E.zero());
        CHECK(E.join(a, b) == E.one());
    }
    SECTION("grid instance: meets follow the strict order exactly") {
        ConeSpec strict{ConeKind::StrictQuadrant, 2, 10};
        auto E = interval_algebra(strict, {10, 10});
        // the lower box below (2,3) and (3,2) contains exactly (1,1)
        Elem x = E.find_or_throw("(2/10,3/10)");
        Elem y = E.find_or_throw("(3/10,2/10)");
        CHECK(E.meet(x, y) == E.find_or_throw("(1/10,1/10)"));
        // two maximal lower bounds: no meet
        Elem p = E.find_or_throw("(3/10,4/10)");
        Elem q = E.find_or_throw("(4/10,3/10)");
        CHECK(E.meet(p, q) == kNone);
    }
}

TEST_CASE("summability") {
    auto E = mv_chain(2);
    Elem h = E.find_or_throw("1/2");
    SECTION("empty sum is zero") {
        CHECK(E.sum_family({}) == E.zero());
    }
    SECTION("a + a' is one") {
        for (auto& A : small_corpus())
            for (Elem a = 0; a < A.size(); ++a) {
                std::vector<Elem> fam = {a, A.ortho(a)};
                REQUIRE(A.is_summable(fam));
                CHECK(A.sum_family(fam) == A.one());
            }
    }
    SECTION("three halves are not summable") {
        std::vector<Elem> fam = {h, h, h};
        CHECK_FALSE(E.is_summable(fam));
        try {
            E.sum_family(fam);
            FAIL("expected NotSummableError");
        } catch (const NotSummableError& e) {
            CHECK(e.failing_prefix_len == 3);
        }
    }
    SECTION("summability is permutation-invariant") {
        std::mt19937_64 rng(7);
        for (auto& A : small_corpus()) {
            std::vector<Elem> fam;
            for (int i = 0; i < 4; ++i) fam.push_back(static_cast<Elem>(rng() % A.size()));
            bool s = A.is_summable(fam);
            Elem total = s ? A.sum_family(fam) : kNone;
            std::sort(fam.begin(), fam.end());
            do {
                CHECK(A.is_summable(fam) == s);
                if (s) CHECK(A.sum_family(fam) == total);
            } while (std::next_permutation(fam.begin(), fam.end()));
        }
    }
}

TEST_CASE("cancellation holds on all instances") {
    for (auto& E : small_corpus())
        for (Elem a = 0; a < E.size(); ++a)
            for (Elem b = 0; b < E.size(); ++b)
                for (Elem c = 0; c < E.size(); ++c) {
                    Elem ac = E.plus(a, c), bc = E.plus(b, c);
                    if (ac != kNone && ac == bc) CHECK(a == b);
                }
}

TEST_CASE("diff recomposes") {
    for (auto& E : small_corpus())
        for (Elem a = 0; a < E.size(); ++a)
            for (Elem b = 0; b < E.size(); ++b)
                if (E.leq(a, b)) CHECK(E.plus(a, E.diff(b, a)) == b);
}

TEST_CASE("is_homomorphism") {
    auto l3 = mv_chain(2);
    auto two = mv_chain(1);
    SECTION("identity map") {
        std::vector<Elem> id(l3.size());
        for (Elem e = 0; e < l3.size(); ++e) id[e] = e;
        CHECK(is_homomorphism(l3, l3, id));
    }
    SECTION("h -> 1 is not a homomorphism (1+1 undefined)") {
        // L3 -> two-chain sending h to 1
        std::vector<Elem> map = {two.zero(), two.one(), two.one()};
        CHECK_FALSE(is_homomorphism(l3, two, map));
    }
    SECTION("point evaluation on the Boolean square is a homomorphism") {
        auto b2 = boolean_algebra(2);
        // evaluate at the atom {1}: S maps to [atom in S]
        std::vector<Elem> map(b2.size());
        Elem atom = b2.find_or_throw("{1}");
        for (Elem e = 0; e < b2.size(); ++e)
            map[e] = b2.leq(atom, e) ? two.one() : two.zero();
        CHECK(is_homomorphism(b2, two, map));
    }
}

TEST_CASE("is_effect_subalgebra") {
    auto E = mo_algebra(2);
    SECTION("{0,1} always is") {
        Bits s(E.size());
        s.set(E.zero());
        s.set(E.one());
        CHECK(E.is_effect_subalgebra(s));
    }
    SECTION("{0,a,a',1} always is") {
        for (Elem a = 0; a < E.size(); ++a) {
            Bits s(E.size());
            s.set(E.zero());
            s.set(E.one());
            s.set(a);
            s.set(E.ortho(a));
            CHECK(E.is_effect_subalgebra(s));
        }
    }
    SECTION("L5 subset {0, 1/4, 1} is not closed") {
        auto l5 = mv_chain(4);
        Bits s(l5.size());
        s.set(l5.zero());
        s.set(l5.one());
        s.set(l5.find_or_throw("1/4"));
        CHECK_FALSE(l5.is_effect_subalgebra(s));
    }
}

TEST_CASE("every constructor output revalidates") {
    for (auto& E : small_corpus()) {
        TableData td;
        td.name = E.name();
        td.labels = E.labels();
        td.zero = E.zero();
        td.one = E.one();
        td.triples = E.canonical_triples();
        auto r = validate_axioms(td);
        CHECK(r.report.ok);
    }
}

TEST_CASE("concurrent queries on a shared algebra agree with sequential ones") {
    auto E = mo_algebra(3);
    // sequential reference
    std::vector<Elem> ref;
    for (Elem a = 0; a < E.size(); ++a)
        for (Elem b = 0; b < E.size(); ++b) {
            ref.push_back(E.meet(a, b));
            ref.push_back(E.join(a, b));
        }
    auto fresh = mo_algebra(3); // cold caches
    std::vector<std::vector<Elem>> per_thread(8);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t)
        threads.emplace_back([&, t] {
            for (Elem a = 0; a < fresh.size(); ++a)
                for (Elem b = 0; b < fresh.size(); ++b) {
                    per_thread[t].push_back(fresh.meet(a, b));
                    per_thread[t].push_back(fresh.join(a, b));
                }
        });
    for (auto& th : threads) th.join();
    for (auto& got : per_thread) CHECK(got == ref);
}
