#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ea/constructors.hpp"
#include "ea/observables.hpp"

using namespace ea;

TEST_CASE("BorelSetDesc") {
    SECTION("normalization is idempotent and merges touching parts") {
        auto A = BorelSetDesc::from_intervals(
            {{Rat(0), true, Rat(1), false}, {Rat(1), true, Rat(2), true}});
        CHECK(A.parts().size() == 1);
        auto B = BorelSetDesc::from_intervals(A.parts());
        CHECK(A == B);
    }
    SECTION("membership is exact") {
        auto A = BorelSetDesc::from_intervals({{Rat(0), false, Rat(1), false}});
        CHECK_FALSE(A.contains(Rat(0)));
        CHECK(A.contains(Rat(1, 2)));
        CHECK_FALSE(A.contains(Rat(1)));
    }
    SECTION("complement round-trips") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Interval> parts;
            int k = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < k; ++i) {
                Rat lo(static_cast<int>(rng() % 20), 1 + static_cast<int>(rng() % 3));
                Rat len(1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 3));
                parts.push_back({lo, (rng() & 1) != 0, lo + len, (rng() & 1) != 0});
            }
            auto A = BorelSetDesc::from_intervals(parts);
            CHECK(A.complement().complement() == A);
            // membership of complement is the negation
            for (int probe = 0; probe < 10; ++probe) {
                Rat t(static_cast<int>(rng() % 40), 2);
                CHECK(A.contains(t) != A.complement().contains(t));
            }
        }
    }
    SECTION("intersection distributes over membership") {
        auto A = BorelSetDesc::from_intervals({{Rat(0), true, Rat(3), true}});
        auto B = BorelSetDesc::from_intervals({{Rat(2), false, Rat(5), true}});
        auto C = A.intersect(B);
        CHECK_FALSE(C.contains(Rat(2)));
        CHECK(C.contains(Rat(5, 2)));
        CHECK(C.contains(Rat(3)));
        CHECK_FALSE(C.contains(Rat(4)));
    }
}

TEST_CASE("observable_eval") {
    auto E = mv_chain(2);
    Elem h = E.find_or_throw("1/2");
    auto x = DiscreteObservable::make(E, {{Rat(0), h}, {Rat(1), h}});
    SECTION("x(empty) = 0 and x(R) = 1") {
        CHECK(x.eval(E, BorelSetDesc::empty()) == E.zero());
        CHECK(x.eval(E, BorelSetDesc::real_line()) == E.one());
    }
    SECTION("a Dirac observable is a point mass") {
        auto d = DiscreteObservable::make(E, {{Rat(0), E.one()}});
        CHECK(d.eval(E, BorelSetDesc::from_intervals({{Rat(-1), false, Rat(1), false}})) ==
              E.one());
        CHECK(d.eval(E, BorelSetDesc::from_intervals({{Rat(1), false, Rat(2), false}})) ==
              E.zero());
    }
    SECTION("atom sums: x((-inf,1)) = h") {
        CHECK(x.eval(E, BorelSetDesc::below(Rat(1))) == h);
    }
    SECTION("complement law on sampled canonical sets") {
        std::vector<BorelSetDesc> sets = {
            BorelSetDesc::empty(), BorelSetDesc::real_line(), BorelSetDesc::point(Rat(0)),
            BorelSetDesc::below(Rat(1)),
            BorelSetDesc::from_intervals({{Rat(0), true, Rat(1), true}})};
        for (auto& A : sets) CHECK(x.eval(E, A.complement()) == E.ortho(x.eval(E, A)));
    }
    SECTION("monotone difference law x(B \\ A) = x(B) - x(A) for A inside B") {
        std::vector<BorelSetDesc> sets = {BorelSetDesc::point(Rat(0)),
                                          BorelSetDesc::below(Rat(1)),
                                          BorelSetDesc::real_line(), BorelSetDesc::empty()};
        for (auto& A : sets)
            for (auto& B : sets) {
                auto AB = A.intersect(B); // AB inside B always
                Elem vb = x.eval(E, B), va = x.eval(E, AB);
                CHECK(x.eval(E, B.difference(AB)) == E.diff(vb, va));
            }
    }
    SECTION("zero atoms are dropped and duplicate points rejected") {
        auto y = DiscreteObservable::make(E, {{Rat(0), E.zero()}, {Rat(1), E.one()}});
        CHECK(y.atoms.size() == 1);
        CHECK_THROWS_AS(DiscreteObservable::make(E, {{Rat(0), h}, {Rat(0), h}}),
                        PreconditionError);
        CHECK_THROWS_AS(DiscreteObservable::make(E, {{Rat(0), h}}), PreconditionError);
    }
}

TEST_CASE("spectral_family_of") {
    auto E = mv_chain(2);
    Elem h = E.find_or_throw("1/2");
    SECTION("Dirac at 0") {
        auto d = DiscreteObservable::make(E, {{Rat(0), E.one()}});
        auto F = spectral_family_of(E, d);
        REQUIRE(F.jumps.size() == 1);
        CHECK(F.jumps[0] == std::pair<Rat, Elem>{Rat(0), E.one()});
    }
    SECTION("partial sums of the half observable") {
        auto x = DiscreteObservable::make(E, {{Rat(0), h}, {Rat(1), h}});
        auto F = spectral_family_of(E, x);
        REQUIRE(F.jumps.size() == 2);
        CHECK(F.jumps[0] == std::pair<Rat, Elem>{Rat(0), h});
        CHECK(F.jumps[1] == std::pair<Rat, Elem>{Rat(1), E.one()});
    }
    SECTION("Boolean atoms") {
        auto B = boolean_algebra(2);
        Elem a = B.find_or_throw("{1}");
        auto x = DiscreteObservable::make(B, {{Rat(0), a}, {Rat(1), B.ortho(a)}});
        auto F = spectral_family_of(B, x);
        REQUIRE(F.jumps.size() == 2);
        CHECK(F.jumps[0].second == a);
        CHECK(F.jumps[1].second == B.one());
    }
    SECTION("spectral laws at every probe class") {
        auto x = DiscreteObservable::make(E, {{Rat(0), h}, {Rat(1), h}});
        auto F = spectral_family_of(E, x);
        std::vector<Rat> probes = {Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
        // (5.2): monotone
        for (std::size_t i = 0; i + 1 < probes.size(); ++i)
            CHECK(E.leq(F.at(E, probes[i]), F.at(E, probes[i + 1])));
        // (5.3): meet of all values is 0, join is 1
        CHECK(F.at(E, probes.front()) == E.zero());
        CHECK(F.at(E, probes.back()) == E.one());
        // (5.4): left continuity at each jump point
        for (auto& [p, v] : F.jumps) {
            Elem just_left = F.at(E, p);
            CHECK(x.eval(E, BorelSetDesc::below(p)) == just_left);
        }
    }
}

TEST_CASE("observable_from_spectral") {
    SECTION("a single jump reconstructs the Dirac observable") {
        auto E = mv_chain(2);
        auto F = SpectralFamily::make(E, {{Rat(0), E.one()}});
        auto rep = observable_from_spectral(E, F);
        CHECK(rep.observable.atoms ==
              std::vector<std::pair<Rat, Elem>>{{Rat(0), E.one()}});
        CHECK(rep.unique);
    }
    SECTION("the half family reconstructs both atoms") {
        auto E = mv_chain(2);
        Elem h = E.find_or_throw("1/2");
        auto F = SpectralFamily::make(E, {{Rat(0), h}, {Rat(1), E.one()}});
        auto rep = observable_from_spectral(E, F);
        CHECK(rep.observable.atoms ==
              std::vector<std::pair<Rat, Elem>>{{Rat(0), h}, {Rat(1), h}});
        CHECK(rep.hyp_rdp_dmp); // chains satisfy both readings
        CHECK(rep.hyp_rip_dmp);
    }
    SECTION("MO2 reconstruction stays inside one block") {
        auto E = mo_algebra(2);
        Elem a = E.find_or_throw("s1:{1}");
        auto F = SpectralFamily::make(E, {{Rat(0), a}, {Rat(1), E.one()}});
        auto rep = observable_from_spectral(E, F);
        REQUIRE(rep.observable.atoms.size() == 2);
        CHECK(rep.observable.atoms[0].second == a);
        CHECK(rep.observable.atoms[1].second == E.ortho(a));
        CHECK_FALSE(rep.hyp_rdp_dmp); // MO2 has no RDP
        CHECK(rep.hyp_rip_dmp);
        CHECK(rep.hyp_homogeneous);
    }
    SECTION("round trip on seeded random observables") {
        std::mt19937_64 rng(17);
        std::vector<EffectAlgebra> corpus;
        corpus.push_back(mv_chain(4));
        corpus.push_back(boolean_algebra(3));
        corpus.push_back(mo_algebra(2));
        for (auto& E : corpus)
            for (int trial = 0; trial < 30; ++trial) {
                // random summable decomposition of 1 into at most 4 parts
                std::vector<std::pair<Rat, Elem>> atoms;
                Elem acc = E.zero();
                int point = 0;
                while (acc != E.one() && static_cast<int>(atoms.size()) < 3) {
                    Elem rest = E.ortho(acc);
                    auto below = E.down().row_bits(rest).to_indices();
                    Elem part = static_cast<Elem>(below[rng() % below.size()]);
                    if (part == E.zero()) continue;
                    atoms.push_back({Rat(point++), part});
                    acc = E.plus(acc, part);
                }
                if (acc != E.one()) atoms.push_back({Rat(point), E.ortho(acc)});
                auto x = DiscreteObservable::make(E, atoms);
                auto rep = observable_from_spectral(E, spectral_family_of(E, x));
                CHECK(rep.observable == x);
                CHECK(rep.unique);
            }
    }
    SECTION("chain violations and wrong tops are rejected") {
        auto E = mo_algebra(2);
        Elem a = E.find_or_throw("s1:{1}");
        Elem b = E.find_or_throw("s2:{1}");
        CHECK_THROWS_AS(SpectralFamily::make(E, {{Rat(0), a}, {Rat(1), b}}), PreconditionError);
        CHECK_THROWS_AS(SpectralFamily::make(E, {{Rat(0), a}}), PreconditionError);
    }
}

TEST_CASE("observable_from_jointly_compatible") {
    SECTION("a single Boolean atom") {
        auto E = boolean_algebra(2);
        Elem a = E.find_or_throw("{1}");
        std::vector<Elem> targets = {a};
        auto res = jointly_compatible(E, targets);
        REQUIRE(res.outcome == SearchOutcome::Witness);
        auto x = observable_from_jointly_compatible(E, targets, *res.witness);
        // c0 = complement of the total at 0, the part at 1
        CHECK(x.eval(E, assigned_point_set(*res.witness, 0)) == a);
        auto rng = range_of(E, x);
        CHECK(std::find(rng.range.begin(), rng.range.end(), a) != rng.range.end());
    }
    SECTION("target {1} gives a Dirac-like observable; the zero atom is dropped") {
        auto E = mv_chain(2);
        std::vector<Elem> targets = {E.one()};
        auto res = jointly_compatible(E, targets);
        REQUIRE(res.outcome == SearchOutcome::Witness);
        auto x = observable_from_jointly_compatible(E, targets, *res.witness);
        for (auto& [p, e] : x.atoms) CHECK(e != E.zero());
        CHECK(x.eval(E, assigned_point_set(*res.witness, 0)) == E.one());
    }
    SECTION("a chain of targets in L3") {
        auto E = mv_chain(2);
        Elem h = E.find_or_throw("1/2");
        std::vector<Elem> targets = {h, E.one()};
        auto res = jointly_compatible(E, targets);
        REQUIRE(res.outcome == SearchOutcome::Witness);
        auto x = observable_from_jointly_compatible(E, targets, *res.witness);
        CHECK(x.eval(E, assigned_point_set(*res.witness, 0)) == h);
        CHECK(x.eval(E, assigned_point_set(*res.witness, 1)) == E.one());
    }
    SECTION("invalid witnesses are rejected") {
        auto E = boolean_algebra(2);
        RefinementWitness bogus;
        bogus.parts = {E.one(), E.one()};
        bogus.assignment = {{0}};
        std::vector<Elem> targets = {E.one()};
        CHECK_THROWS_AS(observable_from_jointly_compatible(E, targets, bogus),
                        PreconditionError);
    }
}

TEST_CASE("range_of") {
    SECTION("Dirac range is {0, 1}") {
        auto E = mv_chain(2);
        auto d = DiscreteObservable::make(E, {{Rat(0), E.one()}});
        auto rng = range_of(E, d);
        CHECK(rng.range == std::vector<Elem>{E.zero(), E.one()});
    }
    SECTION("half-half observable has range {0, h, 1}") {
        auto E = mv_chain(2);
        Elem h = E.find_or_throw("1/2");
        auto x = DiscreteObservable::make(E, {{Rat(0), h}, {Rat(1), h}});
        auto rng = range_of(E, x);
        CHECK(rng.range == std::vector<Elem>{E.zero(), h, E.one()});
    }
    SECTION("Boolean atoms span the square") {
        auto E = boolean_algebra(2);
        Elem a = E.find_or_throw("{1}");
        auto x = DiscreteObservable::make(E, {{Rat(0), a}, {Rat(1), E.ortho(a)}});
        CHECK(range_of(E, x).range.size() == 4);
    }
    SECTION("the range is internally compatible, witnessed by the atoms") {
        auto E = mo_algebra(2);
        Elem a = E.find_or_throw("s1:{1}");
        auto x = DiscreteObservable::make(E, {{Rat(0), a}, {Rat(1), E.ortho(a)}});
        auto rng = range_of(E, x);
        CHECK(rng.internal_witness.revalidate(E, rng.range));
        CHECK(internally_compatible(E, rng.range).outcome == SearchOutcome::Witness);
    }
    SECTION("evaluation on point sets is a homomorphism from the finite Boolean algebra") {
        auto E = mv_chain(4);
        Elem q = E.find_or_throw("1/4");
        auto x = DiscreteObservable::make(E, {{Rat(0), q}, {Rat(1), q}, {Rat(2), q}, {Rat(3), q}});
        auto B = boolean_algebra(4); // subsets of the four atom points
        std::vector<Elem> map(B.size());
        for (Elem S = 0; S < B.size(); ++S) {
            std::vector<Interval> parts;
            for (std::uint32_t i = 0; i < 4; ++i)
                if ((S >> i) & 1) parts.push_back(Interval::point(Rat(i)));
            map[S] = x.eval(E, BorelSetDesc::from_intervals(parts));
        }
        CHECK(is_homomorphism(B, E, map));
    }
}
