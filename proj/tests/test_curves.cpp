#include <doctest.h>

#include "kodbundle/curves.hpp"
#include "oracles.hpp"

using namespace kodbundle;

namespace {
CurveModel ring_curve(long D, const char* label) {
    return CurveModel{Lattice2(QuadInt::one(D), QuadInt(Rational(0), Rational(1), D)), label};
}
}  // namespace

TEST_CASE("isogeny degree examples") {
    CurveModel E = ring_curve(2, "E");
    CHECK(isogeny_degree(identity_isogeny(E)) == 1);

    Isogeny endo(QuadInt(Rational(1), Rational(1), 2), E, E);  // mult by 1 + sqrt(-2)
    CHECK(isogeny_degree(endo) == 3);

    CurveModel F{Lattice2(QuadInt::one(2), QuadInt(Rational(0), Rational(3), 2)), "F"};
    Isogeny incl(QuadInt::one(2), F, E);
    CHECK(isogeny_degree(incl) == 3);

    CHECK_THROWS_AS(Isogeny(QuadInt::zero(2), E, E), std::invalid_argument);
    CHECK_THROWS_AS(Isogeny(QuadInt::one(2), E, F), std::invalid_argument);
}

TEST_CASE("dual isogeny examples") {
    CurveModel E = ring_curve(2, "E");
    Isogeny id = identity_isogeny(E);
    CHECK(dual_isogeny(id).multiplier() == QuadInt::one(2));

    Isogeny endo(QuadInt(Rational(1), Rational(1), 2), E, E);
    Isogeny hat = dual_isogeny(endo);
    CHECK(hat.multiplier() == QuadInt(Rational(1), Rational(-1), 2));
    CHECK(compose(endo, hat).multiplier() == QuadInt::from_rational(Rational(3), 2));

    CurveModel F{Lattice2(QuadInt::one(2), QuadInt(Rational(0), Rational(3), 2)), "F"};
    Isogeny incl(QuadInt::one(2), F, E);
    Isogeny back = dual_isogeny(incl);
    CHECK(back.multiplier() == QuadInt::from_rational(Rational(3), 2));
    CHECK(isogeny_degree(back) == 3);
}

TEST_CASE("dual composition is multiplication by the degree") {
    std::mt19937_64 rng(606);
    for (int i = 0; i < 500; ++i) {
        long D = oracle::random_discriminant(rng);
        Isogeny phi = oracle::random_isogeny(rng, D);
        Int n = isogeny_degree(phi);
        Isogeny hat = dual_isogeny(phi);
        QuadInt as_scalar = QuadInt::from_rational(Rational(n), D);
        CHECK(compose(phi, hat).multiplier() == as_scalar);
        CHECK(compose(hat, phi).multiplier() == as_scalar);
        CHECK(isogeny_degree(hat) == n);
    }
}

TEST_CASE("degree is multiplicative under composition") {
    std::mt19937_64 rng(707);
    for (int i = 0; i < 300; ++i) {
        long D = oracle::random_discriminant(rng);
        Isogeny phi = oracle::random_isogeny(rng, D);
        // compose with an endomorphism of the target
        HomLattice End = hom_lattice(phi.target().lattice, phi.target().lattice);
        QuadInt mult = End.element(Int(1 + long(rng() % 3)), Int(long(rng() % 3)));
        if (mult.is_zero()) continue;
        Isogeny chi(mult, phi.target(), phi.target());
        CHECK(isogeny_degree(compose(chi, phi)) == isogeny_degree(chi) * isogeny_degree(phi));
    }
}

TEST_CASE("torsion matrix examples") {
    CurveModel E = ring_curve(2, "E");
    TorsionMatrix id2 = torsion_matrix(identity_isogeny(E), 2);
    CHECK(id2.m == IntMat2::identity());

    Isogeny endo(QuadInt(Rational(1), Rational(1), 2), E, E);
    TorsionMatrix t = torsion_matrix(endo, 2);
    CHECK(t.m == IntMat2{Int(1), Int(0), Int(1), Int(1)});

    CurveModel Ei = ring_curve(1, "E");
    CurveModel F{Lattice2(QuadInt::one(1), QuadInt(Rational(0), Rational(5), 1)), "F"};
    TorsionMatrix tincl = torsion_matrix(Isogeny(QuadInt::one(1), F, Ei), 2);
    CHECK(tincl.m == IntMat2::identity());
}

TEST_CASE("torsion matrices are multiplicative and detect coprime degrees") {
    std::mt19937_64 rng(808);
    for (int i = 0; i < 300; ++i) {
        long D = oracle::random_discriminant(rng);
        Isogeny phi = oracle::random_isogeny(rng, D);
        HomLattice End = hom_lattice(phi.target().lattice, phi.target().lattice);
        QuadInt mult = End.element(Int(1 + long(rng() % 3)), Int(long(rng() % 3)));
        if (mult.is_zero()) continue;
        Isogeny chi(mult, phi.target(), phi.target());
        Int r(2 + long(rng() % 5));
        CHECK(torsion_matrix(compose(chi, phi), r) ==
              torsion_matrix(chi, r) * torsion_matrix(phi, r));
        // an isogeny of degree coprime to r is an isomorphism on r-torsion
        TorsionMatrix t = torsion_matrix(phi, r);
        bool coprime = boost::multiprecision::gcd(isogeny_degree(phi), r) == 1;
        CHECK(t.invertible() == coprime);
        if (coprime) CHECK((t * t.inverse()).m == IntMat2::identity());
    }
}

TEST_CASE("every 2x2 matrix scales the symplectic form by its determinant") {
    std::mt19937_64 rng(909);
    for (int i = 0; i < 500; ++i) {
        Int r(2 + long(rng() % 7));
        IntMat2 m{Int(long(rng() % 19)) - 9, Int(long(rng() % 19)) - 9,
                  Int(long(rng() % 19)) - 9, Int(long(rng() % 19)) - 9};
        IntMat2 J{Int(0), Int(1), Int(-1), Int(0)};
        IntMat2 mt{m.a, m.c, m.b, m.d};
        IntMat2 lhs = mt * J * m;
        IntMat2 rhs = J * m.det();
        CHECK(mod_floor(lhs.a - rhs.a, r) == 0);
        CHECK(mod_floor(lhs.b - rhs.b, r) == 0);
        CHECK(mod_floor(lhs.c - rhs.c, r) == 0);
        CHECK(mod_floor(lhs.d - rhs.d, r) == 0);
    }
}

TEST_CASE("weil type classification") {
    CHECK(weil_type(TorsionMatrix(5, {Int(0), Int(1), Int(1), Int(0)})) == WeilType::AntiIsometry);
    CHECK(weil_type(TorsionMatrix(5, IntMat2::identity())) == WeilType::Isometry);
    CHECK(weil_type(TorsionMatrix(5, {Int(2), Int(0), Int(0), Int(1)})) == WeilType::Neither);
    // r = 2: +1 and -1 coincide, anti-isometry is preferred
    CHECK(weil_type(TorsionMatrix(2, IntMat2::identity())) == WeilType::AntiIsometry);
}

TEST_CASE("cyclic isogeny construction") {
    CurveModel E = ring_curve(2, "E");
    SUBCASE("degree 1 is the identity") {
        auto [F, delta] = cyclic_isogeny(E, 1);
        CHECK(same_curve(F, E));
        CHECK(isogeny_degree(delta) == 1);
    }
    SUBCASE("degree 3") {
        auto [F, delta] = cyclic_isogeny(E, 3);
        CHECK(F.lattice.same_lattice(
            Lattice2(QuadInt::one(2), QuadInt(Rational(0), Rational(3), 2))));
        CHECK(isogeny_degree(delta) == 3);
        auto s = smith_form(sublattice_matrix(F.lattice, E.lattice));
        CHECK(s == std::pair<Int, Int>(1, 3));
    }
    SUBCASE("degree 4 kernel is cyclic, not (2,2)") {
        auto [F, delta] = cyclic_isogeny(E, 4);
        CHECK(isogeny_degree(delta) == 4);
        auto s = smith_form(sublattice_matrix(F.lattice, E.lattice));
        CHECK(s == std::pair<Int, Int>(1, 4));
    }
}

TEST_CASE("quotient curve by a torsion subgroup") {
    SUBCASE("trivial subgroup") {
        CurveModel B = ring_curve(1, "B");
        auto G = SubgroupSpec::from_generators(2, {});
        auto [E1, u] = quotient_curve(B, G);
        CHECK(same_curve(E1, B));
        CHECK(isogeny_degree(u) == 1);
    }
    SUBCASE("order two") {
        CurveModel B = ring_curve(1, "B");
        auto G = SubgroupSpec::from_generators(2, {{Int(1), Int(0)}});
        CHECK(G.order() == 2);
        auto [E1, u] = quotient_curve(B, G);
        CHECK(E1.lattice.same_lattice(
            Lattice2(QuadInt::from_rational(make_rational(1, 2), 1),
                     QuadInt(Rational(0), Rational(1), 1))));
        CHECK(isogeny_degree(u) == 2);
    }
    SUBCASE("cyclic of order six") {
        CurveModel B = ring_curve(1, "B");
        auto G = SubgroupSpec::from_generators(6, {{Int(1), Int(0)}});
        CHECK(G.order() == 6);
        auto [E1, u] = quotient_curve(B, G);
        CHECK(isogeny_degree(u) == 6);
        CHECK(lattice_index(B.lattice, E1.lattice) == 6);
    }
    SUBCASE("a non-closed element list is rejected") {
        CurveModel B = ring_curve(1, "B");
        SubgroupSpec broken{Int(4), {{Int(0), Int(0)}, {Int(1), Int(0)}}};  // misses 2, 3
        CHECK(!broken.is_closed());
        CHECK_THROWS_AS(quotient_curve(B, broken), NotASubgroup);
    }
}
