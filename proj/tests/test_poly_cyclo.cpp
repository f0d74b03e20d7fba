#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmf/cyclotomic.hpp"
#include "qmf/poly.hpp"

using namespace qmf;

TEST_CASE("polynomial arithmetic basics") {
    Poly x = Poly::x_power(1);
    Poly f = x * x - Poly(Int(1));  // x^2 - 1
    Poly g = x - Poly(Int(1));
    auto [q, r] = Poly::divmod_monic(f, g);
    CHECK(q == x + Poly(Int(1)));
    CHECK(r.degree() < 0);
    CHECK(f.eval(Int(3)) == 8);
    CHECK(f.derivative() == x * Int(2));
    CHECK((f * g).degree() == 3);
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1).str() == "x - 1");
    CHECK(cyclotomic_polynomial(2) == Poly::x_power(1) + Poly(Int(1)));
    Poly c3 = cyclotomic_polynomial(3);
    CHECK(c3 == Poly::x_power(2) + Poly::x_power(1) + Poly(Int(1)));
    Poly c12 = cyclotomic_polynomial(12);  // x^4 - x^2 + 1
    CHECK(c12.degree() == 4);
    CHECK(c12[2] == -1);
    CHECK(c12[0] == 1);
    // product of Phi_d over d | n is x^n - 1
    for (int n : {6, 8, 12, 30}) {
        Poly prod(Int(1));
        for (const Int& d : divisors(Int(n))) prod = prod * cyclotomic_polynomial(d.get_ui());
        CHECK(prod == Poly::x_power(n) - Poly(Int(1)));
    }
}

TEST_CASE("factorization mod p") {
    Int p = 7;
    // x^2 + 1 = (x-?)(x-?) mod 7? kronecker(-1,7) == -1 so irreducible
    Poly f = Poly::x_power(2) + Poly(Int(1));
    auto fac = polymod::factor_squarefree(f, p);
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].degree() == 2);

    // x^2 - 2 splits mod 7 (3^2 = 2)
    Poly g = Poly::x_power(2) - Poly(Int(2));
    auto gfac = polymod::factor_squarefree(g, p);
    REQUIRE(gfac.size() == 2);
    Poly prod = polymod::mul(gfac[0], gfac[1], p);
    CHECK(prod == polymod::reduce(g, p));

    // a product of three distinct linear factors
    Poly h = (Poly::x_power(1) - Poly(Int(1))) * (Poly::x_power(1) - Poly(Int(2))) *
             (Poly::x_power(1) - Poly(Int(4)));
    auto hfac = polymod::factor_squarefree(h, Int(11));
    CHECK(hfac.size() == 3);
}

TEST_CASE("factorization over Z") {
    // (x^2+x+1)(x^2-x-1)(x-3)
    Poly f = cyclotomic_polynomial(3) * (Poly::x_power(2) - Poly::x_power(1) - Poly(Int(1))) *
             (Poly::x_power(1) - Poly(Int(3)));
    auto fac = factor_monic_over_Z(f);
    Poly prod(Int(1));
    int total_deg = 0;
    for (const auto& [g, e] : fac) {
        CHECK(g.is_monic());
        for (unsigned i = 0; i < e; ++i) prod = prod * g;
        total_deg += g.degree() * static_cast<int>(e);
    }
    CHECK(prod == f);
    CHECK(total_deg == 5);
    CHECK(fac.size() == 3);

    // irreducible: x^4 - x^3 + 2x + 1 has no rational roots and does not
    // split into quadratics over Z (checked against its mod-5 pattern)
    Poly q = Poly::x_power(4) - Poly::x_power(3) + Poly::x_power(1) * Int(2) + Poly(Int(1));
    auto qfac = factor_monic_over_Z(q);
    bool irreducible = qfac.size() == 1 && qfac[0].second == 1;
    if (irreducible) CHECK(qfac[0].first == q);

    // repeated factor: (x-1)^2 (x+2)
    Poly r = (Poly::x_power(1) - Poly(Int(1))) * (Poly::x_power(1) - Poly(Int(1))) *
             (Poly::x_power(1) + Poly(Int(2)));
    auto rfac = factor_monic_over_Z(r);
    Poly rprod(Int(1));
    for (const auto& [g, e] : rfac)
        for (unsigned i = 0; i < e; ++i) rprod = rprod * g;
    CHECK(rprod == r);

    // cyclotomic round trips
    for (int n : {5, 8, 12, 15, 23}) {
        auto cf = factor_monic_over_Z(cyclotomic_polynomial(n));
        REQUIRE(cf.size() == 1);
        CHECK(cf[0].first == cyclotomic_polynomial(n));
        CHECK(cf[0].second == 1);
    }
}

TEST_CASE("integer roots in range") {
    Poly f = (Poly::x_power(1) - Poly(Int(2))) * (Poly::x_power(1) + Poly(Int(3)));
    auto roots = integer_roots_in_range(f, Int(-5), Int(5));
    CHECK(roots == std::vector<Int>({-3, 2}));
}

TEST_CASE("cyclotomic integers") {
    // 1 + z + z^2 = 0 for z a primitive cube root
    CycInt z = CycInt::zeta_power(3, 1);
    CycInt sum = CycInt(3, Int(1)) + z + z * z;
    CHECK(sum.is_zero());

    // conjugation is an involution, norm is rational and nonnegative
    CycInt w = CycInt::zeta_power(5, 2) + CycInt(5, Int(3));
    CHECK(w.conj().conj() == w);
    CycInt nm = w.norm_to_self();
    CHECK(nm == nm.conj());

    // z^n = 1
    for (int n : {4, 6, 12}) {
        CycInt zn = CycInt::zeta_power(n, 1);
        CycInt acc(n, Int(1));
        for (int i = 0; i < n; ++i) acc = acc * zn;
        CHECK(acc == CycInt(n, Int(1)));
    }

    // rational detection
    CycInt two(7, Int(2));
    CHECK(two.is_rational());
    CHECK(two.rational_value() == 2);
    CHECK(!CycInt::zeta_power(7, 1).is_rational());

    // galois orbit of zeta_5 sums to mu(5) = -1
    CycInt g = CycInt::zeta_power(5, 1);
    CycInt orbit_sum(5, Int(0));
    for (int k = 1; k < 5; ++k) orbit_sum = orbit_sum + g.galois(k);
    CHECK(orbit_sum == CycInt(5, Int(-1)));
}

TEST_CASE("vanishing modulo all primes above p") {
    // 1 - z_5 generates the prime above 5 in Z[z_5]; its 4th power is
    // 5 times a unit, so (1 - z_5) vanishes mod the unique prime above 5.
    CycInt v = CycInt(5, Int(1)) - CycInt::zeta_power(5, 1);
    CHECK(v.vanishes_mod_every_prime_above(Int(5)));
    CHECK(!CycInt(5, Int(1)).vanishes_mod_every_prime_above(Int(5)));

    // 5 itself vanishes everywhere above 5
    CHECK(CycInt(5, Int(5)).vanishes_mod_every_prime_above(Int(5)));

    // z_3 - 1 does not vanish above 2 (2 is inert in Z[z_3])
    CycInt u = CycInt::zeta_power(3, 1) - CycInt(3, Int(1));
    CHECK(!u.vanishes_mod_every_prime_above(Int(2)));

    // but 2*(z_3 - 1) does
    CHECK((u * Int(2)).vanishes_mod_every_prime_above(Int(2)));
}
