#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "qmf/quadfield.hpp"

using namespace qmf;

TEST_CASE("fundamental discriminants") {
    for (long d : {-3, -4, -7, -8, -11, -15, -19, -20, -23, -24, -68, -84, -163})
        CHECK(is_fundamental_discriminant(d));
    for (long d : {0, 1, -1, -2, -5, -9, -12, -16, -18, -25, -27, -28, -44, -45})
        CHECK(!is_fundamental_discriminant(d));
    CHECK(is_fundamental_discriminant(5));
    CHECK(is_fundamental_discriminant(8));
    CHECK(is_fundamental_discriminant(12));
    CHECK(!is_fundamental_discriminant(20));
}

TEST_CASE("form reduction") {
    CHECK(principal_form(-23) == QuadForm{1, 1, 6});
    CHECK(principal_form(-4) == QuadForm{1, 0, 1});
    CHECK(is_reduced({2, 1, 3}));
    CHECK(is_reduced({2, -1, 3}));
    CHECK(!is_reduced({2, -2, 3}));
    CHECK(!is_reduced({3, 1, 2}));
    CHECK(!is_reduced({2, -1, 2}));

    CHECK(reduce_form({23, -23, 6}) == QuadForm{1, 1, 6});
    CHECK(reduce_form({46, -23, 3}) == QuadForm{2, 1, 3});
    CHECK(reduce_form({6, 5, 2}) == QuadForm{2, -1, 3});
    CHECK(reduce_form({2, -2, 17}).disc() == -132);
    CHECK_THROWS_AS(reduce_form({1, 0, -1}), std::domain_error);

    // reduction recovers the class from any unimodular change of variables
    long mats[5][4] = {{1, 0, 1, 1}, {0, 1, -1, 0}, {2, 1, 1, 1}, {1, 3, 0, 1}, {5, 2, 2, 1}};
    for (long d : {-84L, -23L})
        for (const auto& f : reduced_forms(d))
            for (const auto& m : mats) {
                Int p = m[0], q = m[1], r = m[2], s = m[3];
                REQUIRE(p * s - q * r == 1);
                QuadForm t = {f.eval(p, q),
                              2 * f.a * p * r + f.b * (p * s + q * r) + 2 * f.c * q * s,
                              f.eval(r, s)};
                CHECK(t.disc() == d);
                CHECK(reduce_form(t) == f);
            }
}

TEST_CASE("reduced form lists and class numbers") {
    CHECK(reduced_forms(-23) ==
          std::vector<QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
    CHECK(reduced_forms(-4) == std::vector<QuadForm>{{1, 0, 1}});
    CHECK(reduced_forms(-3) == std::vector<QuadForm>{{1, 1, 1}});
    CHECK(class_number(-47) == 5);
    CHECK(class_number(-68) == 4);
    CHECK(class_number(-84) == 4);
    CHECK(class_number(-71) == 7);
    CHECK(class_number(-95) == 8);
    CHECK(class_number(-199) == 9);

    // the full list of one-class fundamental discriminants up to 200
    std::set<long> heegner = {3, 4, 7, 8, 11, 19, 43, 67, 163};
    for (long d = 3; d <= 200; ++d)
        if (is_fundamental_discriminant(-Int(d)))
            CHECK((class_number(-Int(d)) == 1) == (heegner.count(d) == 1));
}

TEST_CASE("composition in the class group of discriminant -23") {
    QuadForm e = principal_form(-23), g = {2, 1, 3}, gi = {2, -1, 3};
    CHECK(compose(e, g) == g);
    CHECK(compose(g, e) == g);
    CHECK(compose(g, g) == gi);
    CHECK(compose(g, gi) == e);
    CHECK(compose(gi, gi) == g);
    CHECK(form_inverse(g) == gi);
    CHECK(form_power(g, 3) == e);
    CHECK(form_power(g, -1) == gi);
    CHECK(form_power(g, 2026) == g);
    CHECK_THROWS_AS(compose(e, principal_form(-24)), std::domain_error);
}

TEST_CASE("class group structure") {
    // -68: cyclic of order 4, the two genera come from a square class
    auto G68 = class_group(-68);
    REQUIRE(G68.size() == 4);
    CHECK(G68.exponent() == 4);
    long four = 0, two = 0;
    for (long i = 0; i < 4; ++i) {
        if (G68.order_of(i) == 4) ++four;
        if (G68.order_of(i) == 2) ++two;
    }
    CHECK(four == 2);
    CHECK(two == 1);

    // -84: Klein four group, every class is its own inverse
    auto G84 = class_group(-84);
    REQUIRE(G84.size() == 4);
    CHECK(G84.exponent() == 2);
    for (long i = 0; i < 4; ++i) CHECK(G84.inverse_of(i) == i);

    // -47: cyclic of order 5
    auto G47 = class_group(-47);
    CHECK(G47.exponent() == 5);

    // table consistency: identity row, inverses, associativity spot check
    for (const auto& G : {G68, G84}) {
        long h = G.size();
        for (long i = 0; i < h; ++i) {
            CHECK(G.table[0][i] == i);
            CHECK(G.table[i][G.inverse_of(i)] == 0);
            for (long j = 0; j < h; ++j)
                for (long k = 0; k < h; ++k)
                    CHECK(G.table[G.table[i][j]][k] == G.table[i][G.table[j][k]]);
        }
    }
}

TEST_CASE("ideal dictionary") {
    for (long d : {-23, -47, -68, -84, -163}) {
        Int D = d;
        auto forms = reduced_forms(D);

        // round trip and norms
        for (const auto& f : forms) {
            QuadIdeal a = ideal_of_form(f, D);
            CHECK(ideal_norm(a) == f.a);
            CHECK(form_of_ideal(a) == f);
        }
        CHECK(form_of_ideal(ring_of_integers(D)) == principal_form(D));
        CHECK(ideal_norm(ring_of_integers(D)) == 1);

        // products of ideals against Gauss composition, and norm
        // multiplicativity
        for (const auto& f : forms)
            for (const auto& g : forms) {
                QuadIdeal p = ideal_product(ideal_of_form(f, D), ideal_of_form(g, D));
                CHECK(ideal_norm(p) == f.a * g.a);
                CHECK(form_of_ideal(p) == compose(f, g));
            }
    }
    CHECK_THROWS_AS(ideal_product(ring_of_integers(-23), ring_of_integers(-24)),
                    std::domain_error);
}

TEST_CASE("characters") {
    // cyclic of order 3: trivial character plus a conjugate pair
    auto G23 = class_group(-23);
    auto chars23 = all_characters(G23);
    REQUIRE(chars23.size() == 3);
    CHECK(chars23[0].is_trivial());
    CHECK(chars23[0].order() == 1);
    CHECK(chars23[1].order() == 3);
    CHECK(chars23[2].order() == 3);
    for (long t = 0; t < 3; ++t)
        CHECK(chars23[1].value(t) == chars23[2].conj_value(t));

    // orthogonality in Z[zeta_E]: rows over classes, columns over characters
    for (long d : {-23, -47, -68, -84}) {
        auto G = class_group(d);
        auto chars = all_characters(G);
        long h = G.size();
        REQUIRE(Int(chars.size()) == Int(h));
        for (const auto& chi : chars) {
            CycInt s(chi.E);
            for (long t = 0; t < h; ++t) s = s + chi.value(t);
            if (chi.is_trivial())
                CHECK(s == CycInt(chi.E, h));
            else
                CHECK(s.is_zero());
        }
        for (long t = 0; t < h; ++t) {
            CycInt s(chars[0].E);
            for (const auto& chi : chars) s = s + chi.value(t);
            if (t == 0)
                CHECK(s == CycInt(chars[0].E, h));
            else
                CHECK(s.is_zero());
        }
        // multiplicativity against the table
        for (const auto& chi : chars)
            for (long i = 0; i < h; ++i)
                for (long j = 0; j < h; ++j)
                    CHECK(chi.value(G.table[i][j]) == chi.value(i) * chi.value(j));
    }

    // character orders at -84 are all 1 or 2 (Klein four dual)
    auto chars84 = all_characters(class_group(-84));
    long real = 0;
    for (const auto& chi : chars84) real += chi.order() <= 2;
    CHECK(real == 4);
}

TEST_CASE("units and splitting") {
    CHECK(unit_count(-3) == 6);
    CHECK(unit_count(-4) == 4);
    CHECK(unit_count(-23) == 2);

    CHECK(is_inert(-23, 11));
    CHECK(!is_inert(-23, 2));   // -23 = 1 mod 8, so 2 splits
    CHECK(!is_inert(-23, 23));  // ramified
    CHECK(is_inert(-4, 3));
    CHECK(!is_inert(-4, 5));
}
