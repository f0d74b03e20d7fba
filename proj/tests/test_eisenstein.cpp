#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qmf/eisenstein.hpp"

using namespace qmf;

namespace {

std::vector<Int> row_times(const std::vector<Int>& x, const IntMat& B) {
    return mat_vec_row(x, B.transpose());
}

bool zero_mod(const std::vector<Int>& x, const Int& m) {
    for (const Int& v : x)
        if (mod_floor(v, m) != 0) return false;
    return true;
}

// eigenvalues of the Brandt operators on a scalar block, one per prime
std::vector<Int> block_eigenvalues(const IdealClassSet& cs, const IntMat& block,
                                   const std::vector<long>& primes) {
    std::vector<Int> lam;
    for (long ell : primes) {
        auto v = scalar_action(brandt_matrix(cs, ell), block);
        REQUIRE(v.has_value());
        lam.push_back(*v);
    }
    return lam;
}

}  // namespace

TEST_CASE("eisenstein vector and weight pairing") {
    auto cs = class_set(11, 1);
    auto e = eisenstein_vector(*cs);
    REQUIRE(e.size() == 2);
    CHECK(weight_pairing(*cs, e, e) == cs->mass());

    // Brandt operators fix the constants and are self-adjoint
    for (long ell : {2L, 3L, 5L, 7L}) {
        IntMat B = brandt_matrix(*cs, ell);
        CHECK(row_times(e, B) == std::vector<Int>(2, ell + 1));
        std::vector<Int> x = {3, -1}, y = {2, 5};
        CHECK(weight_pairing(*cs, row_times(x, B), y) == weight_pairing(*cs, x, row_times(y, B)));
    }

    CHECK_THROWS_AS(weight_pairing(*cs, e, {1}), std::domain_error);
}

TEST_CASE("cusp lattice at discriminant 11") {
    auto cs = class_set(11, 1);
    IntMat C = cusp_lattice(*cs);
    REQUIRE(C.rows() == 1);
    REQUIRE(C.cols() == 2);

    size_t i2 = cs->weights[0] == 2 ? 0 : 1, i3 = 1 - i2;
    REQUIRE(cs->weights[i2] == 2);
    REQUIRE(cs->weights[i3] == 3);

    // basis proportional to the weights with opposite signs
    auto r = C.row(0);
    CHECK(abs(r[i2]) == 2);
    CHECK(abs(r[i3]) == 3);
    CHECK(r[i2] * r[i3] < 0);
    CHECK(weight_pairing(*cs, r, r) == Rat(5));

    // orthogonal to the constants
    CHECK(weight_pairing(*cs, r, eisenstein_vector(*cs)) == 0);
}

TEST_CASE("restriction and scalar action") {
    auto cs = class_set(11, 1);
    IntMat C = cusp_lattice(*cs);
    IntMat B2 = brandt_matrix(*cs, 2), B3 = brandt_matrix(*cs, 3);

    IntMat M2 = restrict_row_action(B2, C);
    REQUIRE(M2.rows() == 1);
    CHECK(M2.at(0, 0) == -2);
    CHECK(scalar_action(B2, C) == Int(-2));
    CHECK(scalar_action(B3, C) == Int(-1));

    // the full space is not scalar (eigenvalues 3 and -2 differ)
    CHECK(!scalar_action(B2, IntMat::identity(2)).has_value());

    // a line that is not Hecke stable
    IntMat bad(1, 2);
    bad.at(0, 0) = 1;
    CHECK_THROWS_AS(restrict_row_action(B2, bad), std::logic_error);
}

TEST_CASE("eigen blocks") {
    auto cs11 = class_set(11, 1);
    auto blocks = eigen_blocks(*cs11, 20);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0] == cusp_lattice(*cs11));
    CHECK(scalar_action(brandt_matrix(*cs11, 2), blocks[0]) == Int(-2));

    // one-class level: empty cusp space
    auto cs13 = class_set(13, 1);
    CHECK(cusp_lattice(*cs13).rows() == 0);
    CHECK(eigen_blocks(*cs13, 20).empty());

    // level 50 = 2 * 25 splits into two rational lines
    auto cs50 = class_set(2, 25);
    auto b50 = eigen_blocks(*cs50, 20);
    REQUIRE(b50.size() == 2);
    for (const auto& b : b50) CHECK(b.rows() == 1);
    CHECK(b50[0] != b50[1]);
}

TEST_CASE("eigenvalue fixtures on square levels") {
    // 27 = 3 * 9: the class of the curve X_0(27), lambda = 0 at ell = 2 mod 3
    auto cs27 = class_set(3, 9);
    auto b27 = eigen_blocks(*cs27, 20);
    REQUIRE(b27.size() == 1);
    CHECK(block_eigenvalues(*cs27, b27[0], {2, 5, 7, 13, 19, 31, 37, 43}) ==
          std::vector<Int>{0, 0, -1, 5, -7, -4, 11, 8});

    // 32 = 2 * 16
    auto cs32 = class_set(2, 16);
    auto b32 = eigen_blocks(*cs32, 20);
    REQUIRE(b32.size() == 1);
    CHECK(block_eigenvalues(*cs32, b32[0], {3, 5, 7, 13, 17, 29, 37, 41}) ==
          std::vector<Int>{0, -2, 0, 6, 2, -10, -2, 10});

    // 50 = 2 * 25: one of the two lines carries these eigenvalues
    auto cs50 = class_set(2, 25);
    auto b50 = eigen_blocks(*cs50, 20);
    std::vector<Int> want = {-1, -2, -3, 4, 3};
    bool found = false;
    for (const auto& b : b50)
        found = found || block_eigenvalues(*cs50, b, {3, 7, 11, 13, 17}) == want;
    CHECK(found);
}

TEST_CASE("cusp lift congruent to the constants") {
    auto cs = class_set(11, 1);
    auto phi = eisenstein_cusp_lift(*cs, 5, 1);
    REQUIRE(phi.has_value());
    REQUIRE(phi->size() == 2);

    size_t i2 = cs->weights[0] == 2 ? 0 : 1, i3 = 1 - i2;
    CHECK((*phi)[i2] == -4);
    CHECK((*phi)[i3] == 6);
    CHECK(zero_mod({(*phi)[0] - 1, (*phi)[1] - 1}, 5));
    CHECK(weight_pairing(*cs, *phi, eisenstein_vector(*cs)) == 0);

    // primitive part has pairing norm 5
    Int g = gcd((*phi)[0], (*phi)[1]);
    CHECK(g == 2);
    std::vector<Int> prim = {(*phi)[0] / g, (*phi)[1] / g};
    CHECK(weight_pairing(*cs, prim, prim) == Rat(5));

    // the congruence scalar between the cusp basis and the lift squares to 4
    auto c = congruence_scalar(cusp_lattice(*cs).row(0), *phi, 5, 1);
    REQUIRE(c.has_value());
    CHECK(mod_floor(*c * *c, 5) == 4);

    // no lift at primes away from the mass numerator
    CHECK(!eisenstein_cusp_lift(*cs, 7, 1).has_value());
    CHECK(!eisenstein_cusp_lift(*class_set(13, 1), 5, 1).has_value());
}

TEST_CASE("congruence scalar") {
    CHECK(congruence_scalar({3, -2}, {6, -4}, 5, 1) == Int(2));
    CHECK(congruence_scalar({2, -3}, {-4, 6}, 5, 1) == Int(3));
    CHECK(!congruence_scalar({3, -2}, {6, -3}, 5, 1).has_value());
    CHECK(!congruence_scalar({5, 10}, {1, 2}, 5, 1).has_value());
    CHECK(congruence_scalar({3}, {21}, 5, 2) == Int(7));
    CHECK_THROWS_AS(congruence_scalar({1}, {1, 2}, 5, 1), std::domain_error);
}

TEST_CASE("eisenstein eigenclass search") {
    auto cs = class_set(11, 1);
    auto w = eisenstein_eigenclass_mod(*cs, 5, 1, 20);
    REQUIRE(w.has_value());
    CHECK(!zero_mod(*w, 5));
    CHECK(weight_pairing(*cs, *w, eisenstein_vector(*cs)) == 0);
    for (long ell : {2L, 3L, 7L, 13L, 17L, 19L}) {
        auto tx = row_times(*w, brandt_matrix(*cs, ell));
        for (size_t i = 0; i < tx.size(); ++i) tx[i] -= (ell + 1) * (*w)[i];
        CHECK(zero_mod(tx, 5));
    }

    CHECK(!eisenstein_eigenclass_mod(*cs, 7, 1, 20).has_value());
    CHECK(!eisenstein_eigenclass_mod(*cs, 2, 1, 20).has_value());

    // 3 is the mass numerator prime at 27 = 3 * 9
    auto cs27 = class_set(3, 9);
    CHECK(eisenstein_eigenclass_mod(*cs27, 3, 1, 20).has_value());
    CHECK(!eisenstein_eigenclass_mod(*cs27, 5, 1, 20).has_value());
}

TEST_CASE("eisenstein series coefficients") {
    CHECK(eisenstein_constant_term(11) == Rat(5, 12));
    CHECK(eisenstein_constant_term(27) == Rat(1, 12));
    CHECK(eisenstein_constant_term(73) == Rat(3));
    CHECK(eisenstein_constant_term(50) == Rat(-1, 6));

    // a_ell = ell + 1 away from N, a_q = 1 at q | N, multiplicative
    CHECK(eisenstein_coefficient(11, 1) == 1);
    CHECK(eisenstein_coefficient(11, 2) == 3);
    CHECK(eisenstein_coefficient(11, 3) == 4);
    CHECK(eisenstein_coefficient(11, 4) == 7);
    CHECK(eisenstein_coefficient(11, 11) == 1);
    CHECK(eisenstein_coefficient(11, 22) == 3);
    CHECK(eisenstein_coefficient(11, 121) == 1);
    CHECK(eisenstein_coefficient(50, 2) == 1);
    CHECK(eisenstein_coefficient(50, 5) == 1);
    CHECK(eisenstein_coefficient(50, 10) == 1);
    CHECK(eisenstein_coefficient(50, 3) == 4);
    for (long n = 1; n <= 40; ++n)
        CHECK(eisenstein_coefficient(27, n) == eisenstein_coefficient(3, n));
    CHECK_THROWS_AS(eisenstein_coefficient(11, 0), std::domain_error);
}

TEST_CASE("fourier congruence with the eisenstein series") {
    auto cs11 = class_set(11, 1);
    IntMat c11 = cusp_lattice(*cs11);
    CHECK(fourier_eisenstein_congruence(*cs11, c11, 5, 1, 50));
    CHECK(!fourier_eisenstein_congruence(*cs11, c11, 7, 1, 50));

    auto cs27 = class_set(3, 9);
    CHECK(fourier_eisenstein_congruence(*cs27, eigen_blocks(*cs27, 20)[0], 3, 1, 50));

    auto cs32 = class_set(2, 16);
    CHECK(fourier_eisenstein_congruence(*cs32, eigen_blocks(*cs32, 20)[0], 2, 1, 50));

    auto cs17 = class_set(17, 1);
    auto b17 = eigen_blocks(*cs17, 20);
    REQUIRE(b17.size() == 1);
    auto lam2 = scalar_action(brandt_matrix(*cs17, 2), b17[0]);
    REQUIRE(lam2.has_value());
    CHECK(mod_floor(*lam2, 2) == 1);
    CHECK(fourier_eisenstein_congruence(*cs17, b17[0], 2, 2, 40));

    // at 50 = 2 * 25, exactly one of the two lines is eisenstein mod 5
    auto cs50 = class_set(2, 25);
    auto b50 = eigen_blocks(*cs50, 20);
    int good = 0;
    for (const auto& b : b50) good += fourier_eisenstein_congruence(*cs50, b, 5, 1, 40);
    CHECK(good == 1);
}
