#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmf/quat.hpp"

using namespace qmf;

namespace {

// deterministic small rationals for property tests
Rat next_rat(uint64_t& s) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    long num = static_cast<long>((s >> 20) % 11) - 5;
    long den = 1 + static_cast<long>((s >> 40) % 3);
    Rat r(num, den);
    r.canonicalize();
    return r;
}

QuatElt random_elt(const QuatAlg& A, uint64_t& s) {
    return QuatElt(A, next_rat(s), next_rat(s), next_rat(s), next_rat(s));
}

}  // namespace

TEST_CASE("hamilton quaternions (-1,-1)") {
    QuatAlg H(-1, -1);
    CHECK(H.ramified == std::vector<Int>({Int(2)}));
    CHECK(H.discriminant() == 2);

    QuatElt i(H, 0, 1, 0, 0), j(H, 0, 0, 1, 0), k(H, 0, 0, 0, 1);
    CHECK(i * i == QuatElt(H, -1, 0, 0, 0));
    CHECK(j * j == QuatElt(H, -1, 0, 0, 0));
    CHECK(k * k == QuatElt(H, -1, 0, 0, 0));
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(j * k == i);
    CHECK(k * j == -i);
    CHECK(k * i == j);
    CHECK(i * k == -j);

    QuatElt x(H, 1, 2, 3, 4);
    CHECK(x.trd() == 2);
    CHECK(x.nrd() == 30);  // 1 + 4 + 9 + 16
    CHECK(x * x.conj() == QuatElt(H, 30, 0, 0, 0));
}

TEST_CASE("structure constants in (a,b)") {
    QuatAlg B(-2, -5);
    QuatElt i(B, 0, 1, 0, 0), j(B, 0, 0, 1, 0), k(B, 0, 0, 0, 1);
    CHECK(i * i == QuatElt(B, -2, 0, 0, 0));
    CHECK(j * j == QuatElt(B, -5, 0, 0, 0));
    CHECK(i * j == k);
    CHECK(j * i == -k);
    // k^2 = -ab read off the multiplication, ik = a j, ki = -a j,
    // jk = -b i, kj = b i
    CHECK(k * k == QuatElt(B, -10, 0, 0, 0));
    CHECK(i * k == j * Rat(-2));
    CHECK(k * i == j * Rat(2));
    CHECK(j * k == i * Rat(5));
    CHECK(k * j == i * Rat(-5));
}

TEST_CASE("multiplicativity and trace identities") {
    QuatAlg B(-1, -11);
    uint64_t s = 99;
    for (int trial = 0; trial < 60; ++trial) {
        QuatElt x = random_elt(B, s), y = random_elt(B, s), z = random_elt(B, s);
        // associativity
        CHECK((x * y) * z == x * (y * z));
        // norm multiplicative
        CHECK((x * y).nrd() == x.nrd() * y.nrd());
        // conj anti-homomorphism
        CHECK((x * y).conj() == y.conj() * x.conj());
        // reduced characteristic polynomial: x^2 - trd(x) x + nrd(x) = 0
        QuatElt chr = x * x - x * x.trd() + quat_one(B) * x.nrd();
        CHECK(chr.is_zero());
        // trd(xy) = trd(yx)
        CHECK((x * y).trd() == (y * x).trd());
        // positive definiteness
        CHECK(x.nrd() >= 0);
        if (!x.is_zero()) CHECK(x.nrd() > 0);
    }
}

TEST_CASE("construct_ramified hits requested discriminants") {
    for (long d : {2, 3, 5, 7, 11, 13, 17, 73}) {
        QuatAlg B = construct_ramified({Int(d)});
        CHECK(B.ramified == std::vector<Int>({Int(d)}));
        CHECK(B.discriminant() == d);
    }
    QuatAlg B30 = construct_ramified({Int(2), Int(3), Int(5)});
    CHECK(B30.discriminant() == 30);
    // definite algebras ramify at an odd number of finite primes
    CHECK_THROWS(construct_ramified({Int(11), Int(13)}));
    CHECK_THROWS(construct_ramified({Int(4)}));
}
