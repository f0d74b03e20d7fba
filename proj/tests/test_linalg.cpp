#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qmf/linalg.hpp"

using namespace qmf;

namespace {

IntMat mat(size_t r, size_t c, std::initializer_list<long> vals) {
    IntMat m(r, c);
    auto it = vals.begin();
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j) m.at(i, j) = Int(*it++);
    return m;
}

// Oracle: enumerate all x in a box and collect values x G x^T, compared
// against the lattice enumeration.
std::vector<std::vector<Int>> box_enumerate(const IntMat& G, const Int& value, long radius) {
    size_t n = G.rows();
    std::vector<std::vector<Int>> found;
    std::vector<long> x(n, -radius);
    while (true) {
        bool zero = true, canonical_sign = false;
        for (size_t i = 0; i < n; ++i)
            if (x[i] != 0) {
                zero = false;
                canonical_sign = x[i] > 0;
                break;
            }
        if (!zero && canonical_sign) {
            Int v = 0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) v += Int(x[i]) * G.at(i, j) * Int(x[j]);
            if (v == value) {
                std::vector<Int> vec(n);
                for (size_t i = 0; i < n; ++i) vec[i] = x[i];
                found.push_back(vec);
            }
        }
        size_t k = 0;
        while (k < n && x[k] == radius) x[k++] = -radius;
        if (k == n) break;
        ++x[k];
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace

TEST_CASE("hnf canonical form") {
    IntMat A = mat(3, 3, {2, 4, 4, -6, 6, 12, 10, 4, 16});
    IntMat U = IntMat::identity(3);
    IntMat H = A;
    long rank = hnf_rows(H, &U);
    CHECK(rank == 3);
    // U*A == H
    CHECK(U * A == H);
    // pivots positive, entries above pivots reduced
    CHECK(H.at(0, 0) > 0);
    CHECK(H.at(1, 1) > 0);
    CHECK(H.at(2, 2) > 0);
    // det preserved up to sign: |det| = 2*6*? ... check via Bareiss
    Int d = det(A);
    Int hd = H.at(0, 0) * H.at(1, 1) * H.at(2, 2);
    CHECK((d == hd || d == -hd));

    // known canonical example
    IntMat B = mat(2, 2, {2, 0, 0, 2});
    IntMat HB = B;
    hnf_rows(HB, nullptr);
    CHECK(HB == B);

    // idempotence
    IntMat H2 = H;
    hnf_rows(H2, nullptr);
    CHECK(H2 == H);
}

TEST_CASE("kernel and saturation") {
    // rows (1,2,3), (2,4,6) have left kernel spanned by (2,-1)
    IntMat A = mat(2, 3, {1, 2, 3, 2, 4, 6});
    IntMat K = kernel_left(A);
    REQUIRE(K.rows() == 1);
    CHECK(K * A == IntMat(1, 3));
    CHECK((K.at(0, 0) == 2 && K.at(0, 1) == -1));

    // kernel is saturated: (4,-2) must come out as (2,-1)
    IntMat A2 = mat(2, 3, {2, 4, 6, 4, 8, 12});
    IntMat K2 = kernel_left(A2);
    REQUIRE(K2.rows() == 1);
    CHECK(gcd(K2.at(0, 0), K2.at(0, 1)) == 1);

    // saturate_rows: lattice spanned by (2,0),(0,3) inside Z^2 saturates to Z^2
    IntMat L = mat(2, 2, {2, 0, 0, 3});
    IntMat S = saturate_rows(L);
    CHECK(S == IntMat::identity(2));

    // saturation of the span of (2,4) is (1,2)
    IntMat L2 = mat(1, 2, {2, 4});
    IntMat S2 = saturate_rows(L2);
    REQUIRE(S2.rows() == 1);
    CHECK((S2.at(0, 0) == 1 && S2.at(0, 1) == 2));
}

TEST_CASE("solve_left") {
    IntMat A = mat(2, 2, {1, 2, 3, 5});
    std::vector<Int> b = {5, 9};  // x = (2? ) solve x*A = b
    auto x = solve_left(A, b);
    REQUIRE(x.has_value());
    auto bx = mat_vec_row(*x, A);
    CHECK(bx == b);

    // unsolvable over Z: x * (2) = 3
    IntMat C = mat(1, 1, {2});
    CHECK(!solve_left(C, {Int(3)}).has_value());

    // but solvable over Q
    auto xr = solve_left_rat(C, {Rat(3)});
    REQUIRE(xr.size() == 1);
    CHECK(xr[0] == Rat(3, 2));
}

TEST_CASE("determinant and charpoly") {
    IntMat A = mat(2, 2, {1, 2, 3, 4});
    CHECK(det(A) == -2);
    Poly cp = charpoly(A);
    // x^2 - 5x - 2
    CHECK(cp.degree() == 2);
    CHECK(cp[1] == -5);
    CHECK(cp[0] == -2);
    CHECK(cp.is_monic());

    IntMat B = mat(3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 5});
    CHECK(det(B) == 30);
    Poly cb = charpoly(B);
    CHECK(cb.eval(Int(2)) == 0);
    CHECK(cb.eval(Int(3)) == 0);
    CHECK(cb.eval(Int(5)) == 0);
    CHECK(cb.eval(Int(7)) == (7 - 2) * (7 - 3) * (7 - 5));

    // charpoly constant term is (-1)^n det
    IntMat C = mat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 10});
    CHECK(charpoly(C)[0] == -det(C));

    // Cayley-Hamilton
    IntMat CH = poly_at_matrix(charpoly(C), C);
    CHECK(CH == IntMat(3, 3));
}

TEST_CASE("kernel lattice mod m") {
    // x*(2,4) = 0 mod 8 for x in Z^1: multiples of ... 2x=0, 4x=0 mod 8: x in 4Z? 2x mod 8 = 0 -> x in 4Z
    IntMat A = mat(1, 2, {2, 4});
    IntMat K = kernel_lattice_mod(A, Int(8));
    REQUIRE(K.rows() == 1);
    CHECK(K.at(0, 0) == 4);

    // oracle: brute force over residues
    IntMat B = mat(2, 2, {1, 2, 3, 4});
    Int m = 6;
    IntMat KB = kernel_lattice_mod(B, m);
    for (long x0 = 0; x0 < 6; ++x0)
        for (long x1 = 0; x1 < 6; ++x1) {
            std::vector<Int> x = {Int(x0), Int(x1)};
            auto v = mat_vec_row(x, B);
            bool in_kernel = mod_floor(v[0], m) == 0 && mod_floor(v[1], m) == 0;
            // membership in the lattice KB: solve x = y*KB over Z
            bool in_lattice = solve_left(KB, x).has_value();
            CHECK(in_kernel == in_lattice);
        }
}

TEST_CASE("lattice intersection") {
    // 2Z^2 intersect the span of (1,1),(0,3): contains (2,2),(0,6),(6,0)...
    IntMat A = mat(2, 2, {2, 0, 0, 2});
    IntMat B = mat(2, 2, {1, 1, 0, 3});
    IntMat I = intersect_row_lattices(A, B);
    REQUIRE(I.rows() == 2);
    // every row is in both lattices
    for (long r = 0; r < 2; ++r) {
        CHECK(solve_left(A, I.row(r)).has_value());
        CHECK(solve_left(B, I.row(r)).has_value());
    }
    // index in Z^2 equals product of covolumes / covolume of sum; sanity via
    // explicit membership: (2,2) in both, (2,0) only in A
    CHECK(solve_left(I, {Int(2), Int(2)}).has_value());
    CHECK(!solve_left(I, {Int(2), Int(0)}).has_value());
    // intersect with itself is identity operation
    CHECK(intersect_row_lattices(A, A) == A);
}

TEST_CASE("mod-p kernels") {
    // det = -2: full rank mod 5, singular mod 2
    IntMat A = mat(2, 2, {1, 2, 3, 4});
    CHECK(kernel_left_mod(A, Int(5)).rows() == 0);
    CHECK(rank_mod(A, Int(5)) == 2);

    // rows (1,2),(3,6): second row is 3x the first, so mod 3 it vanishes
    IntMat B = mat(2, 2, {1, 2, 3, 6});
    IntMat K3 = kernel_left_mod(B, Int(3));
    REQUIRE(K3.rows() == 1);
    IntMat prod = mat_mod(K3 * B, Int(3));
    CHECK(prod == IntMat(1, 2));
    CHECK(rank_mod(B, Int(3)) == 1);
    CHECK(rank_mod(B, Int(5)) == 1);
}

TEST_CASE("lll reduces gram matrices") {
    // lattice with basis (1,0),(100,1): Gram = [[1,100],[100,10001]]
    IntMat G = mat(2, 2, {1, 100, 100, 10001});
    IntMat U = lll_gram(G);
    IntMat R = U * G * U.transpose();
    // reduced Gram of Z^2 is the identity
    CHECK(R.at(0, 0) == 1);
    CHECK(R.at(1, 1) == 1);
    CHECK(R.at(0, 1) == 0);
    // U unimodular
    Int ud = det(U);
    CHECK((ud == 1 || ud == -1));
}

TEST_CASE("vector enumeration against box oracle") {
    // Gram of the hexagonal lattice scaled: [[2,1],[1,2]]
    IntMat G = mat(2, 2, {2, 1, 1, 2});
    auto v2 = vectors_with_value(G, Int(2));
    auto o2 = box_enumerate(G, Int(2), 4);
    CHECK(v2 == o2);
    CHECK(v2.size() == 3);  // 6 roots, 3 up to sign
    CHECK(count_vectors_with_value(G, Int(2)) == 6);
    auto v6 = vectors_with_value(G, Int(6));
    auto o6 = box_enumerate(G, Int(6), 6);
    CHECK(v6 == o6);
    CHECK(count_vectors_with_value(G, Int(4)) == box_enumerate(G, Int(4), 6).size() * 2);

    // a rank-4 positive form: diag(2,2,6,6) with some off-diagonal noise,
    // via congruence by a unimodular matrix so positivity is preserved
    IntMat D = mat(4, 4, {2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 6, 0, 0, 0, 0, 6});
    IntMat T = mat(4, 4, {1, 1, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1});
    CHECK(det(T) == 1);
    IntMat G4 = T * D * T.transpose();
    for (long val : {2, 4, 6, 8, 10}) {
        auto fast = vectors_with_value(G4, Int(val));
        auto slow = box_enumerate(G4, Int(val), 5);
        CHECK(fast == slow);
    }
    CHECK(exists_vector_with_value(G4, Int(2)));
    CHECK(!exists_vector_with_value(G4, Int(1)));
    CHECK(!exists_vector_with_value(G4, Int(3)));  // odd values unreachable: G even
}
