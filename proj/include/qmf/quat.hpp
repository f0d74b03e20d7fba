#pragma once

#include <vector>

#include "qmf/arith.hpp"

namespace qmf {

// Definite quaternion algebra (a,b / Q): i^2 = a, j^2 = b, ij = -ji = k,
// with a < 0 and b < 0.  Elements are stored on the basis 1, i, j, k with
// rational coordinates.
struct QuatAlg {
    Int a;
    Int b;
    std::vector<Int> ramified;  // finite ramified primes, ascending

    QuatAlg(const Int& a_, const Int& b_);

    Int discriminant() const;  // product of the finite ramified primes
    bool is_ramified(const Int& p) const;
};

struct QuatElt {
    const QuatAlg* alg;
    Rat c[4];  // coordinates on 1, i, j, k

    QuatElt() : alg(nullptr) {}
    explicit QuatElt(const QuatAlg& A) : alg(&A) {}
    QuatElt(const QuatAlg& A, Rat x0, Rat x1, Rat x2, Rat x3) : alg(&A) {
        c[0] = std::move(x0);
        c[1] = std::move(x1);
        c[2] = std::move(x2);
        c[3] = std::move(x3);
    }

    QuatElt operator+(const QuatElt& y) const;
    QuatElt operator-(const QuatElt& y) const;
    QuatElt operator*(const QuatElt& y) const;
    QuatElt operator*(const Rat& s) const;
    QuatElt operator-() const;
    bool operator==(const QuatElt& y) const;
    bool is_zero() const;

    QuatElt conj() const;
    Rat trd() const;  // reduced trace x + conj(x)
    Rat nrd() const;  // reduced norm x * conj(x)
};

QuatElt quat_one(const QuatAlg& A);

// Smallest pair (a, b) = (-|a|, -|b|), ordered by |a| + |b| then |a|, whose
// algebra (a,b / Q) has exactly the given set of finite ramified primes.
// The set must have odd size (definite algebras ramify at infinity).
QuatAlg construct_ramified(const std::vector<Int>& primes);

}  // namespace qmf
