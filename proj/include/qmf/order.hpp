#pragma once

#include <vector>

#include "qmf/linalg.hpp"
#include "qmf/quat.hpp"

namespace qmf {

// Full-rank Z-lattice in a quaternion algebra, stored as (1/den) times the
// row span of an integer basis matrix (coordinates on 1, i, j, k).  Kept
// canonical: basis in HNF, gcd(content(basis), den) = 1, den > 0.
struct Lattice {
    const QuatAlg* alg = nullptr;
    IntMat basis;  // 4x4, full rank
    Int den = 1;

    bool operator==(const Lattice& o) const {
        return basis == o.basis && den == o.den;
    }
    bool operator<(const Lattice& o) const;  // arbitrary total order for keys
};

Lattice lattice_from_rows(const QuatAlg& A, const IntMat& rows, const Int& den);
Lattice lattice_from_elements(const QuatAlg& A, const std::vector<QuatElt>& gens);

QuatElt lattice_element(const Lattice& L, long row);
std::vector<QuatElt> lattice_basis_elements(const Lattice& L);
bool lattice_contains(const Lattice& L, const QuatElt& x);
bool lattice_subset(const Lattice& inner, const Lattice& outer);

Lattice lattice_sum(const Lattice& L, const Lattice& M);
Lattice lattice_intersect(const Lattice& L, const Lattice& M);
// Lattice generated by all products x*y, x in L, y in M.
Lattice lattice_product(const Lattice& L, const Lattice& M);
Lattice lattice_scale(const Lattice& L, const Rat& s);
// Image under the standard involution x -> conj(x).
Lattice lattice_conjugate(const Lattice& L);
// Left multiplication x*L by a nonzero element.
Lattice lattice_left_multiply(const QuatElt& x, const Lattice& L);

// Index [outer : inner] for inner a finite-index sublattice.
Int lattice_index(const Lattice& outer, const Lattice& inner);

// gcd of the reduced norms of all lattice elements.
Rat lattice_norm(const Lattice& L);

// Integer Gram matrix of the numerator rows under the trace pairing:
// G[s][t] = trd(r_s * conj(r_t)); the quadratic value of x is
// 2 * den^2 * nrd(sum x_s r_s / den).
IntMat lattice_gram_numerator(const Lattice& L);

// Non-canonical shortest vector (minimal positive reduced norm).
QuatElt lattice_shortest_vector(const Lattice& L);

// {x in B : x*L subset L} and {x in B : L*x subset L}; always orders.
Lattice left_order(const Lattice& L);
Lattice right_order(const Lattice& L);

bool is_order(const Lattice& L);
// Positive generator of the reduced discriminant ideal; for an order O of
// a definite algebra this is sqrt(det of the trace-form Gram matrix) / den^4.
Int reduced_discriminant(const Lattice& O);

// Number of units divided by 2, i.e. |O^x / {+-1}|.
Int unit_half_count(const Lattice& O);

// The order Z<1, i, j, k>.
Lattice standard_order(const QuatAlg& A);

// A maximal order, via radical idealizer chains and, at unramified
// hereditary primes, an index-p superlattice search.
Lattice maximal_order(const QuatAlg& A);

// Order of reduced discriminant N1 * N2 inside a maximal order, where N1 is
// the (squarefree) discriminant of the algebra.  At a prime q dividing N2:
// if q splits in B the order is an Eichler-type congruence order of level
// q^v; if q ramifies, v must be even and the order is Z + Z*w + q^(v/2)*Omax
// locally, with w generating the unramified quadratic extension.
Lattice order_of_level(const QuatAlg& A, const Lattice& Omax, const Int& N1, const Int& N2);

// The unique two-sided prime ideal above a ramified prime p at which O is
// locally maximal: P^2 = p*O and [O : P] = p^2.
Lattice two_sided_prime(const Lattice& O, const Int& p);

}  // namespace qmf
