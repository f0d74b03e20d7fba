#pragma once

#include "qmf/classset.hpp"

namespace qmf {

// Hecke action at a prime ell coprime to the level, as the h x h integer
// matrix with (T phi)_i = sum_j B_ij phi_j.  Entry ij is the number of
// x in I_i * conj(I_j) with nrd(x) = ell * nrd(I_i) * nrd(I_j), divided by
// the unit count 2 w_j of the stabilizer.  Throws for ell dividing the
// level (no operator is defined there).
IntMat brandt_matrix(const IdealClassSet& cs, const Int& ell);

// The same operator from the neighbor graph: entry ij counts ell-neighbors
// of I_i falling in class j.  Computed independently of the theta counts.
IntMat brandt_matrix_by_neighbors(const IdealClassSet& cs, const Int& ell);

// Class permutation [I] -> [I * P] induced by the two-sided prime over
// p | N1 (p coprime to N2); its square is the identity.
IntMat ramified_involution(const IdealClassSet& cs, const Int& p);

}  // namespace qmf
