#pragma once

#include <optional>

#include "qmf/brandt.hpp"
#include "qmf/poly.hpp"

namespace qmf {

// The constant function 1 on classes; Hecke eigenvector with T_ell acting
// by ell + 1 and every ramified involution acting trivially.
std::vector<Int> eisenstein_vector(const IdealClassSet& cs);

// [x, y] = sum_i x_i y_i / w_i.  Brandt matrices are self-adjoint for it.
Rat weight_pairing(const IdealClassSet& cs, const std::vector<Int>& x, const std::vector<Int>& y);

// Saturated basis (rows in Z^h) of the functions orthogonal to the
// constants: sum_i x_i W/w_i = 0 with W = lcm(w_i).
IntMat cusp_lattice(const IdealClassSet& cs);

// Matrix M of the row action x -> x * B^T restricted to the row span of C:
// M * C = C * B^T.  Throws if the span is not stable.
IntMat restrict_row_action(const IntMat& B, const IntMat& C);

// The integer scalar by which x -> x * B^T acts on the row span of the
// block, or nullopt if the action is not scalar.
std::optional<Int> scalar_action(const IntMat& B, const IntMat& block);

// Decompose the cusp space into Hecke-stable blocks by factoring the
// characteristic polynomials of T_ell over Z for good ell <= ell_max.
// Blocks are saturated row lattices in Z^h in a deterministic order.
std::vector<IntMat> eigen_blocks(const IdealClassSet& cs, const Int& ell_max);

// A cuspidal phi in Z^h with phi == 1 mod p^r, entries size-reduced, or
// nullopt if none exists.  Solvable precisely when p^r divides W * mass.
std::optional<std::vector<Int>> eisenstein_cusp_lift(const IdealClassSet& cs, const Int& p,
                                                     unsigned long r);

// Residue c mod p^r with c * f == target mod p^r componentwise, if any.
std::optional<Int> congruence_scalar(const std::vector<Int>& f, const std::vector<Int>& target,
                                     const Int& p, unsigned long r);

// Search for a cuspidal class that is Eisenstein mod p^r: intersect the
// mod p^r kernels of T_ell - (ell + 1) for good ell <= ell_max and R_q - 1
// at q | N1 coprime to N2, all restricted to the cusp lattice.  Returns a
// witness vector in Z^h outside p*Z^h, or nullopt if the intersection is
// trivial mod p.
std::optional<std::vector<Int>> eisenstein_eigenclass_mod(const IdealClassSet& cs, const Int& p,
                                                          unsigned long r, const Int& ell_max);

// Weight 2 level N Eisenstein series (only the squarefree kernel of N
// matters): constant term and coefficients a_n = sum_{d | gcd(n, rad N)}
// mu(d) d sigma_1(n/d).
Rat eisenstein_constant_term(const Int& N);
Int eisenstein_coefficient(const Int& N, const Int& n);

// Check a_n(f) == a_n(E) mod p^r for all 1 <= n <= n_max coprime to N2,
// where f is the eigenform of a scalar block: prime eigenvalues come from
// Brandt matrices (good ell) and ramified involutions (q | N1 away from
// N2), extended by multiplicativity and the Hecke recursion
// a_{ell^{k+1}} = a_ell a_{ell^k} - ell a_{ell^{k-1}}.
bool fourier_eisenstein_congruence(const IdealClassSet& cs, const IntMat& block, const Int& p,
                                   unsigned long r, const Int& n_max);

}  // namespace qmf
