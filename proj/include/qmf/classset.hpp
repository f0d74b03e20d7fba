#pragma once

#include <memory>
#include <string>
#include <utility>

#include "qmf/order.hpp"

namespace qmf {

// Splittings N = N1*N2 where N1 > 1 is squarefree with an odd number of
// prime factors and v_q(N) is odd for every q | N1.  These are exactly the
// levels realizable on a definite algebra of discriminant N1: at a prime
// q | N1 the local level order exists only in even valuation.
std::vector<std::pair<Int, Int>> admissible_splits(const Int& N);

// The admissible split whose mass has the largest numerator (ties broken by
// larger N1).  Throws if N has no admissible split.
std::pair<Int, Int> default_split(const Int& N);

// Mass of a level N1*N2 order: phi(N1)/12 * N2 * prod_{q | N2, q nmid N1}
// (1 + 1/q).  Equals sum over ideal classes of 1/w_i.
Rat eichler_mass(const Int& N1, const Int& N2);

// Rescale L so den = 1 and the basis has content 1.  Same class when L is
// a right ideal (scaling is central).
Lattice primitive_integral(const Lattice& L);

// Left-divide I by a shortest vector and normalize; keeps the right ideal
// class while keeping basis entries small.
Lattice reduce_ideal(const Lattice& I);

// The ell + 1 right O-ideals J with ell*I <= J < I of index ell^2, for
// ell coprime to the level.  I must be a right O-ideal; it is normalized to
// primitive integral form first and the results are exact sublattices of
// that normalization.
std::vector<Lattice> neighbor_ideals(const Lattice& I, const Lattice& O, const Int& ell);

// Right ideal classes coincide iff I = x*J for some unit x of the algebra,
// iff I*conj(J) represents nrd(I)*nrd(J).
bool ideals_equivalent(const Lattice& I, const Lattice& J);

// Right ideal classes of a level N1*N2 order, weights w_i = |O_l(I_i)^*|/2,
// completeness certified by the mass formula.
struct IdealClassSet {
    QuatAlg alg;
    Int N1, N2;
    Lattice order;
    std::vector<Lattice> reps;
    std::vector<Lattice> left_orders;
    std::vector<Int> weights;

    IdealClassSet(const IdealClassSet&) = delete;
    IdealClassSet& operator=(const IdealClassSet&) = delete;

    size_t size() const { return reps.size(); }
    Rat mass() const;
    // Index of the rep equivalent to J (a right ideal of the same order);
    // throws if there is none.
    long classify(const Lattice& J) const;

    explicit IdealClassSet(QuatAlg A) : alg(std::move(A)) {}
};

// Build (or fetch) the class set for the given level split.  The algebra is
// chosen deterministically from the primes of N1.  Results are cached in
// process; if QMF_CACHE_DIR is set (or cache_dir is nonempty) they are also
// stored on disk and revalidated on load against the mass formula, the
// right-order contract, and neighbor closure at the smallest good prime.
std::shared_ptr<const IdealClassSet> class_set(const Int& N1, const Int& N2,
                                               const std::string& cache_dir = "");

// Disk cache primitives used by class_set.  load runs the full revalidation
// and throws if the file is missing, malformed, or fails any check.
void save_class_set(const std::string& path, const IdealClassSet& cs);
std::shared_ptr<const IdealClassSet> load_class_set(const std::string& path);

}  // namespace qmf
