#pragma once

#include <vector>

#include "qmf/classset.hpp"
#include "qmf/cyclotomic.hpp"
#include "qmf/quadfield.hpp"

namespace qmf {

// Embedding of the maximal order of Q(sqrt(D)) into a maximal quaternion
// order: omega is an order element with trd(omega) = D mod 2 and
// nrd(omega) = (t^2 - D)/4, so Z[omega] has discriminant D.
struct Embedding {
    Int D;
    QuatElt omega;
    long base = 0;  // ideal class whose left order contains omega

    QuatElt sqrt_d() const;  // 2*omega - t, square is D
    // Image of (x + y sqrt(D))/2; requires x = y D mod 2.
    QuatElt map(const Int& x, const Int& y) const;
};

// Exact search over the trace slice of the order.  Requires D a negative
// fundamental discriminant and every prime dividing the reduced discriminant
// of the order inert in Q(sqrt(D)); the order must be maximal.  Throws
// std::domain_error when a precondition fails or the order contains no copy
// of the quadratic ring.
Embedding optimal_embedding(const Lattice& order, const Int& D);

// Same search across the left orders of all ideal classes; a copy of the
// quadratic ring lives in at least one of them, since the total embedding
// count over the class set is twice the class number of Q(sqrt(D)).
Embedding optimal_embedding(const IdealClassSet& cs, const Int& D);

// Orbit of the class group of Q(sqrt(D)) on the ideal classes of the
// quaternion order: cls[t] is the class index of the right ideal generated
// by the image of the t-th ideal class representative.  The principal class
// lands on the base class of the embedding.
struct ClassMap {
    Int D;
    std::vector<long> cls;    // indexed like QuadClassGroup::forms
    std::vector<Int> fibers;  // fiber size over each quaternion ideal class
};

// Requires emb.D == G.D and emb.omega in the left order of class emb.base.
ClassMap class_map(const IdealClassSet& cs, const Embedding& emb,
                   const QuadClassGroup& G);

// Twisted orbit sum  sum_t phi(cls[t]) conj(chi(t))  in Z[zeta].
CycInt period(const std::vector<Int>& phi, const QuadCharacter& chi,
              const ClassMap& cmap);

// period * conj(period).  Requires the values of phi to have gcd 1;
// totally real and nonnegative.
CycInt algebraic_lvalue(const std::vector<Int>& phi, const QuadCharacter& chi,
                        const ClassMap& cmap);

// The residue shared by every entry of phi mod m, in [0, m); throws
// std::domain_error when two entries disagree.
Int common_residue(const std::vector<Int>& phi, const Int& m);

// Central-value congruences for one field Q(sqrt(D)) against an eigenvector
// phi whose values share a residue c mod p^r: the trivial-character value
// must be c^2 h^2 mod p^r, and every other character value must vanish mod
// every prime over p (checked at r = 1).
struct LValueCheck {
    Int D;
    Int h;               // class number of Q(sqrt(D))
    Int c;               // common residue of phi mod p^r
    Int trivial_value;   // algebraic central value at the trivial character
    bool trivial_ok;
    bool nontrivial_ok;

    bool ok() const { return trivial_ok && nontrivial_ok; }
};

LValueCheck check_lvalue_congruences(const IdealClassSet& cs,
                                     const std::vector<Int>& phi, const Int& p,
                                     unsigned long r, const Int& D);

// Nonvanishing certificate for the trivial-character period of a vector
// congruent to 1 mod p: when p does not divide the class number h the period
// is h mod p, hence nonzero.  Returns false (inconclusive) when p | h.
bool nonvanishing_certified(const IdealClassSet& cs,
                            const std::vector<Int>& phi_lift, const Int& p,
                            const Int& D);

// Negative fundamental discriminants |D| <= bound with every prime dividing
// N inert in Q(sqrt(D)), by increasing |D|.
std::vector<Int> inert_discriminants(const Int& N, const Int& bound);

}  // namespace qmf
