#pragma once

// Imaginary quadratic fields through binary quadratic forms: reduction,
// Gauss composition, the form class group and its character group, and the
// dictionary with ideals of the maximal order.  Field elements are pairs
// (x, y) standing for (x + y*sqrt(D))/2 with x = y*D mod 2.

#include "qmf/cyclotomic.hpp"
#include "qmf/linalg.hpp"

namespace qmf {

// Primitive positive definite form a*x^2 + b*x*y + c*y^2 of discriminant
// b^2 - 4ac < 0.
struct QuadForm {
    Int a, b, c;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    Int disc() const { return b * b - 4 * a * c; }
    Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
};

// D = 1 mod 4 squarefree, or D = 4m with m squarefree, m = 2 or 3 mod 4.
bool is_fundamental_discriminant(const Int& D);

QuadForm principal_form(const Int& D);

// |b| <= a <= c with b >= 0 when |b| = a or a = c.
bool is_reduced(const QuadForm& f);
QuadForm reduce_form(QuadForm f);

// All primitive reduced forms of discriminant D < 0, sorted by (a, b, c);
// the principal form comes first.
std::vector<QuadForm> reduced_forms(const Int& D);
Int class_number(const Int& D);

// Gauss composition, reduced.  Implemented through a coprime-leading-
// coefficient representative and Dirichlet's formula, independent of the
// ideal arithmetic below.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm form_inverse(const QuadForm& f);
QuadForm form_power(QuadForm f, Int k);

// Ideal of the maximal order of Q(sqrt(D)), as a 2 x 2 HNF basis whose rows
// (x, y) denote (x + y*sqrt(D))/2.
struct QuadIdeal {
    Int D;
    IntMat basis;  // 2 x 2, HNF
    bool operator==(const QuadIdeal& o) const { return D == o.D && basis == o.basis; }
};

QuadIdeal ring_of_integers(const Int& D);
QuadIdeal ideal_of_form(const QuadForm& f, const Int& D);  // a*Z + (-b + sqrt(D))/2 * Z
QuadIdeal ideal_product(const QuadIdeal& A, const QuadIdeal& B);
Int ideal_norm(const QuadIdeal& A);

// Reduced form of the ideal class: N(x*alpha + y*beta)/N(ideal) on an
// ordered basis oriented so the round trip with ideal_of_form is the
// identity on classes.
QuadForm form_of_ideal(const QuadIdeal& A);

// Form class group on the reduced forms, with the full composition table.
struct QuadClassGroup {
    Int D;
    std::vector<QuadForm> forms;      // reduced, forms[0] principal
    std::vector<std::vector<long>> table;  // table[i][j] = index of product

    long size() const { return static_cast<long>(forms.size()); }
    long index_of(const QuadForm& reduced) const;  // throws if absent
    long inverse_of(long i) const;
    long order_of(long i) const;
    unsigned long exponent() const;  // lcm of element orders
    long classify(const QuadIdeal& A) const { return index_of(form_of_ideal(A)); }
};

QuadClassGroup class_group(const Int& D);

// Character of the form class group with values in Z[zeta_E], E the group
// exponent: value(t) = zeta_E^exps[t].
struct QuadCharacter {
    unsigned long E = 1;
    std::vector<long> exps;  // one exponent in [0, E) per class

    CycInt value(long t) const { return CycInt::zeta_power(E, exps[t]); }
    CycInt conj_value(long t) const { return CycInt::zeta_power(E, -exps[t]); }
    bool is_trivial() const;
    unsigned long order() const;  // order in the dual group
    bool operator==(const QuadCharacter& o) const { return E == o.E && exps == o.exps; }
};

// All size() characters, trivial first, then by (order, exponent vector).
std::vector<QuadCharacter> all_characters(const QuadClassGroup& G);

// Number of roots of unity in Q(sqrt(D)): 6 for D = -3, 4 for D = -4,
// otherwise 2.
long unit_count(const Int& D);

// ell stays prime in Q(sqrt(D)).
bool is_inert(const Int& D, const Int& ell);

}  // namespace qmf
