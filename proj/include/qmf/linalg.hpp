#pragma once

// Exact linear algebra over Z, Q and Z/p with row-vector conventions:
// lattices and subspaces are ROW spans, kernels are left kernels
// {x : x*A = 0}.  Hermite forms are upper echelon with positive pivots and
// entries above a pivot reduced into [0, pivot).

#include "qmf/arith.hpp"
#include "qmf/poly.hpp"

namespace qmf {

class IntMat {
  public:
    IntMat() : r_(0), c_(0) {}
    IntMat(long rows, long cols) : r_(rows), c_(cols), a_(rows * cols, 0) {}
    static IntMat identity(long n);

    long rows() const { return r_; }
    long cols() const { return c_; }
    Int& at(long i, long j) { return a_[i * c_ + j]; }
    const Int& at(long i, long j) const { return a_[i * c_ + j]; }

    bool operator==(const IntMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    IntMat transpose() const;
    IntMat operator*(const IntMat& o) const;
    IntMat operator+(const IntMat& o) const;
    IntMat operator-(const IntMat& o) const;
    IntMat operator*(const Int& k) const;
    std::vector<Int> row(long i) const;
    void set_row(long i, const std::vector<Int>& v);
    IntMat stacked_with(const IntMat& below) const;
    Int content() const;  // gcd of all entries, >= 0

    std::string str() const;

  private:
    long r_, c_;
    std::vector<Int> a_;
};

std::vector<Int> mat_vec_row(const std::vector<Int>& x, const IntMat& A);  // x * A

// In-place Hermite normal form of the row span; returns the number of
// nonzero rows (which come first).  If transform != nullptr it must start as
// identity(rows); the same row operations are applied to it.
long hnf_rows(IntMat& A, IntMat* transform = nullptr);

// Basis of {x in Z^m : x*A = 0}; rows form a saturated (= full) kernel basis.
IntMat kernel_left(const IntMat& A);

// Saturation of the row span: basis of (Q-rowspan of A) intersected with Z^n.
IntMat saturate_rows(const IntMat& A);

// Particular integer solution of x*A = b, if one exists.
std::optional<std::vector<Int>> solve_left(const IntMat& A, const std::vector<Int>& b);

// Unique rational solution of x*A = b for A with full column rank on the
// span; throws if inconsistent or underdetermined on the span.
std::vector<Rat> solve_left_rat(const IntMat& A, const std::vector<Rat>& b);

// Basis (full rank k x k, HNF) of {x in Z^k : x*A = 0 mod m}; contains m*Z^k.
IntMat kernel_lattice_mod(const IntMat& A, const Int& m);

// Basis of the intersection of two full or partial row lattices in Z^n.
IntMat intersect_row_lattices(const IntMat& A, const IntMat& B);

Int det(const IntMat& A);  // Bareiss, square A

// Characteristic polynomial det(x*I - A), monic (Berkowitz, division free).
Poly charpoly(const IntMat& A);

IntMat mat_mod(const IntMat& A, const Int& p);
// Basis of the left kernel of A over F_p (rows reduced mod p, echelonized).
IntMat kernel_left_mod(const IntMat& A, const Int& p);
long rank_mod(const IntMat& A, const Int& p);

// Apply a monic integer polynomial to a square matrix.
IntMat poly_at_matrix(const Poly& f, const IntMat& A);

// --- quadratic form utilities -------------------------------------------
// G is the (symmetric, positive definite) Gram matrix of a BILINEAR form;
// the associated quadratic value of x is x*G*x^T.  For quaternion lattices
// we store G[i][j] = trd(b_i * conj(b_j)) so the value is 2*nrd.

// LLL reduction given only the Gram matrix: returns unimodular U with
// U*G*U^T reduced (delta = 3/4), all arithmetic exact.
IntMat lll_gram(const IntMat& G);

// All x (one representative per +-x pair, first nonzero coordinate > 0)
// with x*G*x^T == value.  Exact Fincke-Pohst on an LLL-reduced basis.
std::vector<std::vector<Int>> vectors_with_value(const IntMat& G, const Int& value);

// Number of x (counting x and -x separately) with x*G*x^T == value.
Int count_vectors_with_value(const IntMat& G, const Int& value);

bool exists_vector_with_value(const IntMat& G, const Int& value);

}  // namespace qmf
