#pragma once

// Elements of Z[zeta_n], stored on the power basis 1, zeta, ..., zeta^(phi(n)-1)
// and kept reduced modulo the n-th cyclotomic polynomial.  Mixed-conductor
// arithmetic is not supported: operands must share n.

#include "qmf/arith.hpp"
#include "qmf/poly.hpp"

namespace qmf {

class CycInt {
  public:
    CycInt() : n_(1), c_(1, 0) {}
    explicit CycInt(unsigned long n);                       // zero of conductor n
    CycInt(unsigned long n, const Int& rational);
    static CycInt zeta_power(unsigned long n, long k);      // zeta_n^k
    static CycInt from_poly(unsigned long n, const Poly& f);  // f(zeta_n)

    unsigned long conductor() const { return n_; }
    long degree() const { return static_cast<long>(c_.size()); }  // = phi(n)
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Int rational_value() const;  // requires is_rational()

    CycInt conj() const;              // zeta -> zeta^(-1)
    CycInt galois(long k) const;      // zeta -> zeta^k, gcd(k, n) = 1
    CycInt norm_to_self() const { return *this * conj(); }  // |x|^2, totally real

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt operator*(const Int& k) const;
    CycInt operator-() const;
    bool operator==(const CycInt& o) const;

    Poly as_poly() const { return Poly(c_); }

    // True iff x lies in every prime of Z[zeta_n] above p, i.e. the radical
    // of Phi_n mod p (= Phi_{n'} for n' the p-free part of n) divides the
    // coefficient polynomial mod p.
    bool vanishes_mod_every_prime_above(const Int& p) const;

    std::string str() const;

  private:
    void reduce_from(const Poly& f);
    unsigned long n_;
    std::vector<Int> c_;  // length phi(n)
};

}  // namespace qmf
