#pragma once

// Univariate polynomials over Z and over Z/p.  Coefficients are stored
// little-endian and trimmed, so degree(0) = -1.  Everything is exact.

#include "qmf/arith.hpp"

namespace qmf {

class Poly {
  public:
    Poly() = default;
    explicit Poly(const Int& c) { co_.push_back(c); trim(); }
    explicit Poly(std::vector<Int> coeffs) : co_(std::move(coeffs)) { trim(); }

    static Poly x_power(size_t k) {
        std::vector<Int> c(k + 1, 0);
        c[k] = 1;
        return Poly(std::move(c));
    }

    long degree() const { return static_cast<long>(co_.size()) - 1; }
    bool is_zero() const { return co_.empty(); }
    const Int& operator[](size_t i) const {
        static const Int zero = 0;
        return i < co_.size() ? co_[i] : zero;
    }
    const std::vector<Int>& coeffs() const { return co_; }
    const Int& leading() const { return co_.back(); }
    bool is_monic() const { return !co_.empty() && co_.back() == 1; }

    void set_coeff(size_t i, const Int& v) {
        if (i >= co_.size()) co_.resize(i + 1, 0);
        co_[i] = v;
        trim();
    }

    friend Poly operator+(const Poly& f, const Poly& g);
    friend Poly operator-(const Poly& f, const Poly& g);
    friend Poly operator*(const Poly& f, const Poly& g);
    Poly operator-() const;
    Poly operator*(const Int& c) const;
    bool operator==(const Poly& o) const { return co_ == o.co_; }

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    Poly derivative() const;
    Int content() const;  // gcd of coefficients, >= 0; content(0) = 0
    Int max_abs_coeff() const;

    // Quotient of division by a monic divisor; requires exact remainder 0
    // when exact = true, otherwise returns the (Z-valid) monic-division pair.
    static std::pair<Poly, Poly> divmod_monic(const Poly& f, const Poly& g);
    static Poly div_exact_monic(const Poly& f, const Poly& g);

    std::string str(const std::string& var = "x") const;

  private:
    void trim() {
        while (!co_.empty() && co_.back() == 0) co_.pop_back();
    }
    std::vector<Int> co_;
};

// --- arithmetic mod p (p prime); polynomials are canonical: coefficients in
// [0,p), trimmed ---
namespace polymod {

Poly reduce(const Poly& f, const Int& p);
Poly add(const Poly& f, const Poly& g, const Int& p);
Poly sub(const Poly& f, const Poly& g, const Int& p);
Poly mul(const Poly& f, const Poly& g, const Int& p);
Poly monic(const Poly& f, const Int& p);
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, const Int& p);
Poly rem(const Poly& f, const Poly& g, const Int& p);
Poly gcd(Poly f, Poly g, const Int& p);  // monic gcd
Poly powmod(const Poly& base, const Int& e, const Poly& mod, const Int& p);
bool divides(const Poly& g, const Poly& f, const Int& p);
Poly div_exact(const Poly& f, const Poly& g, const Int& p);  // throws if not exact

// Distinct-degree + equal-degree (Cantor-Zassenhaus) factorization of a
// squarefree monic f mod an odd prime p.  Deterministically seeded.
std::vector<Poly> factor_squarefree(const Poly& f, const Int& p);

}  // namespace polymod

// n-th cyclotomic polynomial (cached).
const Poly& cyclotomic_polynomial(unsigned long n);

// Irreducible monic factors of a monic integer polynomial, with multiplicity,
// sorted (degree, then coefficients).  Zassenhaus: factor mod a good odd
// prime, Hensel lift past the Mignotte bound, recombine subsets.
std::vector<std::pair<Poly, unsigned>> factor_monic_over_Z(const Poly& f);

// Integer roots of a monic integer polynomial within [lo, hi].
std::vector<Int> integer_roots_in_range(const Poly& f, const Int& lo, const Int& hi);

}  // namespace qmf
