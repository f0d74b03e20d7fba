#include "qmf/cyclotomic.hpp"

#include <sstream>

namespace qmf {

CycInt::CycInt(unsigned long n) : n_(n) {
    if (n == 0) throw std::domain_error("CycInt: conductor must be positive");
    c_.assign(euler_phi(Int(n)).get_ui(), 0);
}

CycInt::CycInt(unsigned long n, const Int& rational) : CycInt(n) { c_[0] = rational; }

CycInt CycInt::zeta_power(unsigned long n, long k) {
    CycInt z(n);
    long kk = ((k % static_cast<long>(n)) + n) % static_cast<long>(n);
    z.reduce_from(Poly::x_power(static_cast<size_t>(kk)));
    return z;
}

CycInt CycInt::from_poly(unsigned long n, const Poly& f) {
    CycInt z(n);
    z.reduce_from(f);
    return z;
}

void CycInt::reduce_from(const Poly& f) {
    Poly r = Poly::divmod_monic(f, cyclotomic_polynomial(n_)).second;
    for (size_t i = 0; i < c_.size(); ++i) c_[i] = r[i];
}

bool CycInt::is_zero() const {
    for (const Int& v : c_)
        if (v != 0) return false;
    return true;
}

bool CycInt::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Int CycInt::rational_value() const {
    if (!is_rational()) throw std::domain_error("CycInt: not rational");
    return c_[0];
}

CycInt CycInt::galois(long k) const {
    long n = static_cast<long>(n_);
    long kk = ((k % n) + n) % n;
    if (gcd(Int(kk), Int(n)) != 1) throw std::domain_error("CycInt::galois: k not coprime to n");
    Poly acc;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        size_t e = (i * static_cast<size_t>(kk)) % n_;
        acc = acc + Poly::x_power(e) * c_[i];
    }
    CycInt z(n_);
    z.reduce_from(acc);
    return z;
}

CycInt CycInt::conj() const { return galois(static_cast<long>(n_) - 1); }

CycInt CycInt::operator+(const CycInt& o) const {
    if (n_ != o.n_) throw std::domain_error("CycInt: conductor mismatch");
    CycInt z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] + o.c_[i];
    return z;
}

CycInt CycInt::operator-(const CycInt& o) const {
    if (n_ != o.n_) throw std::domain_error("CycInt: conductor mismatch");
    CycInt z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] - o.c_[i];
    return z;
}

CycInt CycInt::operator*(const CycInt& o) const {
    if (n_ != o.n_) throw std::domain_error("CycInt: conductor mismatch");
    CycInt z(n_);
    z.reduce_from(Poly(c_) * Poly(o.c_));
    return z;
}

CycInt CycInt::operator*(const Int& k) const {
    CycInt z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = c_[i] * k;
    return z;
}

CycInt CycInt::operator-() const {
    CycInt z(n_);
    for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = -c_[i];
    return z;
}

bool CycInt::operator==(const CycInt& o) const { return n_ == o.n_ && c_ == o.c_; }

bool CycInt::vanishes_mod_every_prime_above(const Int& p) const {
    unsigned long nprime = n_;
    unsigned long pu = p.fits_ulong_p() ? p.get_ui() : 0;
    while (pu >= 2 && nprime % pu == 0) nprime /= pu;
    // radical of Phi_n mod p is Phi_{n'} mod p for p | n, and Phi_n itself
    // otherwise (then n' = n)
    const Poly& rad = cyclotomic_polynomial(nprime);
    return polymod::divides(polymod::reduce(rad, p), polymod::reduce(Poly(c_), p), p);
}

std::string CycInt::str() const {
    std::ostringstream os;
    os << Poly(c_).str("z") << " (conductor " << n_ << ")";
    return os.str();
}

}  // namespace qmf
