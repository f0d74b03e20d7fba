#include "qmf/quat.hpp"

#include <stdexcept>

namespace qmf {

QuatAlg::QuatAlg(const Int& a_, const Int& b_) : a(a_), b(b_) {
    if (a >= 0 || b >= 0) throw std::domain_error("QuatAlg: need a < 0 and b < 0");
    ramified = hilbert_ramified_primes(a, b);
}

Int QuatAlg::discriminant() const {
    Int d = 1;
    for (const Int& p : ramified) d *= p;
    return d;
}

bool QuatAlg::is_ramified(const Int& p) const {
    for (const Int& q : ramified)
        if (q == p) return true;
    return false;
}

QuatElt QuatElt::operator+(const QuatElt& y) const {
    QuatElt z(*alg);
    for (int t = 0; t < 4; ++t) z.c[t] = c[t] + y.c[t];
    return z;
}

QuatElt QuatElt::operator-(const QuatElt& y) const {
    QuatElt z(*alg);
    for (int t = 0; t < 4; ++t) z.c[t] = c[t] - y.c[t];
    return z;
}

QuatElt QuatElt::operator*(const QuatElt& y) const {
    const Rat a(alg->a), b(alg->b);
    const Rat *x = c, *w = y.c;
    QuatElt z(*alg);
    z.c[0] = x[0] * w[0] + a * x[1] * w[1] + b * x[2] * w[2] - a * b * x[3] * w[3];
    z.c[1] = x[0] * w[1] + x[1] * w[0] - b * x[2] * w[3] + b * x[3] * w[2];
    z.c[2] = x[0] * w[2] + x[2] * w[0] + a * x[1] * w[3] - a * x[3] * w[1];
    z.c[3] = x[0] * w[3] + x[3] * w[0] + x[1] * w[2] - x[2] * w[1];
    return z;
}

QuatElt QuatElt::operator*(const Rat& s) const {
    QuatElt z(*alg);
    for (int t = 0; t < 4; ++t) z.c[t] = c[t] * s;
    return z;
}

QuatElt QuatElt::operator-() const {
    QuatElt z(*alg);
    for (int t = 0; t < 4; ++t) z.c[t] = -c[t];
    return z;
}

bool QuatElt::operator==(const QuatElt& y) const {
    for (int t = 0; t < 4; ++t)
        if (c[t] != y.c[t]) return false;
    return true;
}

bool QuatElt::is_zero() const {
    for (int t = 0; t < 4; ++t)
        if (c[t] != 0) return false;
    return true;
}

QuatElt QuatElt::conj() const { return QuatElt(*alg, c[0], -c[1], -c[2], -c[3]); }

Rat QuatElt::trd() const { return c[0] * 2; }

Rat QuatElt::nrd() const {
    const Rat a(alg->a), b(alg->b);
    return c[0] * c[0] - a * c[1] * c[1] - b * c[2] * c[2] + a * b * c[3] * c[3];
}

QuatElt quat_one(const QuatAlg& A) { return QuatElt(A, 1, 0, 0, 0); }

QuatAlg construct_ramified(const std::vector<Int>& primes) {
    if (primes.size() % 2 == 0)
        throw std::domain_error("construct_ramified: need an odd number of finite primes");
    std::vector<Int> want = primes;
    std::sort(want.begin(), want.end());
    for (size_t t = 0; t < want.size(); ++t) {
        if (!is_prime(want[t])) throw std::domain_error("construct_ramified: not a prime");
        if (t > 0 && want[t] == want[t - 1])
            throw std::domain_error("construct_ramified: repeated prime");
    }
    for (Int s = 2; s <= 4000; ++s)
        for (Int absa = 1; absa < s; ++absa) {
            Int absb = s - absa;
            if (hilbert_ramified_primes(-absa, -absb) == want) return QuatAlg(-absa, -absb);
        }
    throw std::runtime_error("construct_ramified: search bound exhausted");
}

}  // namespace qmf
