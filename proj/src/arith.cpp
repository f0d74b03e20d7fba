#include "qmf/arith.hpp"

#include <algorithm>

namespace qmf {

namespace {

// Brent's variant of Pollard rho. n composite, odd, not a prime power of
// interest -- just returns some nontrivial factor.
Int pollard_brent(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    // Deterministic parameter sweep keeps factorization reproducible.
    for (unsigned long c = 1;; ++c) {
        Int y = 2, r = 1, q = 1, g = 1, x, ys;
        const unsigned long m = 128;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = mod_floor(y * y + c, n);
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int steps = r - k;
                if (steps > m) steps = m;
                for (Int i = 0; i < steps; ++i) {
                    y = mod_floor(y * y + c, n);
                    q = mod_floor(q * (x - y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = mod_floor(ys * ys + c, n);
                g = gcd(x - ys, n);
            }
        }
        if (g != n) return g;
        // cycle degenerated; retry with the next polynomial
    }
}

void factor_into(Int n, std::map<Int, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Factorization factorize(const Int& n_in) {
    if (n_in < 1) throw std::domain_error("factorize: argument must be >= 1");
    Int n = n_in;
    std::map<Int, unsigned> acc;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            acc[Int(p)]++;
            n /= p;
        }
    }
    for (unsigned long d = 17; d * d <= n && d < (1ul << 20); d += 2) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            acc[Int(d)]++;
            n /= d;
        }
    }
    if (n > 1) {
        if (n < (1ul << 40) && is_square(n)) {
            // common after trial division
            Int r = isqrt(n);
            factor_into(r, acc);
            factor_into(r, acc);
        } else {
            factor_into(n, acc);
        }
    }
    return Factorization(acc.begin(), acc.end());
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : factorize(n)) {
        size_t cur = ds.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> ps;
    for (const auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

int moebius(const Int& n) {
    int sign = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

Int euler_phi(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factorize(n)) r *= pow_int(p, e - 1) * (p - 1);
    return r;
}

Int sigma1(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factorize(n)) r *= (pow_int(p, e + 1) - 1) / (p - 1);
    return r;
}

Int squarefree_kernel(const Int& n) {
    Int r = 1;
    for (const auto& [p, e] : factorize(n)) r *= p;
    return r;
}

namespace {

// parity helpers for the 2-adic symbol
inline int eps2(const Int& u) { return mpz_tstbit(Int((u - 1) / 2).get_mpz_t(), 0); }
inline int omega2(const Int& u) { return mpz_tstbit(Int((u * u - 1) / 8).get_mpz_t(), 0); }

}  // namespace

int hilbert_symbol(const Int& a, const Int& b, const Int& v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: arguments must be nonzero");
    if (v == 0) return (a < 0 && b < 0) ? -1 : 1;
    if (!is_prime(v)) throw std::domain_error("hilbert_symbol: place must be prime or 0");
    long alpha = valuation(a, v), beta = valuation(b, v);
    Int u = a / pow_int(v, alpha), w = b / pow_int(v, beta);
    if (v == 2) {
        int e = (eps2(u) * eps2(w) + alpha % 2 * omega2(w) + beta % 2 * omega2(u)) % 2;
        return e ? -1 : 1;
    }
    int e = ((alpha % 2) * (beta % 2) * eps2(v)) % 2;
    int s = e ? -1 : 1;
    if (beta % 2) s *= kronecker(u, v);
    if (alpha % 2) s *= kronecker(w, v);
    return s;
}

std::vector<Int> hilbert_ramified_primes(const Int& a, const Int& b) {
    std::vector<Int> ram;
    for (const Int& p : prime_divisors(2 * abs(a) * abs(b)))
        if (hilbert_symbol(a, b, p) == -1) ram.push_back(p);
    return ram;
}

Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw std::domain_error("crt: mismatched input");
    Int x = mod_floor(residues[0], moduli[0]), m = moduli[0];
    for (size_t i = 1; i < residues.size(); ++i) {
        Xgcd e = xgcd(m, moduli[i]);
        if (e.g != 1) throw std::domain_error("crt: moduli not coprime");
        Int mi = moduli[i];
        x = mod_floor(x + m * e.x * (residues[i] - x), m * mi);
        m *= mi;
    }
    return x;
}

}  // namespace qmf
