#pragma once

// Exact integer and rational arithmetic plus elementary number theory:
// factorization, Kronecker and Hilbert symbols, CRT, modular helpers.
// All arithmetic is arbitrary precision (GMP); nothing here ever rounds.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmf {

using Int = mpz_class;
using Rat = mpq_class;

struct Xgcd {
    Int g, x, y;  // g = gcd(a,b) = a*x + b*y, g >= 0
};

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Xgcd xgcd(const Int& a, const Int& b) {
    Xgcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Canonical representative in [0, m), m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Representative in (-m/2, m/2].
inline Int mod_symmetric(const Int& a, const Int& m) {
    Int r = mod_floor(a, m);
    if (2 * r > m) r -= m;
    return r;
}

inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw std::domain_error("invmod: not invertible");
    return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Exact square root; throws if n is not a perfect square.
inline Int sqrt_exact(const Int& n) {
    if (!is_square(n)) throw std::domain_error("sqrt_exact: not a perfect square");
    return isqrt(n);
}

inline bool is_prime(const Int& n) {
    return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline long valuation(Int n, const Int& p) {
    if (n == 0) throw std::domain_error("valuation of 0");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

using Factorization = std::vector<std::pair<Int, unsigned>>;

// Prime factorization of n >= 1, primes ascending. Trial division below
// 2^20, then Miller-Rabin plus Brent's cycle variant of Pollard rho.
Factorization factorize(const Int& n);

std::vector<Int> divisors(const Int& n);              // ascending
std::vector<Int> prime_divisors(const Int& n);        // ascending
int moebius(const Int& n);                            // n >= 1
Int euler_phi(const Int& n);                          // n >= 1
Int sigma1(const Int& n);                             // sum of divisors, n >= 1
Int squarefree_kernel(const Int& n);                  // product of primes dividing n

inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

// Hilbert symbol (a,b)_v for nonzero rational integers a, b. v = 0 denotes
// the real place; otherwise v must be prime. Returns +1 or -1.
int hilbert_symbol(const Int& a, const Int& b, const Int& v);

// Finite primes v with (a,b)_v = -1, ascending. By reciprocity the count is
// even iff (a,b)_infty = +1.
std::vector<Int> hilbert_ramified_primes(const Int& a, const Int& b);

// x = residues[i] mod moduli[i]; moduli pairwise coprime, result in [0, prod).
Int crt(const std::vector<Int>& residues, const std::vector<Int>& moduli);

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace qmf
