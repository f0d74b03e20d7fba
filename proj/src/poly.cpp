#include "qmf/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace qmf {

Poly operator+(const Poly& f, const Poly& g) {
    std::vector<Int> c(std::max(f.co_.size(), g.co_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = f[i] + g[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& f, const Poly& g) {
    std::vector<Int> c(std::max(f.co_.size(), g.co_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = f[i] - g[i];
    return Poly(std::move(c));
}

Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly();
    std::vector<Int> c(f.co_.size() + g.co_.size() - 1, 0);
    for (size_t i = 0; i < f.co_.size(); ++i)
        for (size_t j = 0; j < g.co_.size(); ++j) c[i + j] += f.co_[i] * g.co_[j];
    return Poly(std::move(c));
}

Poly Poly::operator-() const {
    std::vector<Int> c(co_);
    for (auto& v : c) v = -v;
    return Poly(std::move(c));
}

Poly Poly::operator*(const Int& k) const {
    std::vector<Int> c(co_);
    for (auto& v : c) v *= k;
    return Poly(std::move(c));
}

Int Poly::eval(const Int& x) const {
    Int r = 0;
    for (size_t i = co_.size(); i-- > 0;) r = r * x + co_[i];
    return r;
}

Rat Poly::eval(const Rat& x) const {
    Rat r = 0;
    for (size_t i = co_.size(); i-- > 0;) r = r * x + Rat(co_[i]);
    return r;
}

Poly Poly::derivative() const {
    if (co_.size() <= 1) return Poly();
    std::vector<Int> c(co_.size() - 1);
    for (size_t i = 1; i < co_.size(); ++i) c[i - 1] = co_[i] * Int(i);
    return Poly(std::move(c));
}

Int Poly::content() const {
    Int g = 0;
    for (const auto& v : co_) g = gcd(g, v);
    return g;
}

Int Poly::max_abs_coeff() const {
    Int m = 0;
    for (const auto& v : co_) m = std::max(m, Int(abs(v)));
    return m;
}

std::pair<Poly, Poly> Poly::divmod_monic(const Poly& f, const Poly& g) {
    if (!g.is_monic()) throw std::domain_error("divmod_monic: divisor not monic");
    std::vector<Int> r(f.co_);
    long dg = g.degree();
    if (f.degree() < dg) return {Poly(), f};
    std::vector<Int> q(f.degree() - dg + 1, 0);
    for (long i = f.degree(); i >= dg; --i) {
        Int c = r[i];
        if (c == 0) continue;
        q[i - dg] = c;
        for (long j = 0; j <= dg; ++j) r[i - dg + j] -= c * g[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly Poly::div_exact_monic(const Poly& f, const Poly& g) {
    auto [q, r] = divmod_monic(f, g);
    if (!r.is_zero()) throw std::logic_error("div_exact_monic: division not exact");
    return q;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = co_.size(); i-- > 0;) {
        if (co_[i] == 0) continue;
        Int c = co_[i];
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace polymod {

Poly reduce(const Poly& f, const Int& p) {
    std::vector<Int> c(f.coeffs());
    for (auto& v : c) v = mod_floor(v, p);
    return Poly(std::move(c));
}

Poly add(const Poly& f, const Poly& g, const Int& p) { return reduce(f + g, p); }
Poly sub(const Poly& f, const Poly& g, const Int& p) { return reduce(f - g, p); }
Poly mul(const Poly& f, const Poly& g, const Int& p) { return reduce(f * g, p); }

Poly monic(const Poly& f, const Int& p) {
    if (f.is_zero()) return f;
    Int inv = invmod(f.leading(), p);
    return reduce(f * inv, p);
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g, const Int& p) {
    if (g.is_zero()) throw std::domain_error("polymod::divmod by zero");
    Int inv = invmod(g.leading(), p);
    std::vector<Int> r(reduce(f, p).coeffs());
    long dg = g.degree();
    if (static_cast<long>(r.size()) - 1 < dg) return {Poly(), Poly(std::move(r))};
    std::vector<Int> q(r.size() - dg, 0);
    for (long i = static_cast<long>(r.size()) - 1; i >= dg; --i) {
        Int c = mod_floor(r[i] * inv, p);
        if (c == 0) continue;
        q[i - dg] = c;
        for (long j = 0; j <= dg; ++j) r[i - dg + j] = mod_floor(r[i - dg + j] - c * g[j], p);
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly rem(const Poly& f, const Poly& g, const Int& p) { return divmod(f, g, p).second; }

Poly gcd(Poly f, Poly g, const Int& p) {
    f = reduce(f, p);
    g = reduce(g, p);
    while (!g.is_zero()) {
        Poly r = rem(f, g, p);
        f = g;
        g = r;
    }
    return monic(f, p);
}

Poly powmod(const Poly& base, const Int& e, const Poly& mod, const Int& p) {
    Poly r(Int(1)), b = rem(base, mod, p);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = rem(mul(r, b, p), mod, p);
        b = rem(mul(b, b, p), mod, p);
        k /= 2;
    }
    return r;
}

bool divides(const Poly& g, const Poly& f, const Int& p) {
    return rem(f, g, p).is_zero();
}

Poly div_exact(const Poly& f, const Poly& g, const Int& p) {
    auto [q, r] = divmod(f, g, p);
    if (!r.is_zero()) throw std::logic_error("polymod::div_exact: division not exact");
    return q;
}

namespace {

// minimal deterministic PRNG for equal-degree splitting
struct Lcg {
    uint64_t s = 0x9e3779b97f4a7c15ull;
    uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 16;
    }
};

Poly random_poly(Lcg& rng, long deg_below, const Int& p) {
    std::vector<Int> c(deg_below);
    for (auto& v : c) v = mod_floor(Int(static_cast<unsigned long>(rng.next())), p);
    return Poly(std::move(c));
}

// equal-degree splitting: f monic squarefree, all irreducible factors of
// degree d, p odd
void equal_degree(const Poly& f, long d, const Int& p, Lcg& rng, std::vector<Poly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Int card = pow_int(p, static_cast<unsigned long>(d));
    Int e = (card - 1) / 2;
    for (;;) {
        Poly r = random_poly(rng, f.degree(), p);
        if (r.degree() < 1) continue;
        Poly s = powmod(r, e, f, p);
        Poly g = gcd(sub(s, Poly(Int(1)), p), f, p);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, p, rng, out);
            equal_degree(div_exact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Poly> factor_squarefree(const Poly& f_in, const Int& p) {
    if (p == 2) throw std::domain_error("factor_squarefree: p must be odd");
    Poly f = monic(reduce(f_in, p), p);
    std::vector<Poly> out;
    Lcg rng;
    Poly x = Poly::x_power(1);
    Poly h = x;  // x^(p^d) mod f, incrementally
    long d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.push_back(f);
            break;
        }
        h = powmod(h, p, f, p);
        Poly g = gcd(sub(h, x, p), f, p);
        if (g.degree() > 0) {
            equal_degree(g, d, p, rng, out);
            f = div_exact(f, g, p);
            h = rem(h, f, p);
        }
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

}  // namespace polymod

namespace {

const Poly& cyclotomic_polynomial_locked(unsigned long n, std::map<unsigned long, Poly>& cache) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Poly f = Poly::x_power(n) - Poly(Int(1));
    for (const Int& d : divisors(Int(n))) {
        unsigned long du = d.get_ui();
        if (du == n) continue;
        f = Poly::div_exact_monic(f, cyclotomic_polynomial_locked(du, cache));
    }
    return cache.emplace(n, std::move(f)).first->second;
}

}  // namespace

const Poly& cyclotomic_polynomial(unsigned long n) {
    static std::mutex mtx;
    static std::map<unsigned long, Poly> cache;
    std::lock_guard<std::mutex> lock(mtx);
    return cyclotomic_polynomial_locked(n, cache);
}

namespace {

// gcd of integer polynomials via their monic rational gcd; result primitive
Poly gcd_over_Z(const Poly& f, const Poly& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    // Euclid over Q with scaling to keep integer coefficients
    Poly a = f, b = g;
    while (!b.is_zero()) {
        // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
        Int lc = b.leading();
        long k = a.degree() - b.degree() + 1;
        if (k < 0) k = 0;
        Poly scaled = a * pow_int(lc, static_cast<unsigned long>(k));
        // polynomial division with exact integer steps
        std::vector<Int> r(scaled.coeffs());
        long db = b.degree();
        for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
            if (r[i] == 0) continue;
            Int q = r[i] / lc;
            if (q * lc != r[i]) throw std::logic_error("gcd_over_Z: non-exact pseudo-division");
            for (long j = 0; j <= db; ++j) r[i - db + j] -= q * b[j];
        }
        Poly rem(std::move(r));
        Int c = rem.content();
        if (c > 1) {
            std::vector<Int> rc(rem.coeffs());
            for (auto& v : rc) v /= c;
            rem = Poly(std::move(rc));
        }
        a = b;
        b = rem;
    }
    Int c = a.content();
    std::vector<Int> rc(a.coeffs());
    if (c > 1)
        for (auto& v : rc) v /= c;
    Poly r(std::move(rc));
    if (!r.is_zero() && r.leading() < 0) r = -r;
    return r;
}

// two-factor quadratic Hensel step: f = g*h (mod m) with s*g + t*h = 1
// (mod m), all monic g,h; lifts to mod m^2
void hensel_step(const Poly& f, Poly& g, Poly& h, Poly& s, Poly& t, const Int& m) {
    Int m2 = m * m;
    auto red = [&](const Poly& q) { return polymod::reduce(q, m2); };
    Poly e = red(f - g * h);
    auto [q, r] = polymod::divmod(polymod::mul(s, e, m2), h, m2);
    Poly g1 = red(g + e * t + q * g);
    Poly h1 = red(h + r);
    Poly b = red(s * g1 + t * h1 - Poly(Int(1)));
    auto [c, d] = polymod::divmod(polymod::mul(s, b, m2), h1, m2);
    s = red(s - d);
    t = red(t - t * b - c * g1);
    g = g1;
    h = h1;
}

// lift factorization f = prod(factors) from mod p to mod p^(2^iters) >= bound
std::vector<Poly> hensel_lift_tree(const Poly& f, std::vector<Poly> factors, const Int& p,
                                   const Int& bound, Int& modulus_out) {
    if (factors.size() == 1) {
        Int m = p;
        while (m < bound) m *= m;
        modulus_out = m;
        return {polymod::reduce(f, m)};
    }
    size_t half = factors.size() / 2;
    Poly g(Int(1)), h(Int(1));
    std::vector<Poly> left(factors.begin(), factors.begin() + half);
    std::vector<Poly> right(factors.begin() + half, factors.end());
    for (const auto& q : left) g = polymod::mul(g, q, p);
    for (const auto& q : right) h = polymod::mul(h, q, p);
    // Bezout: s*g + t*h = 1 mod p
    Poly s, t;
    {
        Poly a = g, b = h;
        Poly sa(Int(1)), sb;  // sa*g0 + ?*h0 = a
        Poly ta, tb(Int(1));
        while (!b.is_zero()) {
            auto [q, r] = polymod::divmod(a, b, p);
            Poly sn = polymod::sub(sa, polymod::mul(q, sb, p), p);
            Poly tn = polymod::sub(ta, polymod::mul(q, tb, p), p);
            a = b; b = r;
            sa = sb; sb = sn;
            ta = tb; tb = tn;
        }
        // a = gcd = nonzero constant (g,h coprime mod p)
        if (a.degree() != 0) throw std::logic_error("hensel: factors not coprime mod p");
        Int inv = invmod(a.leading(), p);
        s = polymod::reduce(sa * inv, p);
        t = polymod::reduce(ta * inv, p);
    }
    Int m = p;
    while (m < bound) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    modulus_out = m;
    Int dummy;
    auto lg = hensel_lift_tree(g, left, p, bound, dummy);
    auto lh = hensel_lift_tree(h, right, p, bound, dummy);
    // re-lift children products mod m is already handled: children were lifted
    // from their own mod-p factors against g,h mod >= bound
    lg.insert(lg.end(), lh.begin(), lh.end());
    return lg;
}

Poly symmetric_rep(const Poly& f, const Int& m) {
    std::vector<Int> c(f.coeffs());
    for (auto& v : c) v = mod_symmetric(v, m);
    return Poly(std::move(c));
}

// irreducible factors of a squarefree monic integer polynomial
std::vector<Poly> factor_squarefree_over_Z(const Poly& f) {
    if (f.degree() == 1) return {f};
    // choose an odd prime keeping f squarefree mod p
    Int p = 3;
    for (;;) {
        if (mod_floor(f.leading(), p) != 0) {
            Poly fp = polymod::reduce(f, p);
            if (polymod::gcd(fp, fp.derivative(), p).degree() == 0) break;
        }
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    auto modular = polymod::factor_squarefree(f, p);
    if (modular.size() == 1) return {f};
    // Mignotte-style bound on factor coefficients: 2^deg * sqrt(deg+1) * |f|_inf
    Int bound = pow_int(2, static_cast<unsigned long>(f.degree()) + 3) *
                (isqrt(Int(f.degree() + 1)) + 1) * f.max_abs_coeff();
    Int modulus;
    auto lifted = hensel_lift_tree(f, modular, p, 2 * bound + 1, modulus);
    // subset recombination
    std::vector<Poly> out;
    Poly rest = f;
    std::vector<bool> used(lifted.size(), false);
    size_t live = lifted.size();
    for (size_t k = 1; k <= live && 2 * k <= live + 1; ++k) {
        // iterate over size-k subsets of unused indices
        std::vector<size_t> idx;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) idx.push_back(i);
        if (idx.size() < k) continue;
        std::vector<size_t> sel(k);
        for (size_t i = 0; i < k; ++i) sel[i] = i;
        bool advanced = true;
        while (advanced) {
            Poly cand(Int(1));
            for (size_t i : sel) cand = polymod::mul(cand, lifted[idx[i]], modulus);
            cand = symmetric_rep(cand, modulus);
            bool ok = false;
            if (cand.is_monic()) {
                auto [q, r] = Poly::divmod_monic(rest, cand);
                if (r.is_zero()) {
                    out.push_back(cand);
                    rest = q;
                    for (size_t i : sel) used[idx[i]] = true;
                    live -= k;
                    ok = true;
                }
            }
            if (ok) {
                idx.clear();
                for (size_t i = 0; i < lifted.size(); ++i)
                    if (!used[i]) idx.push_back(i);
                if (idx.size() < k) break;
                for (size_t i = 0; i < k; ++i) sel[i] = i;
                if (k > idx.size()) break;
                continue;
            }
            // next subset
            long pos = static_cast<long>(k) - 1;
            while (pos >= 0 && sel[pos] == idx.size() - k + pos) --pos;
            if (pos < 0) {
                advanced = false;
            } else {
                ++sel[pos];
                for (size_t i = pos + 1; i < k; ++i) sel[i] = sel[i - 1] + 1;
            }
        }
    }
    if (rest.degree() > 0) out.push_back(rest);
    return out;
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> factor_monic_over_Z(const Poly& f_in) {
    if (!f_in.is_monic()) throw std::domain_error("factor_monic_over_Z: polynomial must be monic");
    std::vector<std::pair<Poly, unsigned>> out;
    Poly f = f_in;
    if (f.degree() == 0) return out;
    // strip x^k
    size_t k = 0;
    while (f[0] == 0 && f.degree() > 0) {
        f = Poly::div_exact_monic(f, Poly::x_power(1));
        ++k;
    }
    if (k > 0) out.push_back({Poly::x_power(1), static_cast<unsigned>(k)});
    if (f.degree() > 0) {
        Poly sf = Poly::div_exact_monic(f, gcd_over_Z(f, f.derivative()));
        for (const Poly& g : factor_squarefree_over_Z(sf)) {
            unsigned mult = 0;
            for (;;) {
                auto [q, r] = Poly::divmod_monic(f, g);
                if (!r.is_zero()) break;
                f = q;
                ++mult;
            }
            out.push_back({g, mult});
        }
        if (f.degree() != 0) throw std::logic_error("factor_monic_over_Z: incomplete factorization");
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

std::vector<Int> integer_roots_in_range(const Poly& f, const Int& lo, const Int& hi) {
    std::vector<Int> roots;
    for (Int t = lo; t <= hi; ++t)
        if (f.eval(t) == 0) roots.push_back(t);
    return roots;
}

}  // namespace qmf
