#include "qmf/eisenstein.hpp"

#include <algorithm>
#include <map>

namespace qmf {

std::vector<Int> eisenstein_vector(const IdealClassSet& cs) {
    return std::vector<Int>(cs.size(), 1);
}

Rat weight_pairing(const IdealClassSet& cs, const std::vector<Int>& x, const std::vector<Int>& y) {
    if (x.size() != cs.size() || y.size() != cs.size())
        throw std::domain_error("weight_pairing: dimension mismatch");
    Rat s = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
        Rat t(x[i] * y[i], cs.weights[i]);
        t.canonicalize();
        s += t;
    }
    return s;
}

namespace {

Int weight_lcm(const IdealClassSet& cs) {
    Int W = 1;
    for (const Int& w : cs.weights) W = lcm(W, w);
    return W;
}

std::vector<Int> dual_weights(const IdealClassSet& cs) {
    Int W = weight_lcm(cs);
    std::vector<Int> ws(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) ws[i] = W / cs.weights[i];
    return ws;
}

}  // namespace

IntMat cusp_lattice(const IdealClassSet& cs) {
    auto ws = dual_weights(cs);
    IntMat col(cs.size(), 1);
    for (size_t i = 0; i < cs.size(); ++i) col.at(i, 0) = ws[i];
    return kernel_left(col);
}

IntMat restrict_row_action(const IntMat& B, const IntMat& C) {
    IntMat target = C * B.transpose();
    IntMat M(C.rows(), C.rows());
    for (long i = 0; i < static_cast<long>(C.rows()); ++i) {
        auto y = solve_left(C, target.row(i));
        if (!y) throw std::logic_error("restrict_row_action: span is not stable");
        M.set_row(i, *y);
    }
    return M;
}

std::optional<Int> scalar_action(const IntMat& B, const IntMat& block) {
    if (block.rows() == 0) return std::nullopt;
    IntMat target = block * B.transpose();
    // candidate from the first nonzero entry
    Int lambda = 0;
    bool have = false;
    for (long i = 0; i < static_cast<long>(block.rows()) && !have; ++i)
        for (long j = 0; j < static_cast<long>(block.cols()) && !have; ++j)
            if (block.at(i, j) != 0) {
                if (target.at(i, j) % block.at(i, j) != 0) return std::nullopt;
                lambda = target.at(i, j) / block.at(i, j);
                have = true;
            }
    for (long i = 0; i < static_cast<long>(block.rows()); ++i)
        for (long j = 0; j < static_cast<long>(block.cols()); ++j)
            if (target.at(i, j) != lambda * block.at(i, j)) return std::nullopt;
    return lambda;
}

namespace {

IntMat normalized_rows(const IntMat& A) {
    IntMat H = saturate_rows(A);
    hnf_rows(H);
    return H;
}

}  // namespace

std::vector<IntMat> eigen_blocks(const IdealClassSet& cs, const Int& ell_max) {
    IntMat C = cusp_lattice(cs);
    if (C.rows() == 0) return {};
    std::vector<IntMat> blocks = {C};
    Int ell = 2;
    for (; ell <= ell_max; mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t())) {
        if ((cs.N1 * cs.N2) % ell == 0) continue;
        bool all_lines = true;
        for (const IntMat& b : blocks) all_lines = all_lines && b.rows() == 1;
        if (all_lines) break;
        IntMat B = brandt_matrix(cs, ell);
        std::vector<IntMat> next;
        for (const IntMat& blk : blocks) {
            if (blk.rows() == 1) {
                next.push_back(blk);
                continue;
            }
            IntMat M = restrict_row_action(B, blk);
            auto factors = factor_monic_over_Z(charpoly(M));
            if (factors.size() == 1) {
                next.push_back(blk);
                continue;
            }
            for (const auto& [g, e] : factors) {
                IntMat ker = kernel_left(poly_at_matrix(g, M));
                if (Int(ker.rows()) != Int(g.degree()) * e)
                    throw std::logic_error("eigen_blocks: operator not semisimple");
                next.push_back(normalized_rows(ker * blk));
            }
        }
        blocks = std::move(next);
    }
    std::sort(blocks.begin(), blocks.end(), [](const IntMat& a, const IntMat& b) {
        if (a.rows() != b.rows()) return a.rows() < b.rows();
        for (long i = 0; i < static_cast<long>(a.rows()); ++i)
            for (long j = 0; j < static_cast<long>(a.cols()); ++j)
                if (a.at(i, j) != b.at(i, j)) return a.at(i, j) < b.at(i, j);
        return false;
    });
    return blocks;
}

std::optional<std::vector<Int>> eisenstein_cusp_lift(const IdealClassSet& cs, const Int& p,
                                                     unsigned long r) {
    if (!is_prime(p)) throw std::domain_error("eisenstein_cusp_lift: p must be prime");
    auto ws = dual_weights(cs);
    Int q = pow_int(p, r);
    Int total = 0;
    for (const Int& w : ws) total += w;
    if (total % q != 0) return std::nullopt;
    Int target = -(total / q);

    // particular solution of sum ws_i a_i = target by iterated xgcd
    size_t h = cs.size();
    std::vector<Int> coeff(h, 0);
    Int g = ws[0];
    coeff[0] = 1;
    for (size_t i = 1; i < h; ++i) {
        auto [g2, u, v] = xgcd(g, ws[i]);
        for (size_t k = 0; k < i; ++k) coeff[k] *= u;
        coeff[i] = v;
        g = g2;
    }
    if (target % g != 0) return std::nullopt;
    Int scale = target / g;
    std::vector<Int> a(h);
    for (size_t i = 0; i < h; ++i) a[i] = coeff[i] * scale;

    // size-reduce against the solution kernel
    IntMat col(h, 1);
    for (size_t i = 0; i < h; ++i) col.at(i, 0) = ws[i];
    IntMat K = kernel_left(col);
    for (int pass = 0; pass < 8; ++pass) {
        bool moved = false;
        for (long k = 0; k < static_cast<long>(K.rows()); ++k) {
            Int num = 0, den = 0;
            for (size_t i = 0; i < h; ++i) {
                num += a[i] * K.at(k, i);
                den += K.at(k, i) * K.at(k, i);
            }
            // nearest integer to num/den
            Int t;
            mpz_fdiv_q(t.get_mpz_t(), Int(2 * num + den).get_mpz_t(), Int(2 * den).get_mpz_t());
            if (t != 0) {
                for (size_t i = 0; i < h; ++i) a[i] -= t * K.at(k, i);
                moved = true;
            }
        }
        if (!moved) break;
    }

    std::vector<Int> phi(h);
    for (size_t i = 0; i < h; ++i) phi[i] = 1 + q * a[i];
    return phi;
}

std::optional<Int> congruence_scalar(const std::vector<Int>& f, const std::vector<Int>& target,
                                     const Int& p, unsigned long r) {
    if (f.size() != target.size()) throw std::domain_error("congruence_scalar: size mismatch");
    Int q = pow_int(p, r);
    std::optional<Int> c;
    for (size_t i = 0; i < f.size() && !c; ++i)
        if (gcd(mod_floor(f[i], q), q) == 1) c = mod_floor(target[i] * invmod(f[i], q), q);
    if (!c) return std::nullopt;
    for (size_t i = 0; i < f.size(); ++i)
        if (mod_floor(*c * f[i] - target[i], q) != 0) return std::nullopt;
    return c;
}

std::optional<std::vector<Int>> eisenstein_eigenclass_mod(const IdealClassSet& cs, const Int& p,
                                                          unsigned long r, const Int& ell_max) {
    IntMat C = cusp_lattice(cs);
    long dim = C.rows();
    if (dim == 0) return std::nullopt;
    Int q = pow_int(p, r);
    IntMat L = IntMat::identity(dim);
    auto impose = [&](const IntMat& A) {
        L = intersect_row_lattices(L, kernel_lattice_mod(A, q));
    };
    for (Int ell = 2; ell <= ell_max; mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t())) {
        if ((cs.N1 * cs.N2) % ell == 0) continue;
        IntMat M = restrict_row_action(brandt_matrix(cs, ell), C);
        for (long i = 0; i < dim; ++i) M.at(i, i) -= ell + 1;
        impose(M);
    }
    for (const Int& p1 : prime_divisors(cs.N1)) {
        if (cs.N2 % p1 == 0) continue;
        IntMat M = restrict_row_action(ramified_involution(cs, p1), C);
        for (long i = 0; i < dim; ++i) M.at(i, i) -= 1;
        impose(M);
    }
    for (long i = 0; i < dim; ++i) {
        bool unit = false;
        for (long j = 0; j < dim; ++j)
            if (L.at(i, j) % p != 0) unit = true;
        if (unit) return mat_vec_row(L.row(i), C);
    }
    return std::nullopt;
}

Rat eisenstein_constant_term(const Int& N) {
    Int s = 0;
    for (const Int& d : divisors(squarefree_kernel(N))) s += moebius(d) * d;
    Rat a0(-s, 24);
    a0.canonicalize();
    return a0;
}

Int eisenstein_coefficient(const Int& N, const Int& n) {
    if (n < 1) throw std::domain_error("eisenstein_coefficient: need n >= 1");
    Int rad = squarefree_kernel(N);
    Int a = 0;
    for (const Int& d : divisors(gcd(n, rad))) a += moebius(d) * d * sigma1(n / d);
    return a;
}

bool fourier_eisenstein_congruence(const IdealClassSet& cs, const IntMat& block, const Int& p,
                                   unsigned long r, const Int& n_max) {
    Int q = pow_int(p, r);
    Int N = cs.N1 * cs.N2;
    // a_n of the eigenform for n coprime to N2, keyed by prime power
    std::map<Int, Int> apow;  // prime power -> coefficient
    for (Int ell = 2; ell <= n_max; mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t())) {
        if (cs.N2 % ell == 0) continue;
        Int a1;
        if (cs.N1 % ell == 0) {
            auto eps = scalar_action(ramified_involution(cs, ell), block);
            if (!eps) throw std::domain_error("fourier_eisenstein_congruence: block not scalar");
            a1 = *eps;
            Int pk = ell, ak = a1;
            while (pk <= n_max) {
                apow[pk] = ak;
                pk *= ell;
                ak *= a1;
            }
        } else {
            auto lam = scalar_action(brandt_matrix(cs, ell), block);
            if (!lam) throw std::domain_error("fourier_eisenstein_congruence: block not scalar");
            a1 = *lam;
            Int prev = 1, cur = a1, pk = ell;
            while (pk <= n_max) {
                apow[pk] = cur;
                Int nxt = a1 * cur - ell * prev;
                prev = cur;
                cur = nxt;
                pk *= ell;
            }
        }
    }
    for (Int n = 1; n <= n_max; ++n) {
        if (gcd(n, cs.N2) != 1) continue;
        Int af = 1;
        for (const auto& [ell, e] : factorize(n)) af *= apow.at(pow_int(ell, e));
        if (mod_floor(af - eisenstein_coefficient(N, n), q) != 0) return false;
    }
    return true;
}

}  // namespace qmf
