#include "qmf/linalg.hpp"

#include <cmath>

#include <algorithm>
#include <sstream>

namespace qmf {

IntMat IntMat::identity(long n) {
    IntMat I(n, n);
    for (long i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
}

IntMat IntMat::transpose() const {
    IntMat T(c_, r_);
    for (long i = 0; i < r_; ++i)
        for (long j = 0; j < c_; ++j) T.at(j, i) = at(i, j);
    return T;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (c_ != o.r_) throw std::logic_error("IntMat::mul: shape mismatch");
    IntMat P(r_, o.c_);
    for (long i = 0; i < r_; ++i)
        for (long k = 0; k < c_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (long j = 0; j < o.c_; ++j) P.at(i, j) += v * o.at(k, j);
        }
    return P;
}

IntMat IntMat::operator+(const IntMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("IntMat::add: shape mismatch");
    IntMat S(r_, c_);
    for (long i = 0; i < r_ * c_; ++i) S.a_[i] = a_[i] + o.a_[i];
    return S;
}

IntMat IntMat::operator-(const IntMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::logic_error("IntMat::sub: shape mismatch");
    IntMat S(r_, c_);
    for (long i = 0; i < r_ * c_; ++i) S.a_[i] = a_[i] - o.a_[i];
    return S;
}

IntMat IntMat::operator*(const Int& k) const {
    IntMat S(r_, c_);
    for (long i = 0; i < r_ * c_; ++i) S.a_[i] = a_[i] * k;
    return S;
}

std::vector<Int> IntMat::row(long i) const {
    return std::vector<Int>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void IntMat::set_row(long i, const std::vector<Int>& v) {
    if (static_cast<long>(v.size()) != c_) throw std::logic_error("set_row: size mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + i * c_);
}

IntMat IntMat::stacked_with(const IntMat& below) const {
    if (r_ > 0 && below.r_ > 0 && c_ != below.c_)
        throw std::logic_error("stacked_with: width mismatch");
    IntMat S(r_ + below.r_, r_ > 0 ? c_ : below.c_);
    S.a_ = a_;
    S.a_.insert(S.a_.end(), below.a_.begin(), below.a_.end());
    return S;
}

Int IntMat::content() const {
    Int g = 0;
    for (const auto& v : a_) g = gcd(g, v);
    return g;
}

std::string IntMat::str() const {
    std::ostringstream os;
    for (long i = 0; i < r_; ++i) {
        os << (i ? "\n[" : "[");
        for (long j = 0; j < c_; ++j) os << (j ? " " : "") << at(i, j).get_str();
        os << "]";
    }
    return os.str();
}

std::vector<Int> mat_vec_row(const std::vector<Int>& x, const IntMat& A) {
    if (static_cast<long>(x.size()) != A.rows()) throw std::logic_error("mat_vec_row: shape");
    std::vector<Int> y(A.cols(), 0);
    for (long i = 0; i < A.rows(); ++i) {
        if (x[i] == 0) continue;
        for (long j = 0; j < A.cols(); ++j) y[j] += x[i] * A.at(i, j);
    }
    return y;
}

namespace {

void swap_rows(IntMat& A, long i, long j) {
    if (i == j) return;
    for (long c = 0; c < A.cols(); ++c) std::swap(A.at(i, c), A.at(j, c));
}

void add_multiple(IntMat& A, long dst, long src, const Int& k) {
    if (k == 0) return;
    for (long c = 0; c < A.cols(); ++c) A.at(dst, c) += k * A.at(src, c);
}

void negate_row(IntMat& A, long i) {
    for (long c = 0; c < A.cols(); ++c) A.at(i, c) = -A.at(i, c);
}

// combine rows i (pivot) and j so that position col of row j becomes 0,
// using the unimodular xgcd transformation
void xgcd_rows(IntMat& A, IntMat* U, long i, long j, long col) {
    const Int a = A.at(i, col), b = A.at(j, col);
    if (b == 0) return;
    if (a == 0) {
        swap_rows(A, i, j);
        if (U) swap_rows(*U, i, j);
        return;
    }
    if (mod_floor(b, a) == 0) {
        Int q = -(b / a);
        add_multiple(A, j, i, q);
        if (U) add_multiple(*U, j, i, q);
        return;
    }
    Xgcd e = xgcd(a, b);
    Int u = a / e.g, v = b / e.g;
    // rows (i,j) <- (x*ri + y*rj, -v*ri + u*rj); determinant x*u + y*v = 1
    for (long c = 0; c < A.cols(); ++c) {
        Int ri = A.at(i, c), rj = A.at(j, c);
        A.at(i, c) = e.x * ri + e.y * rj;
        A.at(j, c) = -v * ri + u * rj;
    }
    if (U)
        for (long c = 0; c < U->cols(); ++c) {
            Int ri = U->at(i, c), rj = U->at(j, c);
            U->at(i, c) = e.x * ri + e.y * rj;
            U->at(j, c) = -v * ri + u * rj;
        }
}

}  // namespace

long hnf_rows(IntMat& A, IntMat* U) {
    long pr = 0;  // pivot row
    for (long col = 0; col < A.cols() && pr < A.rows(); ++col) {
        for (long j = pr + 1; j < A.rows(); ++j) xgcd_rows(A, U, pr, j, col);
        if (A.at(pr, col) == 0) continue;
        if (A.at(pr, col) < 0) {
            negate_row(A, pr);
            if (U) negate_row(*U, pr);
        }
        const Int p = A.at(pr, col);
        for (long j = 0; j < pr; ++j) {
            // floor division for canonical reduction into [0, p)
            Int r = mod_floor(A.at(j, col), p);
            Int q = (r - A.at(j, col)) / p;
            add_multiple(A, j, pr, q);
            if (U) add_multiple(*U, j, pr, q);
        }
        ++pr;
    }
    return pr;
}

IntMat kernel_left(const IntMat& A) {
    IntMat W = A;
    IntMat U = IntMat::identity(A.rows());
    long rank = hnf_rows(W, &U);
    IntMat K(A.rows() - rank, A.rows());
    for (long i = rank; i < A.rows(); ++i)
        for (long j = 0; j < A.rows(); ++j) K.at(i - rank, j) = U.at(i, j);
    hnf_rows(K);
    return K;
}

IntMat saturate_rows(const IntMat& A) {
    return kernel_left(kernel_left(A.transpose()).transpose());
}

IntMat kernel_lattice_mod(const IntMat& A, const Int& m) {
    if (m <= 0) throw std::domain_error("kernel_lattice_mod: m must be positive");
    long k = A.rows(), n = A.cols();
    // (x | y) with x*A + m*y = 0; x determines y, so projecting the kernel
    // of the stacked matrix onto the first k coordinates is injective.
    IntMat S(k + n, n);
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < n; ++j) S.at(i, j) = A.at(i, j);
    for (long j = 0; j < n; ++j) S.at(k + j, j) = m;
    IntMat K = kernel_left(S);
    IntMat P(K.rows(), k);
    for (long i = 0; i < K.rows(); ++i)
        for (long j = 0; j < k; ++j) P.at(i, j) = K.at(i, j);
    long rank = hnf_rows(P);
    if (rank != k) throw std::logic_error("kernel_lattice_mod: projection lost rank");
    return P;
}

IntMat intersect_row_lattices(const IntMat& A, const IntMat& B) {
    if (A.cols() != B.cols()) throw std::logic_error("intersect_row_lattices: shape mismatch");
    // rows (x | y) of the kernel of [A; B] satisfy x*A = -y*B, so x*A runs
    // over the intersection as (x, y) runs over the kernel.
    IntMat S = A.stacked_with(B);
    IntMat K = kernel_left(S);
    IntMat X(K.rows(), A.rows());
    for (long i = 0; i < K.rows(); ++i)
        for (long j = 0; j < A.rows(); ++j) X.at(i, j) = K.at(i, j);
    IntMat R = X * A;
    long rank = hnf_rows(R);
    IntMat out(rank, A.cols());
    for (long i = 0; i < rank; ++i)
        for (long j = 0; j < A.cols(); ++j) out.at(i, j) = R.at(i, j);
    return out;
}

std::optional<std::vector<Int>> solve_left(const IntMat& A, const std::vector<Int>& b) {
    IntMat W = A;
    IntMat U = IntMat::identity(A.rows());
    long rank = hnf_rows(W, &U);
    // forward solve y*W = b over the echelon rows
    std::vector<Int> y(A.rows(), 0), rem(b);
    for (long i = 0; i < rank; ++i) {
        long col = 0;
        while (col < W.cols() && W.at(i, col) == 0) ++col;
        if (col == W.cols()) break;
        if (mod_floor(rem[col], W.at(i, col)) != 0) return std::nullopt;
        Int q = rem[col] / W.at(i, col);
        y[i] = q;
        if (q != 0)
            for (long j = 0; j < W.cols(); ++j) rem[j] -= q * W.at(i, j);
    }
    for (const Int& v : rem)
        if (v != 0) return std::nullopt;
    return mat_vec_row(y, U);
}

std::vector<Rat> solve_left_rat(const IntMat& A, const std::vector<Rat>& b) {
    // Gaussian elimination over Q on the transposed system A^T x^T = b^T
    long n = A.rows(), m = A.cols();
    std::vector<std::vector<Rat>> M(m, std::vector<Rat>(n + 1, 0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) M[j][i] = Rat(A.at(i, j));
    for (long j = 0; j < m; ++j) M[j][n] = b[j];
    long prow = 0;
    std::vector<long> pivot_of_col(n, -1);
    for (long col = 0; col < n && prow < m; ++col) {
        long sel = -1;
        for (long i = prow; i < m; ++i)
            if (M[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(M[sel], M[prow]);
        Rat inv = 1 / M[prow][col];
        for (long j = col; j <= n; ++j) M[prow][j] *= inv;
        for (long i = 0; i < m; ++i) {
            if (i == prow || M[i][col] == 0) continue;
            Rat f = M[i][col];
            for (long j = col; j <= n; ++j) M[i][j] -= f * M[prow][j];
        }
        pivot_of_col[col] = prow;
        ++prow;
    }
    for (long i = prow; i < m; ++i)
        if (M[i][n] != 0) throw std::domain_error("solve_left_rat: inconsistent system");
    std::vector<Rat> x(n, 0);
    for (long col = 0; col < n; ++col)
        if (pivot_of_col[col] >= 0) x[col] = M[pivot_of_col[col]][n];
    return x;
}

Int det(const IntMat& A) {
    if (A.rows() != A.cols()) throw std::logic_error("det: not square");
    long n = A.rows();
    if (n == 0) return 1;
    IntMat M = A;
    Int prev = 1;
    int sign = 1;
    for (long k = 0; k < n - 1; ++k) {
        if (M.at(k, k) == 0) {
            long s = -1;
            for (long i = k + 1; i < n; ++i)
                if (M.at(i, k) != 0) { s = i; break; }
            if (s < 0) return 0;
            swap_rows(M, k, s);
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i)
            for (long j = k + 1; j < n; ++j) {
                M.at(i, j) = M.at(k, k) * M.at(i, j) - M.at(i, k) * M.at(k, j);
                if (k > 0) M.at(i, j) /= prev;
            }
        prev = M.at(k, k);
    }
    return sign > 0 ? M.at(n - 1, n - 1) : -M.at(n - 1, n - 1);
}

Poly charpoly(const IntMat& A) {
    // Berkowitz: division-free, returns det(xI - A) monic
    long n = A.rows();
    if (n != A.cols()) throw std::logic_error("charpoly: not square");
    if (n == 0) return Poly(Int(1));
    std::vector<Int> p{Int(1)};  // current charpoly, little-endian from leading: store reversed
    // Work with vectors in "descending coefficient" convention of Berkowitz
    std::vector<Int> cp{Int(1), -A.at(0, 0)};
    for (long k = 1; k < n; ++k) {
        // Toeplitz column entries: 1, -a_kk, -(R * c), -(R * M * c), ...
        // with R the k-th row prefix, c the k-th column prefix, M the leading
        // (k)x(k) principal submatrix.
        std::vector<Int> col(k + 2);
        col[0] = 1;
        col[1] = -A.at(k, k);
        std::vector<Int> w(k);
        for (long i = 0; i < k; ++i) w[i] = A.at(i, k);
        for (long t = 2; t <= k + 1; ++t) {
            Int s = 0;
            for (long i = 0; i < k; ++i) s += A.at(k, i) * w[i];
            col[t] = -s;
            if (t <= k) {
                std::vector<Int> w2(k, 0);
                for (long i = 0; i < k; ++i) {
                    for (long j = 0; j < k; ++j) w2[i] += A.at(i, j) * w[j];
                }
                w = std::move(w2);
            }
        }
        std::vector<Int> next(cp.size() + 1, 0);
        for (size_t i = 0; i < cp.size(); ++i)
            for (size_t j = 0; j < col.size() && i + j < next.size(); ++j)
                next[i + j] += cp[i] * col[j];
        cp = std::move(next);
    }
    std::reverse(cp.begin(), cp.end());
    return Poly(std::move(cp));
}

IntMat mat_mod(const IntMat& A, const Int& p) {
    IntMat M(A.rows(), A.cols());
    for (long i = 0; i < A.rows(); ++i)
        for (long j = 0; j < A.cols(); ++j) M.at(i, j) = mod_floor(A.at(i, j), p);
    return M;
}

IntMat kernel_left_mod(const IntMat& A, const Int& p) {
    long m = A.rows(), n = A.cols();
    // eliminate on [A | I] mod p
    IntMat W = mat_mod(A, p);
    IntMat U = IntMat::identity(m);
    long pr = 0;
    for (long col = 0; col < n && pr < m; ++col) {
        long sel = -1;
        for (long i = pr; i < m; ++i)
            if (W.at(i, col) != 0) { sel = i; break; }
        if (sel < 0) continue;
        swap_rows(W, pr, sel);
        swap_rows(U, pr, sel);
        Int inv = invmod(W.at(pr, col), p);
        for (long j = 0; j < n; ++j) W.at(pr, j) = mod_floor(W.at(pr, j) * inv, p);
        for (long j = 0; j < m; ++j) U.at(pr, j) = mod_floor(U.at(pr, j) * inv, p);
        for (long i = 0; i < m; ++i) {
            if (i == pr) continue;
            Int f = W.at(i, col);
            if (f == 0) continue;
            for (long j = 0; j < n; ++j) W.at(i, j) = mod_floor(W.at(i, j) - f * W.at(pr, j), p);
            for (long j = 0; j < m; ++j) U.at(i, j) = mod_floor(U.at(i, j) - f * U.at(pr, j), p);
        }
        ++pr;
    }
    IntMat K(m - pr, m);
    for (long i = pr; i < m; ++i)
        for (long j = 0; j < m; ++j) K.at(i - pr, j) = U.at(i, j);
    return K;
}

long rank_mod(const IntMat& A, const Int& p) {
    return A.rows() - kernel_left_mod(A, p).rows();
}

IntMat poly_at_matrix(const Poly& f, const IntMat& A) {
    long n = A.rows();
    IntMat R(n, n);
    if (f.is_zero()) return R;
    for (long k = f.degree(); k >= 0; --k) {  // Horner
        R = R * A;
        for (long i = 0; i < n; ++i) R.at(i, i) += f[k];
    }
    return R;
}

// --- quadratic form machinery --------------------------------------------

namespace {

struct Ldl {
    // G = R^T D R with R unit upper triangular; q[i] = D_i, mu[i][j] = R_ij (j>i)
    std::vector<Rat> d;
    std::vector<std::vector<Rat>> mu;
};

Ldl ldl_decompose(const IntMat& G) {
    long n = G.rows();
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) g[i][j] = Rat(G.at(i, j));
    Ldl out;
    out.d.resize(n);
    out.mu.assign(n, std::vector<Rat>(n, 0));
    for (long i = 0; i < n; ++i) {
        for (long j = i; j < n; ++j) {
            Rat v = g[i][j];
            for (long k = 0; k < i; ++k) v -= out.d[k] * out.mu[k][i] * out.mu[k][j];
            if (j == i) {
                if (v <= 0) throw std::domain_error("ldl: form not positive definite");
                out.d[i] = v;
            } else {
                out.mu[i][j] = v / out.d[i];
            }
        }
    }
    return out;
}

// largest integer t with t <= -c + sqrt(bound) (bound >= 0); exact
Int floor_center_radius(const Rat& c, const Rat& bound) {
    // monotone predicate: t + c <= sqrt(bound) iff t + c <= 0 or (t+c)^2 <= bound
    auto ok = [&](const Int& t) {
        Rat v = (Rat(t) + c);
        return v <= 0 || v * v <= bound;
    };
    // initial window from double approximation
    double cd = c.get_d(), bd = bound.get_d();
    double est = -cd + std::sqrt(std::max(0.0, bd));
    Int lo(static_cast<long>(std::floor(est)) - 2), hi(static_cast<long>(std::floor(est)) + 2);
    while (!ok(lo)) lo -= (hi - lo) + 1;
    while (ok(hi)) hi += (hi - lo) + 1;
    // invariant: ok(lo), !ok(hi)
    while (hi - lo > 1) {
        Int mid = (lo + hi) / 2;
        if (ok(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

Int ceil_center_radius(const Rat& c, const Rat& bound) {
    // smallest integer t with t >= -c - sqrt(bound); mirror of the above
    return -floor_center_radius(-c, bound);
}

void enumerate_rec(const Ldl& L, long level, std::vector<Int>& x, const Rat& remaining,
                   bool all_above_zero, std::vector<std::vector<Int>>& out, bool& found_any,
                   bool stop_at_first) {
    if (stop_at_first && found_any) return;
    if (level < 0) {
        // exact match required: remaining must be exactly 0
        if (remaining == 0) {
            bool nonzero = false;
            for (const Int& t : x)
                if (t != 0) { nonzero = true; break; }
            if (!nonzero) return;  // skip zero vector (target 0 handled by caller)
            out.push_back(x);
            found_any = true;
        }
        return;
    }
    Rat c = 0;
    for (size_t j = level + 1; j < L.mu.size(); ++j) c += L.mu[level][j] * Rat(x[j]);
    Rat bound = remaining / L.d[level];
    if (bound < 0) return;
    Int lo = ceil_center_radius(c, bound), hi = floor_center_radius(c, bound);
    // one representative per +-x pair: highest-index nonzero coordinate > 0
    if (all_above_zero && lo < 0) lo = 0;
    for (Int t = lo; t <= hi; ++t) {
        x[level] = t;
        Rat term = (Rat(t) + c);
        term = L.d[level] * term * term;
        enumerate_rec(L, level - 1, x, remaining - term, all_above_zero && t == 0, out, found_any,
                      stop_at_first);
        if (stop_at_first && found_any) return;
    }
    x[level] = 0;
}

std::vector<std::vector<Int>> enumerate_value(const IntMat& G, const Int& value, bool stop_at_first) {
    if (value < 0) return {};
    if (value == 0) return {};  // definite form: only the zero vector
    long n = G.rows();
    IntMat U = lll_gram(G);
    IntMat Gr = U * G * U.transpose();
    Ldl L = ldl_decompose(Gr);
    std::vector<Int> x(n, 0);
    std::vector<std::vector<Int>> out;
    bool found = false;
    enumerate_rec(L, n - 1, x, Rat(value), true, out, found, stop_at_first);
    // map back through U: lattice vector = x * U (row convention)
    std::vector<std::vector<Int>> mapped;
    mapped.reserve(out.size());
    for (const auto& v : out) {
        std::vector<Int> w = mat_vec_row(v, U);
        for (const Int& t : w) {
            if (t > 0) break;
            if (t < 0) {
                for (auto& q : w) q = -q;
                break;
            }
        }
        mapped.push_back(std::move(w));
    }
    std::sort(mapped.begin(), mapped.end());
    return mapped;
}

}  // namespace

IntMat lll_gram(const IntMat& G) {
    long n = G.rows();
    std::vector<std::vector<Rat>> g(n, std::vector<Rat>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) g[i][j] = Rat(G.at(i, j));
    IntMat U = IntMat::identity(n);
    if (n <= 1) return U;

    std::vector<Rat> B(n);
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, 0));
    auto recompute = [&]() {
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < i; ++j) {
                Rat v = g[i][j];
                for (long k = 0; k < j; ++k) v -= mu[j][k] * mu[i][k] * B[k];
                mu[i][j] = v / B[j];
            }
            Rat v = g[i][i];
            for (long k = 0; k < i; ++k) v -= mu[i][k] * mu[i][k] * B[k];
            B[i] = v;
        }
    };
    auto row_op = [&](long dst, long src, const Int& q) {
        // basis[dst] -= q * basis[src]; update U and g
        for (long c = 0; c < n; ++c) U.at(dst, c) -= q * U.at(src, c);
        Rat qq(q);
        for (long c = 0; c < n; ++c) {
            g[dst][c] -= qq * g[src][c];
        }
        for (long r = 0; r < n; ++r) {
            g[r][dst] -= qq * g[r][src];
        }
    };
    auto swap_basis = [&](long i, long j) {
        for (long c = 0; c < n; ++c) std::swap(U.at(i, c), U.at(j, c));
        std::swap(g[i], g[j]);
        for (long r = 0; r < n; ++r) std::swap(g[r][i], g[r][j]);
    };
    recompute();
    long k = 1;
    const Rat delta(3, 4);
    long guard = 0;
    while (k < n) {
        if (++guard > 100000) throw std::logic_error("lll_gram: failed to converge");
        for (long j = k - 1; j >= 0; --j) {
            if (mu[k][j] * 2 > 1 || mu[k][j] * 2 < -1) {
                // nearest integer to mu
                Rat m = mu[k][j];
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), Int(m.get_num() * 2 + m.get_den()).get_mpz_t(),
                           Int(m.get_den() * 2).get_mpz_t());
                if (q != 0) {
                    row_op(k, j, q);
                    recompute();
                }
            }
        }
        if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            ++k;
        } else {
            swap_basis(k, k - 1);
            recompute();
            k = std::max(1l, k - 1);
        }
    }
    return U;
}

std::vector<std::vector<Int>> vectors_with_value(const IntMat& G, const Int& value) {
    return enumerate_value(G, value, false);
}

Int count_vectors_with_value(const IntMat& G, const Int& value) {
    if (value == 0) return 1;  // the zero vector
    return Int(2) * Int(enumerate_value(G, value, false).size());
}

bool exists_vector_with_value(const IntMat& G, const Int& value) {
    if (value == 0) return true;
    return !enumerate_value(G, value, true).empty();
}

}  // namespace qmf
