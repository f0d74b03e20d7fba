#include "qmf/order.hpp"

#include <array>
#include <stdexcept>

namespace qmf {

namespace {

// Forward substitution against an HNF (upper triangular, full rank) basis.
// Returns y with y*B = u, or nullopt if there is no integer solution.
std::optional<std::vector<Int>> solve_triangular(const IntMat& B, std::vector<Int> u) {
    std::vector<Int> y(4, 0);
    for (long i = 0; i < 4; ++i) {
        if (mod_floor(u[i], B.at(i, i)) != 0) return std::nullopt;
        y[i] = u[i] / B.at(i, i);
        if (y[i] != 0)
            for (long j = i; j < 4; ++j) u[j] -= y[i] * B.at(i, j);
    }
    for (const Int& v : u)
        if (v != 0) return std::nullopt;
    return y;
}

std::optional<std::vector<Int>> lattice_coords(const Lattice& L, const QuatElt& x) {
    std::vector<Int> u(4);
    for (int t = 0; t < 4; ++t) {
        Rat v = x.c[t] * L.den;
        if (v.get_den() != 1) return std::nullopt;
        u[t] = v.get_num();
    }
    return solve_triangular(L.basis, u);
}

QuatElt element_of_coord_row(const QuatAlg& A, const std::vector<Int>& r, const Int& den) {
    Rat c[4];
    for (int t = 0; t < 4; ++t) {
        c[t] = Rat(r[t], den);
        c[t].canonicalize();
    }
    return QuatElt(A, c[0], c[1], c[2], c[3]);
}

// Coordinates of x on the order's basis; throws if x is not in O.
std::vector<Int> order_coords(const Lattice& O, const QuatElt& x) {
    auto y = lattice_coords(O, x);
    if (!y) throw std::logic_error("order_coords: element not in the order");
    return *y;
}

// Integer structure constants of an order: b_s * b_t = sum_u C[s][t][u] b_u,
// returned as tensor[s].at(t, u).
std::array<IntMat, 4> structure_tensor(const Lattice& O) {
    std::array<IntMat, 4> C{IntMat(4, 4), IntMat(4, 4), IntMat(4, 4), IntMat(4, 4)};
    std::vector<QuatElt> b = lattice_basis_elements(O);
    for (long s = 0; s < 4; ++s)
        for (long t = 0; t < 4; ++t) {
            auto y = order_coords(O, b[s] * b[t]);
            for (long u = 0; u < 4; ++u) C[s].at(t, u) = y[u];
        }
    return C;
}

std::vector<Int> tensor_mul_mod(const std::array<IntMat, 4>& C, const std::vector<Int>& x,
                                const std::vector<Int>& y, const Int& m) {
    std::vector<Int> z(4, 0);
    for (long s = 0; s < 4; ++s) {
        if (x[s] == 0) continue;
        for (long t = 0; t < 4; ++t) {
            if (y[t] == 0) continue;
            Int f = x[s] * y[t];
            for (long u = 0; u < 4; ++u) z[u] += f * C[s].at(t, u);
        }
    }
    for (Int& v : z) v = mod_floor(v, m);
    return z;
}

// Basis vectors (coordinates on the order's basis, entries in [0, p)) of the
// Jacobson radical of O/pO.
IntMat radical_mod(const Lattice& O, const Int& p) {
    std::array<IntMat, 4> C = structure_tensor(O);
    if (p != 2) {
        // kernel of the regular-representation trace form; valid at odd p
        // because every simple factor of O/pO is a matrix algebra of size
        // at most 2 or a finite field.
        std::vector<Int> trR(4, 0);
        for (long w = 0; w < 4; ++w)
            for (long u = 0; u < 4; ++u) trR[w] += C[u].at(w, u);
        IntMat T(4, 4);
        for (long s = 0; s < 4; ++s)
            for (long t = 0; t < 4; ++t) {
                Int v = 0;
                for (long w = 0; w < 4; ++w) v += C[s].at(t, w) * trR[w];
                T.at(s, t) = mod_floor(v, p);
            }
        return kernel_left_mod(T, p);
    }
    // p = 2: the regular trace vanishes on a matrix-algebra factor, so find
    // the largest nil right ideal by brute force over the 16 elements.
    std::vector<std::vector<Int>> elems;
    for (int mask = 0; mask < 16; ++mask)
        elems.push_back({Int(mask & 1), Int((mask >> 1) & 1), Int((mask >> 2) & 1), Int((mask >> 3) & 1)});
    auto is_zero = [](const std::vector<Int>& v) {
        for (const Int& x : v)
            if (x != 0) return false;
        return true;
    };
    std::vector<std::vector<Int>> members;
    for (const auto& x : elems) {
        bool ok = true;
        for (const auto& a : elems) {
            std::vector<Int> y = tensor_mul_mod(C, x, a, 2);
            std::vector<Int> y2 = tensor_mul_mod(C, y, y, 2);
            std::vector<Int> y4 = tensor_mul_mod(C, y2, y2, 2);
            if (!is_zero(y4)) {
                ok = false;
                break;
            }
        }
        if (ok && !is_zero(x)) members.push_back(x);
    }
    IntMat M(members.size(), 4);
    for (size_t i = 0; i < members.size(); ++i)
        for (long j = 0; j < 4; ++j) M.at(i, j) = members[i][j];
    IntMat E = mat_mod(M, 2);
    long rank = 0;
    {
        // echelonize mod 2
        IntMat W = E;
        long rows = W.rows(), prow = 0;
        for (long col = 0; col < 4 && prow < rows; ++col) {
            long sel = -1;
            for (long i = prow; i < rows; ++i)
                if (mod_floor(W.at(i, col), Int(2)) != 0) { sel = i; break; }
            if (sel < 0) continue;
            for (long j = 0; j < 4; ++j) std::swap(W.at(sel, j), W.at(prow, j));
            for (long i = 0; i < rows; ++i) {
                if (i == prow || mod_floor(W.at(i, col), Int(2)) == 0) continue;
                for (long j = 0; j < 4; ++j) W.at(i, j) = mod_floor(W.at(i, j) + W.at(prow, j), Int(2));
            }
            ++prow;
        }
        rank = prow;
        IntMat out(rank, 4);
        for (long i = 0; i < rank; ++i)
            for (long j = 0; j < 4; ++j) out.at(i, j) = W.at(i, j);
        return out;
    }
}

// p*O plus the lift of the radical of O/pO; a two-sided O-ideal.
Lattice radical_pullback(const Lattice& O, const Int& p) {
    IntMat rad = radical_mod(O, p);
    IntMat rows(4 + rad.rows(), 4);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) rows.at(i, j) = p * O.basis.at(i, j);
    for (long i = 0; i < rad.rows(); ++i)
        for (long j = 0; j < 4; ++j) {
            Int v = 0;
            for (long s = 0; s < 4; ++s) v += rad.at(i, s) * O.basis.at(s, j);
            rows.at(4 + i, j) = v;
        }
    return lattice_from_rows(*O.alg, rows, O.den);
}

Lattice colon_order(const Lattice& L, bool left) {
    const QuatAlg& A = *L.alg;
    std::vector<QuatElt> numer;  // integer-coordinate numerator elements
    for (long r = 0; r < 4; ++r)
        numer.push_back(element_of_coord_row(A, L.basis.row(r), Int(1)));
    // adjugate of the basis
    IntMat M = L.basis;
    Int dM = det(M);
    IntMat adj(4, 4);
    {
        // adj = det * M^{-1} via solving M^T x = det*e_k columns
        for (long k = 0; k < 4; ++k) {
            std::vector<Rat> rhs(4, 0);
            rhs[k] = Rat(dM);
            std::vector<Rat> x = solve_left_rat(M, rhs);  // x*M = rhs
            for (long j = 0; j < 4; ++j) {
                if (x[j].get_den() != 1) throw std::logic_error("colon_order: adjugate not integral");
                adj.at(k, j) = x[j].get_num();  // row k of det*M^{-T}? see below
            }
        }
        // x_k * M = det * e_k means the matrix with rows x_k is det * M^{-1}
    }
    IntMat N(4, 16);
    std::vector<QuatElt> basis_std;
    for (int t = 0; t < 4; ++t) {
        QuatElt e(A, t == 0 ? 1 : 0, t == 1 ? 1 : 0, t == 2 ? 1 : 0, t == 3 ? 1 : 0);
        basis_std.push_back(e);
    }
    for (long r = 0; r < 4; ++r) {
        IntMat Rt(4, 4);  // multiplication by numer[r] on the standard basis
        for (long s = 0; s < 4; ++s) {
            QuatElt prod = left ? basis_std[s] * numer[r] : numer[r] * basis_std[s];
            for (long u = 0; u < 4; ++u) {
                if (prod.c[u].get_den() != 1) throw std::logic_error("colon_order: non-integral product");
                Rt.at(s, u) = prod.c[u].get_num();
            }
        }
        IntMat block = Rt * adj;
        for (long s = 0; s < 4; ++s)
            for (long u = 0; u < 4; ++u) N.at(s, 4 * r + u) = block.at(s, u);
    }
    // crude denominator bound: the colon lattice lies in (1/f) Z^4 with
    // f = nrd of any nonzero lattice element
    QuatElt v0 = numer[0];
    Rat nv = v0.nrd();
    Int f = nv.get_num();  // integer since coordinates are integers
    if (f == 0) throw std::logic_error("colon_order: degenerate lattice");
    if (f < 0) f = -f;
    Int m = f * (dM < 0 ? -dM : dM);
    IntMat K = kernel_lattice_mod(N, m);
    Lattice R = lattice_from_rows(A, K, f);
    if (!is_order(R)) throw std::logic_error("colon_order: result is not an order");
    return R;
}

}  // namespace

bool Lattice::operator<(const Lattice& o) const {
    if (den != o.den) return den < o.den;
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j)
            if (basis.at(i, j) != o.basis.at(i, j)) return basis.at(i, j) < o.basis.at(i, j);
    return false;
}

Lattice lattice_from_rows(const QuatAlg& A, const IntMat& rows, const Int& den) {
    if (den == 0) throw std::domain_error("lattice_from_rows: zero denominator");
    IntMat W = rows;
    long rank = hnf_rows(W);
    if (rank != 4) throw std::domain_error("lattice_from_rows: lattice is not full rank");
    Lattice L;
    L.alg = &A;
    L.basis = IntMat(4, 4);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) L.basis.at(i, j) = W.at(i, j);
    L.den = den < 0 ? -den : den;
    if (den < 0)
        for (long i = 0; i < 4; ++i)
            for (long j = 0; j < 4; ++j) L.basis.at(i, j) = -L.basis.at(i, j);
    Int g = gcd(L.basis.content(), L.den);
    if (g > 1) {
        for (long i = 0; i < 4; ++i)
            for (long j = 0; j < 4; ++j) L.basis.at(i, j) /= g;
        L.den /= g;
    }
    if (den < 0) hnf_rows(L.basis);
    return L;
}

Lattice lattice_from_elements(const QuatAlg& A, const std::vector<QuatElt>& gens) {
    Int D = 1;
    for (const QuatElt& g : gens)
        for (int t = 0; t < 4; ++t) D = lcm(D, Int(g.c[t].get_den()));
    IntMat rows(gens.size(), 4);
    for (size_t i = 0; i < gens.size(); ++i)
        for (int t = 0; t < 4; ++t) {
            Rat v = gens[i].c[t] * D;
            rows.at(i, t) = v.get_num();
        }
    return lattice_from_rows(A, rows, D);
}

QuatElt lattice_element(const Lattice& L, long row) {
    return element_of_coord_row(*L.alg, L.basis.row(row), L.den);
}

std::vector<QuatElt> lattice_basis_elements(const Lattice& L) {
    std::vector<QuatElt> out;
    for (long r = 0; r < 4; ++r) out.push_back(lattice_element(L, r));
    return out;
}

bool lattice_contains(const Lattice& L, const QuatElt& x) {
    return lattice_coords(L, x).has_value();
}

bool lattice_subset(const Lattice& inner, const Lattice& outer) {
    for (long r = 0; r < 4; ++r)
        if (!lattice_contains(outer, lattice_element(inner, r))) return false;
    return true;
}

Lattice lattice_sum(const Lattice& L, const Lattice& M) {
    Int D = lcm(L.den, M.den);
    Int fL = D / L.den, fM = D / M.den;
    IntMat rows(8, 4);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            rows.at(i, j) = fL * L.basis.at(i, j);
            rows.at(4 + i, j) = fM * M.basis.at(i, j);
        }
    return lattice_from_rows(*L.alg, rows, D);
}

Lattice lattice_intersect(const Lattice& L, const Lattice& M) {
    Int D = lcm(L.den, M.den);
    Int fL = D / L.den, fM = D / M.den;
    IntMat A = L.basis * fL, B = M.basis * fM;
    IntMat I = intersect_row_lattices(A, B);
    return lattice_from_rows(*L.alg, I, D);
}

Lattice lattice_product(const Lattice& L, const Lattice& M) {
    IntMat rows(16, 4);
    std::vector<QuatElt> bl, bm;
    for (long r = 0; r < 4; ++r) {
        bl.push_back(element_of_coord_row(*L.alg, L.basis.row(r), Int(1)));
        bm.push_back(element_of_coord_row(*M.alg, M.basis.row(r), Int(1)));
    }
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            QuatElt p = bl[i] * bm[j];
            for (long u = 0; u < 4; ++u) rows.at(4 * i + j, u) = p.c[u].get_num();
        }
    return lattice_from_rows(*L.alg, rows, L.den * M.den);
}

Lattice lattice_scale(const Lattice& L, const Rat& s) {
    if (s == 0) throw std::domain_error("lattice_scale: zero scale");
    Int num = s.get_num(), den = s.get_den();
    return lattice_from_rows(*L.alg, L.basis * num, L.den * den);
}

Lattice lattice_conjugate(const Lattice& L) {
    IntMat rows = L.basis;
    for (long i = 0; i < 4; ++i)
        for (long j = 1; j < 4; ++j) rows.at(i, j) = -rows.at(i, j);
    return lattice_from_rows(*L.alg, rows, L.den);
}

Lattice lattice_left_multiply(const QuatElt& x, const Lattice& L) {
    if (x.is_zero()) throw std::domain_error("lattice_left_multiply: zero multiplier");
    Int dx = 1;
    for (int t = 0; t < 4; ++t) dx = lcm(dx, Int(x.c[t].get_den()));
    QuatElt xn = x * Rat(dx);
    IntMat rows(4, 4);
    for (long r = 0; r < 4; ++r) {
        QuatElt p = xn * element_of_coord_row(*L.alg, L.basis.row(r), Int(1));
        for (long u = 0; u < 4; ++u) rows.at(r, u) = p.c[u].get_num();
    }
    return lattice_from_rows(*L.alg, rows, dx * L.den);
}

Int lattice_index(const Lattice& outer, const Lattice& inner) {
    Int di = det(inner.basis), dout = det(outer.basis);
    if (di < 0) di = -di;
    if (dout < 0) dout = -dout;
    Rat idx = Rat(di) / Rat(dout) * pow_int(outer.den, 4) / pow_int(inner.den, 4);
    if (idx.get_den() != 1 || idx <= 0)
        throw std::domain_error("lattice_index: not a finite-index sublattice");
    return idx.get_num();
}

Rat lattice_norm(const Lattice& L) {
    std::vector<QuatElt> b;
    for (long r = 0; r < 4; ++r) b.push_back(element_of_coord_row(*L.alg, L.basis.row(r), Int(1)));
    Int g = 0;
    for (long i = 0; i < 4; ++i) {
        g = gcd(g, Int(b[i].nrd().get_num()));
        for (long j = i + 1; j < 4; ++j) g = gcd(g, Int((b[i] * b[j].conj()).trd().get_num()));
    }
    return Rat(g) / Rat(L.den * L.den);
}

IntMat lattice_gram_numerator(const Lattice& L) {
    std::vector<QuatElt> b;
    for (long r = 0; r < 4; ++r) b.push_back(element_of_coord_row(*L.alg, L.basis.row(r), Int(1)));
    IntMat G(4, 4);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) G.at(i, j) = Int((b[i] * b[j].conj()).trd().get_num());
    return G;
}

QuatElt lattice_shortest_vector(const Lattice& L) {
    IntMat G = lattice_gram_numerator(L);
    Rat n0 = lattice_norm(L);
    for (Int k = 1;; ++k) {
        Rat target = Rat(2 * L.den * L.den) * n0 * k;
        if (target.get_den() != 1) throw std::logic_error("lattice_shortest_vector: bad norm scale");
        auto vs = vectors_with_value(G, target.get_num());
        if (!vs.empty()) {
            const auto& x = vs.front();
            Rat c[4];
            for (int t = 0; t < 4; ++t) {
                Int v = 0;
                for (long s = 0; s < 4; ++s) v += x[s] * L.basis.at(s, t);
                c[t] = Rat(v, L.den);
                c[t].canonicalize();
            }
            return QuatElt(*L.alg, c[0], c[1], c[2], c[3]);
        }
        if (k > 256) throw std::logic_error("lattice_shortest_vector: no short vector found");
    }
}

Lattice left_order(const Lattice& L) { return colon_order(L, true); }
Lattice right_order(const Lattice& L) { return colon_order(L, false); }

bool is_order(const Lattice& L) {
    if (!lattice_contains(L, quat_one(*L.alg))) return false;
    std::vector<QuatElt> b = lattice_basis_elements(L);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j)
            if (!lattice_contains(L, b[i] * b[j])) return false;
    return true;
}

Int reduced_discriminant(const Lattice& O) {
    Int D = det(lattice_gram_numerator(O));
    Int d8 = pow_int(O.den, 8);
    if (mod_floor(D, d8) != 0) throw std::logic_error("reduced_discriminant: non-integral Gram");
    return sqrt_exact(D / d8);
}

Int unit_half_count(const Lattice& O) {
    IntMat G = lattice_gram_numerator(O);
    Int n = count_vectors_with_value(G, 2 * O.den * O.den);
    if (mod_floor(n, Int(2)) != 0) throw std::logic_error("unit_half_count: odd unit count");
    return n / 2;
}

Lattice standard_order(const QuatAlg& A) {
    return lattice_from_rows(A, IntMat::identity(4), Int(1));
}

Lattice maximal_order(const QuatAlg& A) {
    Lattice O = standard_order(A);
    Int target = A.discriminant();
    for (int guard = 0; guard < 256; ++guard) {
        Int d = reduced_discriminant(O);
        if (d == target) return O;
        Int p = 0;
        for (const Int& q : prime_divisors(d)) {
            unsigned e = valuation(d, q);
            unsigned t = A.is_ramified(q) ? 1 : 0;
            if (e > t) {
                p = q;
                break;
            }
        }
        if (p == 0) throw std::logic_error("maximal_order: discriminant mismatch");
        Lattice J = radical_pullback(O, p);
        Lattice O1 = left_order(J);
        if (O1 == O) O1 = right_order(J);
        if (!(O1 == O)) {
            O = O1;
            continue;
        }
        // hereditary but not maximal at an unramified p: the local order is
        // Eichler of level p; pass to one of the two maximal overorders by
        // scanning index-p superlattices
        if (A.is_ramified(p) || valuation(d, p) != 1)
            throw std::logic_error("maximal_order: idealizer chain stalled");
        std::vector<Int> tr(4);
        for (long s = 0; s < 4; ++s) {
            Rat t = lattice_element(O, s).trd();
            tr[s] = Int(t.get_num()) * (O.den / Int(t.get_den()));
        }
        bool found = false;
        std::vector<Int> c(4);
        for (long lead = 0; lead < 4 && !found; ++lead) {
            for (long s = 0; s < 4; ++s) c[s] = 0;
            c[lead] = 1;
            long nfree = 3 - lead;
            Int total = pow_int(p, (unsigned)nfree);
            for (Int it = 0; it < total && !found; ++it) {
                Int rest = it;
                for (long s = lead + 1; s < 4; ++s) {
                    c[s] = mod_floor(rest, p);
                    rest /= p;
                }
                // quick integrality screens for x = (sum c_s b_s)/p
                Int tsum = 0;
                for (long s = 0; s < 4; ++s) tsum += c[s] * tr[s];
                if (mod_floor(tsum, p * O.den) != 0) continue;
                QuatElt x(A, 0, 0, 0, 0);
                for (long s = 0; s < 4; ++s)
                    if (c[s] != 0) x = x + lattice_element(O, s) * Rat(c[s]);
                x = x * Rat(Int(1), p);
                if (x.trd().get_den() != 1 || x.nrd().get_den() != 1) continue;
                if (lattice_contains(O, x)) continue;
                IntMat rows(5, 4);
                for (long i = 0; i < 4; ++i)
                    for (long j = 0; j < 4; ++j) rows.at(i, j) = p * O.basis.at(i, j);
                for (long j = 0; j < 4; ++j) {
                    Int v = 0;
                    for (long s = 0; s < 4; ++s) v += c[s] * O.basis.at(s, j);
                    rows.at(4, j) = v;
                }
                Lattice cand = lattice_from_rows(A, rows, p * O.den);
                if (is_order(cand)) {
                    O = cand;
                    found = true;
                }
            }
        }
        if (!found) throw std::logic_error("maximal_order: no superorder at hereditary prime");
    }
    throw std::logic_error("maximal_order: did not converge");
}

namespace {

// Element of Omax whose reduced characteristic polynomial generates the
// unramified quadratic extension at q: discriminant a non-square unit mod q
// (odd q), or trace and norm both odd (q = 2).
QuatElt find_unramified_generator(const Lattice& Omax, const Int& q) {
    std::vector<QuatElt> b = lattice_basis_elements(Omax);
    for (long radius = 1; radius <= 8; ++radius) {
        std::vector<Int> c(4, -radius);
        while (true) {
            QuatElt x(*Omax.alg, 0, 0, 0, 0);
            for (long s = 0; s < 4; ++s)
                if (c[s] != 0) x = x + b[s] * Rat(c[s]);
            Rat tr = x.trd(), nr = x.nrd();
            if (tr.get_den() == 1 && nr.get_den() == 1) {
                Int t = tr.get_num(), n = nr.get_num();
                Int d = t * t - 4 * n;
                bool ok = (q == 2) ? (mod_floor(t, Int(2)) == 1 && mod_floor(n, Int(2)) == 1)
                                   : (mod_floor(d, q) != 0 && kronecker(d, q) == -1);
                if (ok) return x;
            }
            long s = 0;
            while (s < 4 && c[s] == radius) c[s++] = -radius;
            if (s == 4) break;
            ++c[s];
        }
    }
    throw std::runtime_error("find_unramified_generator: search exhausted");
}

// Element of Omax with split reduced characteristic polynomial mod q (two
// distinct roots over Z_q).
QuatElt find_split_generator(const Lattice& Omax, const Int& q) {
    std::vector<QuatElt> b = lattice_basis_elements(Omax);
    for (long radius = 1; radius <= 8; ++radius) {
        std::vector<Int> c(4, -radius);
        while (true) {
            QuatElt x(*Omax.alg, 0, 0, 0, 0);
            for (long s = 0; s < 4; ++s)
                if (c[s] != 0) x = x + b[s] * Rat(c[s]);
            Rat tr = x.trd(), nr = x.nrd();
            if (tr.get_den() == 1 && nr.get_den() == 1) {
                Int t = tr.get_num(), n = nr.get_num();
                Int d = t * t - 4 * n;
                bool ok = (q == 2) ? (mod_floor(d, Int(8)) == 1)
                                   : (mod_floor(d, q) != 0 && kronecker(d, q) == 1);
                if (ok) return x;
            }
            long s = 0;
            while (s < 4 && c[s] == radius) c[s++] = -radius;
            if (s == 4) break;
            ++c[s];
        }
    }
    throw std::runtime_error("find_split_generator: search exhausted");
}

// Root of X^2 - tX + n modulo q^f, lifting a simple root mod q.
Int lifted_root(const Int& t, const Int& n, const Int& q, unsigned f) {
    Int r0 = -1;
    for (Int r = 0; r < q; ++r)
        if (mod_floor(r * r - t * r + n, q) == 0) { r0 = r; break; }
    if (r0 < 0) throw std::logic_error("lifted_root: no root mod q");
    Int target = pow_int(q, f);
    Int m = q, r = r0;
    while (m < target) {
        m = m * m;
        if (m > target) m = target;
        Int fr = mod_floor(r * r - t * r + n, m);
        Int dr = mod_floor(2 * r - t, m);
        r = mod_floor(r - fr * invmod(dr, m), m);
    }
    return r;
}

Lattice eichler_congruence_order(const Lattice& Omax, const Int& q, unsigned f) {
    const QuatAlg& A = *Omax.alg;
    Int qf = pow_int(q, f);
    QuatElt x = find_split_generator(Omax, q);
    Int t = x.trd().get_num(), n = x.nrd().get_num();
    Int lam = lifted_root(t, n, q, f);
    Int mu = mod_floor(t - lam, qf);
    if (mod_floor(lam - mu, q) == 0) throw std::logic_error("eichler order: roots collide mod q");
    std::array<IntMat, 4> C = structure_tensor(Omax);
    std::vector<Int> xc = order_coords(Omax, x);
    std::vector<Int> onec = order_coords(Omax, quat_one(A));
    Int inv = invmod(mod_floor(lam - mu, qf), qf);
    std::vector<Int> e(4);
    for (long s = 0; s < 4; ++s) e[s] = mod_floor((xc[s] - mu * onec[s]) * inv, qf);
    // e is idempotent mod q^f because x^2 - t x + n = 0 exactly
    {
        std::vector<Int> ee = tensor_mul_mod(C, e, e, qf);
        for (long s = 0; s < 4; ++s)
            if (ee[s] != e[s]) throw std::logic_error("eichler order: idempotent check failed");
    }
    std::vector<Int> em(4);  // 1 - e
    for (long s = 0; s < 4; ++s) em[s] = mod_floor(onec[s] - e[s], qf);
    IntMat R(4, 4), L(4, 4);
    for (long s = 0; s < 4; ++s)
        for (long u = 0; u < 4; ++u) {
            Int rv = 0, lv = 0;
            for (long w = 0; w < 4; ++w) {
                rv += e[w] * C[s].at(w, u);
                lv += em[w] * C[w].at(s, u);
            }
            R.at(s, u) = mod_floor(rv, qf);
            L.at(s, u) = mod_floor(lv, qf);
        }
    IntMat Ncond = mat_mod(L * R, qf);
    IntMat K = kernel_lattice_mod(Ncond, qf);
    Lattice part = lattice_from_rows(A, K * Omax.basis, Omax.den);
    if (lattice_index(Omax, part) != qf)
        throw std::logic_error("eichler order: wrong index");
    return part;
}

Lattice special_ramified_order(const Lattice& Omax, const Int& q, unsigned f) {
    const QuatAlg& A = *Omax.alg;
    if (f % 2 != 0)
        throw std::domain_error("order_of_level: level valuation at a ramified prime must be even");
    Int qm = pow_int(q, f / 2);
    QuatElt w = find_unramified_generator(Omax, q);
    IntMat rows(6, 4);
    rows.at(0, 0) = Omax.den;  // the element 1
    for (int u = 0; u < 4; ++u) {
        Rat v = w.c[u] * Omax.den;
        rows.at(1, u) = v.get_num();
    }
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) rows.at(2 + i, j) = qm * Omax.basis.at(i, j);
    Lattice part = lattice_from_rows(A, rows, Omax.den);
    if (lattice_index(Omax, part) != pow_int(q, f))
        throw std::logic_error("order_of_level: special part has wrong index");
    return part;
}

}  // namespace

Lattice order_of_level(const QuatAlg& A, const Lattice& Omax, const Int& N1, const Int& N2) {
    if (N1 != A.discriminant())
        throw std::domain_error("order_of_level: N1 must be the algebra discriminant");
    if (N2 <= 0) throw std::domain_error("order_of_level: N2 must be positive");
    if (reduced_discriminant(Omax) != N1)
        throw std::domain_error("order_of_level: Omax is not maximal");
    Lattice O = Omax;
    for (const auto& [q, f] : factorize(N2)) {
        Lattice part = A.is_ramified(q) ? special_ramified_order(Omax, q, f)
                                        : eichler_congruence_order(Omax, q, f);
        O = lattice_intersect(O, part);
    }
    if (!is_order(O)) throw std::logic_error("order_of_level: result is not an order");
    if (reduced_discriminant(O) != N1 * N2)
        throw std::logic_error("order_of_level: wrong reduced discriminant");
    return O;
}

Lattice two_sided_prime(const Lattice& O, const Int& p) {
    if (!O.alg->is_ramified(p)) throw std::domain_error("two_sided_prime: p not ramified");
    Int d = reduced_discriminant(O);
    if (valuation(d, p) != 1)
        throw std::domain_error("two_sided_prime: order not locally maximal at p");
    Lattice P = radical_pullback(O, p);
    if (lattice_index(O, P) != p * p) throw std::logic_error("two_sided_prime: wrong index");
    Lattice P2 = lattice_product(P, P);
    if (!(P2 == lattice_scale(O, Rat(p)))) throw std::logic_error("two_sided_prime: P^2 != pO");
    if (lattice_norm(P) != Rat(p)) throw std::logic_error("two_sided_prime: wrong norm");
    return P;
}

}  // namespace qmf
