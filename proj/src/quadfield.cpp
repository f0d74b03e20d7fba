#include "qmf/quadfield.hpp"

#include <algorithm>
#include <set>

namespace qmf {

bool is_fundamental_discriminant(const Int& D) {
    if (D == 0 || D == 1) return false;
    Int r = mod_floor(D, 4);
    if (r == 1) return moebius(abs(D)) != 0;
    if (r != 0) return false;
    Int m = D / 4;
    Int s = mod_floor(m, 4);
    return (s == 2 || s == 3) && moebius(abs(m)) != 0;
}

QuadForm principal_form(const Int& D) {
    Int b = mod_floor(D, 2);
    return {1, b, (b * b - D) / 4};
}

bool is_reduced(const QuadForm& f) {
    Int ab = abs(f.b);
    if (ab > f.a || f.a > f.c) return false;
    if (f.b < 0 && (ab == f.a || f.a == f.c)) return false;
    return true;
}

QuadForm reduce_form(QuadForm f) {
    Int D = f.disc();
    if (f.a <= 0 || D >= 0) throw std::domain_error("reduce_form: not positive definite");
    for (;;) {
        Int r = mod_floor(f.b, 2 * f.a);
        if (r > f.a) r -= 2 * f.a;
        f.b = r;
        f.c = (r * r - D) / (4 * f.a);
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.b < 0 && (-f.b == f.a || f.a == f.c)) f.b = -f.b;
    return f;
}

std::vector<QuadForm> reduced_forms(const Int& D) {
    if (D >= 0 || mod_floor(D, 4) > 1) throw std::domain_error("reduced_forms: not a discriminant");
    std::vector<QuadForm> out;
    for (Int a = 1; 3 * a * a <= -D; ++a)
        for (Int b = -a + 1; b <= a; ++b) {
            if (mod_floor(b - D, 2) != 0) continue;
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    std::sort(out.begin(), out.end(), [](const QuadForm& f, const QuadForm& g) {
        if (f.a != g.a) return f.a < g.a;
        if (f.b != g.b) return f.b < g.b;
        return f.c < g.c;
    });
    return out;
}

Int class_number(const Int& D) { return Int(reduced_forms(D).size()); }

namespace {

// primitive point where the form takes a value coprime to m
std::pair<Int, Int> coprime_point(const QuadForm& g, const Int& m) {
    if (m == 1 || gcd(g.a, m) == 1) return {1, 0};
    for (Int s = 1;; ++s)
        for (Int x = -s; x <= s; ++x)
            for (Int y = -s; y <= s; ++y) {
                Int ax = abs(x), ay = abs(y);
                if ((ax > ay ? ax : ay) != s) continue;
                if (gcd(x, y) != 1) continue;
                if (gcd(g.eval(x, y), m) == 1) return {x, y};
            }
}

}  // namespace

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    Int D = f.disc();
    if (g.disc() != D) throw std::domain_error("compose: discriminants differ");

    // replace g by an equivalent form whose leading coefficient is coprime
    // to f.a, then apply Dirichlet's composition formula
    auto [x, y] = coprime_point(g, f.a);
    Xgcd e = xgcd(x, y);
    Int z = -e.y, w = e.x;
    Int a2 = g.eval(x, y);
    Int b2 = 2 * g.a * x * z + g.b * (x * w + y * z) + 2 * g.c * y * w;
    if (mod_floor(b2 * b2 - D, 4 * a2) != 0) throw std::logic_error("compose: bad transform");

    Int a3 = f.a * a2;
    Int t = mod_floor((b2 - f.b) / 2 * invmod(f.a, a2), a2);
    Int b3 = f.b + 2 * f.a * t;
    Int c3num = b3 * b3 - D;
    if (c3num % (4 * a3) != 0) throw std::logic_error("compose: inexact third coefficient");
    return reduce_form({a3, b3, c3num / (4 * a3)});
}

QuadForm form_inverse(const QuadForm& f) { return reduce_form({f.a, -f.b, f.c}); }

QuadForm form_power(QuadForm f, Int k) {
    Int D = f.disc();
    if (k < 0) {
        f = form_inverse(f);
        k = -k;
    }
    QuadForm r = principal_form(D);
    f = reduce_form(f);
    while (k > 0) {
        if (mod_floor(k, 2) == 1) r = compose(r, f);
        f = compose(f, f);
        k /= 2;
    }
    return r;
}

namespace {

IntMat hnf2(IntMat rows) {
    long rank = hnf_rows(rows);
    if (rank != 2) throw std::domain_error("quad ideal basis is not full rank");
    IntMat b(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) b.at(i, j) = rows.at(i, j);
    return b;
}

}  // namespace

QuadIdeal ring_of_integers(const Int& D) {
    IntMat rows(2, 2);
    rows.at(0, 0) = 2;
    rows.at(1, 0) = D;
    rows.at(1, 1) = 1;
    return {D, hnf2(std::move(rows))};
}

QuadIdeal ideal_of_form(const QuadForm& f, const Int& D) {
    if (f.disc() != D) throw std::domain_error("ideal_of_form: wrong discriminant");
    IntMat rows(2, 2);
    rows.at(0, 0) = 2 * f.a;
    rows.at(1, 0) = -f.b;
    rows.at(1, 1) = 1;
    return {D, hnf2(std::move(rows))};
}

QuadIdeal ideal_product(const QuadIdeal& A, const QuadIdeal& B) {
    if (A.D != B.D) throw std::domain_error("ideal_product: fields differ");
    IntMat rows(4, 2);
    long r = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j, ++r) {
            Int x1 = A.basis.at(i, 0), y1 = A.basis.at(i, 1);
            Int x2 = B.basis.at(j, 0), y2 = B.basis.at(j, 1);
            Int px = x1 * x2 + y1 * y2 * A.D, py = x1 * y2 + y1 * x2;
            if (mod_floor(px, 2) != 0 || mod_floor(py, 2) != 0)
                throw std::logic_error("ideal_product: element outside the half-integral lattice");
            rows.at(r, 0) = px / 2;
            rows.at(r, 1) = py / 2;
        }
    return {A.D, hnf2(std::move(rows))};
}

Int ideal_norm(const QuadIdeal& A) {
    Int d = A.basis.at(0, 0) * A.basis.at(1, 1) - A.basis.at(0, 1) * A.basis.at(1, 0);
    return abs(d) / 2;
}

QuadForm form_of_ideal(const QuadIdeal& A) {
    Int x1 = A.basis.at(0, 0), y1 = A.basis.at(0, 1);
    Int x2 = A.basis.at(1, 0), y2 = A.basis.at(1, 1);
    if (x1 * y2 - x2 * y1 > 0) {
        std::swap(x1, x2);
        std::swap(y1, y2);
    }
    Int n = abs(x1 * y2 - x2 * y1) / 2;
    if (n == 0) throw std::domain_error("form_of_ideal: degenerate basis");
    Int a4 = x1 * x1 - A.D * y1 * y1;  // 4 N(alpha)
    Int b2 = x1 * x2 - A.D * y1 * y2;  // 2 Tr(alpha conj beta)
    Int c4 = x2 * x2 - A.D * y2 * y2;
    if (a4 % (4 * n) != 0 || b2 % (2 * n) != 0 || c4 % (4 * n) != 0)
        throw std::domain_error("form_of_ideal: not a proper ideal");
    QuadForm f = {a4 / (4 * n), b2 / (2 * n), c4 / (4 * n)};
    if (f.disc() != A.D) throw std::logic_error("form_of_ideal: discriminant mismatch");
    return reduce_form(f);
}

long QuadClassGroup::index_of(const QuadForm& f) const {
    for (long i = 0; i < size(); ++i)
        if (forms[i] == f) return i;
    throw std::domain_error("index_of: form is not in the reduced list");
}

long QuadClassGroup::inverse_of(long i) const { return index_of(form_inverse(forms[i])); }

long QuadClassGroup::order_of(long i) const {
    long k = 1, t = i;
    while (t != 0) {
        t = table[t][i];
        ++k;
    }
    return i == 0 ? 1 : k;
}

unsigned long QuadClassGroup::exponent() const {
    Int e = 1;
    for (long i = 0; i < size(); ++i) e = lcm(e, order_of(i));
    return e.get_ui();
}

QuadClassGroup class_group(const Int& D) {
    QuadClassGroup G;
    G.D = D;
    G.forms = reduced_forms(D);
    long h = G.size();
    G.table.assign(h, std::vector<long>(h, 0));
    for (long i = 0; i < h; ++i)
        for (long j = 0; j <= i; ++j) {
            long k = G.index_of(compose(G.forms[i], G.forms[j]));
            G.table[i][j] = G.table[j][i] = k;
        }
    return G;
}

bool QuadCharacter::is_trivial() const {
    for (long e : exps)
        if (e % static_cast<long>(E) != 0) return false;
    return true;
}

unsigned long QuadCharacter::order() const {
    Int g = E;
    for (long e : exps) g = gcd(g, e);
    Int ord = Int(E) / g;
    return ord.get_ui();
}

std::vector<QuadCharacter> all_characters(const QuadClassGroup& G) {
    long h = G.size();
    unsigned long E = G.exponent();
    long El = static_cast<long>(E);

    // greedy generators: repeatedly take an element of maximal order outside
    // the current span, recording one word per element by closure
    std::vector<long> gens;
    std::vector<std::vector<long>> word(h);  // exponents, one per generator
    std::vector<char> known(h, 0);
    known[0] = 1;
    auto close = [&] {
        bool grew = true;
        while (grew) {
            grew = false;
            for (long t = 0; t < h; ++t) {
                if (!known[t]) continue;
                for (size_t gi = 0; gi < gens.size(); ++gi) {
                    long u = G.table[t][gens[gi]];
                    if (known[u]) continue;
                    word[u] = word[t];
                    word[u][gi] += 1;
                    known[u] = 1;
                    grew = true;
                }
            }
        }
    };
    for (;;) {
        long best = -1, bestord = 0;
        for (long t = 1; t < h; ++t)
            if (!known[t] && G.order_of(t) > bestord) {
                best = t;
                bestord = G.order_of(t);
            }
        if (best < 0) break;
        gens.push_back(best);
        for (long t = 0; t < h; ++t)
            if (known[t]) word[t].resize(gens.size(), 0);
        word[best].assign(gens.size(), 0);
        word[best].back() = 1;
        known[best] = 1;
        close();
    }

    // candidate assignments on the generators, kept iff multiplicative
    std::set<std::vector<long>> seen;
    std::vector<QuadCharacter> out;
    std::vector<long> assign(gens.size(), 0);
    for (;;) {
        std::vector<long> exps(h, 0);
        for (long t = 0; t < h; ++t) {
            long s = 0;
            for (size_t gi = 0; gi < gens.size(); ++gi) s += assign[gi] * word[t][gi];
            exps[t] = ((s % El) + El) % El;
        }
        bool ok = true;
        for (long i = 0; i < h && ok; ++i)
            for (long j = 0; j < h && ok; ++j)
                ok = (exps[i] + exps[j]) % El == exps[G.table[i][j]];
        if (ok && seen.insert(exps).second) out.push_back({E, exps});

        size_t pos = 0;
        while (pos < gens.size() && ++assign[pos] == El) assign[pos++] = 0;
        if (pos == gens.size()) break;
    }
    if (Int(out.size()) != Int(h)) throw std::logic_error("all_characters: wrong count");

    std::sort(out.begin(), out.end(), [](const QuadCharacter& a, const QuadCharacter& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.exps < b.exps;
    });
    return out;
}

long unit_count(const Int& D) {
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

bool is_inert(const Int& D, const Int& ell) { return kronecker(D, ell) == -1; }

}  // namespace qmf
