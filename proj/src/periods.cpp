#include "qmf/periods.hpp"

#include <optional>
#include <stdexcept>

#include "qmf/order.hpp"

namespace qmf {

namespace {

Rat coord(const Int& num, const Int& den) {
    Rat r(num);
    r /= Rat(den);
    return r;
}

}  // namespace

QuatElt Embedding::sqrt_d() const {
    Int t = mod_floor(D, 2);
    return omega * Rat(2) - quat_one(*omega.alg) * Rat(t);
}

QuatElt Embedding::map(const Int& x, const Int& y) const {
    // (x + y sqrt(D))/2 = (x - y t)/2 + y omega with t = D mod 2
    Int t = mod_floor(D, 2);
    if (mod_floor(x - y * D, 2) != 0)
        throw std::domain_error("Embedding::map: x and y D must agree mod 2");
    return quat_one(*omega.alg) * Rat((x - y * t) / 2) + omega * Rat(y);
}

namespace {

void check_embedding_preconditions(const Lattice& order, const Int& D) {
    if (D >= 0 || !is_fundamental_discriminant(D))
        throw std::domain_error(
            "optimal_embedding: need a negative fundamental discriminant, got " +
            to_string(D));
    Int disc = reduced_discriminant(order);
    if (disc != order.alg->discriminant())
        throw std::domain_error("optimal_embedding: order is not maximal");
    for (const Int& p : prime_divisors(disc))
        if (!is_inert(D, p))
            throw std::domain_error("optimal_embedding: " + to_string(p) +
                                    " is not inert in the field of discriminant " +
                                    to_string(D));
}

// Element of the order with trace D mod 2 generating a ring of discriminant
// D, or nothing when the order contains no copy of the quadratic ring.
std::optional<QuatElt> quadratic_generator(const Lattice& order, const Int& D) {
    Int t = mod_floor(D, 2);
    const QuatAlg& A = *order.alg;
    QuatElt one = quat_one(A);

    // Trace-zero sublattice of the numerator rows: trd of row r is twice its
    // first coordinate.
    IntMat col(4, 1);
    for (long r = 0; r < 4; ++r) col.at(r, 0) = order.basis.at(r, 0);
    IntMat M = kernel_left(col);
    IntMat G0 = M * lattice_gram_numerator(order) * M.transpose();

    // nrd(s) = -D on the quadratic form of value 2 den^2 nrd
    Int target = Int(-2) * D * order.den * order.den;
    for (const auto& v : vectors_with_value(G0, target)) {
        // v lives on the rows of M; convert to coordinates on 1, i, j, k
        std::vector<Int> w = mat_vec_row(mat_vec_row(v, M), order.basis);
        for (int sgn : {1, -1}) {
            QuatElt s(A, coord(sgn * w[0], order.den), coord(sgn * w[1], order.den),
                      coord(sgn * w[2], order.den), coord(sgn * w[3], order.den));
            QuatElt om = (s + one * Rat(t)) * Rat(1, 2);
            if (lattice_contains(order, om)) return om;
        }
    }
    return std::nullopt;
}

}  // namespace

Embedding optimal_embedding(const Lattice& order, const Int& D) {
    check_embedding_preconditions(order, D);
    std::optional<QuatElt> om = quadratic_generator(order, D);
    if (!om)
        throw std::domain_error(
            "optimal_embedding: the order contains no ring of discriminant " +
            to_string(D));
    return Embedding{D, *om, 0};
}

Embedding optimal_embedding(const IdealClassSet& cs, const Int& D) {
    check_embedding_preconditions(cs.order, D);
    for (size_t k = 0; k < cs.left_orders.size(); ++k) {
        std::optional<QuatElt> om = quadratic_generator(cs.left_orders[k], D);
        if (om) return Embedding{D, *om, static_cast<long>(k)};
    }
    throw std::logic_error("optimal_embedding: no left order admits " +
                           to_string(D));
}

ClassMap class_map(const IdealClassSet& cs, const Embedding& emb,
                   const QuadClassGroup& G) {
    if (emb.D != G.D)
        throw std::domain_error("class_map: embedding and class group disagree");
    if (emb.base < 0 || emb.base >= static_cast<long>(cs.size()))
        throw std::domain_error("class_map: base class out of range");
    const Lattice& host = cs.left_orders[emb.base];
    if (!lattice_contains(host, emb.omega))
        throw std::domain_error("class_map: embedding misses its host order");

    ClassMap out;
    out.D = G.D;
    out.fibers.assign(cs.size(), Int(0));
    std::vector<QuatElt> obasis = lattice_basis_elements(host);
    for (long t = 0; t < G.size(); ++t) {
        QuadIdeal a = ideal_of_form(G.forms[t], G.D);
        std::vector<QuatElt> gens;
        for (long r = 0; r < 2; ++r) {
            QuatElt g = emb.map(a.basis.at(r, 0), a.basis.at(r, 1));
            for (const QuatElt& b : obasis) gens.push_back(g * b);
        }
        Lattice J = lattice_from_elements(cs.alg, gens);
        if (lattice_norm(J) != Rat(ideal_norm(a)))
            throw std::logic_error("class_map: norm mismatch");
        // J is a right ideal of the host order; the linking ideal carries it
        // to a right ideal of the base order within the same class pattern.
        long idx = cs.classify(emb.base == 0 ? J : lattice_product(J, cs.reps[emb.base]));
        out.cls.push_back(idx);
        out.fibers[idx] += 1;
    }
    if (out.cls[0] != emb.base)
        throw std::logic_error("class_map: principal class off the host order");
    return out;
}

CycInt period(const std::vector<Int>& phi, const QuadCharacter& chi,
              const ClassMap& cmap) {
    if (phi.size() != cmap.fibers.size())
        throw std::domain_error("period: value vector has the wrong length");
    CycInt P(chi.E);
    for (size_t t = 0; t < cmap.cls.size(); ++t)
        P = P + chi.conj_value(static_cast<long>(t)) * phi[cmap.cls[t]];
    return P;
}

CycInt algebraic_lvalue(const std::vector<Int>& phi, const QuadCharacter& chi,
                        const ClassMap& cmap) {
    Int content = 0;
    for (const Int& x : phi) content = gcd(content, x);
    if (content != 1)
        throw std::domain_error("algebraic_lvalue: values must have gcd 1");
    CycInt P = period(phi, chi, cmap);
    return P * P.conj();
}

Int common_residue(const std::vector<Int>& phi, const Int& m) {
    if (m <= 1) throw std::domain_error("common_residue: modulus must exceed 1");
    if (phi.empty()) throw std::domain_error("common_residue: empty vector");
    Int r = mod_floor(phi[0], m);
    for (const Int& x : phi)
        if (mod_floor(x, m) != r)
            throw std::domain_error("common_residue: values disagree mod " +
                                    to_string(m));
    return r;
}

LValueCheck check_lvalue_congruences(const IdealClassSet& cs,
                                     const std::vector<Int>& phi, const Int& p,
                                     unsigned long r, const Int& D) {
    Int pr = pow_int(p, r);
    LValueCheck out;
    out.D = D;
    out.c = common_residue(phi, pr);
    if (out.c % p == 0)
        throw std::domain_error("check_lvalue_congruences: residue divisible by p");

    QuadClassGroup G = class_group(D);
    out.h = G.size();
    Embedding emb = optimal_embedding(cs, D);
    ClassMap cmap = class_map(cs, emb, G);
    std::vector<QuadCharacter> chars = all_characters(G);

    out.trivial_value = algebraic_lvalue(phi, chars[0], cmap).rational_value();
    out.trivial_ok =
        mod_floor(out.trivial_value - out.c * out.c * out.h * out.h, pr) == 0;
    out.nontrivial_ok = true;
    for (size_t k = 1; k < chars.size(); ++k) {
        CycInt L = algebraic_lvalue(phi, chars[k], cmap);
        if (!L.vanishes_mod_every_prime_above(p)) out.nontrivial_ok = false;
    }
    return out;
}

bool nonvanishing_certified(const IdealClassSet& cs,
                            const std::vector<Int>& phi_lift, const Int& p,
                            const Int& D) {
    if (common_residue(phi_lift, p) != 1)
        throw std::domain_error("nonvanishing_certified: vector must be 1 mod p");
    QuadClassGroup G = class_group(D);
    Int h(G.size());
    if (h % p == 0) return false;

    Embedding emb = optimal_embedding(cs, D);
    ClassMap cmap = class_map(cs, emb, G);
    QuadCharacter triv;
    triv.E = 1;
    triv.exps.assign(G.size(), 0);
    Int P = period(phi_lift, triv, cmap).rational_value();
    if (mod_floor(P, p) != mod_floor(h, p) || P == 0)
        throw std::logic_error("nonvanishing_certified: period is not h mod p");
    return true;
}

std::vector<Int> inert_discriminants(const Int& N, const Int& bound) {
    std::vector<Int> out;
    std::vector<Int> ps = prime_divisors(N);
    for (Int m = 3; m <= bound; ++m) {
        Int D = -m;
        if (!is_fundamental_discriminant(D)) continue;
        bool ok = true;
        for (const Int& p : ps)
            if (!is_inert(D, p)) {
                ok = false;
                break;
            }
        if (ok) out.push_back(D);
    }
    return out;
}

}  // namespace qmf
