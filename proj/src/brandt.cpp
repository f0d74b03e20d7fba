#include "qmf/brandt.hpp"

namespace qmf {

namespace {

void require_good_prime(const IdealClassSet& cs, const Int& ell) {
    if (!is_prime(ell)) throw std::domain_error("brandt_matrix: ell must be prime");
    if ((cs.N1 * cs.N2) % ell == 0)
        throw std::domain_error("brandt_matrix: no Hecke operator at a prime dividing the level");
}

}  // namespace

IntMat brandt_matrix(const IdealClassSet& cs, const Int& ell) {
    require_good_prime(cs, ell);
    long h = static_cast<long>(cs.size());
    std::vector<Lattice> prim;
    prim.reserve(h);
    for (const Lattice& rep : cs.reps) prim.push_back(primitive_integral(rep));
    IntMat B(h, h);
    for (long i = 0; i < h; ++i) {
        for (long j = 0; j < h; ++j) {
            Lattice P = lattice_product(prim[i], lattice_conjugate(prim[j]));
            Int target = 2 * ell * lattice_norm(prim[i]).get_num() *
                         lattice_norm(prim[j]).get_num() * P.den * P.den;
            Int count = count_vectors_with_value(lattice_gram_numerator(P), target);
            Int stab = 2 * cs.weights[j];
            if (count % stab != 0)
                throw std::logic_error("brandt_matrix: theta count not divisible by unit count");
            B.at(i, j) = count / stab;
        }
    }
    return B;
}

IntMat brandt_matrix_by_neighbors(const IdealClassSet& cs, const Int& ell) {
    require_good_prime(cs, ell);
    long h = static_cast<long>(cs.size());
    IntMat B(h, h);
    for (long i = 0; i < h; ++i)
        for (const Lattice& J : neighbor_ideals(cs.reps[i], cs.order, ell))
            B.at(i, cs.classify(J)) += 1;
    return B;
}

IntMat ramified_involution(const IdealClassSet& cs, const Int& p) {
    if (cs.N1 % p != 0)
        throw std::domain_error("ramified_involution: p must divide N1");
    if (cs.N2 % p == 0)
        throw std::domain_error("ramified_involution: p must be coprime to N2");
    Lattice P = two_sided_prime(cs.order, p);
    long h = static_cast<long>(cs.size());
    IntMat M(h, h);
    for (long i = 0; i < h; ++i) M.at(i, cs.classify(lattice_product(cs.reps[i], P))) = 1;
    return M;
}

}  // namespace qmf
