#pragma once

// The built-in verification suite: twelve end-to-end criteria checking the
// engine against frozen arithmetic facts.  Shared by the acceptance test
// binary and the command line front end, so both always run the same checks.

#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qmf/eisenstein.hpp"
#include "qmf/periods.hpp"

namespace qmf::verify {

struct Outcome {
    int id;
    std::string label;
    int failures;
};

namespace detail {

struct Ctx {
    std::ostream& out;
    int failures = 0;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            out << "    check failed: " << what << "\n";
        }
    }
};

inline std::string ts(const Int& n) { return n.get_str(); }

inline std::vector<Int> primes_up_to(const Int& bound) {
    std::vector<Int> out;
    Int p = 2;
    while (p <= bound) {
        out.push_back(p);
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    }
    return out;
}

inline long weight_index(Ctx& c, const IdealClassSet& cs, const Int& w) {
    for (long i = 0; i < (long)cs.size(); ++i)
        if (cs.weights[i] == w) return i;
    c.check(false, "no class of weight " + ts(w));
    return 0;
}

inline Int block_eigenvalue(Ctx& c, const IdealClassSet& cs, const IntMat& block,
                            const Int& ell) {
    auto lam = scalar_action(brandt_matrix(cs, ell), block);
    c.check(lam.has_value(), "block is not an eigen line at ell = " + ts(ell));
    return lam ? *lam : Int(0);
}

// 1. Reciprocal unit weights, summed over an enumerated class set, must
//    reproduce the mass formula for every admissible split of every
//    nonsquare level up to 150.
inline void criterion1(Ctx& c) {
    for (Int N = 2; N <= 150; ++N) {
        if (is_square(N)) continue;
        for (const auto& [N1, N2] : admissible_splits(N)) {
            auto cs = class_set(N1, N2);
            Rat direct = 0;
            for (const Int& w : cs->weights) direct += Rat(1) / Rat(w);
            std::string at = "(" + ts(N1) + "," + ts(N2) + ")";
            c.check(direct == eichler_mass(N1, N2), "enumerated mass at " + at);
            c.check(cs->mass() == direct, "mass() disagrees with weights at " + at);
        }
    }
}

// 2. The level 11 fixture: two classes of weights 3 and 2, cuspidal
//    lattice generated by (3,-2), self-pairing 5, common residue 3 mod 5.
inline void criterion2(Ctx& c) {
    auto cs = class_set(11, 1);
    c.check(cs->size() == 2, "class number at 11");
    std::multiset<Int> ws(cs->weights.begin(), cs->weights.end());
    c.check(ws == std::multiset<Int>({2, 3}), "unit weights at 11");

    IntMat C = cusp_lattice(*cs);
    c.check(C.rows() == 1, "cuspidal rank at 11");
    std::vector<Int> g = C.row(0);
    long i3 = weight_index(c, *cs, 3), i2 = weight_index(c, *cs, 2);
    if (g[i3] < 0)
        for (Int& x : g) x = -x;
    c.check(g[i3] == 3 && g[i2] == -2, "cusp generator is (3,-2) by weight");
    c.check(weight_pairing(*cs, g, g) == 5, "self-pairing of the generator");
    c.check(common_residue(g, 5) == 3, "common residue mod 5");
}

// 3. Brandt matrices at six levels: both construction routes agree, rows
//    sum to ell + 1, the weighted symmetry holds, and the family commutes.
inline void criterion3(Ctx& c) {
    const std::vector<std::pair<Int, Int>> splits = {
        {11, 1}, {17, 1}, {3, 9}, {2, 16}, {2, 25}, {11, 13}, {13, 11}};
    for (const auto& [N1, N2] : splits) {
        auto cs = class_set(N1, N2);
        const Int N = N1 * N2;
        const std::string at = "(" + ts(N1) + "," + ts(N2) + ")";
        std::vector<std::pair<Int, IntMat>> family;
        for (const Int& ell : primes_up_to(20)) {
            if (N % ell == 0) continue;
            IntMat B = brandt_matrix(*cs, ell);
            c.check(B == brandt_matrix_by_neighbors(*cs, ell),
                    "construction routes disagree at " + at + ", ell = " + ts(ell));
            for (long i = 0; i < B.rows(); ++i) {
                Int s = 0;
                for (long j = 0; j < B.cols(); ++j) s += B.at(i, j);
                c.check(s == ell + 1, "row sum at " + at + ", ell = " + ts(ell));
            }
            for (long i = 0; i < B.rows(); ++i)
                for (long j = 0; j < B.cols(); ++j)
                    c.check(cs->weights[j] * B.at(i, j) == cs->weights[i] * B.at(j, i),
                            "weighted symmetry at " + at + ", ell = " + ts(ell));
            family.emplace_back(ell, B);
        }
        for (size_t s = 0; s < family.size(); ++s)
            for (size_t t = s + 1; t < family.size(); ++t)
                c.check(family[s].second * family[t].second ==
                            family[t].second * family[s].second,
                        "commutation at " + at + " between ell = " + ts(family[s].first) +
                            " and " + ts(family[t].first));
    }
}

// Shared by criteria 4-6: check frozen eigenvalues on a block and the
// termwise congruence to ell + 1 away from the level.
inline void check_eigen_line(Ctx& c, const IdealClassSet& cs, const IntMat& block,
                             const std::vector<std::pair<Int, Int>>& fixture,
                             const Int& p, const Int& ell_max, const std::string& at) {
    for (const auto& [ell, lam] : fixture)
        c.check(block_eigenvalue(c, cs, block, ell) == lam,
                "eigenvalue at " + at + ", ell = " + ts(ell));
    const Int N = cs.N1 * cs.N2;
    for (const Int& ell : primes_up_to(ell_max)) {
        if (N % ell == 0) continue;
        Int lam = block_eigenvalue(c, cs, block, ell);
        c.check(mod_floor(lam - (ell + 1), p) == 0,
                "congruence mod " + ts(p) + " at " + at + ", ell = " + ts(ell));
    }
}

// 4. Level 27: a unique cuspidal eigen line with the frozen eigenvalues,
//    all congruent to ell + 1 mod 3.
inline void criterion4(Ctx& c) {
    auto cs = class_set(3, 9);
    auto blocks = eigen_blocks(*cs, 43);
    c.check(blocks.size() == 1, "eigen block count at 27");
    if (blocks.size() != 1) return;
    c.check(blocks[0].rows() == 1, "eigen line at 27");
    check_eigen_line(c, *cs, blocks[0],
                     {{7, -1}, {13, 5}, {19, -7}, {31, -4}, {37, 11}, {43, 8}},
                     3, 43, "27");
}

// 5. Level 32: the same shape with congruences mod 2.
inline void criterion5(Ctx& c) {
    auto cs = class_set(2, 16);
    auto blocks = eigen_blocks(*cs, 41);
    c.check(blocks.size() == 1, "eigen block count at 32");
    if (blocks.size() != 1) return;
    c.check(blocks[0].rows() == 1, "eigen line at 32");
    check_eigen_line(c, *cs, blocks[0],
                     {{5, -2}, {13, 6}, {17, 2}, {29, -10}, {37, -2}, {41, 10}},
                     2, 41, "32");
}

// 6. Level 50: two eigen lines; the one with eigenvalue -1 at 3 carries the
//    frozen values, matches the Eisenstein coefficients mod 5, and passes
//    the coefficientwise comparison.
inline void criterion6(Ctx& c) {
    auto cs = class_set(2, 25);
    auto blocks = eigen_blocks(*cs, 17);
    c.check(blocks.size() == 2, "eigen block count at 50");
    const IntMat* line = nullptr;
    for (const IntMat& b : blocks)
        if (b.rows() == 1 && scalar_action(brandt_matrix(*cs, 3), b) == Int(-1)) line = &b;
    c.check(line != nullptr, "no eigen line with eigenvalue -1 at 3");
    if (!line) return;
    check_eigen_line(c, *cs, *line, {{3, -1}, {7, -2}, {11, -3}, {13, 4}, {17, 3}},
                     5, 17, "50");
    c.check(fourier_eisenstein_congruence(*cs, *line, 5, 1, 50),
            "coefficientwise congruence mod 5 at 50");
}

// 7. Level 143 under both splits: congruence certificates for every prime
//    dividing the mass numerator.
inline void criterion7(Ctx& c) {
    auto run = [&c](const Int& N1, const Int& N2, const Rat& mass,
                    const std::vector<Int>& ps) {
        auto cs = class_set(N1, N2);
        const std::string at = "(" + ts(N1) + "," + ts(N2) + ")";
        c.check(cs->mass() == mass, "mass at " + at);
        for (const Int& p : ps) {
            c.check(eisenstein_cusp_lift(*cs, p, 1).has_value(),
                    "cusp lift mod " + ts(p) + " at " + at);
            c.check(eisenstein_eigenclass_mod(*cs, p, 1, 50).has_value(),
                    "eigenclass mod " + ts(p) + " at " + at);
        }
    };
    run(11, 13, Rat(35) / Rat(3), {5, 7});
    run(13, 11, Rat(12), {2, 3});
}

// 8. Sweep to 100: for every admissible split and every prime dividing the
//    mass numerator, the cusp lift exists, is everywhere 1 mod p, pairs to
//    zero with the all-ones vector, and an eigenclass witness exists.
inline void criterion8(Ctx& c) {
    for (Int N = 2; N <= 100; ++N) {
        if (is_square(N)) continue;
        for (const auto& [N1, N2] : admissible_splits(N)) {
            auto cs = class_set(N1, N2);
            const std::string at = "(" + ts(N1) + "," + ts(N2) + ")";
            Int num = cs->mass().get_num();
            if (num == 1) continue;
            std::vector<Int> ones(cs->size(), 1);
            for (const auto& [p, e] : factorize(num)) {
                (void)e;
                auto lift = eisenstein_cusp_lift(*cs, p, 1);
                c.check(lift.has_value(), "cusp lift mod " + ts(p) + " at " + at);
                if (!lift) continue;
                for (const Int& x : *lift)
                    c.check(mod_floor(x, p) == 1, "lift entry mod " + ts(p) + " at " + at);
                c.check(weight_pairing(*cs, *lift, ones) == 0,
                        "lift pairs to zero mod " + ts(p) + " at " + at);
                c.check(eisenstein_eigenclass_mod(*cs, p, 1, 50).has_value(),
                        "eigenclass mod " + ts(p) + " at " + at);
            }
        }
    }
}

// 9. Central value congruences at 11, p = 5: for every inert fundamental
//    discriminant down to -300 the congruence and membership checks hold
//    for every class character.
inline void criterion9(Ctx& c) {
    auto cs = class_set(11, 1);
    std::vector<Int> phi(2);
    phi[weight_index(c, *cs, 3)] = 3;
    phi[weight_index(c, *cs, 2)] = -2;
    for (const Int& D : inert_discriminants(11, 300)) {
        LValueCheck res = check_lvalue_congruences(*cs, phi, 5, 1, D);
        c.check(res.ok(), "central value congruences at D = " + ts(D));
        bool member = false;
        for (Int a = 0; a <= res.h; ++a) {
            Int v = 5 * a - 2 * res.h;
            if (res.trivial_value == v * v) member = true;
        }
        c.check(member, "trivial central value outside {(5a-2h)^2} at D = " + ts(D));
    }
}

// 10. The discriminant -23 worked example, end to end.
inline void criterion10(Ctx& c) {
    auto cs = class_set(11, 1);
    long i3 = weight_index(c, *cs, 3), i2 = weight_index(c, *cs, 2);
    std::vector<Int> phi(2);
    phi[i3] = 3;
    phi[i2] = -2;

    Embedding emb = optimal_embedding(*cs, -23);
    QuadClassGroup G = class_group(-23);
    c.check(G.forms.size() == 3, "class number of -23");
    ClassMap cmap = class_map(*cs, emb, G);
    c.check(cmap.fibers[i3] == 1 && cmap.fibers[i2] == 2, "class map fibers (1,2)");

    auto chars = all_characters(G);
    c.check(chars.size() == 3 && chars[0].is_trivial(), "character table of -23");
    long t3 = -1;
    for (long t = 0; t < 3; ++t)
        if (cmap.cls[t] == i3) t3 = t;
    c.check(t3 >= 0, "no ideal class lands on the weight 3 class");

    CycInt P1 = period(phi, chars[0], cmap);
    c.check(P1.is_rational() && P1.rational_value() == -1, "trivial period is -1");
    c.check(algebraic_lvalue(phi, chars[0], cmap).rational_value() == 1,
            "trivial central value is 1");
    for (size_t k = 1; k < chars.size(); ++k) {
        CycInt P = period(phi, chars[k], cmap);
        c.check(P == chars[k].conj_value(t3) * Int(5),
                "nontrivial period is 5 times a cube root of unity");
        CycInt L = algebraic_lvalue(phi, chars[k], cmap);
        c.check(L.is_rational() && L.rational_value() == 25,
                "nontrivial central value is 25");
    }
}

// 11. Nonvanishing at 17, p = 2: prime discriminants inert at 17 have odd
//     class number and a certified nonzero trivial period; split ones are
//     out of scope and the embedding search must refuse them.
inline void criterion11(Ctx& c) {
    auto cs = class_set(17, 1);
    auto lift = eisenstein_cusp_lift(*cs, 2, 1);
    c.check(lift.has_value(), "cusp lift mod 2 at 17");
    if (!lift) return;
    for (Int d = 3; d <= 200; ++d) {
        Int D = -d;
        if (!is_fundamental_discriminant(D)) continue;
        if (!(is_prime(d) || d == 4 || d == 8)) continue;
        if (kronecker(D, 17) == -1) {
            c.check(class_number(D) % 2 == 1, "even class number at D = " + ts(D));
            c.check(nonvanishing_certified(*cs, *lift, 2, D),
                    "nonvanishing certificate at D = " + ts(D));
        } else {
            bool refused = false;
            try {
                optimal_embedding(*cs, D);
            } catch (const std::domain_error&) {
                refused = true;
            }
            c.check(refused, "split discriminant not refused at D = " + ts(D));
        }
    }
}

// 12. Level 73, p = 2: an eigenclass witness exists, but the Eisenstein
//     constant term is odd, so the congruence does not extend to the
//     constant coefficients.
inline void criterion12(Ctx& c) {
    auto cs = class_set(73, 1);
    auto wit = eisenstein_eigenclass_mod(*cs, 2, 1, 50);
    c.check(wit.has_value(), "eigenclass witness mod 2 at 73");
    if (wit) {
        for (const Int& ell : {Int(3), Int(5), Int(11)}) {
            IntMat B = brandt_matrix(*cs, ell);
            std::vector<Int> img = mat_vec_row(*wit, B.transpose());
            for (long i = 0; i < (long)cs->size(); ++i)
                c.check(mod_floor(img[i] - (ell + 1) * (*wit)[i], 2) == 0,
                        "witness is not Eisenstein at ell = " + ts(ell));
        }
    }
    Rat a0 = eisenstein_constant_term(73);
    c.check(a0 == 3, "constant term at 73");
    c.check(mod_floor(a0.get_num(), 2) == 1, "constant term is even");
}

struct Criterion {
    int id;
    const char* label;
    void (*run)(Ctx&);
};

inline const Criterion table[] = {
    {1, "mass formula sweep to level 150", criterion1},
    {2, "level 11 cuspidal fixture", criterion2},
    {3, "Brandt matrix algebra at six levels", criterion3},
    {4, "level 27 eigen line", criterion4},
    {5, "level 32 eigen line", criterion5},
    {6, "level 50 eigen line and coefficient congruence", criterion6},
    {7, "level 143 certificates under both splits", criterion7},
    {8, "congruence sweep to level 100", criterion8},
    {9, "central value congruences at 11", criterion9},
    {10, "discriminant -23 worked example", criterion10},
    {11, "nonvanishing certificates at 17", criterion11},
    {12, "constant term obstruction at 73", criterion12},
};

}  // namespace detail

// Run the numbered criterion, or all twelve if which is 0, streaming
// failure details and one verdict line per criterion to out.
inline std::vector<Outcome> run(int which, std::ostream& out) {
    if (which < 0 || which > 12) throw std::invalid_argument("no such criterion");
    std::vector<Outcome> res;
    for (const detail::Criterion& c : detail::table) {
        if (which != 0 && c.id != which) continue;
        detail::Ctx ctx{out};
        try {
            c.run(ctx);
        } catch (const std::exception& e) {
            ++ctx.failures;
            out << "    exception: " << e.what() << "\n";
        }
        out << "criterion " << c.id << " (" << c.label << "): "
            << (ctx.failures ? "FAIL" : "PASS") << "\n";
        res.push_back({c.id, c.label, ctx.failures});
    }
    return res;
}

}  // namespace qmf::verify
