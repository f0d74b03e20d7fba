#include "qmf/classset.hpp"

#include <array>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include <json.hpp>

namespace qmf {

std::vector<std::pair<Int, Int>> admissible_splits(const Int& N) {
    if (N <= 0) throw std::domain_error("admissible_splits: N must be positive");
    std::vector<Int> odd_primes;
    for (const auto& [p, e] : factorize(N))
        if (e % 2 == 1) odd_primes.push_back(p);
    std::vector<std::pair<Int, Int>> out;
    for (unsigned long mask = 1; mask < (1ul << odd_primes.size()); ++mask) {
        if (__builtin_popcountl(mask) % 2 == 0) continue;
        Int n1 = 1;
        for (size_t i = 0; i < odd_primes.size(); ++i)
            if (mask & (1ul << i)) n1 *= odd_primes[i];
        out.push_back({n1, N / n1});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Int, Int> default_split(const Int& N) {
    auto splits = admissible_splits(N);
    if (splits.empty()) throw std::domain_error("default_split: no admissible split of N");
    const std::pair<Int, Int>* best = nullptr;
    Int best_num = 0;
    for (const auto& sp : splits) {
        Int num = eichler_mass(sp.first, sp.second).get_num();
        if (best == nullptr || num > best_num || (num == best_num && sp.first > best->first)) {
            best = &sp;
            best_num = num;
        }
    }
    return *best;
}

Rat eichler_mass(const Int& N1, const Int& N2) {
    if (N1 <= 1 || N2 <= 0) throw std::domain_error("eichler_mass: need N1 > 1, N2 > 0");
    auto fac1 = factorize(N1);
    if (fac1.size() % 2 == 0) throw std::domain_error("eichler_mass: N1 needs an odd number of primes");
    for (const auto& [p, e] : fac1)
        if (e != 1) throw std::domain_error("eichler_mass: N1 must be squarefree");
    Rat m(euler_phi(N1), 12);
    m.canonicalize();
    m *= N2;
    for (const auto& [q, e] : factorize(N2)) {
        if (N1 % q == 0) continue;
        Rat f(q + 1, q);
        f.canonicalize();
        m *= f;
    }
    return m;
}

Lattice primitive_integral(const Lattice& L) {
    return lattice_scale(L, Rat(L.den) / Rat(L.basis.content()));
}

Lattice reduce_ideal(const Lattice& I_in) {
    Lattice I = primitive_integral(I_in);
    QuatElt v = lattice_shortest_vector(I);
    QuatElt vinv = v.conj() * (Rat(1) / v.nrd());
    return primitive_integral(lattice_left_multiply(vinv, I));
}

std::vector<Lattice> neighbor_ideals(const Lattice& I_in, const Lattice& O, const Int& ell) {
    if (!is_prime(ell)) throw std::domain_error("neighbor_ideals: ell must be prime");
    if (reduced_discriminant(O) % ell == 0)
        throw std::domain_error("neighbor_ideals: ell must be coprime to the level");
    Lattice I = primitive_integral(I_in);
    Int n = lattice_norm(I).get_num();
    IntMat G = lattice_gram_numerator(I);
    auto belt = lattice_basis_elements(I);
    Lattice ellI = lattice_scale(I, Rat(ell));

    std::set<Lattice> found;
    std::array<Int, 4> c;
    // P^3(F_ell), lead coordinate normalized to 1
    for (int lead = 0; lead < 4; ++lead) {
        for (int s = 0; s < lead; ++s) c[s] = 0;
        c[lead] = 1;
        long tail = 3 - lead;
        std::vector<Int> t(tail, 0);
        for (;;) {
            for (long s = 0; s < tail; ++s) c[lead + 1 + s] = t[s];
            // x = sum c_s b_s has 2*nrd(x) = c G c^T; x generates a neighbor
            // iff nrd(x)/n vanishes mod ell (rank 1 in I/ell*I)
            Int q = 0;
            for (int s = 0; s < 4; ++s) {
                if (c[s] == 0) continue;
                for (int u = 0; u < 4; ++u) {
                    if (c[u] == 0) continue;
                    q += c[s] * c[u] * G.at(s, u);
                }
            }
            if (mod_floor(q / 2 / n, ell) == 0) {
                QuatElt x(*I.alg);
                x = belt[lead];
                for (long s = 0; s < tail; ++s)
                    if (t[s] != 0) x = x + belt[lead + 1 + s] * Rat(t[s]);
                Lattice J = lattice_sum(lattice_left_multiply(x, O), ellI);
                if (lattice_index(I, J) != ell * ell)
                    throw std::logic_error("neighbor_ideals: rank-1 coset has wrong index");
                found.insert(J);
            }
            long k = tail - 1;
            while (k >= 0 && t[k] == ell - 1) t[k--] = 0;
            if (k < 0) break;
            t[k] += 1;
        }
    }
    if (Int(found.size()) != ell + 1)
        throw std::logic_error("neighbor_ideals: expected ell + 1 neighbors");
    return std::vector<Lattice>(found.begin(), found.end());
}

bool ideals_equivalent(const Lattice& I_in, const Lattice& J_in) {
    if (I_in.alg != J_in.alg) throw std::domain_error("ideals_equivalent: different algebras");
    Lattice I = primitive_integral(I_in);
    Lattice J = primitive_integral(J_in);
    Lattice P = lattice_product(I, lattice_conjugate(J));
    Int target = 2 * lattice_norm(I).get_num() * lattice_norm(J).get_num() * P.den * P.den;
    return exists_vector_with_value(lattice_gram_numerator(P), target);
}

Rat IdealClassSet::mass() const {
    Rat m = 0;
    for (const Int& w : weights) {
        Rat t(1, w);
        t.canonicalize();
        m += t;
    }
    return m;
}

long IdealClassSet::classify(const Lattice& J) const {
    for (size_t i = 0; i < reps.size(); ++i)
        if (ideals_equivalent(reps[i], J)) return static_cast<long>(i);
    throw std::logic_error("classify: ideal matches no class representative");
}

namespace {

Int smallest_good_prime(const Int& N) {
    Int ell = 2;
    while (N % ell == 0) mpz_nextprime(ell.get_mpz_t(), ell.get_mpz_t());
    return ell;
}

void append_class(IdealClassSet& cs, const Lattice& rep) {
    cs.reps.push_back(rep);
    cs.left_orders.push_back(left_order(rep));
    cs.weights.push_back(unit_half_count(cs.left_orders.back()));
}

std::shared_ptr<IdealClassSet> build_class_set(const QuatAlg& A, const Int& N1, const Int& N2) {
    auto cs = std::make_shared<IdealClassSet>(A);
    cs->N1 = N1;
    cs->N2 = N2;
    Lattice Omax = maximal_order(cs->alg);
    cs->order = order_of_level(cs->alg, Omax, N1, N2);

    Rat target = eichler_mass(N1, N2);
    Int ell = smallest_good_prime(N1 * N2);

    append_class(*cs, reduce_ideal(cs->order));
    Rat acc(1, cs->weights[0]);
    acc.canonicalize();

    std::deque<size_t> queue = {0};
    while (acc < target && !queue.empty()) {
        size_t i = queue.front();
        queue.pop_front();
        for (const Lattice& J : neighbor_ideals(cs->reps[i], cs->order, ell)) {
            Lattice R = reduce_ideal(J);
            bool known = false;
            for (const Lattice& rep : cs->reps)
                if (ideals_equivalent(rep, R)) {
                    known = true;
                    break;
                }
            if (known) continue;
            append_class(*cs, R);
            Rat t(1, cs->weights.back());
            t.canonicalize();
            acc += t;
            queue.push_back(cs->reps.size() - 1);
            if (acc >= target) break;
        }
    }
    if (acc != target) throw std::logic_error("class set does not meet the mass formula");
    return cs;
}

nlohmann::json lattice_to_json(const Lattice& L) {
    nlohmann::json o;
    o["den"] = L.den.get_str();
    auto rows = nlohmann::json::array();
    for (long r = 0; r < 4; ++r)
        for (long c = 0; c < 4; ++c) rows.push_back(L.basis.at(r, c).get_str());
    o["basis"] = rows;
    return o;
}

Lattice lattice_from_json(const QuatAlg& A, const nlohmann::json& o) {
    IntMat rows(4, 4);
    const auto& arr = o.at("basis");
    if (arr.size() != 16) throw std::domain_error("lattice_from_json: bad basis");
    for (long r = 0; r < 4; ++r)
        for (long c = 0; c < 4; ++c) rows.at(r, c) = Int(arr.at(4 * r + c).get<std::string>());
    return lattice_from_rows(A, rows, Int(o.at("den").get<std::string>()));
}

void validate_class_set(const IdealClassSet& cs) {
    if (cs.mass() != eichler_mass(cs.N1, cs.N2))
        throw std::logic_error("class set validation: mass formula mismatch");
    if (reduced_discriminant(cs.order) != cs.N1 * cs.N2)
        throw std::logic_error("class set validation: order has wrong level");
    for (const Lattice& rep : cs.reps)
        if (!(right_order(rep) == cs.order))
            throw std::logic_error("class set validation: rep is not a right ideal of the order");
    // closure under the neighbor graph at the smallest good prime; classify
    // throws when a neighbor falls outside the listed classes
    Int ell = smallest_good_prime(cs.N1 * cs.N2);
    for (const Lattice& rep : cs.reps)
        for (const Lattice& J : neighbor_ideals(rep, cs.order, ell)) cs.classify(J);
}

}  // namespace

void save_class_set(const std::string& path, const IdealClassSet& cs) {
    nlohmann::json j;
    j["a"] = cs.alg.a.get_str();
    j["b"] = cs.alg.b.get_str();
    j["n1"] = cs.N1.get_str();
    j["n2"] = cs.N2.get_str();
    j["order"] = lattice_to_json(cs.order);
    auto reps = nlohmann::json::array();
    for (const Lattice& rep : cs.reps) reps.push_back(lattice_to_json(rep));
    j["reps"] = reps;
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream out(path);
    out << j.dump(1) << "\n";
    if (!out) throw std::runtime_error("save_class_set: write failed: " + path);
}

std::shared_ptr<const IdealClassSet> load_class_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_class_set: cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    QuatAlg A(Int(j.at("a").get<std::string>()), Int(j.at("b").get<std::string>()));
    auto cs = std::make_shared<IdealClassSet>(A);
    cs->N1 = Int(j.at("n1").get<std::string>());
    cs->N2 = Int(j.at("n2").get<std::string>());
    cs->order = lattice_from_json(cs->alg, j.at("order"));
    for (const auto& o : j.at("reps")) append_class(*cs, lattice_from_json(cs->alg, o));
    validate_class_set(*cs);
    return cs;
}

std::shared_ptr<const IdealClassSet> class_set(const Int& N1, const Int& N2,
                                               const std::string& cache_dir) {
    std::vector<Int> rams;
    for (const auto& [p, e] : factorize(N1)) {
        if (e != 1) throw std::domain_error("class_set: N1 must be squarefree");
        if (valuation(N2, p) % 2 != 0)
            throw std::domain_error("class_set: v_q(N2) must be even at q | N1");
        rams.push_back(p);
    }
    QuatAlg A = construct_ramified(rams);

    static std::mutex mtx;
    static std::map<std::array<std::string, 4>, std::shared_ptr<const IdealClassSet>> memo;
    std::array<std::string, 4> key = {A.a.get_str(), A.b.get_str(), N1.get_str(), N2.get_str()};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    std::string dir = cache_dir;
    if (dir.empty()) {
        const char* env = std::getenv("QMF_CACHE_DIR");
        if (env != nullptr) dir = env;
    }
    std::string path;
    std::shared_ptr<const IdealClassSet> cs;
    if (!dir.empty()) {
        path = dir + "/cs_" + N1.get_str() + "_" + N2.get_str() + ".json";
        try {
            auto loaded = load_class_set(path);
            if (loaded->alg.a == A.a && loaded->alg.b == A.b && loaded->N1 == N1 &&
                loaded->N2 == N2)
                cs = loaded;
        } catch (const std::exception&) {
            // stale or corrupt cache entry: rebuild below
        }
    }
    if (!cs) {
        cs = build_class_set(A, N1, N2);
        if (!path.empty()) save_class_set(path, *cs);
    }
    std::lock_guard<std::mutex> lock(mtx);
    return memo.emplace(key, cs).first->second;
}

}  // namespace qmf
