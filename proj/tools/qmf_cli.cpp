// Command line front end. Every command prints one JSON document to
// standard output (or --output), with all integers as decimal strings so
// values never silently truncate; scan prints one JSON record per line.
// Exit codes: 0 success, 1 a requested verification failed, 2 bad usage or
// an infeasible configuration (reported as {"error": ...}, not a crash).

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmf/verify.hpp"

using namespace qmf;
using Json = nlohmann::ordered_json;

namespace {

std::string s(const Int& n) { return n.get_str(); }
std::string s(const Rat& q) { return q.get_str(); }

Int parse_int(const std::string& text, const std::string& what) {
    try {
        return Int(text);
    } catch (const std::invalid_argument&) {
        throw std::domain_error(what + " is not an integer: " + text);
    }
}

Json vec_json(const std::vector<Int>& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(s(x));
    return a;
}

Json mat_json(const IntMat& m) {
    Json a = Json::array();
    for (long i = 0; i < m.rows(); ++i) a.push_back(vec_json(m.row(i)));
    return a;
}

Json lattice_json(const Lattice& L) {
    Json o;
    o["den"] = s(L.den);
    o["basis"] = mat_json(L.basis);
    return o;
}

// Rational values print bare; genuine cyclotomic integers carry their
// conductor and power basis coordinates plus a readable form.
Json cyc_json(const CycInt& x) {
    if (x.is_rational()) return s(x.rational_value());
    Json o;
    o["conductor"] = static_cast<long>(x.conductor());
    o["coeffs"] = vec_json(x.coeffs());
    o["str"] = x.str();
    return o;
}

struct Config {
    std::string cache_dir;
    std::string output;
};

int emit(const Config& cfg, const Json& doc, int code, bool compact = false) {
    std::string text = compact ? doc.dump() : doc.dump(2);
    text += '\n';
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "cannot open output file: " << cfg.output << "\n";
            return 2;
        }
        f << text;
    }
    return code;
}

struct LevelData {
    Int N, N1, N2;
};

// Validate the level and pick the split: the given one if admissible, else
// the default (the admissible split maximizing the mass numerator).
LevelData resolve_split(const std::string& level, const std::string& split) {
    Int N = parse_int(level, "--level");
    if (N < 2) throw std::domain_error("level must be at least 2");
    auto splits = admissible_splits(N);
    if (splits.empty()) throw std::domain_error("no admissible split of level " + s(N));
    Int N1, N2;
    if (split.empty()) {
        std::tie(N1, N2) = default_split(N);
    } else {
        auto comma = split.find(',');
        if (comma == std::string::npos)
            throw std::domain_error("--split expects the form N1,N2");
        N1 = parse_int(split.substr(0, comma), "--split");
        N2 = parse_int(split.substr(comma + 1), "--split");
        bool ok = false;
        for (const auto& [a, b] : splits) ok = ok || (a == N1 && b == N2);
        if (!ok)
            throw std::domain_error("(" + s(N1) + "," + s(N2) +
                                    ") is not an admissible split of " + s(N));
    }
    return {N, N1, N2};
}

Json header(const char* cmd, const LevelData& ld) {
    Json doc;
    doc["command"] = cmd;
    doc["level"] = s(ld.N);
    doc["split"] = Json::array({s(ld.N1), s(ld.N2)});
    return doc;
}

std::vector<Int> primes_coprime_up_to(const Int& N, const Int& bound) {
    std::vector<Int> out;
    for (Int p = 2; p <= bound; mpz_nextprime(p.get_mpz_t(), p.get_mpz_t()))
        if (N % p != 0) out.push_back(p);
    return out;
}

int cmd_mass(const Config& cfg, const std::string& level, const std::string& split) {
    LevelData ld = resolve_split(level, split);
    Rat m = eichler_mass(ld.N1, ld.N2);
    Json doc = header("mass", ld);
    doc["mass"] = s(m);
    doc["numerator"] = s(Int(m.get_num()));
    doc["denominator"] = s(Int(m.get_den()));
    return emit(cfg, doc, 0);
}

int cmd_classes(const Config& cfg, const std::string& level, const std::string& split) {
    LevelData ld = resolve_split(level, split);
    auto cs = class_set(ld.N1, ld.N2, cfg.cache_dir);
    Json doc = header("classes", ld);
    doc["algebra"] = {{"a", s(cs->alg.a)},
                      {"b", s(cs->alg.b)},
                      {"ramified", vec_json(cs->alg.ramified)}};
    doc["class_number"] = s(Int(cs->size()));
    doc["mass"] = s(cs->mass());
    doc["weights"] = vec_json(cs->weights);
    doc["order"] = lattice_json(cs->order);
    Json reps = Json::array();
    for (const Lattice& I : cs->reps) {
        Json o = lattice_json(I);
        o["norm"] = s(lattice_norm(I));
        reps.push_back(o);
    }
    doc["representatives"] = reps;
    return emit(cfg, doc, 0);
}

int cmd_brandt(const Config& cfg, const std::string& level, const std::string& split,
               const std::string& ell_str, long ell_max) {
    LevelData ld = resolve_split(level, split);
    auto cs = class_set(ld.N1, ld.N2, cfg.cache_dir);
    Json doc = header("brandt", ld);
    doc["class_number"] = s(Int(cs->size()));
    if (!ell_str.empty()) {
        Int ell = parse_int(ell_str, "--ell");
        if (!is_prime(ell)) throw std::domain_error("--ell must be prime");
        if (ld.N % ell == 0)
            throw std::domain_error("--ell must be coprime to the level");
        doc["ell"] = s(ell);
        doc["matrix"] = mat_json(brandt_matrix(*cs, ell));
    } else {
        doc["ell_max"] = ell_max;
        Json ms = Json::array();
        for (const Int& ell : primes_coprime_up_to(ld.N, ell_max)) {
            Json rec;
            rec["ell"] = s(ell);
            rec["matrix"] = mat_json(brandt_matrix(*cs, ell));
            ms.push_back(rec);
        }
        doc["matrices"] = ms;
    }
    return emit(cfg, doc, 0);
}

// p-part of a rational: true iff v_p(q) >= 1.
bool vanishes_mod(const Rat& q, const Int& p) {
    return mod_floor(q.get_num(), p) == 0 && mod_floor(q.get_den(), p) != 0;
}

Json congruence_record(const IdealClassSet& cs, const Int& p, unsigned long r,
                       const Int& ell_max, const Int& n_max, bool& certified) {
    Json rec;
    rec["p"] = s(p);
    rec["r"] = static_cast<long>(r);
    auto lift = eisenstein_cusp_lift(cs, p, r);
    rec["cusp_lift"] = lift ? vec_json(*lift) : Json();
    auto wit = eisenstein_eigenclass_mod(cs, p, r, ell_max);
    rec["eigenclass"] = wit ? vec_json(*wit) : Json();
    rec["certified"] = lift.has_value() && wit.has_value();
    certified = certified && lift.has_value() && wit.has_value();

    // Coefficientwise refinement on any exact eigen line realizing the
    // congruence; null when no block acts by scalars.
    Json fourier;
    auto blocks = eigen_blocks(cs, ell_max);
    for (size_t k = 0; k < blocks.size(); ++k) {
        try {
            if (fourier_eisenstein_congruence(cs, blocks[k], p, r, n_max)) {
                fourier = Json{{"block", static_cast<long>(k)}, {"n_max", s(n_max)}};
                break;
            }
        } catch (const std::domain_error&) {
            // block not scalar; skip
        }
    }
    rec["fourier"] = fourier;
    rec["constant_term_vanishes"] = vanishes_mod(eisenstein_constant_term(cs.N1 * cs.N2), p);
    return rec;
}

int cmd_congruence(const Config& cfg, const std::string& level, const std::string& split,
                   const std::string& p_str, unsigned long r, long ell_max, long n_max) {
    LevelData ld = resolve_split(level, split);
    auto cs = class_set(ld.N1, ld.N2, cfg.cache_dir);
    Rat m = cs->mass();
    Json doc = header("congruence", ld);
    doc["mass"] = s(m);
    doc["numerator"] = s(Int(m.get_num()));
    doc["constant_term"] = s(eisenstein_constant_term(ld.N));

    std::vector<Int> targets;
    if (!p_str.empty()) {
        Int p = parse_int(p_str, "--p");
        if (!is_prime(p)) throw std::domain_error("--p must be prime");
        targets.push_back(p);
    } else {
        for (const auto& [p, e] : factorize(m.get_num())) {
            (void)e;
            targets.push_back(p);
        }
    }
    bool certified = true;
    Json recs = Json::array();
    for (const Int& p : targets)
        recs.push_back(congruence_record(*cs, p, r, ell_max, n_max, certified));
    doc["primes"] = recs;
    doc["certified"] = certified;
    return emit(cfg, doc, certified ? 0 : 1);
}

// The canonical cuspidal vector: generator of the rank 1 cusp lattice,
// oriented positive on the first class of largest weight.
std::vector<Int> cusp_generator(const IdealClassSet& cs) {
    IntMat C = cusp_lattice(cs);
    if (C.rows() != 1)
        throw std::domain_error("no canonical cuspidal eigenvector: cusp rank is " +
                                std::to_string(C.rows()));
    std::vector<Int> g = C.row(0);
    size_t anchor = 0;
    for (size_t i = 1; i < g.size(); ++i)
        if (cs.weights[i] > cs.weights[anchor]) anchor = i;
    if (g[anchor] == 0)
        for (size_t i = 0; i < g.size(); ++i)
            if (g[i] != 0) {
                anchor = i;
                break;
            }
    if (g[anchor] < 0)
        for (Int& y : g) y = -y;
    return g;
}

int cmd_lvalue(const Config& cfg, const std::string& level, const std::string& split,
               const std::string& disc_str, long char_idx, const std::string& p_str,
               unsigned long r) {
    LevelData ld = resolve_split(level, split);
    auto cs = class_set(ld.N1, ld.N2, cfg.cache_dir);
    std::vector<Int> g = cusp_generator(*cs);
    Int D = parse_int(disc_str, "--disc");

    Embedding emb = optimal_embedding(*cs, D);
    QuadClassGroup G = class_group(D);
    ClassMap cmap = class_map(*cs, emb, G);
    auto chars = all_characters(G);

    Json doc = header("lvalue", ld);
    doc["disc"] = s(D);
    doc["class_number"] = s(Int(G.forms.size()));
    doc["cusp_vector"] = vec_json(g);
    doc["fibers"] = vec_json(cmap.fibers);

    if (char_idx >= 0) {
        if (char_idx >= static_cast<long>(chars.size()))
            throw std::domain_error("--char out of range: the class group has " +
                                    std::to_string(chars.size()) + " characters");
        const QuadCharacter& chi = chars[char_idx];
        doc["char"] = char_idx;
        doc["char_order"] = s(Int(chi.order()));
        doc["period"] = cyc_json(period(g, chi, cmap));
        doc["Lalg"] = cyc_json(algebraic_lvalue(g, chi, cmap));
    } else {
        Json vals = Json::array();
        for (size_t k = 0; k < chars.size(); ++k) {
            Json rec;
            rec["char"] = static_cast<long>(k);
            rec["char_order"] = s(Int(chars[k].order()));
            rec["period"] = cyc_json(period(g, chars[k], cmap));
            rec["Lalg"] = cyc_json(algebraic_lvalue(g, chars[k], cmap));
            vals.push_back(rec);
        }
        doc["values"] = vals;
    }

    int code = 0;
    if (!p_str.empty()) {
        Int p = parse_int(p_str, "--p");
        if (!is_prime(p)) throw std::domain_error("--p must be prime");
        LValueCheck res = check_lvalue_congruences(*cs, g, p, r, D);
        Json cong;
        cong["p"] = s(p);
        cong["r"] = static_cast<long>(r);
        cong["c"] = s(res.c);
        cong["h"] = s(res.h);
        cong["trivial_Lalg"] = s(res.trivial_value);
        cong["trivial_ok"] = res.trivial_ok;
        cong["nontrivial_ok"] = res.nontrivial_ok;
        doc["congruence"] = cong;
        code = res.ok() ? 0 : 1;
    }
    return emit(cfg, doc, code);
}

int cmd_scan(const Config& cfg, const std::string& min_str, const std::string& max_str,
             const std::string& p_str, long ell_max, unsigned jobs) {
    Int lo = parse_int(min_str, "--level-min");
    Int hi = parse_int(max_str, "--level-max");
    if (lo < 2) lo = 2;
    std::optional<Int> only_p;
    if (!p_str.empty()) {
        Int p = parse_int(p_str, "--p");
        if (!is_prime(p)) throw std::domain_error("--p must be prime");
        only_p = p;
    }

    std::vector<Int> levels;
    for (Int N = lo; N <= hi; ++N)
        if (!is_square(N)) levels.push_back(N);

    // One output line per (level, split), produced in parallel but emitted
    // in level order so the stream is stable under range extension.
    std::vector<std::string> chunks(levels.size());
    std::atomic<bool> all_ok{true};
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t k = next.fetch_add(1);
            if (k >= levels.size()) return;
            const Int& N = levels[k];
            std::ostringstream os;
            for (const auto& [N1, N2] : admissible_splits(N)) {
                auto cs = class_set(N1, N2, cfg.cache_dir);
                Rat m = cs->mass();
                Json rec;
                rec["level"] = s(N);
                rec["split"] = Json::array({s(N1), s(N2)});
                rec["class_number"] = s(Int(cs->size()));
                rec["mass"] = s(m);
                bool ok = true;
                Json cl = Json::array();
                for (const auto& [p, e] : factorize(m.get_num())) {
                    (void)e;
                    if (only_p && p != *only_p) continue;
                    bool lift = eisenstein_cusp_lift(*cs, p, 1).has_value();
                    bool wit = eisenstein_eigenclass_mod(*cs, p, 1, ell_max).has_value();
                    cl.push_back(Json{{"p", s(p)}, {"cusp_lift", lift}, {"eigenclass", wit}});
                    ok = ok && lift && wit;
                }
                rec["congruences"] = cl;
                rec["certified"] = ok;
                if (!ok) all_ok = false;
                os << rec.dump() << "\n";
            }
            chunks[k] = os.str();
        }
    };
    if (jobs < 1) jobs = 1;
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::string text;
    for (const std::string& c : chunks) text += c;
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            std::cerr << "cannot open output file: " << cfg.output << "\n";
            return 2;
        }
        f << text;
    }
    return all_ok ? 0 : 1;
}

int cmd_verify_paper(const Config& cfg, long which) {
    if (which < 0 || which > 12) throw std::domain_error("--criterion must be 1..12");
    auto outcomes = qmf::verify::run(static_cast<int>(which), std::cerr);
    bool pass = true;
    Json list = Json::array();
    for (const auto& o : outcomes) {
        list.push_back(Json{{"id", o.id}, {"label", o.label}, {"pass", o.failures == 0}});
        pass = pass && o.failures == 0;
    }
    Json doc;
    doc["command"] = "verify-paper";
    doc["criteria"] = list;
    doc["pass"] = pass;
    return emit(cfg, doc, pass ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact arithmetic for definite quaternion algebras: ideal classes, "
        "Brandt matrices, Eisenstein congruences, and central value "
        "certificates."};
    app.require_subcommand(1);

    Config cfg;
    const char* env_cache = std::getenv("QMF_CACHE_DIR");
    cfg.cache_dir = env_cache ? env_cache : "";
    app.add_option("--cache-dir", cfg.cache_dir,
                   "Class set cache directory (default: $QMF_CACHE_DIR)");
    app.add_option("-o,--output", cfg.output, "Write output here instead of stdout");

    std::string level, split, ell, p, disc;
    std::string level_min = "2", level_max;
    unsigned long r = 1;
    long ell_max = 50, n_max = 200, char_idx = -1, criterion = 0;
    unsigned jobs = 1;

    auto add_level = [&](CLI::App* c) {
        c->fallthrough();
        c->add_option("--level", level, "Level N")->required();
        c->add_option("--split", split, "Split N1,N2 (default maximizes the mass numerator)");
    };

    CLI::App* c_mass = app.add_subcommand("mass", "Mass of an ideal class set");
    add_level(c_mass);

    CLI::App* c_classes = app.add_subcommand("classes", "Enumerate ideal class representatives");
    add_level(c_classes);

    CLI::App* c_brandt = app.add_subcommand("brandt", "Brandt matrices");
    add_level(c_brandt);
    c_brandt->add_option("--ell", ell, "Single prime ell coprime to the level");
    c_brandt->add_option("--ell-max", ell_max, "Emit all good primes up to this bound");

    CLI::App* c_cong = app.add_subcommand("congruence", "Eisenstein congruence certificates");
    add_level(c_cong);
    c_cong->add_option("--p", p, "Congruence prime (default: all primes dividing the mass numerator)");
    c_cong->add_option("--r", r, "Prime power exponent");
    c_cong->add_option("--ell-max", ell_max, "Hecke primes used in the eigenclass search");
    c_cong->add_option("--n-max", n_max, "Coefficient bound for the q-expansion comparison");

    CLI::App* c_lv = app.add_subcommand("lvalue", "Toric periods and algebraic central values");
    add_level(c_lv);
    c_lv->add_option("--disc", disc, "Negative fundamental discriminant, inert at the level")
        ->required();
    c_lv->add_option("--char", char_idx, "Class character index (default: all)");
    c_lv->add_option("--p", p, "Also check the central value congruences at this prime");
    c_lv->add_option("--r", r, "Prime power exponent");

    CLI::App* c_scan = app.add_subcommand("scan", "Congruence survey over a level range");
    c_scan->fallthrough();
    c_scan->add_option("--level-min", level_min, "First level");
    c_scan->add_option("--level-max", level_max, "Last level")->required();
    c_scan->add_option("--p", p, "Restrict to one congruence prime");
    c_scan->add_option("--ell-max", ell_max, "Hecke primes used in the eigenclass search");
    c_scan->add_option("-j,--jobs", jobs, "Worker threads");

    CLI::App* c_verify = app.add_subcommand("verify-paper", "Run the built-in verification suite");
    c_verify->fallthrough();
    c_verify->add_option("--criterion", criterion, "Run a single criterion (1..12)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_mass) return cmd_mass(cfg, level, split);
        if (*c_classes) return cmd_classes(cfg, level, split);
        if (*c_brandt) return cmd_brandt(cfg, level, split, ell, ell_max);
        if (*c_cong) return cmd_congruence(cfg, level, split, p, r, ell_max, n_max);
        if (*c_lv) return cmd_lvalue(cfg, level, split, disc, char_idx, p, r);
        if (*c_scan) return cmd_scan(cfg, level_min, level_max, p, ell_max, jobs);
        if (*c_verify) return cmd_verify_paper(cfg, criterion);
    } catch (const std::exception& e) {
        Json doc;
        doc["error"] = e.what();
        emit(cfg, doc, 0);
        return 2;
    }
    return 2;
}
