#include "rlam/suites.hpp"

#include "rlam/classical.hpp"
#include "rlam/opsim.hpp"
#include "rlam/qmatrix.hpp"
#include "rlam/qseries.hpp"
#include "rlam/qtorus.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace rlam {

namespace {

using nlohmann::json;

const ExMat kA2{{0, 1}, {-1, 0}};
const ExMat kTorus{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};
const ExMat kPath3{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};

int draw(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<std::vector<int>> rows_of(const ExMat& e) { return e.rows(); }

// Involution at every k, pentagon on every |ε_ij| = 1 pair, square on every ε_ij = 0 pair.
struct ExmatTally {
    long involution = 0, pentagon = 0, square = 0;
    long bad_involution = 0, bad_pentagon = 0, bad_square = 0;

    void run(const ExMat& e) {
        const int n = e.rank();
        for (int k = 0; k < n; ++k) {
            ++involution;
            if (!(mutate_exmat(mutate_exmat(e, k), k) == e)) ++bad_involution;
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (std::abs(e(i, j)) == 1) {
                    ExMat f = e;
                    for (int k : {i, j, i, j, i}) f = mutate_exmat(f, k);
                    ++pentagon;
                    if (!(permute_exmat(f, perm_transposition(n, i, j)) == e)) ++bad_pentagon;
                } else if (e(i, j) == 0) {
                    ExMat f = e;
                    for (int k : {i, j, i, j}) f = mutate_exmat(f, k);
                    ++square;
                    if (!(f == e)) ++bad_square;
                }
            }
    }
};

bool equal_up_to_relabeling(const ExMat& a, const ExMat& b) {
    if (a.rank() != b.rank()) return false;
    Permutation p = perm_identity(a.rank());
    do {
        if (permute_exmat(a, p) == b) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Random flip sequences from t; exmat_from_tri must follow mutate_exmat and
// every puncture vector must stay in the kernel.
void flip_coherence(const Tri& start, int count, std::mt19937_64& rng, long& steps, long& bad) {
    for (int trial = 0; trial < count; ++trial) {
        Tri t = start;
        ExMat e = exmat_from_tri(t);
        const int len = draw(rng, 1, 20);
        for (int s = 0; s < len; ++s) {
            std::vector<int> ok;
            for (int k = 0; k < t.arc_count(); ++k)
                if (flippable(t, k)) ok.push_back(k);
            if (ok.empty()) break;
            const int k = ok[draw(rng, 0, static_cast<int>(ok.size()) - 1)];
            t = flip_tri(t, k);
            e = mutate_exmat(e, k);
            ++steps;
            bool good = exmat_from_tri(t) == e;
            for (const auto& v : theta_from_punctures(t)) good = good && in_kernel(e, v.coefficients);
            if (!good) ++bad;
        }
    }
}

std::optional<Seed> load_seed(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw UsageError("seed_file: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("seed_file: '" + path + "' is not valid JSON: " + e.what());
    }
    return seed_from_json(j);
}

std::optional<Tri> load_tri(const std::string& path) {
    if (path.empty()) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw UsageError("tri_file: cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("tri_file: '" + path + "' is not valid JSON: " + e.what());
    }
    return tri_from_json(j);
}

Report filter(const Report& r, const std::function<bool(const CheckRecord&)>& keep) {
    Report out;
    for (const auto& x : r.records)
        if (keep(x)) out.add(x);
    return out;
}

} // namespace

// ---- configuration ------------------------------------------------------------

namespace {

template <class T>
T get_as(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw UsageError("config: field '" + key + "' has the wrong type");
    }
}

} // namespace

SuiteConfig config_from_json(const json& j) {
    if (!j.is_object()) throw UsageError("config: expected a JSON object");
    SuiteConfig c;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        const json& v = it.value();
        if (k == "suites") {
            if (v.is_string()) c.suites = {v.get<std::string>()};
            else c.suites = get_as<std::vector<std::string>>(v, k);
        } else if (k == "lambda") {
            if (v.is_null()) c.lambda.reset();
            else c.lambda = get_as<int>(v, k);
        } else if (k == "hbars") c.hbars = get_as<std::vector<double>>(v, k);
        else if (k == "n1d") c.n1d = get_as<int>(v, k);
        else if (k == "L1d") c.L1d = get_as<double>(v, k);
        else if (k == "n2d") c.n2d = get_as<int>(v, k);
        else if (k == "L2d") c.L2d = get_as<double>(v, k);
        else if (k == "n2d_plus") c.n2d_plus = get_as<int>(v, k);
        else if (k == "series_order") c.series_order = get_as<int>(v, k);
        else if (k == "path_depth") c.path_depth = get_as<int>(v, k);
        else if (k == "seed") c.seed = get_as<std::uint64_t>(v, k);
        else if (k == "seed_file") c.seed_file = get_as<std::string>(v, k);
        else if (k == "tri_file") c.tri_file = get_as<std::string>(v, k);
        else if (k == "report") c.report = get_as<std::string>(v, k);
        else if (k == "summary") c.summary = get_as<std::string>(v, k);
        else if (k == "workers") c.workers = get_as<int>(v, k);
        else if (k == "timings") c.timings = get_as<bool>(v, k);
        else throw UsageError("config: unknown key '" + k + "'");
    }
    validate(c);
    return c;
}

json to_json(const SuiteConfig& c) {
    return {{"suites", c.suites},
            {"lambda", c.lambda ? json(*c.lambda) : json(nullptr)},
            {"hbars", c.hbars},
            {"n1d", c.n1d},
            {"L1d", c.L1d},
            {"n2d", c.n2d},
            {"L2d", c.L2d},
            {"n2d_plus", c.n2d_plus},
            {"series_order", c.series_order},
            {"path_depth", c.path_depth},
            {"seed", c.seed},
            {"seed_file", c.seed_file},
            {"tri_file", c.tri_file},
            {"report", c.report},
            {"summary", c.summary},
            {"workers", c.workers},
            {"timings", c.timings}};
}

void validate(const SuiteConfig& c) {
    resolve_suites(c.suites);
    if (c.lambda && (*c.lambda < -1 || *c.lambda > 1)) throw UsageError("config: 'lambda' must be -1, 0 or 1");
    if (c.hbars.empty()) throw UsageError("config: 'hbars' must not be empty");
    for (double h : c.hbars)
        if (!(h >= 0.2 && h <= 2)) throw UsageError("config: 'hbars' entries must lie in [0.2, 2]");
    auto grid = [](int n, const char* key) {
        if (n < 16 || n > (1 << 16) || n % 2) throw UsageError(std::string("config: '") + key + "' must be even, in [16, 65536]");
    };
    grid(c.n1d, "n1d");
    grid(c.n2d, "n2d");
    grid(c.n2d_plus, "n2d_plus");
    if (c.n2d > 4096 || c.n2d_plus > 4096) throw UsageError("config: 2D grids are limited to 4096 points per axis");
    if (!(c.L1d > 0) || !(c.L2d > 0)) throw UsageError("config: box lengths 'L1d' and 'L2d' must be positive");
    if (c.series_order < 1 || c.series_order > 12) throw UsageError("config: 'series_order' must lie in [1, 12]");
    if (c.path_depth < 0 || c.path_depth > 6) throw UsageError("config: 'path_depth' must lie in [0, 6]");
    if (c.workers < 0) throw UsageError("config: 'workers' must be >= 0");
}

void apply_env(SuiteConfig& c) {
    const char* w = std::getenv("CLUSTER_LAMBDA_WORKERS");
    if (!w || !*w) return;
    char* end = nullptr;
    long v = std::strtol(w, &end, 10);
    if (*end || v < 0 || v > 1024) throw UsageError(std::string("CLUSTER_LAMBDA_WORKERS: expected a count, got '") + w + "'");
    c.workers = static_cast<int>(v);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"exmat",  "triangulation", "classical", "quantum",    "qdilog",
                                                "flambda", "pentagon",      "kprime",    "constraint"};
    return names;
}

std::vector<std::string> resolve_suites(const std::vector<std::string>& names) {
    const auto& all = suite_names();
    std::vector<bool> on(all.size(), false);
    for (const auto& n : names) {
        if (n == "all") {
            std::fill(on.begin(), on.end(), true);
            continue;
        }
        auto it = std::find(all.begin(), all.end(), n);
        if (it == all.end()) throw UsageError("config: unknown suite '" + n + "'");
        on[it - all.begin()] = true;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (on[i]) out.push_back(all[i]);
    return out;
}

// ---- suites -----------------------------------------------------------------

Report exmat_suite(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ExmatTally random, fixed;
    for (int t = 0; t < count; ++t) random.run(random_exmat(draw(rng, 1, 6), 3, rng));
    for (int s : {1, -1}) fixed.run(ExMat{{0, s}, {-s, 0}});
    json d{{"seeds", count}, {"involutions", random.involution}, {"pentagons", random.pentagon}, {"squares", random.square}};
    Report rep;
    rep.add(make_record("mutation is an involution on " + std::to_string(count) + " random seeds", "R1",
                        static_cast<double>(random.bad_involution), 0, d));
    rep.add(make_record("pentagon on every |eps_ij| = 1 pair", "R3", static_cast<double>(random.bad_pentagon), 0, d));
    rep.add(make_record("square on every eps_ij = 0 pair", "R2", static_cast<double>(random.bad_square), 0, d));
    rep.add(make_record("pentagon and involution for eps_12 = +-1", "R3",
                        static_cast<double>(fixed.bad_pentagon + fixed.bad_involution), 0,
                        {{"pentagons", fixed.pentagon}}));
    return rep;
}

Report triangulation_suite(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Report rep;
    for (const auto& [name, tri] : std::vector<std::pair<std::string, Tri>>{{"punctured torus", punctured_torus()},
                                                                            {"four-punctured sphere", four_punctured_sphere()}}) {
        long steps = 0, bad = 0;
        flip_coherence(tri, count, rng, steps, bad);
        rep.add(make_record("flips follow mutation on the " + name, "flip coherence", static_cast<double>(bad), 0,
                            {{"sequences", count}, {"flips", steps}}));
    }
    const ExMat et = exmat_from_tri(punctured_torus());
    rep.add(make_record("punctured torus exchange matrix up to relabeling", "punctured torus",
                        equal_up_to_relabeling(et, kTorus) ? 0 : 1, 0, {{"epsilon", rows_of(et)}}));
    auto th = theta_from_punctures(punctured_torus());
    const std::vector<long> want{2, 2, 2};
    bool ok = in_kernel(et, want) && th.size() == 1 && th[0].coefficients == want;
    rep.add(make_record("theta = (2,2,2) spans the puncture constraint and lies in ker eps", "punctured torus",
                        ok ? 0 : 1, 0));
    return rep;
}

Report classical_suite(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Report rep;
    long rel_checked = 0, rel_bad = 0;
    auto relation = [&](const ExMat& e, const std::vector<Move>& word) {
        ++rel_checked;
        if (!is_identity(pullback_along(Seed(e), word))) ++rel_bad;
    };
    for (int s : {1, -1}) relation(ExMat{{0, s}, {-s, 0}}, relation_word("pentagon", ExMat{{0, s}, {-s, 0}}));
    relation(kPath3, relation_word("quadrilateral", kPath3));
    relation(kTorus, relation_word("involution", kTorus));
    relation(kTorus, relation_word("permutation", kTorus));
    relation(kTorus, relation_word("relabel", kTorus));
    for (int t = 0; t < count; ++t) {
        const int n = draw(rng, 2, 4);
        ExMat e = random_exmat(n, 2, rng);
        const int i = draw(rng, 0, n - 1);
        relation(e, {Mutation{i}, Mutation{i}});
        int j = draw(rng, 0, n - 2);
        if (j >= i) ++j;
        if (std::abs(e(i, j)) == 1)
            relation(e, {Mutation{i}, Mutation{j}, Mutation{i}, Mutation{j}, Mutation{i}, Relabel{perm_transposition(n, i, j)}});
        else if (e(i, j) == 0)
            relation(e, {Mutation{i}, Mutation{j}, Mutation{i}, Mutation{j}});
        Permutation s1 = perm_identity(n), s2 = perm_identity(n);
        std::shuffle(s1.begin(), s1.end(), rng);
        std::shuffle(s2.begin(), s2.end(), rng);
        relation(e, {Relabel{s2}, Relabel{s1}, Relabel{perm_inverse(perm_compose(s1, s2))}});
        relation(e, {Relabel{perm_inverse(s1)}, Mutation{i}, Relabel{s1}, Mutation{s1[i]}});
    }
    rep.add(make_record("relation composites are identity pullbacks", "R1-R5", static_cast<double>(rel_bad), 0,
                        {{"composites", rel_checked}}));

    long poisson_bad = 0;
    for (int t = 0; t < count; ++t) {
        const int n = draw(rng, 1, 4);
        Seed s(random_exmat(n, 2, rng));
        if (!check_poisson_compat(s, draw(rng, 0, n - 1)).pass) ++poisson_bad;
    }
    rep.add(make_record("mutation is Poisson on " + std::to_string(count) + " random seeds", "Poisson compatibility",
                        static_cast<double>(poisson_bad), 0));

    PullbackMap wrong = classical_mutation(Seed(kTorus), 0);
    wrong.target.exmat = kTorus;
    rep.add(make_lower_record("Poisson check rejects an unmutated target matrix", "Poisson compatibility",
                              check_poisson_compat(wrong).pass ? 0 : 1, 1));
    return rep;
}

Report quantum_suite(int order, int depth, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Report rep;

    std::vector<ExMat> seeds{kA2, ExMat{{0, -1}, {1, 0}}, ExMat{{0, 2}, {-2, 0}}, kTorus, kPath3};
    for (int t = 0; t < 3; ++t) seeds.push_back(random_exmat(3, 1, rng));
    long checked = 0, bad = 0;
    for (const auto& e : seeds) {
        int max_depth = depth;
        for (int i = 0; i < e.rank(); ++i)
            for (int j = 0; j < e.rank(); ++j)
                if (e.rank() > 2 && std::abs(e(i, j)) > 1) max_depth = std::min(depth, 4);
        struct Node {
            QMap q;
            PullbackMap p;
            Seed seed;
            int depth;
        };
        Seed s(e);
        std::vector<Node> stack{{q_identity(plain_context(e)), identity_pullback(s), s, 0}};
        while (!stack.empty()) {
            Node nd = std::move(stack.back());
            stack.pop_back();
            for (int i = 0; i < e.rank(); ++i) {
                ++checked;
                if (!(classical_limit(nd.q.images[i]) == nd.p.images[i])) ++bad;
            }
            if (nd.depth == max_depth) continue;
            for (int k = 0; k < e.rank(); ++k)
                stack.push_back({q_compose(nd.q, quantum_mutation(nd.seed, k)),
                                 compose_pullbacks(nd.p, classical_mutation(nd.seed, k)), nd.seed.apply(Mutation{k}),
                                 nd.depth + 1});
        }
    }
    rep.add(make_record("classical limit of quantum composites along mutation paths", "q -> 1 limit",
                        static_cast<double>(bad), 0, {{"generator_checks", checked}, {"depth", depth}}));

    SeriesReport pent = verify_psi_pentagon(order);
    rep.add(make_record("psi pentagon in Q(q) to order " + std::to_string(order), "psi pentagon",
                        pent.pass ? 0 : 1, 0, to_json(pent)));
    long sharp_bad = 0;
    for (int e = -2; e <= 2; ++e)
        if (!verify_sharp_is_psi_conjugation(Seed(ExMat{{0, e}, {-e, 0}}), 1, order).pass) ++sharp_bad;
    rep.add(make_record("automorphism part is psi conjugation, eps_ik in -2..2", "psi conjugation",
                        static_cast<double>(sharp_bad), 0, {{"order", order}}));

    struct Case {
        ExMat e;
        std::string rel;
        std::vector<int> Ns;
    };
    const ExMat rank3{{0, 1, -1}, {-1, 0, 2}, {1, -2, 0}};
    const std::vector<Case> cases{{kA2, "involution", {5, 7, 9}},   {kPath3, "quadrilateral", {5, 7, 9}},
                                  {kA2, "pentagon", {5, 7, 11}},    {rank3, "permutation", {5, 7, 9}},
                                  {rank3, "relabel", {5, 7, 9}}};
    for (std::size_t r = 0; r < cases.size(); ++r) {
        const auto& cs = cases[r];
        RelationReport m = verify_relation_numeric(cs.e, relation_word(cs.rel, cs.e), cs.Ns, 1e-8);
        rep.add(make_record("matrix model R" + std::to_string(r + 1) + " (" + cs.rel + ")", "R" + std::to_string(r + 1),
                            m.pass ? m.max_deviation : std::max(m.max_deviation, 1.0), 1e-8, to_json(m)));
    }
    return rep;
}

Report qdilog_acceptance_suite() {
    Report rep;
    for (cplx h : {cplx(0.5), cplx(1.0), cplx(0, 0.5), cplx(0, 1), cplx(0, 2)}) rep.merge(qdilog_suite(h));
    rep.merge(f0_suite());
    return rep;
}

Report flambda_suite(const std::vector<double>& hbars, std::optional<int> lambda) {
    Report r = f_lambda_suite(hbars);
    if (!lambda) return r;
    const std::string tag = "lambda=" + std::to_string(*lambda) + " ";
    return filter(r, [&](const CheckRecord& x) { return x.name.find(tag) != std::string::npos; });
}

Report pentagon_suite(const SuiteConfig& c) {
    Report rep;
    auto want = [&](int l) { return !c.lambda || *c.lambda == l; };
    if (want(0)) rep.merge(pentagon_f0_substitution(c.n2d, c.L2d));
    if (want(-1))
        for (double h : c.hbars) {
            PentagonParams p{h, c.n1d, c.L1d, c.workers};
            rep.merge(verify_pentagon_lambda_minus1(p));
        }
    if (want(1)) {
        PentagonParams p{1.0, c.n2d_plus, c.L2d, c.workers};
        rep.merge(verify_pentagon_lambda_plus1(p));
    }
    return rep;
}

Report kprime_acceptance_suite(int count, std::uint64_t seed) {
    Report rep = heisenberg_suite(count, seed);
    rep.merge(kprime_suite(count, 6, seed));
    return rep;
}

Report constraint_suite(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    long vectors = 0, bad = 0;
    auto check = [&](const std::vector<long>& th, const ExMat& e) {
        ++vectors;
        for (const auto& b : constraint_brackets(th, e))
            if (!b.coeff.is_zero()) {
                ++bad;
                break;
            }
    };
    for (int t = 0; t < count; ++t) {
        ExMat e = random_exmat(draw(rng, 1, 5), 3, rng);
        for (const auto& th : kernel_vectors(e)) check(th.coefficients, e);
    }
    for (const Tri& t : {punctured_torus(), four_punctured_sphere()}) {
        ExMat e = exmat_from_tri(t);
        for (const auto& th : theta_from_punctures(t)) check(th.coefficients, e);
        for (const auto& th : kernel_vectors(e)) check(th.coefficients, e);
    }
    Report rep;
    rep.add(make_record("Z^theta Poisson-commutes with every Z_i", "Poisson kernel", static_cast<double>(bad), 0,
                        {{"kernel_vectors", vectors}}));
    long nonzero = 0;
    for (const auto& b : constraint_brackets({1, 0, 0}, kTorus))
        if (!b.coeff.is_zero()) ++nonzero;
    rep.add(make_lower_record("a vector outside the kernel is not central", "Poisson kernel", static_cast<double>(nonzero), 1));
    return rep;
}

Report run_named_suite(const std::string& name, const SuiteConfig& c) {
    const std::uint64_t s = c.seed;
    if (name == "exmat") {
        Report r = exmat_suite(100, s);
        if (auto sd = load_seed(c.seed_file)) {
            ExmatTally t;
            t.run(sd->exmat);
            r.add(make_record("seed file: involution, pentagon and square", "R1-R3",
                              static_cast<double>(t.bad_involution + t.bad_pentagon + t.bad_square), 0,
                              {{"epsilon", rows_of(sd->exmat)}}));
        }
        return r;
    }
    if (name == "triangulation") {
        Report r = triangulation_suite(20, s);
        if (auto t = load_tri(c.tri_file)) {
            std::mt19937_64 rng(s);
            long steps = 0, bad = 0;
            flip_coherence(*t, 20, rng, steps, bad);
            r.add(make_record("tri file: flips follow mutation", "flip coherence", static_cast<double>(bad), 0,
                              {{"flips", steps}}));
        }
        return r;
    }
    if (name == "classical") return classical_suite(50, s);
    if (name == "quantum") return quantum_suite(c.series_order, c.path_depth, s);
    if (name == "qdilog") return qdilog_acceptance_suite();
    if (name == "flambda") return flambda_suite(c.hbars, c.lambda);
    if (name == "pentagon") return pentagon_suite(c);
    if (name == "kprime") {
        Report r = kprime_acceptance_suite(50, s);
        if (auto sd = load_seed(c.seed_file)) {
            long bad = 0;
            for (int k = 0; k < sd->rank(); ++k)
                if (!(transport_exmat(kprime_linear(*sd, k), sd->exmat) == mutate_exmat(sd->exmat, k))) ++bad;
            r.add(make_record("seed file: K' transports eps to the mutated matrix", "K' conjugation",
                              static_cast<double>(bad), 0));
        }
        return r;
    }
    if (name == "constraint") return constraint_suite(50, s);
    throw UsageError("unknown suite '" + name + "'");
}

Report run_suite(const SuiteConfig& c) {
    validate(c);
    Report all;
    for (const auto& name : resolve_suites(c.suites)) {
        auto t0 = std::chrono::steady_clock::now();
        Report r = run_named_suite(name, c);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& x : r.records) x.runtime = r.records.empty() ? 0 : dt / r.records.size();
        all.merge(r);
    }
    return all;
}

json report_document(const SuiteConfig& c, const Report& r) {
    return {{"config", to_json(c)}, {"report", to_json(r, c.timings)}};
}

// ---- tables -------------------------------------------------------------------

std::vector<PhiRow> phi_table(cplx h, double re_min, double re_max, double im_min, double im_max, int steps) {
    if (steps < 1 || steps > 1000) throw UsageError("table steps must lie in [1, 1000]");
    const int sr = re_min == re_max ? 1 : steps, si = im_min == im_max ? 1 : steps;
    std::vector<PhiRow> rows;
    for (int a = 0; a < sr; ++a)
        for (int b = 0; b < si; ++b) {
            double re = sr == 1 ? re_min : re_min + (re_max - re_min) * a / (sr - 1);
            double im = si == 1 ? im_min : im_min + (im_max - im_min) * b / (si - 1);
            cplx z{re, im};
            rows.push_back({z, phi(h, z)});
        }
    return rows;
}

std::string phi_table_csv(const std::vector<PhiRow>& rows) {
    std::string out = "z_re,z_im,phi_re,phi_im,abs,est_error\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.z.real(), r.z.imag(),
                      r.v.value.real(), r.v.value.imag(), std::abs(r.v.value), r.v.est_error);
        out += buf;
    }
    return out;
}

std::vector<PhiRow> parse_phi_table_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "z_re,z_im,phi_re,phi_im,abs,est_error")
        throw UsageError("table: missing or unexpected CSV header");
    std::vector<PhiRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> v;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            char* end = nullptr;
            double x = std::strtod(cell.c_str(), &end);
            if (cell.empty() || *end) throw UsageError("table: bad number on line " + std::to_string(lineno));
            v.push_back(x);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (v.size() != 6) throw UsageError("table: expected 6 columns on line " + std::to_string(lineno));
        PhiRow r;
        r.z = {v[0], v[1]};
        r.v.value = {v[2], v[3]};
        r.v.est_error = v[5];
        rows.push_back(r);
    }
    return rows;
}

json phi_table_json(const std::vector<PhiRow>& rows) {
    json a = json::array();
    for (const auto& r : rows)
        a.push_back({{"z_re", r.z.real()},
                     {"z_im", r.z.imag()},
                     {"phi_re", r.v.value.real()},
                     {"phi_im", r.v.value.imag()},
                     {"abs", std::abs(r.v.value)},
                     {"est_error", r.v.est_error}});
    return a;
}

} // namespace rlam
