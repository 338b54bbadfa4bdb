// rlam: command-line front end for the cluster, quantum dilogarithm and
// operator checks.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 bad arguments or
// input, 3 numerical or domain failure.

#include "rlam/classical.hpp"
#include "rlam/opsim.hpp"
#include "rlam/qmatrix.hpp"
#include "rlam/qseries.hpp"
#include "rlam/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rlam;
using nlohmann::json;

namespace {

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    if (!out) throw UsageError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path, const std::string& what) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw UsageError(what + ": '" + path + "' is not valid JSON: " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --exmat '[[0,1],[-1,0]]' or --seed-file seed.json
struct SeedInput {
    std::string exmat, file;

    void add(CLI::App* app) {
        app->add_option("--exmat", exmat, "exchange matrix as JSON rows");
        app->add_option("--seed-file", file, "seed JSON file");
    }
    Seed get() const {
        if (!exmat.empty() && !file.empty()) throw UsageError("give either --exmat or --seed-file");
        if (!file.empty()) return seed_from_json(read_json(file, "seed"));
        if (exmat.empty()) throw UsageError("one of --exmat or --seed-file is required");
        json j;
        try {
            j = json::parse(exmat);
        } catch (const json::parse_error&) {
            throw UsageError("--exmat: not valid JSON");
        }
        return seed_from_json({{"epsilon", j}});
    }
};

Tri surface(const std::string& name, const std::string& file) {
    if (!file.empty()) return tri_from_json(read_json(file, "triangulation"));
    if (name == "torus") return punctured_torus();
    if (name == "sphere") return four_punctured_sphere();
    if (name == "square") return ideal_square();
    throw UsageError("unknown surface '" + name + "' (torus, sphere, square)");
}

std::vector<int> parse_index_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad index '" + item + "'");
        }
    }
    return out;
}

json kernel_json(const std::vector<ThetaVec>& ts) {
    json a = json::array();
    for (const auto& t : ts) a.push_back({{"theta", t.coefficients}, {"tag", t.tag}});
    return a;
}

int report_exit(const Report& r) { return r.pass() ? 0 : 1; }

// Writes the report (JSON to `path` or stdout) and a summary to stderr when
// the JSON goes to a file.
int emit_report(const Report& r, const json& config, const std::string& path, bool timings) {
    json doc{{"config", config}, {"report", to_json(r, timings)}};
    write_text(path, dump(doc));
    if (!path.empty() && path != "-") std::cerr << summary_text(r);
    return report_exit(r);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cluster and quantum dilogarithm verification tools"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    int status = 0;

    // ---- cluster ----
    auto* cluster = app.add_subcommand("cluster", "exchange matrices, seeds and triangulations");
    cluster->require_subcommand(1);

    SeedInput mut_seed;
    std::string mut_moves;
    auto* mutate = cluster->add_subcommand("mutate", "apply a move word to a seed");
    mut_seed.add(mutate);
    mutate->add_option("--moves", mut_moves, "moves like m1,m2,p(1 2), 1-based")->required();
    mutate->callback([&] {
        Seed s = mut_seed.get();
        Seed t = s.apply(parse_moves(mut_moves, s.rank()));
        std::cout << dump(to_json(t));
    });

    SeedInput ker_seed;
    auto* kernel = cluster->add_subcommand("kernel", "integer basis of ker eps");
    ker_seed.add(kernel);
    kernel->callback([&] { std::cout << dump(kernel_json(kernel_vectors(ker_seed.get().exmat))); });

    SeedInput rel_seed;
    std::string rel_name;
    auto* relation = cluster->add_subcommand("relation", "classical composite of a relation word");
    rel_seed.add(relation);
    relation->add_option("--name", rel_name, "involution, quadrilateral, pentagon, permutation, relabel or R1..R5")
        ->required();
    relation->callback([&] {
        Seed s = rel_seed.get();
        auto word = relation_word(rel_name, s.exmat);
        PullbackMap f = pullback_along(s, word);
        bool id = is_identity(f);
        std::cout << dump({{"word", format_moves(word)}, {"identity", id}, {"pullback", to_json(f)}});
        status = id ? 0 : 1;
    });

    std::string tri_surface = "torus", tri_file, tri_flips;
    auto* flip = cluster->add_subcommand("flip", "flip arcs of an ideal triangulation");
    flip->add_option("--surface", tri_surface, "torus, sphere or square")->capture_default_str();
    flip->add_option("--tri-file", tri_file, "triangulation JSON file");
    flip->add_option("--flips", tri_flips, "comma-separated arc indices, 0-based");
    flip->callback([&] {
        Tri t = surface(tri_surface, tri_file);
        for (int k : parse_index_list(tri_flips)) t = flip_tri(t, k);
        std::cout << dump({{"triangulation", to_json(t)},
                           {"epsilon", exmat_from_tri(t).rows()},
                           {"theta", kernel_json(theta_from_punctures(t))}});
    });

    // ---- qdilog ----
    auto* qd = app.add_subcommand("qdilog", "non-compact quantum dilogarithm");
    qd->require_subcommand(1);

    std::string ev_h = "1", ev_z = "0";
    double ev_a = -1, ev_theta = 0;
    bool ev_theta_set = false;
    auto* eval = qd->add_subcommand("eval", "evaluate Phi^h(z)");
    eval->add_option("--h", ev_h, "h, e.g. 0.7 or 0.5i or 0.3+0.2i")->capture_default_str();
    eval->add_option("--z", ev_z, "argument")->capture_default_str();
    eval->add_option("--a", ev_a, "contour radius (default contour if omitted)");
    auto* theta_opt = eval->add_option("--theta", ev_theta, "contour slant");
    eval->callback([&] {
        cplx h = parse_complex(ev_h), z = parse_complex(ev_z);
        ev_theta_set = theta_opt->count() > 0;
        QDValue v;
        if (ev_a > 0 || ev_theta_set) {
            ContourSpec c = default_contour(h);
            if (ev_a > 0) c.a = ev_a;
            if (ev_theta_set) c.theta = ev_theta;
            check_admissible(c);
            v = phi(c, z);
        } else {
            v = phi(h, z);
        }
        std::cout << dump({{"h", ev_h}, {"z", ev_z}, {"value", to_json(v)}});
    });

    std::vector<std::string> su_h{"0.7", "1", "0.5i", "1i", "2i"};
    std::string su_report;
    bool su_timings = false;
    auto* qsuite = qd->add_subcommand("suite", "difference equations, involutivity, unitarity, compact ratio");
    qsuite->add_option("--h", su_h, "values of h")->capture_default_str();
    qsuite->add_option("--report", su_report, "JSON report path (stdout if omitted)");
    qsuite->add_flag("--timings", su_timings, "include runtimes");
    qsuite->callback([&] {
        Report r;
        for (const auto& h : su_h) {
            auto t0 = std::chrono::steady_clock::now();
            Report one = qdilog_suite(parse_complex(h));
            double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            for (auto& x : one.records) x.runtime = dt / one.records.size();
            r.merge(one);
        }
        r.merge(f0_suite());
        status = emit_report(r, {{"h", su_h}}, su_report, su_timings);
    });

    std::string tb_h = "1", tb_format = "csv", tb_out;
    double tb_re0 = -3, tb_re1 = 3, tb_im0 = 0, tb_im1 = 0;
    int tb_steps = 7;
    auto* table = qd->add_subcommand("table", "Phi^h on a grid of z values");
    table->add_option("--h", tb_h)->capture_default_str();
    table->add_option("--re-min", tb_re0)->capture_default_str();
    table->add_option("--re-max", tb_re1)->capture_default_str();
    table->add_option("--im-min", tb_im0)->capture_default_str();
    table->add_option("--im-max", tb_im1)->capture_default_str();
    table->add_option("--steps", tb_steps, "points per axis")->capture_default_str();
    table->add_option("--format", tb_format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    table->add_option("--out", tb_out, "output path (stdout if omitted)");
    table->callback([&] {
        auto rows = phi_table(parse_complex(tb_h), tb_re0, tb_re1, tb_im0, tb_im1, tb_steps);
        write_text(tb_out, tb_format == "csv" ? phi_table_csv(rows) : dump(phi_table_json(rows)));
    });

    std::string rd_in;
    auto* readt = qd->add_subcommand("read-table", "parse a CSV table and print it as JSON");
    readt->add_option("file", rd_in)->required();
    readt->callback([&] { std::cout << dump(phi_table_json(parse_phi_table_csv(read_text(rd_in)))); });

    // ---- qverify ----
    auto* qv = app.add_subcommand("qverify", "quantum torus backends");
    qv->require_subcommand(1);

    int qp_order = 8, qp_perturb = -1;
    auto* qpent = qv->add_subcommand("pentagon", "psi pentagon as series in Q(q)");
    qpent->add_option("--order", qp_order)->capture_default_str();
    qpent->add_option("--perturb", qp_perturb, "add 1 to this psi coefficient (fault injection)");
    qpent->callback([&] {
        SeriesReport r = verify_psi_pentagon(qp_order, qp_perturb);
        std::cout << dump(to_json(r));
        status = r.pass ? 0 : 1;
    });

    SeedInput sh_seed;
    int sh_k = 1, sh_order = 8;
    auto* sharp = qv->add_subcommand("sharp", "automorphism part against psi conjugation");
    sh_seed.add(sharp);
    sharp->add_option("--k", sh_k, "mutation index, 1-based")->capture_default_str();
    sharp->add_option("--order", sh_order)->capture_default_str();
    sharp->callback([&] {
        Seed s = sh_seed.get();
        if (sh_k < 1 || sh_k > s.rank()) throw UsageError("--k out of range");
        SeriesReport r = verify_sharp_is_psi_conjugation(s, sh_k - 1, sh_order);
        std::cout << dump(to_json(r));
        status = r.pass ? 0 : 1;
    });

    SeedInput mx_seed;
    std::string mx_rel = "pentagon", mx_moves;
    std::vector<int> mx_N{5, 7, 11};
    double mx_tol = 1e-8;
    auto* matrix = qv->add_subcommand("matrix", "relation in clock-and-shift representations");
    mx_seed.add(matrix);
    matrix->add_option("--relation", mx_rel, "relation name")->capture_default_str();
    matrix->add_option("--moves", mx_moves, "explicit move word instead of --relation");
    matrix->add_option("--N", mx_N, "odd matrix sizes")->capture_default_str();
    matrix->add_option("--tol", mx_tol)->capture_default_str();
    matrix->callback([&] {
        Seed s = mx_seed.get();
        auto word = mx_moves.empty() ? relation_word(mx_rel, s.exmat) : parse_moves(mx_moves, s.rank());
        RelationReport r = verify_relation_numeric(s.exmat, word, mx_N, mx_tol);
        std::cout << dump(to_json(r));
        status = r.pass ? 0 : 1;
    });

    int qs_order = 8, qs_depth = 5;
    std::uint64_t qs_seed = 0;
    auto* qsu = qv->add_subcommand("suite", "classical limits, series identities and matrix relations");
    qsu->add_option("--order", qs_order)->capture_default_str();
    qsu->add_option("--depth", qs_depth, "mutation path depth")->capture_default_str();
    qsu->add_option("--seed", qs_seed)->capture_default_str();
    qsu->callback([&] {
        status = emit_report(quantum_suite(qs_order, qs_depth, qs_seed),
                             {{"order", qs_order}, {"depth", qs_depth}, {"seed", qs_seed}}, "", false);
    });

    // ---- opsim ----
    auto* op = app.add_subcommand("opsim", "operator-level checks");
    op->require_subcommand(1);

    int pe_lambda = -1;
    PentagonParams pe;
    bool pe_n_set = false, pe_L_set = false, pe_timings = false;
    std::string pe_report;
    auto* pent = op->add_subcommand("pentagon", "operator pentagon on a grid");
    pent->add_option("--lambda", pe_lambda, "-1, 0 or 1")->check(CLI::IsMember({-1, 0, 1}))->capture_default_str();
    pent->add_option("--hbar", pe.hbar)->capture_default_str();
    auto* n_opt = pent->add_option("--n", pe.n, "points per axis (8192 for lambda=-1, 512 or 1024 in 2D)");
    auto* L_opt = pent->add_option("--L", pe.L, "box length (60 for lambda=-1, 30 in 2D)");
    pent->add_option("--workers", pe.workers, "0 = hardware concurrency")->capture_default_str();
    pent->add_option("--report", pe_report, "JSON report path (stdout if omitted)");
    pent->add_flag("--timings", pe_timings);
    pent->callback([&] {
        pe_n_set = n_opt->count() > 0;
        pe_L_set = L_opt->count() > 0;
        SuiteConfig env;
        env.workers = pe.workers;
        apply_env(env);
        pe.workers = env.workers;
        if (pe_lambda != -1) {
            if (!pe_n_set) pe.n = pe_lambda == 0 ? 512 : 1024;
            if (!pe_L_set) pe.L = 30;
        }
        auto t0 = std::chrono::steady_clock::now();
        Report r = pe_lambda == -1 ? verify_pentagon_lambda_minus1(pe)
                   : pe_lambda == 0 ? pentagon_f0_substitution(pe.n, pe.L)
                                    : verify_pentagon_lambda_plus1(pe);
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (auto& x : r.records) x.runtime = dt / r.records.size();
        json cfg{{"lambda", pe_lambda}, {"hbar", pe.hbar}, {"n", pe.n}, {"L", pe.L}, {"workers", pe.workers}};
        status = emit_report(r, cfg, pe_report, pe_timings);
    });

    PentagonParams dg{1.0, 256, 30, 1};
    auto* degen = op->add_subcommand("degenerate", "lambda=1 pentagon with y-independent factors");
    degen->add_option("--hbar", dg.hbar)->capture_default_str();
    degen->add_option("--n", dg.n)->capture_default_str();
    degen->add_option("--L", dg.L)->capture_default_str();
    degen->callback([&] {
        status = emit_report(verify_pentagon_degenerate(dg), {{"hbar", dg.hbar}, {"n", dg.n}, {"L", dg.L}}, "", false);
    });

    int cj_n = 512;
    double cj_L = 30;
    std::vector<int> cj_ns{1, -1, 2};
    auto* conj = op->add_subcommand("f0-conjugation", "conjugation identities of F0(x_k, y_k)");
    conj->add_option("--n", cj_n)->capture_default_str();
    conj->add_option("--L", cj_L)->capture_default_str();
    conj->add_option("--eps", cj_ns, "values of eps_ik")->capture_default_str();
    conj->callback([&] {
        status = emit_report(verify_f0_conjugation(cj_n, cj_L, cj_ns), {{"n", cj_n}, {"L", cj_L}, {"eps", cj_ns}}, "",
                             false);
    });

    int kp_count = 50, kp_rank = 6;
    std::uint64_t kp_seed = 0;
    auto* kp = op->add_subcommand("kprime", "symbol-level brackets and K' conjugation");
    kp->add_option("--count", kp_count)->capture_default_str();
    kp->add_option("--max-rank", kp_rank)->capture_default_str();
    kp->add_option("--seed", kp_seed)->capture_default_str();
    kp->callback([&] {
        Report r = heisenberg_suite(kp_count, kp_seed);
        r.merge(kprime_suite(kp_count, kp_rank, kp_seed));
        status = emit_report(r, {{"count", kp_count}, {"max_rank", kp_rank}, {"seed", kp_seed}}, "", false);
    });

    double gr_hbar = 1, gr_L = 60;
    int gr_n = 8192;
    auto* grid = op->add_subcommand("grid", "unitarity, Weyl relation and chirp of the 1D operators");
    grid->add_option("--hbar", gr_hbar)->capture_default_str();
    grid->add_option("--n", gr_n)->capture_default_str();
    grid->add_option("--L", gr_L)->capture_default_str();
    grid->callback([&] {
        status = emit_report(grid_operator_suite(gr_hbar, gr_n, gr_L), {{"hbar", gr_hbar}, {"n", gr_n}, {"L", gr_L}}, "",
                             false);
    });

    // ---- verify ----
    std::vector<std::string> vf_suites;
    std::string vf_config, vf_report, vf_summary;
    int vf_lambda = 2, vf_workers = -1;
    std::uint64_t vf_seed = 0;
    bool vf_timings = false, vf_list = false;
    auto* verify = app.add_subcommand("verify", "run named suites (all, exmat, triangulation, classical, quantum, "
                                                "qdilog, flambda, pentagon, kprime, constraint)");
    verify->add_option("suites", vf_suites, "suite names");
    verify->add_option("--config", vf_config, "JSON config; command-line options override it");
    auto* lam_opt = verify->add_option("--lambda", vf_lambda, "restrict Lambda-dependent suites")
                        ->check(CLI::IsMember({-1, 0, 1}));
    auto* seed_opt = verify->add_option("--seed", vf_seed, "random seed");
    auto* w_opt = verify->add_option("--workers", vf_workers, "worker threads, 0 = hardware concurrency");
    verify->add_option("--report", vf_report, "JSON report path");
    verify->add_option("--summary", vf_summary, "text summary path (stdout if omitted)");
    verify->add_flag("--timings", vf_timings, "include runtimes in the report");
    verify->add_flag("--list", vf_list, "list suite names");
    verify->callback([&] {
        if (vf_list) {
            for (const auto& n : suite_names()) std::cout << n << "\n";
            return;
        }
        SuiteConfig c = vf_config.empty() ? SuiteConfig{} : config_from_json(read_json(vf_config, "config"));
        if (!vf_suites.empty()) c.suites = vf_suites;
        if (lam_opt->count()) c.lambda = vf_lambda;
        if (seed_opt->count()) c.seed = vf_seed;
        if (w_opt->count()) c.workers = vf_workers;
        if (!vf_report.empty()) c.report = vf_report;
        if (!vf_summary.empty()) c.summary = vf_summary;
        if (vf_timings) c.timings = true;
        apply_env(c);
        validate(c);
        Report r = run_suite(c);
        if (!c.report.empty()) write_text(c.report, dump(report_document(c, r)));
        write_text(c.summary, summary_text(r));
        status = report_exit(r);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return status;
}
