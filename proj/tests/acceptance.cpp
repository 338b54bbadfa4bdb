// One line per acceptance criterion; exit status 1 if any criterion fails.
// Runtime budgets are part of each verdict.

#include "rlam/suites.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace rlam;

namespace {

struct Criterion {
    int id;
    const char* title;
    const char* suite;
    double budget;  // seconds
};

const Criterion kCriteria[] = {
    {1, "exchange-matrix involution and pentagon", "exmat", 1},
    {2, "triangulation coherence", "triangulation", 1},
    {3, "classical consistency and Poisson compatibility", "classical", 30},
    {4, "quantum backends agree", "quantum", 300},
    {5, "quantum dilogarithm suite", "qdilog", 120},
    {6, "F_Lambda unitarity and involutivity", "flambda", 60},
    {7, "operator pentagons", "pentagon", 600},
    {8, "K' conjugation", "kprime", 1},
    {9, "constraint centrality", "constraint", 1e9},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> only;
    bool verbose = false;
    app.add_option("-c,--criterion", only, "run only these criteria");
    app.add_flag("-v,--verbose", verbose, "print every record");
    CLI11_PARSE(app, argc, argv);

    SuiteConfig cfg;
    try {
        apply_env(cfg);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    int failed = 0, run = 0;
    for (const auto& c : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        ++run;
        auto t0 = std::chrono::steady_clock::now();
        Report r;
        std::string error;
        try {
            SuiteConfig cc = cfg;
            if (std::string(c.suite) == "pentagon") cc.hbars = {1.0};
            r = run_named_suite(c.suite, cc);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int bad = 0;
        for (const auto& x : r.records) bad += !x.pass;
        bool pass = error.empty() && !r.records.empty() && bad == 0 && dt < c.budget;
        failed += !pass;
        char buf[96];
        if (c.budget < 1e8) std::snprintf(buf, sizeof buf, "%.2f s < %g s", dt, c.budget);
        else std::snprintf(buf, sizeof buf, "%.2f s", dt);
        std::printf("criterion %d %s  %s  (%zu checks, %d failed, %s)\n", c.id, pass ? "PASS" : "FAIL", c.title,
                    r.records.size(), bad, buf);
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        for (const auto& x : r.records)
            if (verbose || !x.pass)
                std::printf("    %s %s  residual %.3e %s %.1e\n", x.pass ? "pass" : "FAIL", x.name.c_str(), x.residual,
                            x.lower_bound ? ">=" : "<=", x.tolerance);
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", run - failed, run);
    return failed ? 1 : 0;
}
