#pragma once

// Suite configuration, the named verification suites behind `verify` and the
// acceptance runner, and CSV tables of Φ^h values.

#include "rlam/qdilog.hpp"
#include "rlam/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rlam {

struct SuiteConfig {
    std::vector<std::string> suites;  // names from suite_names(), or "all"
    std::optional<int> lambda;        // restricts the Λ-dependent suites
    std::vector<double> hbars{0.5, 1.0};
    int n1d = 8192;
    double L1d = 60;
    int n2d = 512;
    double L2d = 30;
    int n2d_plus = 1024;
    int series_order = 8;
    int path_depth = 5;
    std::uint64_t seed = 0;
    std::string seed_file;  // extra seed checked by the exchange-matrix and K' suites
    std::string tri_file;   // extra triangulation for the triangulation suite
    std::string report;     // JSON output path
    std::string summary;    // text output path
    int workers = 1;
    bool timings = false;
};

// UsageError naming the key for unknown keys, wrong types or values out of range.
SuiteConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SuiteConfig& c);
void validate(const SuiteConfig& c);
// CLUSTER_LAMBDA_WORKERS, if set, replaces c.workers.
void apply_env(SuiteConfig& c);

const std::vector<std::string>& suite_names();
// "all" expands to every suite; duplicates are dropped, order follows suite_names().
std::vector<std::string> resolve_suites(const std::vector<std::string>& names);

Report exmat_suite(int count, std::uint64_t seed);
Report triangulation_suite(int count, std::uint64_t seed);
Report classical_suite(int count, std::uint64_t seed);
Report quantum_suite(int order, int depth, std::uint64_t seed);
Report qdilog_acceptance_suite();
Report flambda_suite(const std::vector<double>& hbars, std::optional<int> lambda);
Report pentagon_suite(const SuiteConfig& c);
Report kprime_acceptance_suite(int count, std::uint64_t seed);
Report constraint_suite(int count, std::uint64_t seed);

Report run_named_suite(const std::string& name, const SuiteConfig& c);
// Runs the selected suites in order; each record's runtime is its suite's
// wall time divided evenly.
Report run_suite(const SuiteConfig& c);
// {"config": ..., "report": ...}
nlohmann::json report_document(const SuiteConfig& c, const Report& r);

struct PhiRow {
    cplx z;
    QDValue v;
};
// steps points per axis; an axis with min == max gets one point.
std::vector<PhiRow> phi_table(cplx h, double re_min, double re_max, double im_min, double im_max, int steps);
// Columns z_re, z_im, phi_re, phi_im, abs, est_error at 17 significant digits.
std::string phi_table_csv(const std::vector<PhiRow>& rows);
std::vector<PhiRow> parse_phi_table_csv(const std::string& text);
nlohmann::json phi_table_json(const std::vector<PhiRow>& rows);

} // namespace rlam
