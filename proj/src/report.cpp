#include "rlam/report.hpp"

#include <cmath>
#include <cstdio>

namespace rlam {

bool Report::pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

void Report::merge(const Report& other) { records.insert(records.end(), other.records.begin(), other.records.end()); }

CheckRecord make_record(std::string name, std::string anchor, double residual, double tolerance, nlohmann::json detail) {
    CheckRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.residual = residual;
    r.tolerance = tolerance;
    r.pass = !std::isnan(residual) && residual <= tolerance;
    r.detail = std::move(detail);
    return r;
}

CheckRecord make_lower_record(std::string name, std::string anchor, double residual, double bound, nlohmann::json detail) {
    CheckRecord r = make_record(std::move(name), std::move(anchor), residual, bound, std::move(detail));
    r.lower_bound = true;
    r.pass = !std::isnan(residual) && residual >= bound;
    return r;
}

nlohmann::json to_json(const CheckRecord& r, bool timings) {
    nlohmann::json j{{"name", r.name},
                     {"anchor", r.anchor},
                     {"status", r.pass ? "pass" : "fail"},
                     {"residual", std::isfinite(r.residual) ? nlohmann::json(r.residual) : nlohmann::json("nan")},
                     {"tolerance", r.tolerance}};
    if (r.lower_bound) j["bound"] = "lower";
    if (!r.detail.is_null()) j["detail"] = r.detail;
    if (timings) j["runtime"] = r.runtime;
    return j;
}

nlohmann::json to_json(const Report& r, bool timings) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& x : r.records) recs.push_back(to_json(x, timings));
    return {{"pass", r.pass()}, {"records", recs}};
}

std::string summary_text(const Report& r) {
    std::string out;
    char buf[64];
    for (const auto& x : r.records) {
        std::snprintf(buf, sizeof buf, x.lower_bound ? "%.3e >= %.1e" : "%.3e <= %.1e", x.residual, x.tolerance);
        out += std::string(x.pass ? "PASS " : "FAIL ") + x.name + "  (" + buf + ")\n";
    }
    out += r.pass() ? "all checks passed\n" : "some checks failed\n";
    return out;
}

} // namespace rlam
