#pragma once

// Pass/fail records shared by the numeric suites and the command line.

#include "rlam/errors.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rlam {

struct CheckRecord {
    std::string name;
    std::string anchor;  // short label of the identity being checked
    bool pass = false;
    double residual = 0;
    double tolerance = 0;
    bool lower_bound = false;  // pass means residual >= tolerance (negative controls)
    double runtime = 0;  // seconds; only serialized on request
    nlohmann::json detail;
};

struct Report {
    std::vector<CheckRecord> records;

    bool pass() const;
    void add(CheckRecord r) { records.push_back(std::move(r)); }
    void merge(const Report& other);
};

// residual <= tolerance, with NaN counted as a failure.
CheckRecord make_record(std::string name, std::string anchor, double residual, double tolerance,
                        nlohmann::json detail = nullptr);

// residual >= bound; used for fault-injection controls.
CheckRecord make_lower_record(std::string name, std::string anchor, double residual, double bound,
                              nlohmann::json detail = nullptr);

nlohmann::json to_json(const CheckRecord& r, bool timings = false);
nlohmann::json to_json(const Report& r, bool timings = false);
std::string summary_text(const Report& r);

} // namespace rlam
