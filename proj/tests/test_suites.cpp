#include "rlam/suites.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>

using namespace rlam;
using nlohmann::json;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const UsageError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("config parsing and validation") {
    SuiteConfig c = config_from_json(json::parse(R"({"suites":["exmat","kprime"],"lambda":0,"seed":7,"workers":2})"));
    CHECK(c.suites == std::vector<std::string>{"exmat", "kprime"});
    CHECK(c.lambda == 0);
    CHECK(c.seed == 7);
    CHECK(c.n1d == 8192);

    CHECK(message_of([] { config_from_json(json::parse(R"({"suite":["exmat"]})")); }).find("'suite'") !=
          std::string::npos);
    CHECK(message_of([] { config_from_json(json::parse(R"({"n1d":"big"})")); }).find("'n1d'") != std::string::npos);
    CHECK(message_of([] { config_from_json(json::parse(R"({"hbars":[5]})")); }).find("hbars") != std::string::npos);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"lambda":2})")), UsageError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"suites":["nope"]})")), UsageError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"n2d":511})")), UsageError);
    CHECK_THROWS_AS(config_from_json(json::parse("[1]")), UsageError);
}

TEST_CASE("config survives a JSON round trip") {
    SuiteConfig c;
    c.suites = {"all"};
    c.lambda = -1;
    c.hbars = {0.5};
    c.seed = 3;
    SuiteConfig d = config_from_json(to_json(c));
    CHECK(to_json(d) == to_json(c));
}

TEST_CASE("suite selection") {
    CHECK(resolve_suites({"all"}) == suite_names());
    CHECK(resolve_suites({"kprime", "exmat", "kprime"}) == std::vector<std::string>{"exmat", "kprime"});
    CHECK(resolve_suites({}).empty());

    SuiteConfig empty;
    Report r = run_suite(empty);
    CHECK(r.records.empty());
    CHECK(r.pass());
}

TEST_CASE("worker count from the environment") {
    SuiteConfig c;
    setenv("CLUSTER_LAMBDA_WORKERS", "3", 1);
    apply_env(c);
    CHECK(c.workers == 3);
    setenv("CLUSTER_LAMBDA_WORKERS", "three", 1);
    CHECK_THROWS_AS(apply_env(c), UsageError);
    unsetenv("CLUSTER_LAMBDA_WORKERS");
    c.workers = 1;
    apply_env(c);
    CHECK(c.workers == 1);
}

TEST_CASE("reports are deterministic and embed the config") {
    SuiteConfig c;
    c.suites = {"exmat", "triangulation", "constraint"};
    c.seed = 11;
    json a = report_document(c, run_suite(c)), b = report_document(c, run_suite(c));
    CHECK(a.dump() == b.dump());
    CHECK(a["config"]["seed"] == 11);
    CHECK(a["report"]["pass"] == true);
    CHECK_FALSE(a["report"]["records"][0].contains("runtime"));
    c.timings = true;
    CHECK(report_document(c, run_suite(c))["report"]["records"][0].contains("runtime"));
}

TEST_CASE("corrupt seed file names the field") {
    const std::string path = "test_suites_bad_seed.json";
    {
        std::ofstream out(path);
        out << R"({"epsilon":[[0,1],[-1]]})";
    }
    SuiteConfig c;
    c.suites = {"exmat"};
    c.seed_file = path;
    std::string msg = message_of([&] { run_suite(c); });
    CHECK(msg.find("epsilon") != std::string::npos);
    c.seed_file = "does_not_exist.json";
    CHECK(message_of([&] { run_suite(c); }).find("seed_file") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("Lambda restriction of the F_Lambda suite") {
    Report all = flambda_suite({0.5, 1.0}, std::nullopt);
    Report one = flambda_suite({0.5, 1.0}, 1);
    CHECK(all.records.size() == 12);
    CHECK(one.records.size() == 4);
    for (const auto& r : one.records) CHECK(r.name.find("lambda=1 ") != std::string::npos);
}

TEST_CASE("phi table CSV round trip is exact") {
    auto rows = phi_table(cplx(0.7), -2, 2, -0.3, 0.3, 4);
    CHECK(rows.size() == 16);
    std::string csv = phi_table_csv(rows);
    CHECK(csv.rfind("z_re,z_im,phi_re,phi_im,abs,est_error\n", 0) == 0);
    auto back = parse_phi_table_csv(csv);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].z == rows[i].z);
        CHECK(back[i].v.value == rows[i].v.value);
        CHECK(back[i].v.est_error == rows[i].v.est_error);
    }
    CHECK(phi_table_csv(back) == csv);
    CHECK(phi_table(cplx(1.0), -1, 1, 0, 0, 5).size() == 5);

    CHECK_THROWS_AS(parse_phi_table_csv("a,b\n1,2\n"), UsageError);
    CHECK_THROWS_AS(parse_phi_table_csv("z_re,z_im,phi_re,phi_im,abs,est_error\n1,2,3\n"), UsageError);
    CHECK_THROWS_AS(parse_phi_table_csv("z_re,z_im,phi_re,phi_im,abs,est_error\n1,2,3,4,5,x\n"), UsageError);
}

TEST_CASE("fast suites pass") {
    CHECK(exmat_suite(100, 0).pass());
    CHECK(triangulation_suite(20, 0).pass());
    CHECK(kprime_acceptance_suite(20, 0).pass());
    CHECK(constraint_suite(30, 0).pass());
    CHECK(classical_suite(20, 0).pass());
}
