#include "rlam/opsim.hpp"

#include <doctest.h>

using namespace rlam;

// Expected: F_1 pentagon to 1e-3 at hbar = 1 on a 1024² grid.
TEST_CASE("Lambda = 1 pentagon on the plane") {
    PentagonParams p;
    p.hbar = 1;
    p.n = 1024;
    p.L = 30;
    Report r = verify_pentagon_lambda_plus1(p);
    for (const auto& rec : r.records) {
        INFO(rec.name << ": residual " << rec.residual << ", tolerance " << rec.tolerance);
        CHECK(rec.pass);
    }
}

// Expected: with y acting trivially both sides are commuting multipliers, 1e-8.
TEST_CASE("Lambda = 1 degenerate packet") {
    PentagonParams p;
    p.n = 256;
    p.L = 30;
    Report r = verify_pentagon_degenerate(p);
    for (const auto& rec : r.records) {
        INFO(rec.name << ": residual " << rec.residual);
        CHECK(rec.pass);
    }
}
