#include "rlam/qdilog.hpp"

#include <doctest.h>

using namespace rlam;

// Expected limit Φ^{iħ}(x) → 1 as x → -∞ along the real line.
TEST_CASE("phi at i hbar tends to one far to the left") {
    cplx v = phi_ih_ratio(1.0, -20.0).value;
    INFO("phi_ih_ratio(1, -20) = " << v);
    CHECK(std::abs(v - 1.0) <= 1e-8);
    CHECK(std::abs(phi(cplx(0, 1), -20.0).value - 1.0) <= 1e-8);
}

// Expected F_Λ(x, 0) = 1 for every Λ.
TEST_CASE("F_Lambda at y = 0 is one") {
    for (int lam : {-1, 0, 1}) {
        cplx v = f_lambda(lam, 0.5, 0.7, 0.0).value;
        INFO("lambda = " << lam << ", F(0.7, 0) = " << v);
        CHECK(std::abs(v - 1.0) <= 1e-12);
    }
}
