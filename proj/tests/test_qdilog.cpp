#include "rlam/qdilog.hpp"

#include <doctest.h>

#include <cmath>

using namespace rlam;

namespace {

const double pi = 3.14159265358979323846;
const cplx I{0, 1};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("phi against an independent high-precision quadrature") {
    // mpmath at 30 digits on the same contour with a different radius.
    CHECK(rel(phi(0.7, {0.3, 0.1}).value, {0.964162710066532602, -0.343296921805319891}) < 1e-12);
    CHECK(rel(phi(1.0, {0, -0.4}).value, {0.908134584678163226, -0.237147949556191853}) < 1e-12);
    CHECK(rel(phi(I, 0.2).value, {0.990074336018785265, -0.00817059671717208708}) < 1e-12);
    auto v = phi(0.7, {0.3, 0.1});
    CHECK(v.method == QDMethod::barnes);
    CHECK(v.est_error >= 0);
    CHECK(v.est_error < 1e-10);
    CHECK(phi(I, 0.2).method == QDMethod::slanted);
}

TEST_CASE("involutivity and the constant c_h") {
    cplx z{0.3, 0.1};
    cplx lhs = phi(0.7, z).value * phi(0.7, -z).value;
    CHECK(rel(lhs, c_const(0.7) * std::exp(z * z / (4 * pi * I * 0.7))) < 1e-8);
    cplx p0 = phi(0.7, 0.0).value;
    CHECK(std::abs(p0 * p0 - c_const(0.7)) < 1e-9);
    for (cplx h : {cplx(0.3), cplx(1.0), cplx(0, 0.5), cplx(0, 1)}) {
        for (cplx w : {cplx(0.5, -0.2), cplx(-1.1, 0.4)}) {
            cplx l = phi(h, w).value * phi(h, -w).value;
            CHECK(rel(l, c_const(h) * std::exp(w * w / (4 * pi * I * h))) < 1e-8);
        }
    }
    CHECK(std::abs(std::abs(c_const(0.7)) - 1) < 1e-15);
}

TEST_CASE("unitarity on the real line") {
    for (int x = -3; x <= 3; ++x) CHECK(std::abs(std::abs(phi(0.7, double(x)).value) - 1) < 1e-9);
    for (cplx h : {cplx(0.7), cplx(0, 1), cplx(0.4, -0.8)})
        for (cplx z : {cplx(0.2, 0.3), cplx(-1, -0.5)}) {
            cplx prod = std::conj(phi(h, z).value) * phi(std::conj(h), std::conj(z)).value;
            CHECK(std::abs(prod - 1.0) < 1e-8);
        }
}

TEST_CASE("negative h is the reciprocal") {
    for (cplx z : {cplx(0.4, 0.2), cplx(-1.3, 0)}) {
        CHECK(std::abs(phi(-0.6, z).value * phi(0.6, z).value - 1.0) < 1e-13);
        CHECK(std::abs(phi(cplx(-0.3, 0.5), z).value * phi(cplx(0.3, -0.5), z).value - 1.0) < 1e-13);
    }
}

TEST_CASE("contour parameters do not change the value") {
    for (cplx h : {cplx(0.7), cplx(0, 1), cplx(0, -0.5), cplx(1.5, 0.5)}) {
        cplx z{0.3, 0.1};
        ContourSpec base = default_contour(h);
        cplx ref = phi_direct(base, z).value;
        double amax = std::min(1.0, 1.0 / std::abs(h));
        double sgn = h.imag() > 0 ? -1 : 1;
        for (double fa : {0.2, 0.5, 0.8})
            for (double th : {0.15, 0.6, 1.2}) {
                ContourSpec c{h, fa * amax, sgn * th};
                if (!in_strip(c, z)) continue;
                INFO("h=" << h << " a=" << c.a << " theta=" << c.theta);
                CHECK(rel(phi_direct(c, z).value, ref) < 1e-9);
            }
    }
}

TEST_CASE("admissibility of contours") {
    CHECK_THROWS_AS(check_admissible({I, 0.5, 0.0}), UsageError);
    CHECK_THROWS_AS(check_admissible({I, 0.5, 0.3}), UsageError);
    CHECK_THROWS_AS(check_admissible({-I, 0.5, -0.3}), UsageError);
    CHECK_THROWS_AS(check_admissible({2.0, 0.6, 0.0}), UsageError);
    CHECK_THROWS_AS(check_admissible({-1.0, 0.5, 0.0}), UsageError);
    CHECK_NOTHROW(check_admissible({2.0, 0.4, 0.0}));
    CHECK_THROWS_AS(phi(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(phi_direct(default_contour(0.5), {0, 5.0}), DomainError);
    // Outside the strip the difference equations take over.
    cplx far{0.2, 5.0};
    auto v = phi(0.5, far);
    CHECK(v.shifts > 0);
    cplx back = (1.0 + std::exp(pi * I * 0.5) * std::exp(far - 2 * pi * I * 0.5)) * phi(0.5, far - 2 * pi * I * 0.5).value;
    CHECK(rel(v.value, back) < 1e-10);
}

TEST_CASE("difference equations") {
    auto r = check_difference_eqs(0.3);
    CHECK(r.samples.size() == 25);
    CHECK(r.max_res_h <= 1e-8);
    CHECK(r.max_res_1 <= 1e-8);
    auto s = check_difference_eqs(I);
    CHECK(s.max_res_h <= 1e-6);
    CHECK(s.max_res_1 <= 1e-6);
    auto bad = check_difference_eqs(0.3, 3, -1);
    CHECK(bad.max_res_h >= 1e-2);
    CHECK(bad.max_res_1 >= 1e-2);
}

TEST_CASE("zeros and poles") {
    cplx p = locate_zero_pole(0.7, 0, 0, ZeroPole::pole);
    CHECK(std::abs(p - (-pi * I * 1.7)) < 1e-15);
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m < 3; ++m)
            CHECK(locate_zero_pole(I, n, m, ZeroPole::zero) == -locate_zero_pole(I, n, m, ZeroPole::pole));
    CHECK(std::abs(phi(0.7, p + 1e-4).value) >= 1e3);
    CHECK(std::abs(phi(0.7, -p + 1e-4).value) <= 1e-3);
    CHECK_THROWS_AS(phi(0.7, p + 1e-7), PoleError);
    CHECK_THROWS_WITH_AS(phi(0.7, locate_zero_pole(0.7, 1, 2, ZeroPole::pole)), doctest::Contains("n=1, m=2"),
                         PoleError);
    int n = -1, m = -1;
    CHECK(pole_distance(0.7, locate_zero_pole(0.7, 2, 0, ZeroPole::pole), &n, &m) < 1e-12);
    CHECK(n == 2);
    CHECK(m == 0);
}

TEST_CASE("compact quantum dilogarithm") {
    CHECK(psi_compact(0.5, 0.0).value == 1.0);
    CHECK(psi_compact({0.1, 0.6}, 0.0).value == 1.0);
    cplx q = 0.5, z = 0.3;
    CHECK(std::abs(psi_compact(q, q * q * z).value - (1.0 + q * z) * psi_compact(q, z).value) <= 1e-12);
    CHECK(std::abs(psi_compact(0.5, 1.0, 40).value - psi_compact(0.5, 1.0, 80).value) <= 1e-15);
    // mpmath, 400 factors at 30 digits.
    CHECK(std::abs(psi_compact(0.5, 1.0).value - 0.568698946265428590) < 1e-15);
    CHECK(std::abs(psi_compact({0.3, 0.2}, {0.7, -1}).value - cplx(0.678420323560104504, 0.0453059644319407606)) < 1e-15);
    CHECK(psi_compact(0.5, 1.0, 5).est_error > psi_compact(0.5, 1.0).est_error);
    CHECK_THROWS_AS(psi_compact(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(psi_compact(0.5, -2.0), PoleError);
}

TEST_CASE("compact ratio agrees with the slanted integral") {
    CHECK(std::abs(phi(I, 0.2).value - phi_ih_ratio(1.0, 0.2).value) <= 1e-6);
    for (double hb : {0.5, 1.0, 2.0})
        for (cplx z : {cplx(0.2, 0), cplx(-0.7, 0.3), cplx(1.1, -0.6)}) {
            auto a = phi(cplx(0, hb), z), b = phi_ih_ratio(hb, z);
            CHECK(std::abs(a.value - b.value) <= 1e-6);
            CHECK(b.method == QDMethod::compact_ratio);
        }
    CHECK(std::abs(phi_ratio({0.5, 0.5}, 0.4).value - phi(cplx(0.5, 0.5), 0.4).value) <= 1e-10);
    CHECK_THROWS_AS(phi_ratio(0.7, 0.1), DomainError);
    // conj Φ^{iħ}(z) = Φ^{-iħ}(z̄)^{-1}
    cplx z{0.3, 0.4};
    CHECK(std::abs(std::conj(phi_ih_ratio(1.0, z).value) * phi(-I, std::conj(z)).value - 1.0) <= 1e-8);
}

TEST_CASE("flat quantum dilogarithm") {
    CHECK(f0(1.7, 0.0) == 1.0);
    CHECK(std::abs(f0(0, pi) - cplx(0.769238901363972, -0.638961276313635)) < 1e-12);
    CHECK(std::abs(f0(0, pi) - std::exp(-I * std::log(2.0))) < 1e-15);
    CHECK(std::abs(f0(1, pi) * f0(-1, -pi) - cplx(0.540302305868140, -0.841470984807897)) < 1e-12);
    CHECK(std::abs(std::abs(f0(40.0, 2.5)) - 1) < 1e-15);
    CHECK(std::abs(std::abs(f0(-40.0, 2.5)) - 1) < 1e-15);
    CHECK(std::abs(f0(0.5, 1.0) - f0_contour(0.5, 1.0, 0.3).value) <= 1e-8);
    CHECK(std::abs(f0_contour(0.5, 1.0, 0.2).value - f0_contour(0.5, 1.0, 0.6).value) <= 1e-9);
    CHECK(f0_contour(0.9, 0.0, 0.5).value == 1.0);
    CHECK(std::abs(f0(0.3, cplx(0.8, pi)) - (1 + std::exp(0.3)) * f0(0.3, 0.8)) < 1e-13);
    CHECK_THROWS_AS(f0_contour(0.1, 1.0, 1.5), UsageError);
}

TEST_CASE("combined functions F_Lambda") {
    for (int lam : {-1, 0}) CHECK(std::abs(f_lambda(lam, 0.5, 0.7, 0.0).value - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(f_lambda(1, 0.5, 0.7, 0.0).value) - 1.0) < 1e-12);
    for (int lam : {-1, 0, 1}) {
        cplx f = f_lambda(lam, 0.5, 0.7, 1.3).value, g = f_lambda(lam, 0.5, -0.7, -1.3).value;
        CHECK(std::abs(f * g - std::exp(0.7 * 1.3 / (pi * I))) <= 1e-7);
        CHECK(std::abs(std::abs(f) - 1) <= 1e-8);
    }
    CHECK(std::abs(std::abs(f_lambda(1, 1.0, 0.7, 1.3).value) - 1) <= 1e-8);
    CHECK(f_lambda(0, 1.0, 0.2, 0.5).value == f_lambda(0, 0.3, 0.2, 0.5).value);
    CHECK_THROWS_AS(f_lambda(2, 1.0, 0, 0), UsageError);
    CHECK_THROWS_AS(f_lambda(1, -1.0, 0, 0), DomainError);
}

TEST_CASE("suites") {
    for (cplx h : {cplx(0.3), cplx(0.7), cplx(1.0), cplx(0, 0.5), cplx(0, 1), cplx(0, 2)}) {
        Report r = qdilog_suite(h);
        INFO(summary_text(r));
        CHECK(r.pass());
    }
    CHECK(f0_suite().pass());
    Report f = f_lambda_suite({0.5, 1.0});
    CHECK(f.records.size() == 12);
    CHECK(f.pass());
}

TEST_CASE("complex number parsing") {
    CHECK(parse_complex("0.1+0.2i") == cplx(0.1, 0.2));
    CHECK(parse_complex("i1.0") == cplx(0, 1));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK(parse_complex("2.5") == cplx(2.5, 0));
    CHECK(parse_complex("1e-3-4i") == cplx(1e-3, -4));
    CHECK(parse_complex("-0.5i + 3") == cplx(3, -0.5));
    CHECK_THROWS_AS(parse_complex("abc"), UsageError);
    CHECK_THROWS_AS(parse_complex("1+2"), UsageError);
}
