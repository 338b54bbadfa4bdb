#include "gen.hpp"
#include "rlam/poly.hpp"

#include <doctest.h>

using namespace rlam;
using testgen::small_rational;
using testgen::uniform_int;

namespace {

Poly random_poly(int nvars, int terms, int maxdeg) {
    Poly p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exps e(nvars);
        for (auto& x : e) x = uniform_int(0, maxdeg);
        p.add_term(e, small_rational(5, 3));
    }
    return p;
}

Rational eval_q(const Poly& p, const std::vector<Rational>& pt) {
    Rational acc = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational t = c;
        for (std::size_t v = 0; v < pt.size(); ++v)
            for (int k = 0; k < e[v]; ++k) t *= pt[v];
        acc += t;
    }
    return acc;
}

Poly x(int i) { return Poly::variable(3, i); }
Poly c3(long v) { return Poly::constant(3, v); }

} // namespace

TEST_CASE("gcd of known factorizations") {
    Poly a = (x(0) + x(1)) * (x(0) - x(1));
    Poly b = (x(0) + x(1)).pow(2);
    CHECK(poly_gcd(a, b) == make_monic(x(0) + x(1)));
    CHECK(poly_gcd(x(0) * x(1), x(1) * x(2)) == x(1));
    CHECK(poly_gcd(c3(1) + x(0), c3(1) + x(1)).is_constant());
    Poly g = c3(1) + x(0) * x(2) + x(1).pow(2);
    CHECK(poly_gcd(g * (x(0) + c3(2)), g * (x(1) - x(2))) == make_monic(g));
}

TEST_CASE("gcd of random products recovers the planted factor") {
    for (int trial = 0; trial < 60; ++trial) {
        Poly g = random_poly(3, 3, 2), a = random_poly(3, 3, 2), b = random_poly(3, 3, 2);
        if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
        Poly h = poly_gcd(g * a, g * b);
        // h is divisible by g and divides both products.
        CHECK_NOTHROW(divide_exact(h, make_monic(g)));
        CHECK_NOTHROW(divide_exact(g * a, h));
        CHECK_NOTHROW(divide_exact(g * b, h));
        Poly extra = divide_exact(h, make_monic(g));
        CHECK(extra == make_monic(poly_gcd(a, b)));
    }
}

TEST_CASE("rational functions reduce to a canonical form") {
    for (int trial = 0; trial < 100; ++trial) {
        Poly a = random_poly(3, 3, 2), b = random_poly(3, 3, 2), c = random_poly(3, 2, 2);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        RatExpr r(a * c, b * c), s(a, b);
        CHECK(r == s);
        std::vector<Rational> pt{rat(uniform_int(1, 9), 7), rat(uniform_int(1, 9), 5), rat(uniform_int(-9, -1), 3)};
        Rational db = eval_q(b, pt), dd = eval_q(s.den(), pt);
        if (db == 0 || dd == 0) continue;
        CHECK(eval_q(s.num(), pt) / dd == eval_q(a, pt) / db);
    }
}

TEST_CASE("field operations on rational functions") {
    RatExpr z1 = RatExpr::variable(2, 0), z2 = RatExpr::variable(2, 1), one = RatExpr::constant(2, 1);
    RatExpr f = (one + z1) / (z2 * z2);
    CHECK(f.str() == "(1+Z1)/(Z2^2)");
    CHECK((f * f.inverse()) == one);
    CHECK((f - f).is_zero());
    CHECK((z1.pow(-2)).str() == "(1)/(Z1^2)");
    CHECK(((one + z1).pow(2) / (one + z1)) == one + z1);
    CHECK(RatExpr::monomial({2, -1}) == z1 * z1 / z2);
    CHECK(f.derivative(1) == RatExpr::constant(2, -2) * (one + z1) / z2.pow(3));
    CHECK_THROWS_AS(RatExpr(2).inverse(), DomainError);
    // Substitution is a homomorphism.
    std::vector<RatExpr> img{one / (one + z2), z1 * z2};
    CHECK((f * z1).substitute(img) == f.substitute(img) * z1.substitute(img));
}
