#include "rlam/gencomplex.hpp"

#include <cmath>
#include <numbers>

namespace rlam {

GCd gc_exp(const GCd& a) {
    const double x = a.re, y = a.im;
    switch (a.lambda) {
    case -1: {
        double p = std::exp(x + y), m = std::exp(x - y);
        return {-1, (p + m) / 2, (p - m) / 2};
    }
    case 1: {
        double r = std::exp(x);
        return {1, r * std::cos(y), r * std::sin(y)};
    }
    default: {
        double r = std::exp(x);
        return {0, r, r * y};
    }
    }
}

bool gc_in_positive_part(const GCd& a) {
    switch (a.lambda) {
    case -1: return a.re + a.im > 0 && a.re - a.im > 0;
    case 1: return a.re != 0 || a.im != 0;
    default: return a.re > 0;
    }
}

GCd gc_log(const GCd& a) {
    if (!gc_in_positive_part(a))
        throw DomainError("log undefined outside the positive part (lambda = " +
                          std::to_string(a.lambda) + ")");
    const double x = a.re, y = a.im;
    switch (a.lambda) {
    case -1: {
        double lp = std::log(x + y), lm = std::log(x - y);
        return {-1, (lp + lm) / 2, (lp - lm) / 2};
    }
    case 1: {
        double th = std::atan2(y, x);
        if (th == -std::numbers::pi) th = std::numbers::pi;
        return {1, 0.5 * std::log(x * x + y * y), th};
    }
    default: return {0, std::log(x), y / x};
    }
}

GCd to_double(const GCq& a) { return {a.lambda, a.re.get_d(), a.im.get_d()}; }

GCC::GCC(int lam, cplx a0, cplx b0, cplx c0, cplx d0)
    : lambda(check_lambda(lam)), a(a0), b(b0), c(c0), d(d0) {
    if (lam != 0 && (c0 != cplx{} || d0 != cplx{}))
        throw UsageError("starred sector only exists for lambda = 0");
}

GCC GCC::from_gc(const GCd& x) { return GCC(x.lambda, x.re, x.im); }

static void same_lambda(const GCC& x, const GCC& y) {
    if (x.lambda != y.lambda) throw UsageError("mixed lambda values in C_lambda arithmetic");
}

GCC gcc_add(const GCC& x, const GCC& y) {
    same_lambda(x, y);
    GCC r = x;
    r.a += y.a;
    r.b += y.b;
    r.c += y.c;
    r.d += y.d;
    return r;
}

GCC gcc_mul(const GCC& x, const GCC& y) {
    same_lambda(x, y);
    GCC r;
    r.lambda = x.lambda;
    if (x.lambda != 0) {
        r.a = x.a * y.a - double(x.lambda) * x.b * y.b;
        r.b = x.a * y.b + x.b * y.a;
        return r;
    }
    r.a = x.a * y.a;
    r.b = x.a * y.b + x.b * y.a;
    r.c = x.a * y.c + x.c * y.a;
    r.d = x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b;
    return r;
}

GCC gcc_scale(cplx s, const GCC& x) {
    GCC r = x;
    r.a *= s;
    r.b *= s;
    r.c *= s;
    r.d *= s;
    return r;
}

GCC gcc_star(const GCC& x) {
    GCC r;
    r.lambda = x.lambda;
    r.a = std::conj(x.a);
    if (x.lambda != 0) {
        r.b = -double(x.lambda) * std::conj(x.b);
        return r;
    }
    r.b = std::conj(x.c);
    r.c = std::conj(x.b);
    r.d = std::conj(x.d);
    return r;
}

double gcc_distance(const GCC& x, const GCC& y) {
    same_lambda(x, y);
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c),
                     std::abs(x.d - y.d)});
}

GCd gcc_real(const GCC& x, double tol) {
    double scale = std::max(1.0, std::max(std::abs(x.a), std::abs(x.b)));
    if (std::abs(x.a.imag()) > tol * scale || std::abs(x.b.imag()) > tol * scale ||
        std::abs(x.c) > tol * scale || std::abs(x.d) > tol * scale)
        throw DomainError("C_lambda element has a non-real component");
    return {x.lambda, x.a.real(), x.b.real()};
}

AdmissibleFn AdmissibleFn::from_scalar(std::function<cplx(cplx)> f,
                                       std::function<cplx(cplx)> fprime) {
    AdmissibleFn r;
    r.f_plus = f;
    r.f_minus = f;
    r.f0 = std::move(f);
    r.f0_prime = std::move(fprime);
    return r;
}

AdmissibleFn AdmissibleFn::exp() {
    auto e = [](cplx z) { return std::exp(z); };
    return from_scalar(e, e);
}

GCC apply_admissible(const AdmissibleFn& f, const GCd& z) {
    const double x = z.re, y = z.im;
    switch (z.lambda) {
    case -1: {
        if (!f.f_plus || !f.f_minus) throw UsageError("admissible function lacks f+/f-");
        cplx a = f.f_plus(x + y), b = f.f_minus(x - y);
        return GCC(-1, (a + b) / 2.0, (a - b) / 2.0);
    }
    case 1: {
        if (!f.f_plus || !f.f_minus) throw UsageError("admissible function lacks f+/f-");
        cplx a = f.f_plus(cplx(x, y)), b = f.f_minus(cplx(x, -y));
        return GCC(1, (a + b) / 2.0, (a - b) / cplx(0, 2));
    }
    default:
        if (!f.f0 || !f.f0_prime) throw UsageError("admissible function lacks f0/f0'");
        return GCC(0, f.f0(x), f.f0_prime(x) * y);
    }
}

nlohmann::json to_json(const GCd& a) { return {{"lambda", a.lambda}, {"re", a.re}, {"im", a.im}}; }

nlohmann::json to_json(const GCq& a) {
    return {{"lambda", a.lambda}, {"re", to_string(a.re)}, {"im", to_string(a.im)}};
}

static const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw UsageError(std::string("generalized complex value: missing field '") + name + "'");
    return j.at(name);
}

static int lambda_field(const nlohmann::json& j) {
    const auto& l = field(j, "lambda");
    if (!l.is_number_integer()) throw UsageError("generalized complex value: field 'lambda' must be an integer");
    return check_lambda(l.get<int>());
}

GCd gcd_from_json(const nlohmann::json& j) {
    int lam = lambda_field(j);
    auto num = [&](const char* name) {
        const auto& v = field(j, name);
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
        throw UsageError(std::string("generalized complex value: field '") + name + "' is not numeric");
    };
    return {lam, num("re"), num("im")};
}

GCq gcq_from_json(const nlohmann::json& j) {
    int lam = lambda_field(j);
    auto num = [&](const char* name) {
        const auto& v = field(j, name);
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw UsageError(std::string("generalized complex value: field '") + name +
                         "' must be an exact \"p/q\" string");
    };
    return {lam, num("re"), num("im")};
}

std::string to_string(const GCq& a) {
    return "(" + to_string(a.re) + ", " + to_string(a.im) + ")_" + std::to_string(a.lambda);
}

} // namespace rlam
