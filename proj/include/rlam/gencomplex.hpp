#pragma once

// Generalized complex numbers R_Λ = R[ℓ]/(ℓ² + Λ) for Λ ∈ {-1, 0, +1}, their
// complexification C_Λ with its star structure, and the admissible function
// calculus on R_Λ.

#include "rlam/errors.hpp"
#include "rlam/rational.hpp"

#include <json.hpp>

#include <array>
#include <complex>
#include <functional>
#include <string>

namespace rlam {

using cplx = std::complex<double>;

inline int check_lambda(int lambda) {
    if (lambda < -1 || lambda > 1)
        throw UsageError("lambda must be -1, 0 or 1, got " + std::to_string(lambda));
    return lambda;
}

// x + y ℓ. T is double for the floating backend, Rational for the exact one.
template <class T>
struct GC {
    int lambda = 0;
    T re{};
    T im{};

    GC() = default;
    GC(int lam, T x, T y) : lambda(check_lambda(lam)), re(std::move(x)), im(std::move(y)) {}

    static GC unit(int lam) { return GC(lam, T(0), T(1)); }
    static GC real(int lam, T x) { return GC(lam, std::move(x), T(0)); }

    friend bool operator==(const GC& a, const GC& b) {
        return a.lambda == b.lambda && a.re == b.re && a.im == b.im;
    }
};

using GCd = GC<double>;
using GCq = GC<Rational>;

namespace detail {
template <class T>
void same_lambda(const GC<T>& a, const GC<T>& b) {
    if (a.lambda != b.lambda)
        throw UsageError("mixed lambda values " + std::to_string(a.lambda) + " and " +
                         std::to_string(b.lambda));
}
} // namespace detail

template <class T>
GC<T> gc_add(const GC<T>& a, const GC<T>& b) {
    detail::same_lambda(a, b);
    return GC<T>(a.lambda, a.re + b.re, a.im + b.im);
}

template <class T>
GC<T> gc_sub(const GC<T>& a, const GC<T>& b) {
    detail::same_lambda(a, b);
    return GC<T>(a.lambda, a.re - b.re, a.im - b.im);
}

template <class T>
GC<T> gc_neg(const GC<T>& a) {
    return GC<T>(a.lambda, T(-a.re), T(-a.im));
}

// (x,y)(u,v) = (xu - Λyv, xv + yu)
template <class T>
GC<T> gc_mul(const GC<T>& a, const GC<T>& b) {
    detail::same_lambda(a, b);
    T lam(a.lambda);
    return GC<T>(a.lambda, T(a.re * b.re - lam * a.im * b.im), T(a.re * b.im + a.im * b.re));
}

template <class T>
GC<T> gc_scale(const T& s, const GC<T>& a) {
    return GC<T>(a.lambda, T(s * a.re), T(s * a.im));
}

// x² + Λy², the determinant of the embedding.
template <class T>
T gc_norm(const GC<T>& a) {
    return T(a.re * a.re + T(a.lambda) * a.im * a.im);
}

template <class T>
GC<T> gc_inverse(const GC<T>& a) {
    T n = gc_norm(a);
    if (n == T(0)) throw DomainError("element is a zero divisor and has no inverse");
    return GC<T>(a.lambda, T(a.re / n), T(-a.im / n));
}

// Row-major [[x, y], [-Λy, x]].
template <class T>
std::array<T, 4> gc_embed(const GC<T>& a) {
    return {a.re, a.im, T(-T(a.lambda) * a.im), a.re};
}

template <class T>
struct DiagPair {
    // First and second diagonal coordinates, each as (real, imaginary) parts.
    T first_re{}, first_im{}, second_re{}, second_im{};
};

// Λ=-1: (x+y, x-y). Λ=+1: (x+iy, x-iy). Λ=0 is not diagonalizable.
template <class T>
DiagPair<T> gc_diagonalize(const GC<T>& a) {
    switch (a.lambda) {
    case -1: return {T(a.re + a.im), T(0), T(a.re - a.im), T(0)};
    case 1: return {a.re, a.im, a.re, T(-a.im)};
    default: throw DomainError("lambda = 0 elements are not diagonalizable");
    }
}

GCd gc_exp(const GCd& a);
// Inverse of gc_exp on R_Λ^+; the Λ=+1 branch has im in (-π, π].
GCd gc_log(const GCd& a);
bool gc_in_positive_part(const GCd& a);

GCd to_double(const GCq& a);

// Element of C_Λ. For Λ=±1 it is a + bℓ with complex a, b. For Λ=0 the ℓ and
// ℓ* sectors are independent: a + bℓ + cℓ* + dℓℓ*, with ℓ² = ℓ*² = 0.
struct GCC {
    int lambda = 0;
    cplx a{}, b{}, c{}, d{};

    GCC() = default;
    GCC(int lam, cplx a0, cplx b0, cplx c0 = {}, cplx d0 = {});
    static GCC from_gc(const GCd& x);

    friend bool operator==(const GCC&, const GCC&) = default;
};

GCC gcc_add(const GCC& x, const GCC& y);
GCC gcc_mul(const GCC& x, const GCC& y);
GCC gcc_scale(cplx s, const GCC& x);
// Conjugate-linear involution: ℓ* = -Λℓ for Λ=±1, ℓ <-> ℓ* for Λ=0.
GCC gcc_star(const GCC& x);
double gcc_distance(const GCC& x, const GCC& y);
// Real part view: throws DomainError if any imaginary component exceeds tol.
GCd gcc_real(const GCC& x, double tol = 1e-12);

// f⁺, f⁻ act on the two diagonal coordinates (Λ=±1); f0 and its derivative
// drive the Λ=0 case.
struct AdmissibleFn {
    std::function<cplx(cplx)> f_plus;
    std::function<cplx(cplx)> f_minus;
    std::function<cplx(cplx)> f0;
    std::function<cplx(cplx)> f0_prime;

    static AdmissibleFn from_scalar(std::function<cplx(cplx)> f, std::function<cplx(cplx)> fprime);
    static AdmissibleFn exp();
};

GCC apply_admissible(const AdmissibleFn& f, const GCd& z);

nlohmann::json to_json(const GCd& a);
nlohmann::json to_json(const GCq& a);
GCd gcd_from_json(const nlohmann::json& j);
GCq gcq_from_json(const nlohmann::json& j);

std::string to_string(const GCq& a);

} // namespace rlam
