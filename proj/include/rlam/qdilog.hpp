#pragma once

// Non-compact quantum dilogarithm Φ^h via the (slanted) Barnes integral,
// the compact ψ^q, the flat F₀ and the combined functions F_Λ.

#include "rlam/report.hpp"

#include <complex>
#include <vector>

namespace rlam {

using cplx = std::complex<double>;

// Contour e^{iθ}Ω_a: the real line rotated by θ, passing above the origin
// along a half circle of radius a.
struct ContourSpec {
    cplx h;
    double a = 0.5;
    double theta = 0;
};

enum class QDMethod { barnes, slanted, compact_ratio, closed_form };
std::string to_string(QDMethod m);

struct QDValue {
    cplx value;
    double est_error = 0;
    QDMethod method = QDMethod::barnes;
    int shifts = 0;  // difference-equation steps used to reach the strip
};

// Throws UsageError naming the violated condition.
void check_admissible(const ContourSpec& c);
ContourSpec default_contour(cplx h);
// The strip is |Im(e^{iθ}z)| < strip_halfwidth.
double strip_halfwidth(const ContourSpec& c);
bool in_strip(const ContourSpec& c, cplx z);

// The integral on the given contour; DomainError outside the strip.
QDValue phi_direct(const ContourSpec& c, cplx z);
// Any z off the pole set: difference equations carry z into the strip.
QDValue phi(const ContourSpec& c, cplx z);
// Default contour; Re h < 0 is handled as Φ^h = 1/Φ^{-h}.
QDValue phi(cplx h, cplx z);

cplx c_const(cplx h);  // e^{-πi(h + 1/h)/12}

enum class ZeroPole { zero, pole };
// ±((2n+1)πi + (2m+1)πih)
cplx locate_zero_pole(cplx h, int n, int m, ZeroPole kind);
// Distance from z to the nearest pole of Φ^h (Re h >= 0), with its (n, m).
double pole_distance(cplx h, cplx z, int* n = nullptr, int* m = nullptr);
constexpr double kPoleGuard = 1e-6;

// ∏_{n≥1} (1 + q^{2n-1} z)^{-1}, |q| < 1. nmax = 0 picks the truncation with
// |q|^{2 nmax - 1}|z| < 1e-18.
QDValue psi_compact(cplx q, cplx z, int nmax = 0);
// ψ^{e^{πih}}(e^z) / ψ^{e^{-πi/h}}(e^{z/h}) for Im h > 0.
QDValue phi_ratio(cplx h, cplx z);
QDValue phi_ih_ratio(double hbar, cplx z);
// log ψ^q(z) = -Σ log(1 + q^{2n-1} z) from log q and log z, summed without
// forming q^{2n-1} z; valid for |z| beyond double range. Branch not principal.
cplx log_psi_compact(cplx log_q, cplx log_z);
// log Φ^h(z) through the compact ratio (Im h > 0), up to 2πi Z.
cplx log_phi_ratio(cplx h, cplx z);

// Φ^h(x) for h > 0 and real x of any size: the integral for moderate
// negative x, 1 where e^x and e^{x/h} drop below 1e-17, and the inversion
// relation Φ(x)Φ(-x) = c_h e^{x²/4πih} for x > 0.
QDValue phi_real(double h, double x);

// (1 + e^x)^{y/πi}; complex y uses the same formula.
cplx f0(double x, cplx y);
QDValue f0_contour(double x, double y, double a = 0.5);

// Λ = -1: Φ^ħ(x+ħy)/Φ^ħ(x-ħy); Λ = 1: Φ^{iħ}(x+iħy)Φ^{-iħ}(x-iħy); Λ = 0: F₀(x,y).
QDValue f_lambda(int lambda, double hbar, double x, double y);
// F_1 = Φ^{iħ}(z)/conj(Φ^{iħ}(z)) at z = x+iħy, from the log of the compact
// ratio; cheap and usable for large |y|.
cplx f1_phase(double hbar, double x, double y);

struct DiffSample {
    cplx delta;
    double res_h = 0;  // Φ(z+2πih) vs (1+e^{πih}e^z)Φ(z)
    double res_1 = 0;  // Φ(z+2πi) vs (1+e^{πi/h}e^{z/h})Φ(z)
};

struct DiffReport {
    cplx h;
    std::vector<DiffSample> samples;
    double max_res_h = 0, max_res_1 = 0;
};

// Both sides of each equation are evaluated as integrals on the default
// contour, at z = -s/2 + δ for the shift s, with δ on a grid^2 inside the strip.
// multiplier_sign = -1 flips the sign in front of the exponential.
DiffReport check_difference_eqs(cplx h, int grid = 5, double multiplier_sign = 1);

// SB2..SB5 and contour invariance for one h.
Report qdilog_suite(cplx h);
// Closed form against the contour integral on a grid, plus the difference equation in y.
Report f0_suite();
// Unitarity and involutivity of F_Λ on a grid.
Report f_lambda_suite(const std::vector<double>& hbars, int grid = 5);

nlohmann::json to_json(const QDValue& v);
nlohmann::json to_json(const DiffReport& r);
cplx parse_complex(const std::string& s);

} // namespace rlam
