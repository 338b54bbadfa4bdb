#include "rlam/qdilog.hpp"

#include "rlam/gencomplex.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

namespace rlam {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0, 1};
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

// Stable 1/sinh(w) away from iπZ.
cplx inv_sinh(cplx w) {
    if (w.real() >= 0) {
        cplx e = std::exp(-w);
        return 2.0 * e / (1.0 - e * e);
    }
    cplx e = std::exp(w);
    return -2.0 * e / (1.0 - e * e);
}

struct Piece {
    cplx value;
    double error;
};

Piece ray(const std::function<cplx(double)>& f, double lo, double hi) {
    double err = 0;
    cplx v = GK::integrate(f, lo, hi, 20, 1e-14, &err);
    return {v, err};
}

// ∫ over e^{iθ}Ω_a of g(p) dp/p, where g decays like e^{-rate_±|p|} on the rays.
Piece contour_integral(const std::function<cplx(cplx)>& g, double a, double theta, double rate_plus, double rate_minus) {
    const cplx r = std::polar(1.0, theta);
    auto on_ray = [&](double u) {
        cplx p = r * u;
        return g(p) / u;
    };
    double up = a + 52.0 / rate_plus, um = a + 52.0 / rate_minus;
    Piece plus = ray(on_ray, a, up), minus = ray(on_ray, -um, -a);
    // Half circle from -a to a above the origin: p = r a e^{iφ}, φ: π → 0, dp/p = i dφ.
    auto on_arc = [&](double phi) { return -kI * g(r * std::polar(a, phi)); };
    double err = 0;
    cplx arc = GK::integrate(on_arc, 0.0, kPi, 8, 1e-14, &err);
    return {plus.value + minus.value + arc, plus.error + minus.error + err};
}

} // namespace

std::string to_string(QDMethod m) {
    switch (m) {
    case QDMethod::barnes: return "barnes";
    case QDMethod::slanted: return "slanted";
    case QDMethod::compact_ratio: return "compact_ratio";
    case QDMethod::closed_form: return "closed_form";
    }
    return "?";
}

void check_admissible(const ContourSpec& c) {
    const cplx h = c.h;
    if (h == 0.0) throw DomainError("h must be nonzero");
    if (h.real() < 0) throw UsageError("the contour integral needs Re(h) >= 0");
    double amax = std::min(1.0, 1.0 / std::abs(h));
    if (!(c.a > 0 && c.a < amax)) throw UsageError("radius a must lie in (0, " + std::to_string(amax) + ")");
    if (!(c.theta > -kPi / 2 && c.theta < kPi / 2)) throw UsageError("slant angle must lie in (-pi/2, pi/2)");
    if (h.imag() > 0 && c.theta > 0) throw UsageError("Im(h) > 0 needs a slant angle in (-pi/2, 0]");
    if (h.imag() < 0 && c.theta < 0) throw UsageError("Im(h) < 0 needs a slant angle in [0, pi/2)");
    if (h.real() == 0 && c.theta == 0) throw UsageError("purely imaginary h needs a nonzero slant angle");
}

ContourSpec default_contour(cplx h) {
    if (h == 0.0) throw DomainError("h must be nonzero");
    ContourSpec c{h, 0.5 * std::min(1.0, 1.0 / std::abs(h)), 0.0};
    if (h.imag() > 0) c.theta = -kPi / 4;
    if (h.imag() < 0) c.theta = kPi / 4;
    return c;
}

double strip_halfwidth(const ContourSpec& c) {
    return kPi * (std::cos(c.theta) + (c.h * std::polar(1.0, c.theta)).real());
}

bool in_strip(const ContourSpec& c, cplx z) {
    return std::abs((std::polar(1.0, c.theta) * z).imag()) < strip_halfwidth(c);
}

cplx c_const(cplx h) { return std::exp(-kPi * kI * (h + 1.0 / h) / 12.0); }

cplx locate_zero_pole(cplx h, int n, int m, ZeroPole kind) {
    if (n < 0 || m < 0) throw UsageError("lattice indices must be non-negative");
    cplx z = (2.0 * n + 1) * kPi * kI + (2.0 * m + 1) * kPi * kI * h;
    return kind == ZeroPole::zero ? z : -z;
}

double pole_distance(cplx h, cplx z, int* n_out, int* m_out) {
    // |(2n+1) + (2m+1)h| bounds both 2n+1 and (2m+1)|h| when Re h >= 0.
    const int nmax = static_cast<int>(std::abs(z) / kPi) + 2;
    const int mmax = static_cast<int>(std::abs(z) / (kPi * std::abs(h))) + 2;
    double best = INFINITY;
    for (int n = 0; n <= nmax; ++n)
        for (int m = 0; m <= mmax; ++m) {
            double d = std::abs(z - locate_zero_pole(h, n, m, ZeroPole::pole));
            if (d < best) {
                best = d;
                if (n_out) *n_out = n;
                if (m_out) *m_out = m;
            }
        }
    return best;
}

static void guard_pole(cplx h, cplx z, const char* what) {
    int n = 0, m = 0;
    if (pole_distance(h, z, &n, &m) < kPoleGuard)
        throw PoleError(std::string(what) + ": z is within 1e-6 of the pole -(2n+1)pi i - (2m+1)pi i h with n=" +
                        std::to_string(n) + ", m=" + std::to_string(m));
}

QDValue phi_direct(const ContourSpec& c, cplx z) {
    check_admissible(c);
    const double W = strip_halfwidth(c);
    const double t = (std::polar(1.0, c.theta) * z).imag();
    if (std::abs(t) >= W) throw DomainError("z lies outside the strip of the chosen contour");
    guard_pole(c.h, z, "phi");
    const cplx h = c.h;
    auto g = [&](cplx p) { return std::exp(-kI * p * z) * inv_sinh(kPi * p) * inv_sinh(kPi * h * p); };
    Piece I = contour_integral(g, c.a, c.theta, W - t, W + t);
    QDValue v;
    v.value = std::exp(-0.25 * I.value);
    v.est_error = std::abs(v.value) * (0.25 * I.error + 1e-15);
    v.method = c.theta == 0 ? QDMethod::barnes : QDMethod::slanted;
    return v;
}

QDValue phi(const ContourSpec& c, cplx z) {
    check_admissible(c);
    guard_pole(c.h, z, "phi");
    const cplx h = c.h, rot = std::polar(1.0, c.theta);
    const double W = strip_halfwidth(c);
    const double s1 = 2 * kPi * std::cos(c.theta), sh = 2 * kPi * (h * rot).real();
    double t = (rot * z).imag();
    long n1 = 0, mh = 0;
    if (std::abs(t) > W / 2) {
        if (s1 >= sh) {
            n1 = std::lround(t / s1);
            t -= n1 * s1;
            mh = std::lround(t / sh);
        } else {
            mh = std::lround(t / sh);
            t -= mh * sh;
            n1 = std::lround(t / s1);
        }
    }
    const cplx step1 = 2 * kPi * kI, steph = 2 * kPi * kI * h;
    const cplx eh = std::exp(kPi * kI * h), e1 = std::exp(kPi * kI / h);
    auto mult_h = [&](cplx w) { return 1.0 + eh * std::exp(w); };
    auto mult_1 = [&](cplx w) { return 1.0 + e1 * std::exp(w / h); };
    cplx w = z - static_cast<double>(n1) * step1 - static_cast<double>(mh) * steph;
    QDValue base = phi_direct(c, w);
    cplx val = base.value;
    auto climb = [&](long count, cplx step, const auto& mult) {
        for (long j = 0; j < count; ++j) {
            val *= mult(w);
            w += step;
        }
        for (long j = 0; j < -count; ++j) {
            w -= step;
            cplx m = mult(w);
            if (std::abs(m) < 1e-12) throw PoleError("phi: shift path meets a pole");
            val /= m;
        }
    };
    climb(mh, steph, mult_h);
    climb(n1, step1, mult_1);
    QDValue v;
    v.value = val;
    v.shifts = static_cast<int>(std::labs(n1) + std::labs(mh));
    v.est_error = std::abs(val) * (base.est_error / std::abs(base.value) + 1e-15 * (1 + v.shifts));
    v.method = base.method;
    return v;
}

QDValue phi(cplx h, cplx z) {
    if (h == 0.0) throw DomainError("h must be nonzero");
    if (h.real() < 0) {
        // Φ^h = 1/Φ^{-h}; its poles are the zeros of Φ^{-h}.
        if (pole_distance(-h, -z) < kPoleGuard) throw PoleError("phi: z is within 1e-6 of a pole of 1/phi(-h)");
        QDValue v = phi(-h, z);
        v.value = 1.0 / v.value;
        v.est_error = v.est_error * std::norm(v.value);
        return v;
    }
    return phi(default_contour(h), z);
}

QDValue psi_compact(cplx q, cplx z, int nmax) {
    const double aq = std::abs(q);
    if (aq >= 1) throw DomainError("compact quantum dilogarithm needs |q| < 1");
    if (nmax < 0) throw UsageError("truncation must be non-negative");
    QDValue v{1.0, 0.0, QDMethod::closed_form, 0};
    const double az = std::abs(z);
    if (az == 0) return v;
    if (nmax == 0) {
        nmax = 1;
        while (std::pow(aq, 2 * nmax - 1) * az >= 1e-18) ++nmax;
    }
    cplx prod = 1, qn = q;
    const cplx q2 = q * q;
    for (int n = 1; n <= nmax; ++n) {
        cplx f = 1.0 + qn * z;
        if (std::abs(f) < 1e-14) throw PoleError("psi: factor " + std::to_string(n) + " vanishes");
        prod /= f;
        qn *= q2;
    }
    v.value = prod;
    double tail = std::pow(aq, 2 * nmax + 1) * az / (1 - aq * aq);
    v.est_error = std::abs(prod) * (tail + 1e-16 * nmax);
    return v;
}

QDValue phi_ratio(cplx h, cplx z) {
    if (!(h.imag() > 0)) throw DomainError("the compact ratio needs Im(h) > 0");
    guard_pole(h, z, "phi_ratio");
    QDValue a = psi_compact(std::exp(kPi * kI * h), std::exp(z));
    QDValue b = psi_compact(std::exp(-kPi * kI / h), std::exp(z / h));
    QDValue v;
    v.value = a.value / b.value;
    v.est_error = std::abs(v.value) * (a.est_error / std::abs(a.value) + b.est_error / std::abs(b.value));
    v.method = QDMethod::compact_ratio;
    return v;
}

QDValue phi_ih_ratio(double hbar, cplx z) {
    if (!(hbar > 0)) throw DomainError("hbar must be positive");
    return phi_ratio(cplx(0, hbar), z);
}

cplx log_psi_compact(cplx log_q, cplx log_z) {
    if (!(log_q.real() < 0)) throw DomainError("compact quantum dilogarithm needs |q| < 1");
    cplx acc = 0, u = log_q + log_z;
    const cplx step = 2.0 * log_q;
    while (u.real() > -42) {
        acc -= u.real() > 0 ? u + std::log(1.0 + std::exp(-u)) : std::log(1.0 + std::exp(u));
        u += step;
    }
    return acc;
}

cplx log_phi_ratio(cplx h, cplx z) {
    if (!(h.imag() > 0)) throw DomainError("the compact ratio needs Im(h) > 0");
    return log_psi_compact(kPi * kI * h, z) - log_psi_compact(-kPi * kI / h, z / h);
}

QDValue phi_real(double h, double x) {
    if (!(h > 0)) throw DomainError("phi_real needs h > 0");
    const double far = 40 * std::max(1.0, h);
    auto left = [&](double v) { return v < -far ? QDValue{1.0, 1e-17, QDMethod::closed_form, 0} : phi(cplx(h), cplx(v)); };
    if (x <= 0) return left(x);
    QDValue m = left(-x);
    QDValue v = m;
    v.value = c_const(h) * std::exp(cplx(x * x) / (4 * kPi * kI * h)) / m.value;
    v.est_error = m.est_error + 1e-16 * x * x / (4 * kPi * h);
    return v;
}

cplx f0(double x, cplx y) {
    double l = x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    return std::exp(y * l / (kPi * kI));
}

QDValue f0_contour(double x, double y, double a) {
    if (!(a > 0 && a < 1)) throw UsageError("radius a must lie in (0, 1)");
    QDValue v{1.0, 0.0, QDMethod::barnes, 0};
    if (y == 0) return v;
    auto g = [&](cplx p) { return std::exp(-kI * p * x) * inv_sinh(kPi * p); };
    Piece I = contour_integral(g, a, 0.0, kPi, kPi);
    cplx s = -y / (2 * kPi * kI);
    v.value = std::exp(s * I.value);
    v.est_error = std::abs(v.value) * (std::abs(s) * I.error + 1e-15);
    return v;
}

QDValue f_lambda(int lambda, double hbar, double x, double y) {
    check_lambda(lambda);
    if (!(hbar > 0)) throw DomainError("hbar must be positive");
    if (lambda == 0) return {f0(x, y), 1e-15, QDMethod::closed_form, 0};
    QDValue a, b;
    cplx val;
    if (lambda == -1) {
        a = phi(cplx(hbar), cplx(x + hbar * y));
        b = phi(cplx(hbar), cplx(x - hbar * y));
        val = a.value / b.value;
    } else {
        a = phi(cplx(0, hbar), cplx(x, hbar * y));
        b = phi(cplx(0, -hbar), cplx(x, -hbar * y));
        val = a.value * b.value;
    }
    QDValue v;
    v.value = val;
    v.est_error = std::abs(val) * (a.est_error / std::abs(a.value) + b.est_error / std::abs(b.value));
    v.method = a.method;
    v.shifts = a.shifts + b.shifts;
    return v;
}

cplx f1_phase(double hbar, double x, double y) {
    if (!(hbar > 0)) throw DomainError("hbar must be positive");
    return std::polar(1.0, 2 * log_phi_ratio(cplx(0, hbar), cplx(x, hbar * y)).imag());
}

DiffReport check_difference_eqs(cplx h, int grid, double multiplier_sign) {
    if (grid < 1) throw UsageError("sample grid needs at least one point");
    ContourSpec c = default_contour(h);
    check_admissible(c);
    const cplx rot = std::polar(1.0, c.theta);
    const double margin = std::min(kPi * std::cos(c.theta), kPi * (h * rot).real());
    const cplx s1 = 2 * kPi * kI, sh = 2 * kPi * kI * h;
    const cplx eh = std::exp(kPi * kI * h), e1 = std::exp(kPi * kI / h);
    DiffReport rep;
    rep.h = h;
    auto lin = [&](int k, double lo, double hi) { return grid == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (grid - 1); };
    for (int j = 0; j < grid; ++j)
        for (int k = 0; k < grid; ++k) {
            cplx delta = std::conj(rot) * cplx(lin(j, -1, 1), lin(k, -0.4 * margin, 0.4 * margin));
            DiffSample s{delta};
            cplx z = -0.5 * sh + delta;
            cplx lhs = phi_direct(c, z + sh).value;
            cplx rhs = (1.0 + multiplier_sign * eh * std::exp(z)) * phi_direct(c, z).value;
            s.res_h = std::abs(lhs - rhs) / std::abs(lhs);
            z = -0.5 * s1 + delta;
            lhs = phi_direct(c, z + s1).value;
            rhs = (1.0 + multiplier_sign * e1 * std::exp(z / h)) * phi_direct(c, z).value;
            s.res_1 = std::abs(lhs - rhs) / std::abs(lhs);
            rep.max_res_h = std::max(rep.max_res_h, s.res_h);
            rep.max_res_1 = std::max(rep.max_res_1, s.res_1);
            rep.samples.push_back(s);
        }
    return rep;
}

Report qdilog_suite(cplx h) {
    Report rep;
    const std::string hs = "h=" + std::to_string(h.real()) + (h.imag() < 0 ? "" : "+") + std::to_string(h.imag()) + "i";

    DiffReport d = check_difference_eqs(h);
    rep.add(make_record("SB2 difference equations " + hs, "SB2", std::max(d.max_res_h, d.max_res_1),
                        h.imag() == 0 ? 1e-8 : 1e-6, to_json(d)));

    const std::vector<cplx> zs{{0.3, 0.1}, {-0.5, 0.2}, {0.7, -0.3}, {0, 0}, {1.2, 0}};
    double inv = 0, uni = 0;
    for (cplx z : zs) {
        cplx lhs = phi(h, z).value * phi(h, -z).value;
        cplx rhs = c_const(h) * std::exp(z * z / (4 * kPi * kI * h));
        inv = std::max(inv, std::abs(lhs - rhs) / std::abs(rhs));
        uni = std::max(uni, std::abs(std::conj(phi(h, z).value) * phi(std::conj(h), std::conj(z)).value - 1.0));
    }
    rep.add(make_record("SB3 involutivity " + hs, "SB3", inv, 1e-8));
    rep.add(make_record("SB5 unitarity " + hs, "SB5", uni, 1e-8));

    if (h.imag() > 0) {
        double ratio = 0;
        for (cplx z : zs) ratio = std::max(ratio, std::abs(phi(h, z).value - phi_ratio(h, z).value));
        rep.add(make_record("SB4 compact ratio " + hs, "SB4", ratio, 1e-6));
    }

    ContourSpec base = default_contour(h);
    const double amax = std::min(1.0, 1.0 / std::abs(h));
    std::vector<double> thetas;
    if (h.imag() > 0) thetas = {-0.2, -0.5, -0.9};
    else if (h.imag() < 0) thetas = {0.2, 0.5, 0.9};
    else thetas = {-0.3, 0.0, 0.3};
    const cplx z0{0.3, 0.1};
    cplx ref = phi_direct(base, z0).value;
    double spread = 0;
    for (double f : {0.25, 0.5, 0.75})
        for (double th : thetas) {
            ContourSpec c{h, f * amax, th};
            if (!in_strip(c, z0)) continue;
            spread = std::max(spread, std::abs(phi_direct(c, z0).value - ref) / std::abs(ref));
        }
    rep.add(make_record("contour invariance " + hs, "contour independence", spread, 1e-9));

    cplx p0 = locate_zero_pole(h, 0, 0, ZeroPole::pole), z0z = locate_zero_pole(h, 0, 0, ZeroPole::zero);
    double near_pole = std::abs(phi(h, p0 + 1e-5).value), near_zero = std::abs(phi(h, z0z + 1e-5).value);
    rep.add(make_record("SB1 pole and zero probe " + hs, "SB1", std::max(1e3 / near_pole, near_zero / 1e-3), 1.0,
                        {{"abs_near_pole", near_pole}, {"abs_near_zero", near_zero}}));
    return rep;
}

Report f0_suite() {
    Report rep;
    double closed = 0, radius = 0, diff = 0;
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) {
            double x = -2 + j, y = -2 + k;
            cplx c = f0(x, y);
            closed = std::max(closed, std::abs(c - f0_contour(x, y, 0.5).value));
            radius = std::max(radius, std::abs(f0_contour(x, y, 0.2).value - f0_contour(x, y, 0.6).value));
            cplx shifted = f0(x, cplx(y, kPi));
            diff = std::max(diff, std::abs(shifted - (1 + std::exp(x)) * c) / std::abs(shifted));
        }
    rep.add(make_record("F0 closed form vs contour", "flat quantum dilogarithm", closed, 1e-8));
    rep.add(make_record("F0 contour radius independence", "flat quantum dilogarithm", radius, 1e-9));
    rep.add(make_record("F0 difference equation", "F0 difference equation", diff, 1e-12));
    return rep;
}

Report f_lambda_suite(const std::vector<double>& hbars, int grid) {
    Report rep;
    for (int lam : {-1, 0, 1})
        for (double hb : hbars) {
            double uni = 0, inv = 0;
            for (int j = 0; j < grid; ++j)
                for (int k = 0; k < grid; ++k) {
                    double x = grid == 1 ? 0.7 : -1.5 + 3.0 * j / (grid - 1);
                    double y = grid == 1 ? 1.3 : -1.5 + 3.0 * k / (grid - 1);
                    cplx f = f_lambda(lam, hb, x, y).value;
                    uni = std::max(uni, std::abs(std::abs(f) - 1));
                    cplx g = f_lambda(lam, hb, -x, -y).value;
                    inv = std::max(inv, std::abs(f * g - std::exp(x * y / (kPi * kI))));
                }
            std::string tag = "lambda=" + std::to_string(lam) + " hbar=" + std::to_string(hb);
            rep.add(make_record("F unitarity " + tag, "F_Lambda unitarity", uni, 1e-8));
            rep.add(make_record("F involutivity " + tag, "F_Lambda involutivity", inv, 1e-7));
        }
    return rep;
}

nlohmann::json to_json(const QDValue& v) {
    return {{"re", v.value.real()}, {"im", v.value.imag()}, {"abs", std::abs(v.value)},
            {"est_error", v.est_error}, {"method", to_string(v.method)}, {"shifts", v.shifts}};
}

nlohmann::json to_json(const DiffReport& r) {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& x : r.samples)
        s.push_back({{"delta_re", x.delta.real()}, {"delta_im", x.delta.imag()}, {"res_h", x.res_h}, {"res_1", x.res_1}});
    return {{"h_re", r.h.real()}, {"h_im", r.h.imag()}, {"max_res_h", r.max_res_h}, {"max_res_1", r.max_res_1},
            {"samples", s}};
}

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch == 'j' ? 'i' : ch;
    if (s.empty()) throw UsageError("empty complex number");
    auto num = [&](std::string t, bool imag_part) -> double {
        if (imag_part) {
            auto p = t.find('i');
            t.erase(p, 1);
            if (t.empty() || t == "+") return 1;
            if (t == "-") return -1;
        }
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw UsageError("cannot parse complex number '" + text + "'");
        }
        if (used != t.size()) throw UsageError("cannot parse complex number '" + text + "'");
        return v;
    };
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
    if (split == std::string::npos) {
        bool im = s.find('i') != std::string::npos;
        return im ? cplx(0, num(s, true)) : cplx(num(s, false), 0);
    }
    std::string a = s.substr(0, split), b = s.substr(split);
    bool ai = a.find('i') != std::string::npos, bi = b.find('i') != std::string::npos;
    if (ai == bi) throw UsageError("cannot parse complex number '" + text + "'");
    return ai ? cplx(num(b, false), num(a, true)) : cplx(num(a, false), num(b, true));
}

} // namespace rlam
