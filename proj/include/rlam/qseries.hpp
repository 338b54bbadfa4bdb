#pragma once

// Elements of Q(q) with cyclotomic denominators, truncated formal series in a
// quantum torus, and the compact quantum dilogarithm as a formal series.

#include "rlam/qtorus.hpp"

#include <complex>

namespace rlam {

// Laurent polynomial in q.
using QLaurent = std::map<int, Rational>;

// num / ∏ Φ_d(q)^{m_d}, reduced so that no Φ_d with m_d > 0 divides num.
class QFrac {
public:
    QFrac() = default;
    static QFrac constant(const Rational& c);
    static QFrac q_power(int k, const Rational& c = 1);
    // q* must not occur.
    static QFrac from_coeff(const QCoeff& c);

    const QLaurent& num() const { return num_; }
    const std::map<int, int>& den() const { return den_; }
    bool is_zero() const { return num_.empty(); }
    // this / (q^n - 1), n ≠ 0
    QFrac over_q_power_minus_one(int n) const;
    std::complex<double> eval(std::complex<double> q) const;

    QFrac operator-() const;
    friend QFrac operator+(const QFrac& a, const QFrac& b);
    friend QFrac operator-(const QFrac& a, const QFrac& b);
    friend QFrac operator*(const QFrac& a, const QFrac& b);
    friend bool operator==(const QFrac&, const QFrac&) = default;

    std::string str() const;

private:
    void reduce();
    QLaurent num_;
    std::map<int, int> den_;
};

// Φ_d as dense coefficients, lowest power first.
const std::vector<Rational>& cyclotomic(int d);

// Σ c_a X^a with Weyl monomials, truncated at weighted degree `order`
// (degree of X^a is w·a; all kept terms have degree ≥ 0).
class QSeries {
public:
    QSeries(QContext ctx, std::vector<int> weights, int order);
    static QSeries from_elem(const QContext& ctx, const std::vector<int>& weights, int order, const QElem& x);

    const QContext& context() const { return ctx_; }
    const std::vector<int>& weights() const { return w_; }
    int order() const { return order_; }
    const std::map<Exps, QFrac>& terms() const { return terms_; }
    int degree(const Exps& a) const;

    void add_term(const Exps& a, const QFrac& c);
    QSeries one() const;
    QSeries monomial(const Exps& a, const QFrac& c = QFrac::constant(1)) const;
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries scaled(const QFrac& c) const;
    // Needs degree-0 part exactly 1.
    QSeries inverse() const;

    std::string str() const;

private:
    QContext ctx_;
    std::vector<int> w_;
    int order_;
    std::map<Exps, QFrac> terms_;
};

// Highest d such that a and b agree in every degree ≤ d (a.order() if equal).
int agreement_order(const QSeries& a, const QSeries& b);

// c_n of ψ^{q^sign}(z) = Σ c_n z^n from ψ(q^{2 sign} z) = (1 + q^sign z) ψ(z),
// c_0 = 1, n ≤ order.
std::vector<QFrac> psi_coefficients(int sign, int order);
// Residual of the difference equation, coefficientwise; all zero when the
// coefficients solve it.
std::vector<QFrac> psi_recursion_residual(const std::vector<QFrac>& c, int sign);
// Σ c_n w^n for a series w with no degree-0 part.
QSeries psi_of(const QSeries& w, const std::vector<QFrac>& c);

struct SeriesCheck {
    std::string label;
    int agree = -1;
    std::string mismatch;
};

struct SeriesReport {
    int order = 0;
    int agree = -1;
    bool pass = false;
    std::vector<SeriesCheck> checks;
};

// ψ(U)ψ(V) = ψ(V)ψ(qVU)ψ(U) with UV = q²VU, in total degree ≤ order.
// perturb_index ≥ 1 adds 1 to that ψ coefficient.
SeriesReport verify_psi_pentagon(int order, int perturb_index = -1);
// ψ(X_k) X_i ψ(X_k)^{-1} against μ♯(X_i), as series in X_k.
SeriesReport verify_sharp_is_psi_conjugation(const Seed& s, int k, int order);

nlohmann::json to_json(const SeriesReport& r);

} // namespace rlam
