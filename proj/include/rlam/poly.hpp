#pragma once

// Sparse multivariate polynomials over Q and reduced rational functions.

#include "rlam/errors.hpp"
#include "rlam/gencomplex.hpp"
#include "rlam/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace rlam {

using Exps = std::vector<int>;

class Poly {
public:
    using Terms = std::map<Exps, Rational>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}
    static Poly constant(int nvars, const Rational& c);
    static Poly variable(int nvars, int v, int power = 1);
    static Poly monomial(const Exps& e, const Rational& c = 1);

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    Rational constant_term() const;
    // Lex-greatest term (variable 0 most significant).
    const std::pair<const Exps, Rational>& leading() const;
    int degree(int v) const;
    int total_degree() const;
    int top_variable() const;  // -1 for constants

    void add_term(const Exps& e, const Rational& c);

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) = default;

    Poly pow(unsigned k) const;
    Poly derivative(int v) const;
    // Coefficients in variable v, indexed by degree.
    std::vector<Poly> coeffs_in(int v) const;
    static Poly from_coeffs(const std::vector<Poly>& c, int v, int nvars);
    // Componentwise minimum exponent over all terms.
    Exps min_exponents() const;

    template <class R, class Ring>
    R evaluate(const std::vector<R>& point, const Ring& ring) const;

private:
    int nvars_ = 0;
    Terms terms_;
};

// Throws if b does not divide a exactly.
Poly divide_exact(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);
// Scales so the lex-leading coefficient is 1.
Poly make_monic(const Poly& p);

std::string to_string(const Poly& p, const std::vector<std::string>& names);

// num/den with gcd(num, den) = 1 and den monic; exponents are non-negative in
// both, negative powers live in the denominator.
class RatExpr {
public:
    RatExpr() = default;
    explicit RatExpr(int nvars);
    RatExpr(Poly num, Poly den);
    static RatExpr constant(int nvars, const Rational& c);
    static RatExpr variable(int nvars, int v);
    // Z^a for an integer exponent vector a.
    static RatExpr monomial(const std::vector<long>& a);

    int nvars() const { return num_.nvars(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_monomial(); }

    RatExpr operator-() const;
    friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator*(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator/(const RatExpr& a, const RatExpr& b);
    friend bool operator==(const RatExpr& a, const RatExpr& b) = default;

    RatExpr inverse() const;
    RatExpr pow(long k) const;
    RatExpr derivative(int v) const;
    // Replaces Z_v by images[v]; all images share one variable set.
    RatExpr substitute(const std::vector<RatExpr>& images) const;

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    // num and den already coprime; only the leading coefficient is normalized.
    static RatExpr coprime(Poly num, Poly den);
    Poly num_, den_;
};

std::vector<std::string> default_names(int n, const std::string& stem = "Z");

template <class R, class Ring>
R Poly::evaluate(const std::vector<R>& point, const Ring& ring) const {
    if (static_cast<int>(point.size()) != nvars_) throw UsageError("evaluation point has wrong dimension");
    R acc = ring.zero();
    for (const auto& [e, c] : terms_) {
        R t = ring.scalar(c);
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t = ring.mul(t, point[v]);
        acc = ring.add(acc, t);
    }
    return acc;
}

} // namespace rlam
