#pragma once

// Quantum torus algebras over Laurent polynomials in q (and q* for the Λ=0
// doubled algebra), quantum mutation maps, star structures and the q → 1
// limit.

#include "rlam/classical.hpp"
#include "rlam/cluster.hpp"
#include "rlam/poly.hpp"

#include <array>
#include <memory>

namespace rlam {

// Exponents of (q, q*).
using QExp = std::array<int, 2>;
// Linear action on QExp, new = M * old.
using QExpMap = std::array<std::array<int, 2>, 2>;

inline constexpr QExpMap kQIdentity{{{1, 0}, {0, 1}}};

class QCoeff {
public:
    QCoeff() = default;
    static QCoeff constant(const Rational& c);
    static QCoeff monomial(QExp e, const Rational& c = 1);
    static QCoeff q_power(int k) { return monomial({k, 0}); }

    const std::map<QExp, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_unit() const { return terms_.size() == 1; }
    bool is_one() const;
    QCoeff inverse() const;
    QCoeff mapped(const QExpMap& m) const;
    Rational at_one() const;

    QCoeff operator-() const;
    friend QCoeff operator+(const QCoeff& a, const QCoeff& b);
    friend QCoeff operator-(const QCoeff& a, const QCoeff& b);
    friend QCoeff operator*(const QCoeff& a, const QCoeff& b);
    friend bool operator==(const QCoeff&, const QCoeff&) = default;

    std::string str() const;

private:
    void add(QExp e, const Rational& c);
    std::map<QExp, Rational> terms_;
};

// Generators X_1..X_m with X^a X^b = q^<a,b> X^{a+b}, where the pairing has a
// q part and a q* part.
struct QContext {
    int m = 0;
    std::vector<std::vector<int>> form_q, form_qs;
    Permutation star_perm;
    QExpMap star_qmap = kQIdentity;
    std::vector<std::string> names;
    int lambda = 2;  // 2 for the undoubled algebra

    QExp pair(const Exps& a, const Exps& b) const;
    Exps unit(int i) const;
    friend bool operator==(const QContext&, const QContext&) = default;
};

// Undoubled algebra of a seed; star fixes generators and inverts q.
QContext plain_context(const ExMat& e);
// Doubled algebra for Λ ∈ {-1,0,1}. Generator (sector, block, i) sits at
// sector*2n + block*n + i, block 0 = (+), block 1 = (-), sector 1 = starred
// copy (Λ=0 only).
QContext lambda_context(const ExMat& e, int lambda);
int lambda_index(int n, int block_sign, int i, bool starred = false);

class QElem;

struct QFactor {
    std::shared_ptr<const QElem> arg;
    int s = 1;
};

// coeff * (1 + arg_1)^{s_1} ... (1 + arg_r)^{s_r} * X^mono
struct QTerm {
    QCoeff coeff;
    std::vector<QFactor> factors;
    Exps mono;
};

class QElem {
public:
    QElem() = default;
    explicit QElem(int m) : m_(m) {}
    static QElem one(int m);
    static QElem monomial(const Exps& a, const QCoeff& c = QCoeff::constant(1));
    static QElem generator(const QContext& ctx, int i, int power = 1);
    // (1 + q^c X^b)^s
    static QElem binomial(const Exps& b, QExp c, int s);
    static QElem factor(const QElem& arg, int s);

    int nvars() const { return m_; }
    const std::vector<QTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_word() const { return terms_.size() == 1; }
    bool is_monomial() const { return is_word() && terms_[0].factors.empty(); }

    void add_term(QTerm t);
    QElem operator-() const;
    friend QElem operator+(const QElem& a, const QElem& b);
    friend QElem operator-(const QElem& a, const QElem& b);
    QElem scaled(const QCoeff& c) const;
    friend bool operator==(const QElem& a, const QElem& b);

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    void normalize();
    int m_ = 0;
    std::vector<QTerm> terms_;
};

int compare(const QElem& a, const QElem& b);

QElem q_mul(const QContext& ctx, const QElem& a, const QElem& b);
QElem q_pow(const QContext& ctx, const QElem& a, int k);
// Only single words are invertible.
QElem q_inverse(const QContext& ctx, const QElem& a);
// X^a x X^{-a}
QElem q_conjugate(const QContext& ctx, const Exps& a, const QElem& x);
QElem q_star(const QContext& ctx, const QElem& x);

// Every monomial occurring in x pairs trivially with every monomial in y, so
// x and y commute.
bool commute_by_support(const QContext& ctx, const QElem& x, const QElem& y);
// Sorts adjacent commuting factors inside every word, recursively, so that
// equal words written in different factor orders compare equal.
QElem q_canonical(const QContext& ctx, const QElem& x);

// Algebra map from the algebra of `to` into the algebra of `from`:
// generator i of `to` goes to images[i], coefficients through coeff_map.
struct QMap {
    QContext from;
    QContext to;
    std::vector<QElem> images;
    QExpMap coeff_map = kQIdentity;
};

QElem q_apply(const QMap& f, const QElem& x);
// f after g on the underlying maps: images of g pushed through f.
QMap q_compose(const QMap& f, const QMap& g);
QMap q_identity(const QContext& ctx);

QMap mu_prime(const Seed& s, int k);
QMap mu_sharp(const Seed& s, int k);
// μ♯ ∘ μ′, the pullback from the mutated seed.
QMap quantum_mutation(const Seed& s, int k);
QMap quantum_permutation(const Seed& s, const Permutation& sigma);
QMap quantum_move(const Seed& s, const Move& m);
QMap quantum_pullback_along(const Seed& s, const std::vector<Move>& moves);
bool is_identity(const QMap& f);

// X_i ↦ Z_i^{(±)}, q ↦ q_Λ^{±1}.
QMap iota(const ExMat& e, int lambda, int block_sign);
// Images of Z'_i^{(block)} under the Λ-doubled mutation, in the doubled
// algebra of s.
std::vector<QElem> mu_quantum_lambda(const Seed& s, int k, int lambda, int block_sign);
// Full doubled mutation on all generators; the starred sector is the star of
// the unstarred one.
QMap lambda_mutation(const Seed& s, int k, int lambda);

// q, q* → 1, X^a → Z^a, (1 + W)^s → (1 + lim W)^s.
RatExpr classical_limit(const QElem& x);

} // namespace rlam
