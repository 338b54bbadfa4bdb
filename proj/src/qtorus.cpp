#include "rlam/qtorus.hpp"

#include <algorithm>
#include <sstream>

namespace rlam {

// ---- QCoeff ----

QCoeff QCoeff::constant(const Rational& c) { return monomial({0, 0}, c); }

QCoeff QCoeff::monomial(QExp e, const Rational& c) {
    QCoeff r;
    r.add(e, c);
    return r;
}

void QCoeff::add(QExp e, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool QCoeff::is_one() const { return is_unit() && terms_.begin()->first == QExp{0, 0} && terms_.begin()->second == 1; }

QCoeff QCoeff::inverse() const {
    if (!is_unit()) throw DomainError("coefficient " + str() + " is not a unit");
    const auto& [e, c] = *terms_.begin();
    return monomial({-e[0], -e[1]}, Rational(1 / c));
}

QCoeff QCoeff::mapped(const QExpMap& m) const {
    QCoeff r;
    for (const auto& [e, c] : terms_)
        r.add({m[0][0] * e[0] + m[0][1] * e[1], m[1][0] * e[0] + m[1][1] * e[1]}, c);
    return r;
}

Rational QCoeff::at_one() const {
    Rational s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

QCoeff QCoeff::operator-() const {
    QCoeff r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

QCoeff operator+(const QCoeff& a, const QCoeff& b) {
    QCoeff r = a;
    for (const auto& [e, c] : b.terms_) r.add(e, c);
    return r;
}

QCoeff operator-(const QCoeff& a, const QCoeff& b) { return a + (-b); }

QCoeff operator*(const QCoeff& a, const QCoeff& b) {
    QCoeff r;
    for (const auto& [e, c] : a.terms_)
        for (const auto& [f, d] : b.terms_) r.add({e[0] + f[0], e[1] + f[1]}, c * d);
    return r;
}

std::string QCoeff::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string t;
        auto power = [&](const char* sym, int k) {
            if (k == 0) return;
            if (!t.empty()) t += "*";
            t += sym;
            if (k != 1) t += "^" + std::to_string(k);
        };
        power("q", e[0]);
        power("qs", e[1]);
        Rational a = abs(c);
        std::string cs = to_string(a);
        if (t.empty())
            t = cs;
        else if (a != 1)
            t = cs + "*" + t;
        if (out.empty())
            out = c < 0 ? "-" + t : t;
        else
            out += (c < 0 ? "-" : "+") + t;
    }
    return out;
}

// ---- contexts ----

QExp QContext::pair(const Exps& a, const Exps& b) const {
    QExp r{0, 0};
    for (int i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < m; ++j) {
            if (b[j] == 0) continue;
            r[0] += a[i] * form_q[i][j] * b[j];
            r[1] += a[i] * form_qs[i][j] * b[j];
        }
    }
    return r;
}

Exps QContext::unit(int i) const {
    Exps e(m, 0);
    e[i] = 1;
    return e;
}

QContext plain_context(const ExMat& e) {
    QContext c;
    c.m = e.rank();
    c.form_q = e.rows();
    c.form_qs.assign(c.m, std::vector<int>(c.m, 0));
    c.star_perm = perm_identity(c.m);
    c.star_qmap = {{{-1, 0}, {0, 1}}};
    c.names = default_names(c.m, "X");
    return c;
}

int lambda_index(int n, int block_sign, int i, bool starred) { return (starred ? 2 * n : 0) + (block_sign > 0 ? 0 : n) + i; }

QContext lambda_context(const ExMat& e, int lambda) {
    if (lambda < -1 || lambda > 1) throw UsageError("lambda must be -1, 0 or 1");
    const int n = e.rank();
    QContext c;
    c.lambda = lambda;
    c.m = (lambda == 0 ? 4 : 2) * n;
    c.form_q.assign(c.m, std::vector<int>(c.m, 0));
    c.form_qs = c.form_q;
    c.names.resize(c.m);
    for (int sector = 0; sector < (lambda == 0 ? 2 : 1); ++sector)
        for (int sign : {1, -1})
            for (int i = 0; i < n; ++i) {
                int a = lambda_index(n, sign, i, sector == 1);
                c.names[a] = "Z" + std::to_string(i + 1) + (sign > 0 ? "+" : "-") + (sector ? "*" : "");
                auto& form = sector ? c.form_qs : c.form_q;
                for (int j = 0; j < n; ++j) form[a][lambda_index(n, sign, j, sector == 1)] = sign * e(i, j);
            }
    c.star_perm = perm_identity(c.m);
    if (lambda == -1) {
        c.star_qmap = {{{-1, 0}, {0, 1}}};
    } else if (lambda == 1) {
        for (int i = 0; i < n; ++i) std::swap(c.star_perm[i], c.star_perm[n + i]);
    } else {
        for (int a = 0; a < 2 * n; ++a) std::swap(c.star_perm[a], c.star_perm[2 * n + a]);
        c.star_qmap = {{{0, -1}, {-1, 0}}};
    }
    return c;
}

// ---- structure ----

namespace {

int cmp_exps(const Exps& a, const Exps& b) {
    if (a < b) return -1;
    return b < a ? 1 : 0;
}

int cmp_factor(const QFactor& a, const QFactor& b) {
    if (a.s != b.s) return a.s < b.s ? -1 : 1;
    return compare(*a.arg, *b.arg);
}

int cmp_key(const QTerm& a, const QTerm& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (int c = cmp_factor(a.factors[i], b.factors[i])) return c;
    return cmp_exps(a.mono, b.mono);
}

bool inverse_pair(const QFactor& a, const QFactor& b) { return a.s == -b.s && compare(*a.arg, *b.arg) == 0; }

void cancel_factors(std::vector<QFactor>& fs) {
    std::vector<QFactor> out;
    for (auto& f : fs) {
        if (f.arg->is_zero()) continue;
        if (!out.empty() && inverse_pair(out.back(), f))
            out.pop_back();
        else
            out.push_back(std::move(f));
    }
    fs = std::move(out);
}

Exps add_exps(const Exps& a, const Exps& b, int sb = 1) {
    Exps r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += sb * b[i];
    return r;
}

QExp scale_exp(QExp e, int k) { return {k * e[0], k * e[1]}; }

// X^a = q^{-Σ_{i<j} a_i a_j <e_i,e_j>} X_1^{a_1} ... X_m^{a_m}
QExp ordering_exponent(const QContext& ctx, const Exps& a) {
    QExp r{0, 0};
    for (int i = 0; i < ctx.m; ++i) {
        if (a[i] == 0) continue;
        for (int j = i + 1; j < ctx.m; ++j) {
            if (a[j] == 0) continue;
            r[0] -= a[i] * a[j] * ctx.form_q[i][j];
            r[1] -= a[i] * a[j] * ctx.form_qs[i][j];
        }
    }
    return r;
}

void collect_monomials(const QElem& x, std::vector<Exps>& out) {
    for (const auto& t : x.terms()) {
        out.push_back(t.mono);
        for (const auto& f : t.factors) collect_monomials(*f.arg, out);
    }
}

QTerm term_mul(const QContext& ctx, const QTerm& a, const QTerm& b) {
    QTerm r;
    r.coeff = a.coeff * b.coeff * QCoeff::monomial(ctx.pair(a.mono, b.mono));
    r.factors = a.factors;
    for (const auto& f : b.factors)
        r.factors.push_back({std::make_shared<const QElem>(q_conjugate(ctx, a.mono, *f.arg)), f.s});
    r.mono = add_exps(a.mono, b.mono);
    return r;
}

} // namespace

int compare(const QElem& a, const QElem& b) {
    if (a.terms().size() != b.terms().size()) return a.terms().size() < b.terms().size() ? -1 : 1;
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        const auto &s = a.terms()[i], &t = b.terms()[i];
        if (int c = cmp_key(s, t)) return c;
        if (s.coeff.terms() < t.coeff.terms()) return -1;
        if (t.coeff.terms() < s.coeff.terms()) return 1;
    }
    return 0;
}

bool operator==(const QElem& a, const QElem& b) { return a.m_ == b.m_ && compare(a, b) == 0; }

QElem QElem::one(int m) { return monomial(Exps(m, 0)); }

QElem QElem::monomial(const Exps& a, const QCoeff& c) {
    QElem r(static_cast<int>(a.size()));
    r.add_term({c, {}, a});
    return r;
}

QElem QElem::generator(const QContext& ctx, int i, int power) {
    Exps a(ctx.m, 0);
    a[i] = power;
    return monomial(a);
}

QElem QElem::binomial(const Exps& b, QExp c, int s) { return factor(monomial(b, QCoeff::monomial(c)), s); }

QElem QElem::factor(const QElem& arg, int s) {
    if (s != 1 && s != -1) throw UsageError("factor exponent must be +1 or -1");
    QElem r(arg.nvars());
    r.add_term({QCoeff::constant(1), {{std::make_shared<const QElem>(arg), s}}, Exps(arg.nvars(), 0)});
    return r;
}

void QElem::add_term(QTerm t) {
    if (static_cast<int>(t.mono.size()) != m_) throw UsageError("monomial has the wrong number of generators");
    terms_.push_back(std::move(t));
    normalize();
}

void QElem::normalize() {
    for (auto& t : terms_) cancel_factors(t.factors);
    std::sort(terms_.begin(), terms_.end(), [](const QTerm& a, const QTerm& b) { return cmp_key(a, b) < 0; });
    std::vector<QTerm> out;
    for (auto& t : terms_) {
        if (!out.empty() && cmp_key(out.back(), t) == 0)
            out.back().coeff = out.back().coeff + t.coeff;
        else
            out.push_back(std::move(t));
        if (out.back().coeff.is_zero()) out.pop_back();
    }
    terms_ = std::move(out);
}

QElem QElem::operator-() const { return scaled(QCoeff::constant(-1)); }

QElem operator+(const QElem& a, const QElem& b) {
    if (a.m_ != b.m_) throw UsageError("quantum elements live in different algebras");
    QElem r = a;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.normalize();
    return r;
}

QElem operator-(const QElem& a, const QElem& b) { return a + (-b); }

QElem QElem::scaled(const QCoeff& c) const {
    QElem r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    r.normalize();
    return r;
}

std::string QElem::str(const std::vector<std::string>& names_in) const {
    if (terms_.empty()) return "0";
    auto names = names_in.empty() ? default_names(m_, "X") : names_in;
    std::string out;
    for (const auto& t : terms_) {
        std::vector<std::string> parts;
        for (const auto& f : t.factors)
            parts.push_back("(1+" + f.arg->str(names) + ")" + (f.s == -1 ? "^-1" : ""));
        for (int i = 0; i < m_; ++i)
            if (t.mono[i] != 0) parts.push_back(names[i] + (t.mono[i] == 1 ? "" : "^" + std::to_string(t.mono[i])));
        std::string cs = t.coeff.str();
        bool plain = t.coeff.is_unit() && t.coeff.terms().begin()->first == QExp{0, 0};
        if (!t.coeff.is_unit()) cs = "(" + cs + ")";
        if (parts.empty() || !(plain && abs(t.coeff.terms().begin()->second) == 1))
            parts.insert(parts.begin(), plain && cs[0] == '-' ? cs.substr(1) : cs);
        std::string body;
        for (const auto& p : parts) body += (body.empty() ? "" : "*") + p;
        bool neg = plain && t.coeff.terms().begin()->second < 0;
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

// ---- algebra ----

QElem q_mul(const QContext& ctx, const QElem& a, const QElem& b) {
    if (a.nvars() != ctx.m || b.nvars() != ctx.m) throw UsageError("product of elements from a different algebra");
    QElem r(ctx.m);
    for (const auto& s : a.terms())
        for (const auto& t : b.terms()) r.add_term(term_mul(ctx, s, t));
    return r;
}

QElem q_inverse(const QContext& ctx, const QElem& a) {
    if (!a.is_word()) throw DomainError("only single words are invertible, got " + a.str(ctx.names));
    const QTerm& t = a.terms()[0];
    Exps neg = add_exps(Exps(ctx.m, 0), t.mono, -1);
    QTerm r{t.coeff.inverse(), {}, neg};
    for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
        r.factors.push_back({std::make_shared<const QElem>(q_conjugate(ctx, neg, *it->arg)), -it->s});
    QElem out(ctx.m);
    out.add_term(std::move(r));
    return out;
}

QElem q_pow(const QContext& ctx, const QElem& a, int k) {
    if (k < 0) return q_pow(ctx, q_inverse(ctx, a), -k);
    QElem r = QElem::one(ctx.m), base = a;
    while (k) {
        if (k & 1) r = q_mul(ctx, r, base);
        k >>= 1;
        if (k) base = q_mul(ctx, base, base);
    }
    return r;
}

QElem q_conjugate(const QContext& ctx, const Exps& a, const QElem& x) {
    if (std::all_of(a.begin(), a.end(), [](int v) { return v == 0; })) return x;
    QElem r(ctx.m);
    for (const auto& t : x.terms()) {
        QTerm u{t.coeff * QCoeff::monomial(scale_exp(ctx.pair(a, t.mono), 2)), {}, t.mono};
        for (const auto& f : t.factors)
            u.factors.push_back({std::make_shared<const QElem>(q_conjugate(ctx, a, *f.arg)), f.s});
        r.add_term(std::move(u));
    }
    return r;
}

QElem q_star(const QContext& ctx, const QElem& x) {
    QElem r(ctx.m);
    for (const auto& t : x.terms()) {
        QElem mono = QElem::monomial(Exps(ctx.m, 0), QCoeff::monomial(ordering_exponent(ctx, t.mono)).mapped(ctx.star_qmap));
        for (int i = ctx.m - 1; i >= 0; --i)
            if (t.mono[i] != 0) mono = q_mul(ctx, mono, q_pow(ctx, QElem::generator(ctx, ctx.star_perm[i]), t.mono[i]));
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it)
            mono = q_mul(ctx, mono, QElem::factor(q_star(ctx, *it->arg), it->s));
        r = r + mono.scaled(t.coeff.mapped(ctx.star_qmap));
    }
    return r;
}

bool commute_by_support(const QContext& ctx, const QElem& x, const QElem& y) {
    std::vector<Exps> a, b;
    collect_monomials(x, a);
    collect_monomials(y, b);
    for (const auto& u : a)
        for (const auto& v : b)
            if (ctx.pair(u, v) != QExp{0, 0}) return false;
    return true;
}

QElem q_canonical(const QContext& ctx, const QElem& x) {
    QElem r(ctx.m);
    for (const auto& t : x.terms()) {
        QTerm u{t.coeff, {}, t.mono};
        for (const auto& f : t.factors) u.factors.push_back({std::make_shared<const QElem>(q_canonical(ctx, *f.arg)), f.s});
        for (bool swapped = true; swapped;) {
            swapped = false;
            for (std::size_t i = 0; i + 1 < u.factors.size(); ++i) {
                auto &a = u.factors[i], &b = u.factors[i + 1];
                if (cmp_factor(a, b) > 0 && commute_by_support(ctx, *a.arg, *b.arg)) {
                    std::swap(a, b);
                    swapped = true;
                }
            }
        }
        r.add_term(std::move(u));
    }
    return r;
}

// ---- maps ----

QElem q_apply(const QMap& f, const QElem& x) {
    if (x.nvars() != f.to.m) throw UsageError("element does not belong to the domain of the map");
    const QContext& ctx = f.from;
    QElem r(ctx.m);
    for (const auto& t : x.terms()) {
        QElem w = QElem::one(ctx.m);
        for (const auto& fac : t.factors) w = q_mul(ctx, w, QElem::factor(q_apply(f, *fac.arg), fac.s));
        QCoeff c = t.coeff * QCoeff::monomial(ordering_exponent(f.to, t.mono));
        for (int i = 0; i < f.to.m; ++i)
            if (t.mono[i] != 0) w = q_mul(ctx, w, q_pow(ctx, f.images[i], t.mono[i]));
        r = r + w.scaled(c.mapped(f.coeff_map));
    }
    return r;
}

QMap q_identity(const QContext& ctx) {
    QMap f{ctx, ctx, {}, kQIdentity};
    for (int i = 0; i < ctx.m; ++i) f.images.push_back(QElem::generator(ctx, i));
    return f;
}

QMap q_compose(const QMap& f, const QMap& g) {
    if (!(g.from == f.to)) throw UsageError("quantum map composition: algebras do not match");
    QMap h{f.from, g.to, {}, {}};
    for (const auto& im : g.images) h.images.push_back(q_apply(f, im));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) h.coeff_map[i][j] = f.coeff_map[i][0] * g.coeff_map[0][j] + f.coeff_map[i][1] * g.coeff_map[1][j];
    return h;
}

QMap mu_prime(const Seed& s, int k) {
    const int n = s.rank();
    if (k < 0 || k >= n) throw UsageError("mutation index out of range");
    QContext from = plain_context(s.exmat);
    QMap f{from, plain_context(mutate_exmat(s.exmat, k)), {}, kQIdentity};
    for (int i = 0; i < n; ++i) {
        if (i == k) {
            f.images.push_back(QElem::generator(from, k, -1));
            continue;
        }
        int e = s.exmat(i, k), p = std::max(e, 0);
        QElem im = q_mul(from, QElem::generator(from, i), QElem::generator(from, k, p));
        f.images.push_back(im.scaled(QCoeff::q_power(-e * p)));
    }
    return f;
}

QMap mu_sharp(const Seed& s, int k) {
    const int n = s.rank();
    if (k < 0 || k >= n) throw UsageError("mutation index out of range");
    QContext ctx = plain_context(s.exmat);
    QMap f{ctx, ctx, {}, kQIdentity};
    for (int i = 0; i < n; ++i) {
        QElem im = QElem::generator(ctx, i);
        int e = s.exmat(i, k), sg = (e > 0) - (e < 0);
        for (int r = 1; r <= std::abs(e); ++r) im = q_mul(ctx, im, QElem::binomial(ctx.unit(k), {-sg * (2 * r - 1), 0}, -sg));
        f.images.push_back(im);
    }
    return f;
}

QMap quantum_mutation(const Seed& s, int k) { return q_compose(mu_sharp(s, k), mu_prime(s, k)); }

QMap quantum_permutation(const Seed& s, const Permutation& sigma) {
    check_permutation(sigma, s.rank());
    QContext from = plain_context(s.exmat);
    QMap f{from, plain_context(permute_exmat(s.exmat, sigma)), std::vector<QElem>(s.rank()), kQIdentity};
    for (int i = 0; i < s.rank(); ++i) f.images[sigma[i]] = QElem::generator(from, i);
    return f;
}

QMap quantum_move(const Seed& s, const Move& m) {
    if (auto mu = std::get_if<Mutation>(&m)) return quantum_mutation(s, mu->k);
    return quantum_permutation(s, std::get<Relabel>(m).sigma);
}

QMap quantum_pullback_along(const Seed& s, const std::vector<Move>& moves) {
    QMap f = q_identity(plain_context(s.exmat));
    Seed cur = s;
    for (const auto& m : moves) {
        f = q_compose(f, quantum_move(cur, m));
        cur = cur.apply(m);
    }
    return f;
}

bool is_identity(const QMap& f) {
    if (!(f.from == f.to) || f.coeff_map != kQIdentity) return false;
    for (int i = 0; i < f.to.m; ++i)
        if (!(f.images[i] == QElem::generator(f.from, i))) return false;
    return true;
}

QMap iota(const ExMat& e, int lambda, int block_sign) {
    QContext from = lambda_context(e, lambda);
    QMap f{from, plain_context(e), {}, {{{block_sign, 0}, {0, 1}}}};
    for (int i = 0; i < e.rank(); ++i) f.images.push_back(QElem::generator(from, lambda_index(e.rank(), block_sign, i)));
    return f;
}

std::vector<QElem> mu_quantum_lambda(const Seed& s, int k, int lambda, int block_sign) {
    QMap mu = quantum_mutation(s, k), inj = iota(s.exmat, lambda, block_sign);
    std::vector<QElem> out;
    for (const auto& im : mu.images) out.push_back(q_apply(inj, im));
    return out;
}

QMap lambda_mutation(const Seed& s, int k, int lambda) {
    const int n = s.rank();
    QContext from = lambda_context(s.exmat, lambda);
    QMap f{from, lambda_context(mutate_exmat(s.exmat, k), lambda), std::vector<QElem>(from.m), kQIdentity};
    for (int sign : {1, -1}) {
        auto ims = mu_quantum_lambda(s, k, lambda, sign);
        for (int i = 0; i < n; ++i) {
            f.images[lambda_index(n, sign, i)] = ims[i];
            if (lambda == 0) f.images[lambda_index(n, sign, i, true)] = q_star(from, ims[i]);
        }
    }
    return f;
}

RatExpr classical_limit(const QElem& x) {
    const int m = x.nvars();
    RatExpr r(m), one = RatExpr::constant(m, 1);
    for (const auto& t : x.terms()) {
        RatExpr w = RatExpr::constant(m, t.coeff.at_one());
        for (const auto& f : t.factors) w = w * (one + classical_limit(*f.arg)).pow(f.s);
        w = w * RatExpr::monomial(std::vector<long>(t.mono.begin(), t.mono.end()));
        r = r + w;
    }
    return r;
}

} // namespace rlam
