#include "rlam/poly.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace rlam {

Poly Poly::constant(int nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
}

Poly Poly::variable(int nvars, int v, int power) {
    if (v < 0 || v >= nvars) throw UsageError("variable index out of range");
    Exps e(nvars, 0);
    e[v] = power;
    Poly p(nvars);
    p.add_term(e, 1);
    return p;
}

Poly Poly::monomial(const Exps& e, const Rational& c) {
    Poly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                              [](int x) { return x == 0; }));
}

Rational Poly::constant_term() const {
    auto it = terms_.find(Exps(nvars_, 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const Exps, Rational>& Poly::leading() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    return *terms_.rbegin();
}

int Poly::degree(int v) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

int Poly::top_variable() const {
    int top = -1;
    for (const auto& [e, c] : terms_)
        for (int v = nvars_ - 1; v > top; --v)
            if (e[v] != 0) {
                top = v;
                break;
            }
    return top;
}

void Poly::add_term(const Exps& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nvars_) throw UsageError("exponent vector has wrong length");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

static void same_vars(const Poly& a, const Poly& b) {
    if (a.nvars() != b.nvars()) throw UsageError("polynomials over different variable sets");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    same_vars(a, b);
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) {
    same_vars(a, b);
    Poly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    same_vars(a, b);
    Poly r(a.nvars_);
    Exps e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (int v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
            r.add_term(e, ca * cb);
        }
    return r;
}

Poly operator*(const Rational& s, const Poly& a) {
    if (s == 0) return Poly(a.nvars_);
    Poly r = a;
    for (auto& [e, c] : r.terms_) c *= s;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = constant(nvars_, 1), base = *this;
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

Poly Poly::derivative(int v) const {
    Poly r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exps f = e;
        --f[v];
        r.add_term(f, c * e[v]);
    }
    return r;
}

std::vector<Poly> Poly::coeffs_in(int v) const {
    std::vector<Poly> out(degree(v) + 1, Poly(nvars_));
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        f[v] = 0;
        out[e[v]].add_term(f, c);
    }
    return out;
}

Poly Poly::from_coeffs(const std::vector<Poly>& cs, int v, int nvars) {
    Poly r(nvars);
    for (std::size_t d = 0; d < cs.size(); ++d)
        for (const auto& [e, c] : cs[d].terms()) {
            Exps f = e;
            f[v] += static_cast<int>(d);
            r.add_term(f, c);
        }
    return r;
}

Exps Poly::min_exponents() const {
    Exps m(nvars_, 0);
    if (terms_.empty()) return m;
    m.assign(nvars_, std::numeric_limits<int>::max());
    for (const auto& [e, c] : terms_)
        for (int v = 0; v < nvars_; ++v) m[v] = std::min(m[v], e[v]);
    return m;
}

Poly divide_exact(const Poly& a, const Poly& b) {
    same_vars(a, b);
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    const int n = a.nvars();
    Poly q(n), r = a;
    const auto& [lb, cb] = b.leading();
    while (!r.is_zero()) {
        const auto& [lr, cr] = r.leading();
        Exps e(n);
        for (int v = 0; v < n; ++v) {
            e[v] = lr[v] - lb[v];
            if (e[v] < 0) throw DomainError("polynomial division is not exact");
        }
        Poly t = Poly::monomial(e, cr / cb);
        q = q + t;
        r = r - t * b;
    }
    return q;
}

Poly make_monic(const Poly& p) {
    if (p.is_zero()) return p;
    return Rational(1 / p.leading().second) * p;
}

namespace {

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, int v) {
    Poly g(p.nvars());
    for (const auto& c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? make_monic(c) : gcd_rec(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

void trim(std::vector<Poly>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

std::vector<Poly> prem(std::vector<Poly> a, const std::vector<Poly>& b) {
    const std::size_t db = b.size() - 1;
    const Poly& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        std::size_t da = a.size() - 1;
        Poly la = a.back();
        for (auto& x : a) x = x * lb;
        for (std::size_t j = 0; j <= db; ++j) a[j + da - db] = a[j + da - db] - la * b[j];
        trim(a);
    }
    return a;
}

std::vector<Poly> primitive(std::vector<Poly> c, int nvars) {
    Poly g(nvars);
    for (const auto& x : c) {
        if (x.is_zero()) continue;
        g = g.is_zero() ? make_monic(x) : gcd_rec(g, x);
        if (g.is_constant()) break;
    }
    if (g.is_constant()) {
        // Over Q: normalize the leading coefficient polynomial instead.
        Rational s = 1 / c.back().leading().second;
        for (auto& x : c) x = s * x;
        return c;
    }
    for (auto& x : c) x = divide_exact(x, g);
    return c;
}

// Heuristic gcd for integer polynomials: evaluate one variable at a large
// integer, recurse, and rebuild the candidate xi-adically. Candidates are
// confirmed by exact division, so a success is always correct.
mpz_class int_content(const Poly& p) {
    mpz_class g = 0;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly integer_primitive(const Poly& p) {
    mpz_class l = 1;
    for (const auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    Poly r = Rational(l) * p;
    return Rational(1, 1) / Rational(int_content(r)) * r;
}

mpz_class max_norm(const Poly& p) {
    mpz_class m = 0;
    for (const auto& [e, c] : p.terms()) m = std::max<mpz_class>(m, abs(c.get_num()));
    return m;
}

Poly eval_var(const Poly& p, int v, const mpz_class& xi) {
    Poly r(p.nvars());
    const int d = p.degree(v);
    std::vector<mpz_class> pw(d + 1, 1);
    for (int k = 1; k <= d; ++k) pw[k] = pw[k - 1] * xi;
    for (const auto& [e, c] : p.terms()) {
        Exps f = e;
        f[v] = 0;
        r.add_term(f, c * Rational(pw[e[v]]));
    }
    return r;
}

mpz_class eval_small(const Poly& p) {
    mpz_class s = 0;
    for (const auto& [e, c] : p.terms()) {
        mpz_class t = c.get_num();
        for (std::size_t v = 0; v < e.size(); ++v) {
            mpz_class base = static_cast<long>(2 * v + 3), pw;
            mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e[v]));
            t *= pw;
        }
        s += t;
    }
    return s;
}

// Integer inputs only.
std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
    for (int v = 0; v < a.nvars(); ++v)
        if (b.degree(v) > a.degree(v)) return std::nullopt;
    mpz_class vb = eval_small(b);
    if (vb != 0 && eval_small(a) % vb != 0) return std::nullopt;
    try {
        return divide_exact(a, b);
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

std::optional<Poly> heu_gcd(Poly a, Poly b) {
    const int n = a.nvars();
    mpz_class ca = int_content(a), cb = int_content(b), g;
    mpz_gcd(g.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant()) return Poly::constant(n, Rational(g));
    a = Rational(1) / Rational(ca) * a;
    b = Rational(1) / Rational(cb) * b;
    const int v = std::max(a.top_variable(), b.top_variable());
    mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt, xi = xi * 73794 / 27011) {
        if (mpz_sizeinbase(xi.get_mpz_t(), 2) > 4096) return std::nullopt;
        Poly ea = eval_var(a, v, xi), eb = eval_var(b, v, xi);
        if (ea.is_zero() || eb.is_zero()) continue;
        auto gamma = heu_gcd(ea, eb);
        if (!gamma) return std::nullopt;
        Poly rest = *gamma, cand(n);
        const mpz_class half = xi / 2;
        for (int k = 0; !rest.is_zero(); ++k) {
            Poly digit(n);
            for (const auto& [e, c] : rest.terms()) {
                mpz_class r = c.get_num() % xi;
                if (r > half) r -= xi;
                if (r < -half) r += xi;
                digit.add_term(e, Rational(r));
            }
            for (const auto& [e, c] : digit.terms()) {
                Exps f = e;
                f[v] = k;
                cand.add_term(f, c);
            }
            rest = Rational(1) / Rational(xi) * (rest - digit);
        }
        if (cand.is_zero()) continue;
        cand = Rational(1) / Rational(int_content(cand)) * cand;
        if (try_divide(a, cand) && try_divide(b, cand)) return Rational(g) * cand;
    }
    return std::nullopt;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return make_monic(b);
    if (b.is_zero()) return make_monic(a);
    const int n = a.nvars();
    if (a.is_constant() || b.is_constant()) return Poly::constant(n, 1);

    Exps ma = a.min_exponents(), mb = b.min_exponents(), mg(n);
    bool shifted = false;
    for (int v = 0; v < n; ++v) {
        mg[v] = std::min(ma[v], mb[v]);
        shifted |= ma[v] != 0 || mb[v] != 0;
    }
    if (shifted) {
        Poly ra = divide_exact(a, Poly::monomial(ma)), rb = divide_exact(b, Poly::monomial(mb));
        return Poly::monomial(mg) * gcd_rec(ra, rb);
    }
    if (a.is_monomial() || b.is_monomial()) return Poly::constant(n, 1);

    if (auto h = heu_gcd(integer_primitive(a), integer_primitive(b))) return make_monic(*h);

    int v = std::max(a.top_variable(), b.top_variable());
    if (a.degree(v) == 0) return gcd_rec(a, content_in(b, v));
    if (b.degree(v) == 0) return gcd_rec(content_in(a, v), b);

    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly c = gcd_rec(ca, cb);
    std::vector<Poly> p = divide_exact(a, ca).coeffs_in(v), q = divide_exact(b, cb).coeffs_in(v);
    if (p.size() < q.size()) std::swap(p, q);
    while (true) {
        std::vector<Poly> r = prem(p, q);
        if (r.empty()) break;
        if (r.size() == 1) return make_monic(c);
        p = std::move(q);
        q = primitive(std::move(r), n);
    }
    return make_monic(c * Poly::from_coeffs(primitive(q, n), v, n));
}

} // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    same_vars(a, b);
    return gcd_rec(a, b);
}

std::string to_string(const Poly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Exps, Rational>> ts(p.terms().begin(), p.terms().end());
    auto deg = [](const Exps& e) {
        int s = 0;
        for (int x : e) s += x;
        return s;
    };
    std::stable_sort(ts.begin(), ts.end(), [&](const auto& x, const auto& y) {
        int dx = deg(x.first), dy = deg(y.first);
        if (dx != dy) return dx < dy;
        return x.first > y.first;
    });
    std::string out;
    for (const auto& [e, c] : ts) {
        std::string mono;
        for (int v = 0; v < p.nvars(); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += names.at(v);
            if (e[v] != 1) mono += "^" + std::to_string(e[v]);
        }
        std::string term;
        if (mono.empty())
            term = to_string(c);
        else if (c == 1)
            term = mono;
        else if (c == -1)
            term = "-" + mono;
        else
            term = to_string(c) + "*" + mono;
        if (!out.empty() && term[0] != '-') out += '+';
        out += term;
    }
    return out;
}

std::vector<std::string> default_names(int n, const std::string& stem) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(stem + std::to_string(i + 1));
    return names;
}

RatExpr::RatExpr(int nvars) : num_(nvars), den_(Poly::constant(nvars, 1)) {}

RatExpr::RatExpr(Poly num, Poly den) {
    same_vars(num, den);
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) {
        *this = RatExpr(num.nvars());
        return;
    }
    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
    }
    Rational s = 1 / den.leading().second;
    num_ = s * num;
    den_ = s * den;
}

RatExpr RatExpr::constant(int nvars, const Rational& c) {
    return RatExpr(Poly::constant(nvars, c), Poly::constant(nvars, 1));
}

RatExpr RatExpr::variable(int nvars, int v) {
    return RatExpr(Poly::variable(nvars, v), Poly::constant(nvars, 1));
}

RatExpr RatExpr::monomial(const std::vector<long>& a) {
    const int n = static_cast<int>(a.size());
    Exps up(n, 0), down(n, 0);
    for (int v = 0; v < n; ++v) (a[v] >= 0 ? up[v] : down[v]) = static_cast<int>(std::abs(a[v]));
    return RatExpr(Poly::monomial(up), Poly::monomial(down));
}

RatExpr RatExpr::operator-() const {
    RatExpr r = *this;
    r.num_ = -r.num_;
    return r;
}

RatExpr RatExpr::coprime(Poly num, Poly den) {
    RatExpr r;
    if (num.is_zero()) return RatExpr(num.nvars());
    Rational s = 1 / den.leading().second;
    r.num_ = s * num;
    r.den_ = s * den;
    return r;
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
    same_vars(a.num_, b.num_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Poly g = poly_gcd(a.den_, b.den_);
    if (g.is_constant()) return RatExpr::coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    Poly ad = divide_exact(a.den_, g), bd = divide_exact(b.den_, g);
    Poly num = a.num_ * bd + b.num_ * ad, den = a.den_ * bd;
    if (num.is_zero()) return RatExpr(a.nvars());
    Poly h = poly_gcd(num, g);
    if (!h.is_constant()) {
        num = divide_exact(num, h);
        den = divide_exact(den, h);
    }
    return RatExpr::coprime(num, den);
}

RatExpr operator-(const RatExpr& a, const RatExpr& b) { return a + (-b); }

RatExpr operator*(const RatExpr& a, const RatExpr& b) {
    same_vars(a.num_, b.num_);
    if (a.is_zero() || b.is_zero()) return RatExpr(a.nvars());
    Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    Poly g1 = poly_gcd(an, bd), g2 = poly_gcd(bn, ad);
    if (!g1.is_constant()) {
        an = divide_exact(an, g1);
        bd = divide_exact(bd, g1);
    }
    if (!g2.is_constant()) {
        bn = divide_exact(bn, g2);
        ad = divide_exact(ad, g2);
    }
    return RatExpr::coprime(an * bn, ad * bd);
}

RatExpr operator/(const RatExpr& a, const RatExpr& b) { return a * b.inverse(); }

RatExpr RatExpr::inverse() const {
    if (is_zero()) throw DomainError("inverse of the zero rational function");
    return coprime(den_, num_);
}

RatExpr RatExpr::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    RatExpr r;
    r.num_ = num_.pow(static_cast<unsigned>(k));
    r.den_ = den_.pow(static_cast<unsigned>(k));
    return r;
}

RatExpr RatExpr::derivative(int v) const {
    return RatExpr(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {
RatExpr eval_poly(const Poly& p, const std::vector<RatExpr>& images, int target_vars) {
    const int n = p.nvars();
    std::vector<std::vector<RatExpr>> pw(n);
    for (int v = 0; v < n; ++v) {
        pw[v].push_back(RatExpr::constant(target_vars, 1));
        for (int k = 1, d = p.degree(v); k <= d; ++k) pw[v].push_back(images[v].pow(k));
    }
    RatExpr acc(target_vars);
    for (const auto& [e, c] : p.terms()) {
        RatExpr t = RatExpr::constant(target_vars, c);
        for (int v = 0; v < n; ++v)
            if (e[v]) t = t * pw[v][e[v]];
        acc = acc + t;
    }
    return acc;
}
} // namespace

RatExpr RatExpr::substitute(const std::vector<RatExpr>& images) const {
    if (static_cast<int>(images.size()) != nvars()) throw UsageError("substitution needs one image per variable");
    int target = images.empty() ? 0 : images[0].nvars();
    for (const auto& im : images)
        if (im.nvars() != target) throw UsageError("substitution images use different variable sets");
    RatExpr d = eval_poly(den_, images, target);
    if (d.is_zero()) throw DomainError("substitution makes the denominator vanish");
    return eval_poly(num_, images, target) / d;
}

std::string RatExpr::str(const std::vector<std::string>& names) const {
    auto nm = names.empty() ? default_names(nvars()) : names;
    if (den_.is_constant()) return to_string(num_, nm);
    return "(" + to_string(num_, nm) + ")/(" + to_string(den_, nm) + ")";
}

} // namespace rlam
