#include "rlam/qseries.hpp"

#include <functional>
#include <mutex>
#include <numeric>
#include <optional>

namespace rlam {

namespace {

using Dense = std::vector<Rational>;

void lp_add(QLaurent& a, int e, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = a.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) a.erase(it);
    }
}

QLaurent lp_mul(const QLaurent& a, const QLaurent& b) {
    QLaurent r;
    for (const auto& [e, c] : a)
        for (const auto& [f, d] : b) lp_add(r, e + f, c * d);
    return r;
}

QLaurent lp_from_dense(const Dense& d) {
    QLaurent r;
    for (std::size_t i = 0; i < d.size(); ++i) lp_add(r, static_cast<int>(i), d[i]);
    return r;
}

// Exact quotient by a monic dense polynomial, if it divides.
std::optional<QLaurent> lp_divide(const QLaurent& a, const Dense& p) {
    if (a.empty()) return QLaurent{};
    int lo = a.begin()->first, hi = a.rbegin()->first;
    int dp = static_cast<int>(p.size()) - 1;
    if (hi - lo < dp) return std::nullopt;
    Dense rem(hi - lo + 1, 0);
    for (const auto& [e, c] : a) rem[e - lo] = c;
    Dense quo(hi - lo - dp + 1, 0);
    for (int i = hi - lo; i >= dp; --i) {
        Rational c = rem[i];
        if (c == 0) continue;
        quo[i - dp] = c;
        for (int j = 0; j <= dp; ++j) rem[i - dp + j] -= c * p[j];
    }
    for (int i = 0; i < dp; ++i)
        if (rem[i] != 0) return std::nullopt;
    QLaurent r;
    for (std::size_t i = 0; i < quo.size(); ++i) lp_add(r, static_cast<int>(i) + lo, quo[i]);
    return r;
}

std::string lp_str(const QLaurent& a) {
    if (a.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : a) {
        Rational m = abs(c);
        std::string t = e == 0 ? "" : (e == 1 ? "q" : "q^" + std::to_string(e));
        if (t.empty())
            t = to_string(m);
        else if (m != 1)
            t = to_string(m) + "*" + t;
        out += out.empty() ? (c < 0 ? "-" : "") + t : (c < 0 ? "-" : "+") + t;
    }
    return out;
}

} // namespace

const Dense& cyclotomic(int d) {
    static std::map<int, Dense> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    if (d < 1) throw UsageError("cyclotomic index must be positive");
    std::function<const Dense&(int)> get = [&](int n) -> const Dense& {
        if (auto it = cache.find(n); it != cache.end()) return it->second;
        QLaurent p{{0, -1}, {n, 1}};
        for (int e = 1; e < n; ++e)
            if (n % e == 0) p = *lp_divide(p, get(e));
        Dense dense(p.rbegin()->first + 1, 0);
        for (const auto& [e, c] : p) dense[e] = c;
        return cache.emplace(n, dense).first->second;
    };
    return get(d);
}

QFrac QFrac::constant(const Rational& c) { return q_power(0, c); }

QFrac QFrac::q_power(int k, const Rational& c) {
    QFrac r;
    lp_add(r.num_, k, c);
    return r;
}

QFrac QFrac::from_coeff(const QCoeff& c) {
    QFrac r;
    for (const auto& [e, v] : c.terms()) {
        if (e[1] != 0) throw UsageError("series coefficients cannot contain q*");
        lp_add(r.num_, e[0], v);
    }
    return r;
}

void QFrac::reduce() {
    if (num_.empty()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = lp_divide(num_, cyclotomic(it->first));
            if (!q) break;
            num_ = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
}

QFrac QFrac::over_q_power_minus_one(int n) const {
    if (n == 0) throw DomainError("division by q^0 - 1");
    QFrac r = *this;
    if (n < 0) {
        // q^n - 1 = -q^n (q^{-n} - 1)
        r.num_ = lp_mul(r.num_, QLaurent{{-n, -1}});
        n = -n;
    }
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) ++r.den_[d];
    r.reduce();
    return r;
}

std::complex<double> QFrac::eval(std::complex<double> q) const {
    std::complex<double> num = 0, den = 1;
    for (const auto& [e, c] : num_) num += c.get_d() * std::pow(q, e);
    for (const auto& [d, m] : den_) {
        std::complex<double> p = 0;
        const auto& phi = cyclotomic(d);
        for (std::size_t i = 0; i < phi.size(); ++i) p += phi[i].get_d() * std::pow(q, static_cast<int>(i));
        den *= std::pow(p, m);
    }
    return num / den;
}

QFrac QFrac::operator-() const {
    QFrac r = *this;
    for (auto& [e, c] : r.num_) c = -c;
    return r;
}

QFrac operator+(const QFrac& a, const QFrac& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    QFrac r;
    r.den_ = a.den_;
    for (const auto& [d, m] : b.den_) r.den_[d] = std::max(r.den_[d], m);
    auto lift = [&](const QFrac& x) {
        QLaurent n = x.num_;
        for (const auto& [d, m] : r.den_) {
            auto it = x.den_.find(d);
            int have = it == x.den_.end() ? 0 : it->second;
            for (int i = have; i < m; ++i) n = lp_mul(n, lp_from_dense(cyclotomic(d)));
        }
        return n;
    };
    r.num_ = lift(a);
    for (const auto& [e, c] : lift(b)) lp_add(r.num_, e, c);
    r.reduce();
    return r;
}

QFrac operator-(const QFrac& a, const QFrac& b) { return a + (-b); }

QFrac operator*(const QFrac& a, const QFrac& b) {
    QFrac r;
    r.num_ = lp_mul(a.num_, b.num_);
    if (r.num_.empty()) return r;
    r.den_ = a.den_;
    for (const auto& [d, m] : b.den_) r.den_[d] += m;
    r.reduce();
    return r;
}

std::string QFrac::str() const {
    if (den_.empty()) return lp_str(num_);
    std::string d;
    for (const auto& [k, m] : den_) {
        if (!d.empty()) d += "*";
        d += "(" + lp_str(lp_from_dense(cyclotomic(k))) + ")";
        if (m > 1) d += "^" + std::to_string(m);
    }
    return "(" + lp_str(num_) + ")/(" + d + ")";
}

// ---- series ----

QSeries::QSeries(QContext ctx, std::vector<int> weights, int order)
    : ctx_(std::move(ctx)), w_(std::move(weights)), order_(order) {
    if (static_cast<int>(w_.size()) != ctx_.m) throw UsageError("series weights need one entry per generator");
    if (order_ < 0) throw UsageError("series order must be non-negative");
}

int QSeries::degree(const Exps& a) const { return std::inner_product(a.begin(), a.end(), w_.begin(), 0); }

void QSeries::add_term(const Exps& a, const QFrac& c) {
    int d = degree(a);
    if (d < 0) throw DomainError("series term of negative degree");
    if (d > order_ || c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(a, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

QSeries QSeries::one() const { return monomial(Exps(ctx_.m, 0)); }

QSeries QSeries::monomial(const Exps& a, const QFrac& c) const {
    QSeries r(ctx_, w_, order_);
    r.add_term(a, c);
    return r;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries r = a;
    r.order_ = std::min(a.order_, b.order_);
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = r.degree(it->first) > r.order_ ? r.terms_.erase(it) : std::next(it);
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + b.scaled(QFrac::constant(-1)); }

QSeries QSeries::scaled(const QFrac& c) const {
    QSeries r(ctx_, w_, order_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    if (!(a.ctx_ == b.ctx_) || a.w_ != b.w_) throw UsageError("series from different contexts");
    QSeries r(a.ctx_, a.w_, std::min(a.order_, b.order_));
    for (const auto& [e, c] : a.terms_) {
        int de = a.degree(e);
        for (const auto& [f, d] : b.terms_) {
            if (de + a.degree(f) > r.order_) continue;
            Exps g = e;
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += f[i];
            QExp p = a.ctx_.pair(e, f);
            if (p[1] != 0) throw UsageError("series contexts cannot involve q*");
            r.add_term(g, c * d * QFrac::q_power(p[0]));
        }
    }
    return r;
}

QSeries QSeries::inverse() const {
    QSeries t(ctx_, w_, order_);
    bool unit = false;
    for (const auto& [e, c] : terms_) {
        if (degree(e) == 0) {
            bool zero = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
            if (!zero || !(c == QFrac::constant(1))) throw DomainError("series inverse needs constant part 1");
            unit = true;
        } else {
            t.add_term(e, -c);
        }
    }
    if (!unit) throw DomainError("series inverse needs constant part 1");
    QSeries r = one(), p = one();
    for (int n = 1; n <= order_; ++n) {
        p = p * t;
        if (p.terms_.empty()) break;
        r = r + p;
    }
    return r;
}

QSeries QSeries::from_elem(const QContext& ctx, const std::vector<int>& weights, int order, const QElem& x) {
    QSeries r(ctx, weights, order);
    for (const auto& t : x.terms()) {
        QSeries w = r.one().scaled(QFrac::from_coeff(t.coeff));
        for (const auto& f : t.factors) {
            QSeries s = r.one() + from_elem(ctx, weights, order, *f.arg);
            w = w * (f.s == 1 ? s : s.inverse());
        }
        r = r + w * r.monomial(t.mono);
    }
    return r;
}

std::string QSeries::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ")";
        for (int i = 0; i < ctx_.m; ++i)
            if (e[i]) out += "*" + ctx_.names[i] + (e[i] == 1 ? "" : "^" + std::to_string(e[i]));
    }
    return out;
}

int agreement_order(const QSeries& a, const QSeries& b) {
    QSeries d = a - b;
    int low = d.order() + 1;
    for (const auto& [e, c] : d.terms()) low = std::min(low, d.degree(e));
    return low - 1;
}

std::vector<QFrac> psi_coefficients(int sign, int order) {
    if (sign != 1 && sign != -1) throw UsageError("psi sign must be +1 or -1");
    std::vector<QFrac> c{QFrac::constant(1)};
    // q^{2n s} c_n = c_n + q^s c_{n-1}
    for (int n = 1; n <= order; ++n) c.push_back((c.back() * QFrac::q_power(sign)).over_q_power_minus_one(2 * n * sign));
    return c;
}

std::vector<QFrac> psi_recursion_residual(const std::vector<QFrac>& c, int sign) {
    std::vector<QFrac> r;
    for (std::size_t n = 0; n < c.size(); ++n) {
        QFrac lhs = c[n] * QFrac::q_power(2 * static_cast<int>(n) * sign);
        QFrac rhs = c[n] + (n ? QFrac::q_power(sign) * c[n - 1] : QFrac());
        r.push_back(lhs - rhs);
    }
    return r;
}

QSeries psi_of(const QSeries& w, const std::vector<QFrac>& c) {
    QSeries r = w.one(), p = w.one();
    for (std::size_t n = 1; n < c.size() && static_cast<int>(n) <= w.order(); ++n) {
        p = p * w;
        r = r + p.scaled(c[n]);
    }
    return r;
}

namespace {

std::string first_mismatch(const QSeries& a, const QSeries& b, int degree) {
    QSeries d = a - b;
    for (const auto& [e, c] : d.terms())
        if (d.degree(e) == degree) {
            std::string mono;
            for (int i = 0; i < d.context().m; ++i)
                if (e[i]) mono += d.context().names[i] + "^" + std::to_string(e[i]);
            auto ca = a.terms().find(e), cb = b.terms().find(e);
            return "coefficient of " + mono + ": " + (ca == a.terms().end() ? "0" : ca->second.str()) + " vs " +
                   (cb == b.terms().end() ? "0" : cb->second.str());
        }
    return "";
}

SeriesCheck compare_series(const std::string& label, const QSeries& a, const QSeries& b) {
    SeriesCheck c{label, agreement_order(a, b), ""};
    if (c.agree < a.order()) c.mismatch = first_mismatch(a, b, c.agree + 1);
    return c;
}

void finish(SeriesReport& r) {
    r.agree = r.order;
    for (const auto& c : r.checks) r.agree = std::min(r.agree, c.agree);
    r.pass = r.agree >= r.order;
}

} // namespace

SeriesReport verify_psi_pentagon(int order, int perturb_index) {
    if (order < 0) throw UsageError("series order must be non-negative");
    QContext ctx = plain_context(ExMat{{0, 1}, {-1, 0}});
    ctx.names = {"U", "V"};
    QSeries base(ctx, {1, 1}, order);
    auto c = psi_coefficients(1, order);
    if (perturb_index >= 1 && perturb_index <= order) c[perturb_index] = c[perturb_index] + QFrac::constant(1);
    QSeries U = base.monomial({1, 0}), V = base.monomial({0, 1});
    QSeries qVU = (V * U).scaled(QFrac::q_power(1));
    QSeries lhs = psi_of(U, c) * psi_of(V, c);
    QSeries rhs = psi_of(V, c) * psi_of(qVU, c) * psi_of(U, c);
    SeriesReport r;
    r.order = order;
    r.checks.push_back(compare_series("pentagon", lhs, rhs));
    finish(r);
    return r;
}

SeriesReport verify_sharp_is_psi_conjugation(const Seed& s, int k, int order) {
    const int n = s.rank();
    if (k < 0 || k >= n) throw UsageError("mutation index out of range");
    QContext ctx = plain_context(s.exmat);
    std::vector<int> w(n, 0);
    w[k] = 1;
    QSeries base(ctx, w, order);
    QSeries psi = psi_of(base.monomial(ctx.unit(k)), psi_coefficients(1, order));
    QSeries inv = psi.inverse();
    QMap sharp = mu_sharp(s, k);
    SeriesReport r;
    r.order = order;
    for (int i = 0; i < n; ++i) {
        QSeries lhs = psi * base.monomial(ctx.unit(i)) * inv;
        QSeries rhs = QSeries::from_elem(ctx, w, order, sharp.images[i]);
        r.checks.push_back(compare_series(ctx.names[i], lhs, rhs));
    }
    finish(r);
    return r;
}

nlohmann::json to_json(const SeriesReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json j{{"label", c.label}, {"agree_order", c.agree}};
        if (!c.mismatch.empty()) j["mismatch"] = c.mismatch;
        checks.push_back(j);
    }
    return {{"order", r.order}, {"agree_order", r.agree}, {"pass", r.pass}, {"checks", checks}};
}

} // namespace rlam
