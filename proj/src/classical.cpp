#include "rlam/classical.hpp"

#include <cmath>

namespace rlam {

namespace {

RatExpr var(int n, int i) { return RatExpr::variable(n, i); }

struct GCqRing {
    int lambda;
    GCq zero() const { return {lambda, 0, 0}; }
    GCq scalar(const Rational& c) const { return {lambda, c, 0}; }
    GCq add(const GCq& a, const GCq& b) const { return gc_add(a, b); }
    GCq mul(const GCq& a, const GCq& b) const { return gc_mul(a, b); }
};

struct GCdRing {
    int lambda;
    GCd zero() const { return {lambda, 0.0, 0.0}; }
    GCd scalar(const Rational& c) const { return {lambda, c.get_d(), 0.0}; }
    GCd add(const GCd& a, const GCd& b) const { return gc_add(a, b); }
    GCd mul(const GCd& a, const GCd& b) const { return gc_mul(a, b); }
};

template <class T>
int point_lambda(const std::vector<GC<T>>& pt) {
    if (pt.empty()) return 0;
    for (const auto& z : pt)
        if (z.lambda != pt[0].lambda) throw UsageError("evaluation point mixes lambda values");
    return pt[0].lambda;
}

} // namespace

PullbackMap identity_pullback(const Seed& s) {
    PullbackMap f{s, s, {}};
    for (int i = 0; i < s.rank(); ++i) f.images.push_back(var(s.rank(), i));
    return f;
}

PullbackMap classical_mutation(const Seed& s, int k) {
    const int n = s.rank();
    if (k < 0 || k >= n) throw UsageError("mutation index out of range");
    PullbackMap f{s, s.apply(Mutation{k}), {}};
    const ExMat& e = s.exmat;
    RatExpr xk = var(n, k), one = RatExpr::constant(n, 1);
    for (int i = 0; i < n; ++i) {
        if (i == k) {
            f.images.push_back(xk.inverse());
            continue;
        }
        int eik = e(i, k);
        if (eik == 0) {
            f.images.push_back(var(n, i));
            continue;
        }
        RatExpr base = one + xk.pow(eik > 0 ? -1 : 1);
        f.images.push_back(var(n, i) * base.pow(-eik));
    }
    return f;
}

PullbackMap classical_permutation(const Seed& s, const Permutation& sigma) {
    check_permutation(sigma, s.rank());
    PullbackMap f{s, s.apply(Relabel{sigma}), std::vector<RatExpr>(s.rank())};
    for (int i = 0; i < s.rank(); ++i) f.images[sigma[i]] = var(s.rank(), i);
    return f;
}

PullbackMap classical_move(const Seed& s, const Move& m) {
    if (auto mu = std::get_if<Mutation>(&m)) return classical_mutation(s, mu->k);
    return classical_permutation(s, std::get<Relabel>(m).sigma);
}

PullbackMap compose_pullbacks(const PullbackMap& f, const PullbackMap& g) {
    if (!(f.target.exmat == g.source.exmat))
        throw UsageError("pullback composition: target seed of the first map differs from the source of the second");
    PullbackMap h{f.source, g.target, {}};
    for (const auto& im : g.images) h.images.push_back(im.substitute(f.images));
    return h;
}

PullbackMap pullback_along(const Seed& s, const std::vector<Move>& moves) {
    PullbackMap f = identity_pullback(s);
    for (const auto& m : moves) f = compose_pullbacks(f, classical_move(f.target, m));
    return f;
}

bool is_identity(const PullbackMap& f) {
    if (!(f.source.exmat == f.target.exmat)) return false;
    for (int i = 0; i < f.source.rank(); ++i)
        if (!(f.images[i] == var(f.source.rank(), i))) return false;
    return true;
}

std::string EllExpr::str(const std::vector<std::string>& names) const {
    if (coeff.is_zero()) return "0";
    return "l*" + (coeff.den().is_constant() && coeff.num().terms().size() == 1 ? coeff.str(names)
                                                                                 : "(" + coeff.str(names) + ")");
}

EllExpr poisson_bracket(const RatExpr& f, const RatExpr& g, const ExMat& e) {
    const int n = e.rank();
    if (f.nvars() != n || g.nvars() != n) throw UsageError("bracket arguments and exchange matrix differ in rank");
    const Poly &N = f.num(), &D = f.den(), &M = g.num(), &E = g.den();
    std::vector<Poly> df(n), dg(n);
    for (int i = 0; i < n; ++i) {
        df[i] = N.derivative(i) * D - N * D.derivative(i);
        dg[i] = M.derivative(i) * E - M * E.derivative(i);
    }
    Poly acc(n);
    for (int i = 0; i < n; ++i) {
        if (df[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (e(i, j) == 0 || dg[j].is_zero()) continue;
            Exps z(n, 0);
            ++z[i];
            ++z[j];
            acc = acc + Poly::monomial(z, e(i, j)) * df[i] * dg[j];
        }
    }
    return {RatExpr(acc, D * D * E * E)};
}

CompatReport check_poisson_compat(const PullbackMap& f) {
    CompatReport r;
    const ExMat& src = f.source.exmat;
    const ExMat& tgt = f.target.exmat;
    const int n = src.rank();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            EllExpr lhs = poisson_bracket(f.images[i], f.images[j], src);
            RatExpr rhs = RatExpr::constant(n, tgt(i, j)) * f.images[i] * f.images[j];
            bool ok = lhs.coeff == rhs;
            r.pairs.push_back({i, j, ok});
            r.pass = r.pass && ok;
        }
    return r;
}

CompatReport check_poisson_compat(const Seed& s, int k) { return check_poisson_compat(classical_mutation(s, k)); }

GCq eval_at_point(const RatExpr& f, const std::vector<GCq>& point) {
    GCqRing ring{point_lambda(point)};
    GCq den = f.den().evaluate(point, ring);
    if (gc_norm(den) == 0)
        throw DomainError("denominator " + to_string(f.den(), default_names(f.nvars())) +
                          " evaluates to a non-unit " + to_string(den));
    return gc_mul(f.num().evaluate(point, ring), gc_inverse(den));
}

GCd eval_at_point(const RatExpr& f, const std::vector<GCd>& point, double unit_tol) {
    GCdRing ring{point_lambda(point)};
    GCd den = f.den().evaluate(point, ring);
    double scale = den.re * den.re + std::abs(double(den.lambda)) * den.im * den.im;
    if (std::abs(gc_norm(den)) <= unit_tol * std::max(scale, 1e-300))
        throw DomainError("denominator " + to_string(f.den(), default_names(f.nvars())) +
                          " evaluates to a non-unit");
    return gc_mul(f.num().evaluate(point, ring), gc_inverse(den));
}

std::vector<PunctureValue> check_puncture_constraint(const Tri& t, const std::vector<GCd>& point, double tol) {
    if (static_cast<int>(point.size()) != t.arc_count()) throw UsageError("point must have one coordinate per arc");
    std::vector<PunctureValue> out;
    for (const auto& th : theta_from_punctures(t)) {
        GCd v = eval_at_point(RatExpr::monomial(th.coefficients), point);
        bool ok = std::abs(v.re - 1) <= tol && std::abs(v.im) <= tol;
        out.push_back({th.tag, v, ok});
    }
    return out;
}

std::vector<EllExpr> constraint_brackets(const std::vector<long>& theta, const ExMat& e) {
    RatExpr zt = RatExpr::monomial(theta);
    std::vector<EllExpr> out;
    for (int i = 0; i < e.rank(); ++i) out.push_back(poisson_bracket(zt, var(e.rank(), i), e));
    return out;
}

nlohmann::json to_json(const PullbackMap& f) {
    nlohmann::json images = nlohmann::json::object();
    auto names = f.source.labels;
    for (int i = 0; i < f.target.rank(); ++i) images[f.target.labels[i] + "'"] = f.images[i].str(names);
    return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"images", images}};
}

} // namespace rlam
