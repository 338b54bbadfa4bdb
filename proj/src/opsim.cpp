#include "rlam/opsim.hpp"

#include "rlam/gencomplex.hpp"
#include "rlam/qdilog.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

namespace rlam {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kI{0, 1};
constexpr int kSymVars = 3;

Poly zero_scalar() { return Poly(kSymVars); }

int pos_part(int v) { return v > 0 ? v : 0; }

void check_rank(const HSymbol& u, const HSymbol& v) {
    if (u.n != v.n) throw UsageError("symbols of different rank");
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    for (auto& th : pool) th.join();
}

// FFTW plans are created under a lock and executed on caller arrays.
std::mutex& planner_lock() {
    static std::mutex m;
    return m;
}

class FFT {
public:
    explicit FFT(int n) : n_(n) {
        std::lock_guard<std::mutex> g(planner_lock());
        std::vector<cplx> buf(n);
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        fwd_ = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        bwd_ = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    ~FFT() {
        std::lock_guard<std::mutex> g(planner_lock());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FFT(const FFT&) = delete;
    FFT& operator=(const FFT&) = delete;

    void forward(cplx* v) const { fftw_execute_dft(fwd_, as(v), as(v)); }
    // Unnormalized.
    void backward(cplx* v) const { fftw_execute_dft(bwd_, as(v), as(v)); }
    int size() const { return n_; }

private:
    static fftw_complex* as(cplx* v) { return reinterpret_cast<fftw_complex*>(v); }
    int n_;
    fftw_plan fwd_, bwd_;
};

// Angular wavenumber of FFT bin k on a period L.
double wavenumber(int k, int n, double L) { return 2 * kPi * (k < n / 2 ? k : k - n) / L; }

double hermite(int m, double x) {
    double h0 = 1, h1 = 2 * x;
    if (m == 0) return h0;
    for (int k = 1; k < m; ++k) {
        double h2 = 2 * x * h1 - 2 * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

cplx packet_value(const Packet& p, double t) {
    double u = (t - p.center) / p.width;
    return hermite(p.hermite, u) * std::exp(-0.5 * u * u) * std::polar(1.0, p.momentum * t);
}

double l2(const std::vector<cplx>& v) {
    double s = 0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

double rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s) / l2(a);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

// ---- symbols --------------------------------------------------------------

Poly sym_scalar(const Rational& c) { return Poly::constant(kSymVars, c); }
Poly sym_var(SymVar v) { return Poly::variable(kSymVars, v); }
std::string to_string_scalar(const Poly& p) { return to_string(p, {"pi", "hbar", "Lambda"}); }

HSymbol::HSymbol(int rank) : n(rank), a(rank, zero_scalar()), b(rank, zero_scalar()), c(zero_scalar()) {
    if (rank < 0) throw UsageError("negative rank");
}

HSymbol HSymbol::t(int rank, int i) {
    HSymbol s(rank);
    s.a.at(i) = sym_scalar(1);
    return s;
}

HSymbol HSymbol::d(int rank, int i) {
    HSymbol s(rank);
    s.b.at(i) = sym_scalar(1);
    return s;
}

HSymbol operator+(const HSymbol& u, const HSymbol& v) {
    check_rank(u, v);
    HSymbol r(u.n);
    for (int i = 0; i < u.n; ++i) {
        r.a[i] = u.a[i] + v.a[i];
        r.b[i] = u.b[i] + v.b[i];
    }
    r.c = u.c + v.c;
    return r;
}

HSymbol operator*(const Poly& s, const HSymbol& u) {
    HSymbol r(u.n);
    for (int i = 0; i < u.n; ++i) {
        r.a[i] = s * u.a[i];
        r.b[i] = s * u.b[i];
    }
    r.c = s * u.c;
    return r;
}

HSymbol operator-(const HSymbol& u, const HSymbol& v) { return u + sym_scalar(-1) * v; }

Poly hsymbol_bracket(const HSymbol& u, const HSymbol& v) {
    check_rank(u, v);
    Poly p = zero_scalar();
    for (int i = 0; i < u.n; ++i) p = p + u.b[i] * v.a[i] - u.a[i] * v.b[i];
    return p;
}

HSymbol x_symbol(const ExMat& e, int i) { return sym_scalar(-1) * sym_var(kVarPi) * HSymbol::d(e.rank(), i); }

HSymbol y_symbol(const ExMat& e, int i) {
    HSymbol s(e.rank());
    for (int j = 0; j < e.rank(); ++j) s.a[j] = sym_scalar(e(i, j));
    return s;
}

HSymbol xring_symbol(const ExMat& e, int i) { return x_symbol(e, i) + sym_var(kVarHbar) * y_symbol(e, i); }

ZBlockOp z_symbol(const ExMat& e, int i, int eps) {
    if (eps != 1 && eps != -1) throw UsageError("z-operator sign must be +1 or -1");
    return {x_symbol(e, i), sym_scalar(eps) * sym_var(kVarHbar) * y_symbol(e, i)};
}

ZBlockOp operator+(const ZBlockOp& u, const ZBlockOp& v) { return {u.diag + v.diag, u.off + v.off}; }
ZBlockOp operator*(const Poly& s, const ZBlockOp& u) { return {s * u.diag, s * u.off}; }

BlockScalar zblock_bracket(const ZBlockOp& u, const ZBlockOp& v) {
    // ℓ̂ is central in the symbol algebra and ℓ̂² = -Λ.
    return {hsymbol_bracket(u.diag, v.diag) - sym_var(kVarLambda) * hsymbol_bracket(u.off, v.off),
            hsymbol_bracket(u.diag, v.off) + hsymbol_bracket(u.off, v.diag)};
}

// ---- linear maps -----------------------------------------------------------

LinearMap::LinearMap(int rank) : n(rank), m(static_cast<std::size_t>(rank) * rank, Rational(0)) {}

LinearMap LinearMap::identity(int rank) {
    LinearMap r(rank);
    for (int i = 0; i < rank; ++i) r(i, i) = 1;
    return r;
}

Rational determinant(const LinearMap& a) {
    LinearMap w = a;
    Rational det = 1;
    for (int c = 0; c < w.n; ++c) {
        int piv = c;
        while (piv < w.n && w(piv, c) == 0) ++piv;
        if (piv == w.n) return 0;
        if (piv != c) {
            for (int j = 0; j < w.n; ++j) std::swap(w(piv, j), w(c, j));
            det = -det;
        }
        det *= w(c, c);
        for (int r = c + 1; r < w.n; ++r) {
            Rational f = w(r, c) / w(c, c);
            if (f == 0) continue;
            for (int j = c; j < w.n; ++j) w(r, j) -= f * w(c, j);
        }
    }
    return det;
}

LinearMap inverse(const LinearMap& a) {
    LinearMap w = a, r = LinearMap::identity(a.n);
    for (int c = 0; c < w.n; ++c) {
        int piv = c;
        while (piv < w.n && w(piv, c) == 0) ++piv;
        if (piv == w.n) throw DomainError("linear map is not invertible");
        for (int j = 0; j < w.n; ++j) {
            std::swap(w(piv, j), w(c, j));
            std::swap(r(piv, j), r(c, j));
        }
        Rational p = w(c, c);
        for (int j = 0; j < w.n; ++j) {
            w(c, j) /= p;
            r(c, j) /= p;
        }
        for (int i = 0; i < w.n; ++i) {
            if (i == c || w(i, c) == 0) continue;
            Rational f = w(i, c);
            for (int j = 0; j < w.n; ++j) {
                w(i, j) -= f * w(c, j);
                r(i, j) -= f * r(c, j);
            }
        }
    }
    return r;
}

LinearMap then(const LinearMap& first, const LinearMap& second) {
    if (first.n != second.n) throw UsageError("linear maps of different rank");
    LinearMap r(first.n);
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) {
            Rational s = 0;
            for (int l = 0; l < r.n; ++l) s += second(i, l) * first(l, j);
            r(i, j) = s;
        }
    return r;
}

nlohmann::json to_json(const LinearMap& a) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < a.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < a.n; ++j) row.push_back(to_string(a(i, j)));
        rows.push_back(row);
    }
    return {{"matrix", rows}, {"determinant", to_string(determinant(a))}};
}

LinearMap kprime_linear(const ExMat& e, int k) {
    if (k < 0 || k >= e.rank()) throw UsageError("mutation index out of range");
    LinearMap m = LinearMap::identity(e.rank());
    for (int j = 0; j < e.rank(); ++j) m(k, j) = pos_part(-e(k, j));
    m(k, k) = -1;
    return m;
}

LinearMap kprime_linear(const Seed& s, int k) { return kprime_linear(s.exmat, k); }

HSymbol conjugate_symbol(const LinearMap& m, const HSymbol& s) {
    if (m.n != s.n) throw UsageError("linear map and symbol have different rank");
    const LinearMap inv = inverse(m);
    HSymbol r(s.n);
    for (int j = 0; j < s.n; ++j)
        for (int i = 0; i < s.n; ++i) {
            if (m(i, j) != 0) r.a[j] = r.a[j] + m(i, j) * s.a[i];
            if (inv(j, i) != 0) r.b[j] = r.b[j] + inv(j, i) * s.b[i];
        }
    r.c = s.c;
    return r;
}

ZBlockOp conjugate_symbol(const LinearMap& m, const ZBlockOp& s) {
    return {conjugate_symbol(m, s.diag), conjugate_symbol(m, s.off)};
}

ExMat transport_exmat(const LinearMap& m, const ExMat& e) {
    if (m.n != e.rank()) throw UsageError("linear map and exchange matrix have different rank");
    const LinearMap inv = inverse(m);
    const int n = m.n;
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational s = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (e(a, b) != 0) s += inv(a, i) * e(a, b) * inv(b, j);
            if (s.get_den() != 1) throw UsageError("transported exchange matrix is not integral");
            rows[i][j] = static_cast<int>(s.get_num().get_si());
        }
    return ExMat::from_rows(rows);
}

Report heisenberg_suite(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    long xy = 0, xx = 0, ring = 0, zb = 0, anti = 0, bilin = 0, central = 0, checks = 0;
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), rank_d(2, 5);
    auto random_symbol = [&](int n) {
        HSymbol s(n);
        const Poly pi = sym_var(kVarPi), hb = sym_var(kVarHbar);
        auto c = [&] {
            Poly base = sym_scalar(rat(coef(rng), den(rng)));
            int w = coef(rng) % 3;
            return w == 0 ? base : (w > 0 ? base * pi : base * hb);
        };
        for (int i = 0; i < n; ++i) {
            s.a[i] = c();
            s.b[i] = c();
        }
        s.c = c();
        return s;
    };
    for (int trial = 0; trial < count; ++trial) {
        const int n = rank_d(rng);
        const ExMat e = random_exmat(n, 2, rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ++checks;
                if (hsymbol_bracket(x_symbol(e, i), y_symbol(e, j)) != sym_scalar(e(i, j)) * sym_var(kVarPi)) ++xy;
                if (!hsymbol_bracket(x_symbol(e, i), x_symbol(e, j)).is_zero() ||
                    !hsymbol_bracket(y_symbol(e, i), y_symbol(e, j)).is_zero())
                    ++xx;
                if (hsymbol_bracket(xring_symbol(e, i), xring_symbol(e, j)) !=
                    sym_scalar(2 * e(i, j)) * sym_var(kVarPi) * sym_var(kVarHbar))
                    ++ring;
                for (int eps : {1, -1}) {
                    BlockScalar b = zblock_bracket(z_symbol(e, i, eps), z_symbol(e, j, eps));
                    if (!b.id.is_zero() || b.ell != sym_scalar(2 * eps * e(i, j)) * sym_var(kVarPi) * sym_var(kVarHbar))
                        ++zb;
                }
            }
        HSymbol u = random_symbol(n), v = random_symbol(n), w = random_symbol(n);
        if (hsymbol_bracket(u, v) != sym_scalar(-1) * hsymbol_bracket(v, u)) ++anti;
        if (hsymbol_bracket(u + v, w) != hsymbol_bracket(u, w) + hsymbol_bracket(v, w)) ++bilin;
        HSymbol cu(n);
        cu.c = u.c;
        if (!hsymbol_bracket(cu, w).is_zero()) ++central;
    }
    Report rep;
    nlohmann::json d{{"seeds", count}, {"pairs", checks}, {"rng_seed", seed}};
    rep.add(make_record("[x_i, y_j] = pi i eps_ij", "Heisenberg", static_cast<double>(xy), 0, d));
    rep.add(make_record("[x_i, x_j] = [y_i, y_j] = 0", "Heisenberg", static_cast<double>(xx), 0, d));
    rep.add(make_record("[x_i + hbar y_i, x_j + hbar y_j] = 2 pi i hbar eps_ij", "Heisenberg", static_cast<double>(ring), 0, d));
    rep.add(make_record("[z_i, z_j] = 2 pi i hbar eps l eps_ij", "z-operator", static_cast<double>(zb), 0, d));
    rep.add(make_record("bracket antisymmetric", "Heisenberg", static_cast<double>(anti), 0, d));
    rep.add(make_record("bracket bilinear", "Heisenberg", static_cast<double>(bilin), 0, d));
    rep.add(make_record("bracket central", "Heisenberg", static_cast<double>(central), 0, d));
    return rep;
}

Report kprime_suite(int count, int max_rank, std::uint64_t seed) {
    if (max_rank < 2) throw UsageError("max rank must be at least 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rank_d(2, max_rank);
    long det_bad = 0, x_bad = 0, y_bad = 0, ring_bad = 0, z_bad = 0, square_bad = 0, word_bad = 0, cases = 0;
    for (int trial = 0; trial < count; ++trial) {
        const int n = rank_d(rng);
        const ExMat e = random_exmat(n, 2, rng);
        for (int k = 0; k < n; ++k) {
            const LinearMap m = kprime_linear(e, k);
            const ExMat ep = mutate_exmat(e, k);
            if (determinant(m) != -1) ++det_bad;
            if (transport_exmat(m, e) != ep) ++square_bad;
            for (int i = 0; i < n; ++i) {
                ++cases;
                const Poly w = sym_scalar(i == k ? 0 : pos_part(e(i, k)));
                auto expect = [&](const HSymbol& own, const HSymbol& at_k) {
                    return i == k ? sym_scalar(-1) * own : own + w * at_k;
                };
                if (conjugate_symbol(m, x_symbol(ep, i)) != expect(x_symbol(e, i), x_symbol(e, k))) ++x_bad;
                if (conjugate_symbol(m, y_symbol(ep, i)) != expect(y_symbol(e, i), y_symbol(e, k))) ++y_bad;
                if (conjugate_symbol(m, xring_symbol(ep, i)) != expect(xring_symbol(e, i), xring_symbol(e, k))) ++ring_bad;
                for (int eps : {1, -1}) {
                    ZBlockOp got = conjugate_symbol(m, z_symbol(ep, i, eps));
                    ZBlockOp want = i == k ? sym_scalar(-1) * z_symbol(e, i, eps) : z_symbol(e, i, eps) + w * z_symbol(e, k, eps);
                    if (got != want) ++z_bad;
                }
            }
        }
        // Composite along a random mutation word.
        std::uniform_int_distribution<int> len_d(1, 6), k_d(0, n - 1);
        const int len = len_d(rng);
        ExMat cur = e;
        LinearMap total = LinearMap::identity(n);
        for (int s = 0; s < len; ++s) {
            int k = k_d(rng);
            total = then(total, kprime_linear(cur, k));
            cur = mutate_exmat(cur, k);
        }
        if (transport_exmat(total, e) != cur || determinant(total) != (len % 2 ? -1 : 1)) ++word_bad;
    }
    Report rep;
    nlohmann::json d{{"seeds", count}, {"max_rank", max_rank}, {"rng_seed", seed}, {"cases", cases}};
    rep.add(make_record("K' determinant -1", "K' conjugation", static_cast<double>(det_bad), 0, d));
    rep.add(make_record("K' conjugation of x", "K' conjugation", static_cast<double>(x_bad), 0, d));
    rep.add(make_record("K' conjugation of y", "K' conjugation", static_cast<double>(y_bad), 0, d));
    rep.add(make_record("K' conjugation of x + hbar y", "K' conjugation", static_cast<double>(ring_bad), 0, d));
    rep.add(make_record("K' conjugation of z", "K' conjugation", static_cast<double>(z_bad), 0, d));
    rep.add(make_record("K' transports eps to the mutated matrix", "K' conjugation", static_cast<double>(square_bad), 0, d));
    rep.add(make_record("K' composites along mutation words", "K' conjugation", static_cast<double>(word_bad), 0, d));
    return rep;
}

// ---- grids ---------------------------------------------------------------------

double GridState::norm() const {
    double s = 0;
    for (const auto& v : data) s += std::norm(v);
    return std::sqrt(s * std::pow(spacing(), dim));
}

nlohmann::json to_json(const Packet& p) {
    return {{"center", p.center}, {"width", p.width}, {"momentum", p.momentum}, {"hermite", p.hermite}};
}

GridState make_packet_1d(const Packet& p, int n, double L) {
    if (n < 16 || n % 2) throw UsageError("grid size must be even and at least 16");
    if (!(L > 0) || !(p.width > 0)) throw UsageError("extent and packet width must be positive");
    GridState g;
    g.dim = 1;
    g.n = n;
    g.L = L;
    g.data.resize(n);
    for (int j = 0; j < n; ++j) g.data[j] = packet_value(p, g.coord(j));
    const double nrm = g.norm();
    for (auto& v : g.data) v /= nrm;
    return g;
}

GridState make_packet_2d(const Packet& pt, const Packet& ps, int n, double L) {
    GridState a = make_packet_1d(pt, n, L), b = make_packet_1d(ps, n, L);
    GridState g = a;
    g.dim = 2;
    g.data.assign(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.data[static_cast<std::size_t>(i) * n + j] = a.data[i] * b.data[j];
    return g;
}

Deviation aligned_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw UsageError("states of different size");
    cplx overlap = 0;
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
    const double phase = std::arg(overlap);
    const cplx rot = std::polar(1.0, phase);
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - rot * b[i]);
    return {std::sqrt(s) / l2(a), phase};
}

double boundary_leakage(const GridState& g) {
    const int edge = std::max(1, g.n / 10);
    auto outer = [&](int j) { return j < edge || j >= g.n - edge; };
    double all = 0, out = 0;
    for (std::size_t idx = 0; idx < g.data.size(); ++idx) {
        double w = std::norm(g.data[idx]);
        all += w;
        bool o = g.dim == 1 ? outer(static_cast<int>(idx)) : outer(static_cast<int>(idx / g.n)) || outer(static_cast<int>(idx % g.n));
        if (o) out += w;
    }
    return all > 0 ? out / all : 0;
}

Heisenberg1D::Heisenberg1D(int n, double L, double hbar) : n_(n), L_(L), hbar_(hbar) {
    if (n < 16 || n % 2) throw UsageError("grid size must be even and at least 16");
    if (!(L > 0)) throw UsageError("grid extent must be positive");
    if (!(hbar >= 0.2 && hbar <= 2)) throw UsageError("hbar must lie in [0.2, 2] for grid simulation");
    t_.resize(n);
    p_.resize(n);
    for (int j = 0; j < n; ++j) {
        t_[j] = -L / 2 + j * L / n;
        p_[j] = wavenumber(j, n, L);
    }
    phi_pos_.resize(n);
    phi_mom_.resize(n);
    chirp_.resize(n);
    parallel_for(n, 0, [&](int j) {
        phi_pos_[j] = phi_real(hbar, t_[j]).value;
        phi_mom_[j] = phi_real(hbar, 2 * kPi * hbar * p_[j]).value;
        chirp_[j] = std::polar(1.0, t_[j] * t_[j] / (4 * kPi * hbar));
    });
}

void Heisenberg1D::momentum_multiply(std::vector<cplx>& v, const std::vector<cplx>& mult) const {
    if (static_cast<int>(v.size()) != n_) throw UsageError("state does not match the grid");
    static thread_local std::unique_ptr<FFT> fft;
    if (!fft || fft->size() != n_) fft = std::make_unique<FFT>(n_);
    fft->forward(v.data());
    for (int k = 0; k < n_; ++k) v[k] *= mult[k] / static_cast<double>(n_);
    fft->backward(v.data());
}

void Heisenberg1D::apply_phi_position(std::vector<cplx>& v, int sign) const {
    if (static_cast<int>(v.size()) != n_) throw UsageError("state does not match the grid");
    for (int j = 0; j < n_; ++j) v[j] *= sign > 0 ? phi_pos_[j] : 1.0 / phi_pos_[j];
}

void Heisenberg1D::apply_phi_momentum(std::vector<cplx>& v, int sign) const {
    if (sign > 0) return momentum_multiply(v, phi_mom_);
    std::vector<cplx> inv(n_);
    for (int k = 0; k < n_; ++k) inv[k] = 1.0 / phi_mom_[k];
    momentum_multiply(v, inv);
}

void Heisenberg1D::apply_phi_sum(std::vector<cplx>& v, int sign) const {
    if (static_cast<int>(v.size()) != n_) throw UsageError("state does not match the grid");
    for (int j = 0; j < n_; ++j) v[j] *= chirp_[j];
    apply_phi_momentum(v, sign);
    for (int j = 0; j < n_; ++j) v[j] *= std::conj(chirp_[j]);
}

void Heisenberg1D::apply_exp_position(std::vector<cplx>& v, double alpha) const {
    if (static_cast<int>(v.size()) != n_) throw UsageError("state does not match the grid");
    for (int j = 0; j < n_; ++j) v[j] *= std::polar(1.0, alpha * t_[j]);
}

void Heisenberg1D::apply_exp_momentum(std::vector<cplx>& v, double beta) const {
    std::vector<cplx> m(n_);
    for (int k = 0; k < n_; ++k) m[k] = std::polar(1.0, beta * 2 * kPi * hbar_ * p_[k]);
    momentum_multiply(v, m);
}

void Heisenberg1D::apply_exp_sum(std::vector<cplx>& v, double beta) const {
    if (static_cast<int>(v.size()) != n_) throw UsageError("state does not match the grid");
    for (int j = 0; j < n_; ++j) v[j] *= chirp_[j];
    apply_exp_momentum(v, beta);
    for (int j = 0; j < n_; ++j) v[j] *= std::conj(chirp_[j]);
}

double Heisenberg1D::chirp_ratio() const { return (L_ / (4 * kPi * hbar_)) / (kPi * n_ / L_); }

int Heisenberg1D::suggested_n() const {
    int n = 16;
    while (L_ * L_ / (4 * kPi * kPi * hbar_ * n) > 0.25) n *= 2;
    return std::max(n, n_);
}

GridState apply_phi_of_position(const GridState& g, double hbar, int sign) {
    if (g.dim != 1) throw UsageError("position multiplier needs a 1D grid");
    GridState r = g;
    r.hbar = hbar;
    Heisenberg1D(g.n, g.L, hbar).apply_phi_position(r.data, sign);
    return r;
}

GridState apply_phi_of_momentum(const GridState& g, double hbar, int sign) {
    if (g.dim != 1) throw UsageError("momentum multiplier needs a 1D grid");
    GridState r = g;
    r.hbar = hbar;
    Heisenberg1D(g.n, g.L, hbar).apply_phi_momentum(r.data, sign);
    return r;
}

GridState apply_phi_of_sum(const GridState& g, double hbar, int sign) {
    if (g.dim != 1) throw UsageError("sum multiplier needs a 1D grid");
    GridState r = g;
    r.hbar = hbar;
    Heisenberg1D(g.n, g.L, hbar).apply_phi_sum(r.data, sign);
    return r;
}

std::vector<Packet> default_basket_1d() {
    return {{3, 1.5, 0, 0}, {0, 1.2, 0.3, 0}, {5, 1.5, -0.5, 0}, {2, 1.5, 0, 1}, {1, 2, 0.2, 2}};
}

namespace {

nlohmann::json grid_meta(int dim, int n, double L, double hbar, int lambda) {
    return {{"dim", dim}, {"n", n}, {"L", L}, {"hbar", hbar}, {"lambda", lambda}};
}

} // namespace

Report verify_pentagon_lambda_minus1(const PentagonParams& p) {
    const Heisenberg1D H(p.n, p.L, p.hbar);
    const auto basket = default_basket_1d();
    const double tol = p.hbar >= 1 ? 1e-4 : 1e-3;
    std::vector<Deviation> dev(basket.size());
    std::vector<double> leak(basket.size());
    Deviation control;
    parallel_for(static_cast<int>(basket.size()) + 1, p.workers, [&](int b) {
        const bool ctl = b == static_cast<int>(basket.size());
        GridState g = make_packet_1d(basket[ctl ? 0 : b], p.n, p.L);
        std::vector<cplx> lhs = g.data, rhs = g.data;
        H.apply_phi_momentum(lhs, 1);
        H.apply_phi_position(lhs, 1);
        H.apply_phi_position(rhs, 1);
        if (!ctl) H.apply_phi_sum(rhs, 1);
        H.apply_phi_momentum(rhs, 1);
        if (ctl) {
            control = aligned_deviation(lhs, rhs);
            return;
        }
        dev[b] = aligned_deviation(lhs, rhs);
        GridState out = g;
        out.data = rhs;
        leak[b] = boundary_leakage(out);
    });
    Report rep;
    nlohmann::json meta = grid_meta(1, p.n, p.L, p.hbar, -1);
    nlohmann::json warnings = nlohmann::json::array();
    if (H.chirp_ratio() > 0.5) warnings.push_back("chirp aliasing; suggested n = " + std::to_string(H.suggested_n()));
    double worst = 0;
    for (std::size_t b = 0; b < basket.size(); ++b) {
        if (leak[b] > 1e-8) warnings.push_back("packet " + std::to_string(b) + " leaks " + fmt(leak[b]) + " of its norm to the boundary");
        nlohmann::json d{{"grid", meta}, {"packet", to_json(basket[b])}, {"phase", dev[b].phase}, {"leakage", leak[b]}};
        rep.add(make_record("pentagon lambda=-1 hbar=" + fmt(p.hbar) + " packet " + std::to_string(b), "pentagon",
                            dev[b].relative, tol, d));
        worst = std::max(worst, dev[b].relative);
    }
    rep.records.front().detail["warnings"] = warnings;
    rep.add(make_lower_record("pentagon lambda=-1 hbar=" + fmt(p.hbar) + " negative control (middle factor dropped)",
                              "pentagon", control.relative, 1e-1, {{"grid", meta}, {"phase", control.phase}}));
    return rep;
}

// ---- Λ = 0 substitutions -------------------------------------------------------

SubstitutionMap f0_sub_xy() {
    RatExpr T = RatExpr::variable(2, 0), S = RatExpr::variable(2, 1);
    return {"F0(x,y)", {T, S + S / T}};
}

SubstitutionMap f0_sub_xpyp() {
    RatExpr T = RatExpr::variable(2, 0), S = RatExpr::variable(2, 1);
    return {"F0(x',y')", {T + T * S, S}};
}

SubstitutionMap f0_sub_sum() {
    RatExpr T = RatExpr::variable(2, 0), S = RatExpr::variable(2, 1);
    return {"F0(x+x',y+y')", {T + S, S / T * (T + S)}};
}

SubstitutionMap sub_compose(const SubstitutionMap& f, const SubstitutionMap& g) {
    // (η∘f)∘g = η∘(f∘g): substitute g into f.
    std::vector<RatExpr> im;
    for (const auto& e : f.images) im.push_back(e.substitute(g.images));
    return {f.name + " " + g.name, im};
}

SubstitutionMap f0_pentagon_lhs() {
    // F0(x,y) F0(x',y') η = η ∘ (b ∘ a)
    return sub_compose(f0_sub_xpyp(), f0_sub_xy());
}

SubstitutionMap f0_pentagon_rhs() {
    return sub_compose(sub_compose(f0_sub_xy(), f0_sub_sum()), f0_sub_xpyp());
}

// ---- 2D grids --------------------------------------------------------------------

namespace {

// x = -t, y = πi∂_s, x' = s, y' = πi∂_t on an n×n periodic grid. All three
// factors use one table T[m][k] = F(x_m, -π κ_k) with x_m = (m - n/2)·dt.
class Plane2D {
public:
    Plane2D(int n, double L, std::vector<cplx> table, int workers)
        : n_(n), L_(L), table_(std::move(table)), workers_(workers) {}

    cplx mult(int m, int k) const { return table_[static_cast<std::size_t>(((m % n_) + n_) % n_) * n_ + k]; }

    // F(x, y): along s, x = -t_i  →  m = n - i.
    void apply_xy(std::vector<cplx>& v) const {
        parallel_for(n_, workers_, [&](int i) {
            line(v, [&](int r) { return static_cast<std::size_t>(i) * n_ + r; }, n_ - i);
        });
    }
    // F(x', y'): along t, x' = s_j  →  m = j.
    void apply_xpyp(std::vector<cplx>& v) const {
        parallel_for(n_, workers_, [&](int j) {
            line(v, [&](int r) { return static_cast<std::size_t>(r) * n_ + j; }, j);
        });
    }
    // F(x+x', y+y'): along the diagonal (r, r+d), x+x' = s - t = d·dt.
    void apply_sum(std::vector<cplx>& v) const {
        parallel_for(n_, workers_, [&](int d) {
            int dw = d < n_ / 2 ? d : d - n_;
            line(v, [&](int r) { return static_cast<std::size_t>(r) * n_ + (r + d) % n_; }, dw + n_ / 2);
        });
    }

private:
    template <class Index>
    void line(std::vector<cplx>& v, Index idx, int m) const {
        static thread_local std::unique_ptr<FFT> fft;
        if (!fft || fft->size() != n_) fft = std::make_unique<FFT>(n_);
        std::vector<cplx> buf(n_);
        for (int r = 0; r < n_; ++r) buf[r] = v[idx(r)];
        fft->forward(buf.data());
        for (int k = 0; k < n_; ++k) buf[k] *= mult(m, k) / static_cast<double>(n_);
        fft->backward(buf.data());
        for (int r = 0; r < n_; ++r) v[idx(r)] = buf[r];
    }

    int n_;
    double L_;
    std::vector<cplx> table_;
    int workers_;
};

std::vector<cplx> build_table(int n, double L, const std::function<cplx(double, double)>& F, int workers) {
    std::vector<cplx> t(static_cast<std::size_t>(n) * n);
    const double dt = L / n;
    parallel_for(n, workers, [&](int m) {
        const double x = (m - n / 2) * dt;
        for (int k = 0; k < n; ++k) t[static_cast<std::size_t>(m) * n + k] = F(x, -kPi * wavenumber(k, n, L));
    });
    return t;
}

std::vector<std::pair<Packet, Packet>> default_basket_2d() {
    return {{{0, 1, 0, 0}, {0, 1, 0, 0}},
            {{1, 0.8, 0.5, 0}, {-1, 1.2, 0, 0}},
            {{-0.5, 1, 0, 1}, {0.5, 0.9, -0.4, 0}}};
}

Report run_pentagon_2d(const std::string& label, const std::function<cplx(double, double)>& F, double tol,
                       const PentagonParams& p, int lambda) {
    if (p.n < 16 || p.n % 2) throw UsageError("grid size must be even and at least 16");
    const Plane2D plane(p.n, p.L, build_table(p.n, p.L, F, p.workers), p.workers);
    const auto basket = default_basket_2d();
    const nlohmann::json meta = grid_meta(2, p.n, p.L, p.hbar, lambda);
    Report rep;
    nlohmann::json warnings = nlohmann::json::array();
    Deviation control;
    for (std::size_t b = 0; b <= basket.size(); ++b) {
        const bool ctl = b == basket.size();
        GridState g = make_packet_2d(basket[ctl ? 0 : b].first, basket[ctl ? 0 : b].second, p.n, p.L);
        std::vector<cplx> lhs = g.data, rhs = g.data;
        plane.apply_xpyp(lhs);
        plane.apply_xy(lhs);
        plane.apply_xy(rhs);
        if (!ctl) plane.apply_sum(rhs);
        plane.apply_xpyp(rhs);
        Deviation d = aligned_deviation(lhs, rhs);
        if (ctl) {
            control = d;
            break;
        }
        GridState out = g;
        out.data = rhs;
        const double leak = boundary_leakage(out);
        if (leak > 1e-8) warnings.push_back("packet " + std::to_string(b) + " leaks " + fmt(leak) + " of its norm to the boundary");
        const double drift = std::abs(out.norm() - g.norm()) / g.norm();
        nlohmann::json det{{"grid", meta},
                           {"packet_t", to_json(basket[b].first)},
                           {"packet_s", to_json(basket[b].second)},
                           {"phase", d.phase},
                           {"norm_drift", drift},
                           {"leakage", leak}};
        rep.add(make_record(label + " packet " + std::to_string(b), "pentagon", d.relative, tol, det));
    }
    rep.records.front().detail["warnings"] = warnings;
    rep.add(make_lower_record(label + " negative control (middle factor dropped)", "pentagon", control.relative, 1e-1,
                              {{"grid", meta}, {"phase", control.phase}}));
    return rep;
}

} // namespace

Report verify_pentagon_2d(int lambda, const PentagonParams& p) {
    if (lambda == 0)
        return run_pentagon_2d("pentagon lambda=0 grid", [](double x, double y) { return f0(x, cplx(y)); }, 1e-6, p, 0);
    if (lambda == 1) {
        if (!(p.hbar >= 0.2 && p.hbar <= 2)) throw UsageError("hbar must lie in [0.2, 2] for grid simulation");
        const double h = p.hbar;
        return run_pentagon_2d("pentagon lambda=1 hbar=" + fmt(h), [h](double x, double y) { return f1_phase(h, x, y); },
                               1e-3, p, 1);
    }
    if (lambda == -1) {
        if (!(p.hbar >= 0.2 && p.hbar <= 2)) throw UsageError("hbar must lie in [0.2, 2] for grid simulation");
        const double h = p.hbar;
        return run_pentagon_2d("pentagon lambda=-1 2D hbar=" + fmt(h),
                               [h](double x, double y) { return phi_real(h, x + h * y).value / phi_real(h, x - h * y).value; },
                               1e-4, p, -1);
    }
    check_lambda(lambda);
    return {};
}

Report verify_pentagon_lambda_plus1(const PentagonParams& p) { return verify_pentagon_2d(1, p); }

Report verify_pentagon_degenerate(const PentagonParams& p) {
    const double h = p.hbar;
    Report r = run_pentagon_2d("pentagon lambda=1 degenerate (y = 0 factors) hbar=" + fmt(h),
                               [h](double x, double) { return f1_phase(h, x, 0); }, 1e-8, p, 1);
    r.records.pop_back();
    return r;
}

Report pentagon_f0_substitution(int n, double L) {
    Report rep;
    const SubstitutionMap lhs = f0_pentagon_lhs(), rhs = f0_pentagon_rhs();
    const RatExpr T = RatExpr::variable(2, 0), S = RatExpr::variable(2, 1);
    const RatExpr one = RatExpr::constant(2, 1);
    const std::vector<RatExpr> expected{T + T * S + S, S / T * (one + T)};
    const std::vector<std::string> names{"T", "S"};
    long bad = 0;
    nlohmann::json comp = nlohmann::json::array();
    for (int c = 0; c < 2; ++c) {
        if (!(lhs.images[c] == rhs.images[c]) || !(lhs.images[c] == expected[c])) ++bad;
        comp.push_back({{"lhs", lhs.images[c].str(names)}, {"rhs", rhs.images[c].str(names)}});
    }
    rep.add(make_record("flat pentagon substitution maps agree over Q(T,S)", "pentagon", static_cast<double>(bad), 0,
                        {{"composites", comp}}));

    const std::vector<RatExpr> pt{RatExpr::constant(2, 2), RatExpr::constant(2, 3)};
    long spot = 0;
    nlohmann::json vals = nlohmann::json::array();
    const std::vector<Rational> want{11, rat(9, 2)};
    for (int c = 0; c < 2; ++c) {
        RatExpr l = lhs.images[c].substitute(pt), r = rhs.images[c].substitute(pt);
        if (!(l == RatExpr::constant(2, want[c])) || !(r == RatExpr::constant(2, want[c]))) ++spot;
        vals.push_back({l.str(names), r.str(names)});
    }
    rep.add(make_record("flat pentagon at (T,S) = (2,3)", "pentagon", static_cast<double>(spot), 0, {{"values", vals}}));

    PentagonParams p;
    p.n = n;
    p.L = L;
    p.hbar = 1;
    rep.merge(verify_pentagon_2d(0, p));
    return rep;
}

// ---- F0 conjugation -------------------------------------------------------------

namespace {

// (1 + 0.3t - 0.2s + 0.1s²) exp(-(t-0.2)²/2 - (s+0.1)²/(2·1.3²)), continued in s.
struct TestPacket {
    cplx poly(double t, cplx s) const { return 1.0 + 0.3 * t - 0.2 * s + 0.1 * s * s; }
    cplx gauss(double t, cplx s) const {
        return std::exp(-0.5 * (t - 0.2) * (t - 0.2) - (s + 0.1) * (s + 0.1) / (2 * 1.69));
    }
    cplx operator()(double t, cplx s) const { return poly(t, s) * gauss(t, s); }
    cplx dt(double t, cplx s) const { return (0.3 - (t - 0.2) * poly(t, s)) * gauss(t, s); }
};

} // namespace

Report verify_f0_conjugation(int n, double L, const std::vector<int>& ns) {
    if (n < 16 || n % 2) throw UsageError("grid size must be even and at least 16");
    const double dt = L / n;
    const TestPacket eta;
    auto coord = [&](int j) { return -L / 2 + j * dt; };
    const std::size_t N2 = static_cast<std::size_t>(n) * n;
    auto field = [&](const std::function<cplx(double, double)>& f) {
        std::vector<cplx> v(N2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(i) * n + j] = f(coord(i), coord(j));
        return v;
    };
    auto F0 = [](double t, cplx s) { return f0(t, s); };
    const nlohmann::json meta{{"n", n}, {"L", L}};
    Report rep;

    // 1: F0 e^{x_k} = e^{x_k} F0; 3: F0 y_k = y_k F0.
    {
        auto lhs = field([&](double t, double s) { return F0(t, s) * (std::exp(t) * eta(t, s)); });
        auto rhs = field([&](double t, double s) { return std::exp(t) * (F0(t, s) * eta(t, s)); });
        rep.add(make_record("F0 conjugation: commutes with e^{x_k}", "F0 conjugation", rel_diff(lhs, rhs), 1e-10, meta));
        lhs = field([&](double t, double s) { return F0(t, s) * (s * eta(t, s)); });
        rhs = field([&](double t, double s) { return s * (F0(t, s) * eta(t, s)); });
        rep.add(make_record("F0 conjugation: commutes with y_k", "F0 conjugation", rel_diff(lhs, rhs), 1e-10, meta));
    }
    static thread_local std::unique_ptr<FFT> fft;
    if (!fft || fft->size() != n) fft = std::make_unique<FFT>(n);
    for (int k : ns) {
        const double nn = k;
        // 2: F0 e^{x_i} η = e^{x_i} (1+e^{x_k})^{-n} F0 η with e^{x_i} the shift s → s + nπi.
        const cplx shift = nn * kPi * kI;
        auto lhs = field([&](double t, double s) { return F0(t, s) * eta(t, s + shift); });
        auto rhs = field([&](double t, double s) {
            cplx sc = s + shift;
            return std::pow(1.0 + std::exp(t), -nn) * F0(t, sc) * eta(t, sc);
        });
        nlohmann::json d = meta;
        d["n_eps"] = k;
        rep.add(make_record("F0 conjugation: e^{x_i} picks up (1+e^{x_k})^{-n}, n=" + std::to_string(k), "F0 conjugation",
                            rel_diff(lhs, rhs), 1e-6, d));

        // 4: F0 y_i η = (y_i - n y_k (1+e^{x_k})^{-1} e^{x_k}) F0 η with y_i = nπi∂_t;
        // the derivative on the right is spectral along t.
        lhs = field([&](double t, double s) { return F0(t, s) * (nn * kPi * kI * eta.dt(t, s)); });
        std::vector<cplx> g = field([&](double t, double s) { return F0(t, s) * eta(t, s); });
        std::vector<cplx> col(n);
        rhs.assign(N2, 0);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) col[i] = g[static_cast<std::size_t>(i) * n + j];
            fft->forward(col.data());
            for (int q = 0; q < n; ++q) col[q] *= kI * wavenumber(q, n, L) / static_cast<double>(n);
            if (n % 2 == 0) col[n / 2] = 0;
            fft->backward(col.data());
            for (int i = 0; i < n; ++i) {
                const double t = coord(i), s = coord(j);
                const std::size_t idx = static_cast<std::size_t>(i) * n + j;
                rhs[idx] = nn * kPi * kI * col[i] - nn * s * std::exp(t) / (1 + std::exp(t)) * g[idx];
            }
        }
        rep.add(make_record("F0 conjugation: y_i picks up -n y_k e^{x_k}/(1+e^{x_k}), n=" + std::to_string(k),
                            "F0 conjugation", rel_diff(lhs, rhs), 1e-6, d));
    }
    return rep;
}

// ---- grid operator checks --------------------------------------------------------

Report grid_operator_suite(double hbar, int n, double L) {
    const Heisenberg1D H(n, L, hbar);
    const Packet pk{0.3, 1, 0.2, 0};
    const GridState g = make_packet_1d(pk, n, L);
    const double n0 = g.norm();
    const nlohmann::json meta = grid_meta(1, n, L, hbar, -1);
    const std::string hs = " hbar=" + fmt(hbar);
    Report rep;
    auto drift = [&](const std::vector<cplx>& v) {
        GridState o = g;
        o.data = v;
        return std::abs(o.norm() - n0) / n0;
    };
    using Apply = void (Heisenberg1D::*)(std::vector<cplx>&, int) const;
    const std::vector<std::pair<std::string, Apply>> ops{{"position", &Heisenberg1D::apply_phi_position},
                                                         {"momentum", &Heisenberg1D::apply_phi_momentum},
                                                         {"sum", &Heisenberg1D::apply_phi_sum}};
    for (const auto& [name, op] : ops) {
        std::vector<cplx> v = g.data;
        (H.*op)(v, 1);
        const double tol = name == "sum" ? 1e-9 : 1e-10;
        rep.add(make_record("Phi(" + name + ") preserves the norm" + hs, "unitarity", drift(v), tol, meta));
        (H.*op)(v, -1);
        rep.add(make_record("Phi(" + name + ") sign -1 inverts sign +1" + hs, "unitarity", rel_diff(g.data, v), 1e-10, meta));
    }

    // Far-left tail of the position multiplier.
    const double cut = -20 * std::max(1.0, hbar);
    double tail = 0;
    int tail_count = 0;
    for (int j = 0; j < n; ++j) {
        double t = -L / 2 + j * L / n;
        if (t >= cut) continue;
        std::vector<cplx> e(n, 0);
        e[j] = 1;
        H.apply_phi_position(e, 1);
        tail = std::max(tail, std::abs(e[j] - 1.0));
        ++tail_count;
    }
    rep.add(make_record("Phi(position) is 1 in the far-left tail" + hs, "Phi asymptotics", tail, 1e-8,
                        {{"grid", meta}, {"cut", cut}, {"samples", tail_count}}));

    // Weyl relation e^{iαx}e^{iβy} = e^{-2πiħαβ} e^{iβy}e^{iαx}.
    {
        const double a = 0.5, b = 0.5;
        std::vector<cplx> l = g.data, r = g.data;
        H.apply_exp_momentum(l, b);
        H.apply_exp_position(l, a);
        H.apply_exp_position(r, a);
        H.apply_exp_momentum(r, b);
        const cplx ph = std::polar(1.0, -2 * kPi * hbar * a * b);
        for (auto& x : r) x *= ph;
        rep.add(make_record("Weyl relation on the grid" + hs, "Heisenberg", rel_diff(l, r), 1e-6, meta));
    }
    // e^{iβ(x+y)} ψ(t) = e^{iπħβ²} e^{iβt} ψ(t + 2πħβ), chirp route against the closed form.
    {
        const double b = 0.4;
        std::vector<cplx> v = g.data, want(n);
        H.apply_exp_sum(v, b);
        for (int j = 0; j < n; ++j) {
            double t = -L / 2 + j * L / n;
            want[j] = std::polar(1.0, kPi * hbar * b * b + b * t) * packet_value(pk, t + 2 * kPi * hbar * b);
        }
        double nr = 0;
        {
            GridState w = g;
            w.data.assign(n, 0);
            for (int j = 0; j < n; ++j) w.data[j] = packet_value(pk, -L / 2 + j * L / n);
            nr = w.norm();
        }
        for (auto& x : want) x /= nr;
        rep.add(make_record("chirp factorization of e^{i beta (x+y)}" + hs, "chirp", rel_diff(want, v), 1e-7,
                            {{"grid", meta}, {"chirp_ratio", H.chirp_ratio()}}));
    }
    return rep;
}

} // namespace rlam
