#include "rlam/qmatrix.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace rlam {

SkewNormalForm skew_normal_form(const ExMat& e) {
    const int n = e.rank();
    std::vector<std::vector<long>> B(n, std::vector<long>(n)), U(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        U[i][i] = 1;
        for (int j = 0; j < n; ++j) B[i][j] = e(i, j);
    }
    // f_k += c f_i
    auto add = [&](int k, int i, long c) {
        if (c == 0) return;
        for (int j = 0; j < n; ++j) B[k][j] += c * B[i][j];
        for (int j = 0; j < n; ++j) B[j][k] += c * B[j][i];
        for (int j = 0; j < n; ++j) U[k][j] += c * U[i][j];
    };
    auto swap = [&](int a, int b) {
        if (a == b) return;
        std::swap(B[a], B[b]);
        for (auto& row : B) std::swap(row[a], row[b]);
        std::swap(U[a], U[b]);
    };
    SkewNormalForm out;
    int pos = 0;
    while (pos + 1 < n) {
        int bi = -1, bj = -1;
        for (int i = pos; i < n; ++i)
            for (int j = pos; j < n; ++j)
                if (B[i][j] != 0 && (bi < 0 || std::labs(B[i][j]) < std::labs(B[bi][bj]))) bi = i, bj = j;
        if (bi < 0) break;
        swap(pos, bi);
        if (bj == pos) bj = bi;
        swap(pos + 1, bj);
        if (B[pos][pos + 1] < 0) swap(pos, pos + 1);
        long d = B[pos][pos + 1];
        bool clean = true;
        for (int k = pos + 2; k < n; ++k) {
            add(k, pos, B[pos + 1][k] / d);
            add(k, pos + 1, -(B[pos][k] / d));
            if (B[pos][k] != 0 || B[pos + 1][k] != 0) clean = false;
        }
        if (clean) {
            out.d.push_back(d);
            pos += 2;
        }
    }
    out.U = U;
    return out;
}

namespace {

std::vector<std::vector<long>> unimodular_inverse(const std::vector<std::vector<long>>& U) {
    const int n = static_cast<int>(U.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = U[i][j];
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (int r = 0; r < n; ++r)
            if (r != c && a[r][c] != 0) {
                Rational f = a[r][c];
                for (int j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
            }
    }
    std::vector<std::vector<long>> out(n, std::vector<long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (a[i][n + j].get_den() != 1) throw NumericalError("basis change is not unimodular");
            out[i][j] = a[i][n + j].get_num().get_si();
        }
    return out;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& minv, long k) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    const Eigen::MatrixXcd& b = k < 0 ? minv : m;
    for (long i = 0; i < std::labs(k); ++i) r = r * b;
    return r;
}

} // namespace

std::complex<double> MatrixModel::q_power(long k) const {
    long twoN = 2L * N;
    long e = ((k % twoN) * ((N + 1) % twoN)) % twoN;
    if (e < 0) e += twoN;
    return std::polar(1.0, M_PI * static_cast<double>(e) / N);
}

std::complex<double> MatrixModel::coeff(const QCoeff& c) const {
    std::complex<double> s = 0;
    for (const auto& [e, v] : c.terms()) {
        if (e[1] != 0) throw UsageError("matrix model cannot evaluate q*");
        s += v.get_d() * q_power(e[0]);
    }
    return s;
}

Eigen::MatrixXcd MatrixModel::monomial(const Exps& a) const {
    long ord = 0;
    for (int i = 0; i < ctx.m; ++i)
        for (int j = i + 1; j < ctx.m; ++j) ord -= static_cast<long>(a[i]) * a[j] * ctx.form_q[i][j];
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(dim, dim) * q_power(ord);
    for (int i = 0; i < ctx.m; ++i)
        if (a[i]) r = r * matrix_power(gens[i], gens_inv[i], a[i]);
    return r;
}

Eigen::MatrixXcd MatrixModel::eval(const QElem& x) const {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& t : x.terms()) {
        Eigen::MatrixXcd w = I * coeff(t.coeff);
        for (const auto& f : t.factors) {
            Eigen::MatrixXcd b = I + eval(*f.arg);
            if (f.s == 1) {
                w = w * b;
            } else {
                Eigen::PartialPivLU<Eigen::MatrixXcd> lu(b);
                if (lu.rcond() < 1e-12) throw NumericalError("binomial factor is numerically singular");
                w = w * lu.inverse();
            }
        }
        r += w * monomial(t.mono);
    }
    return r;
}

MatrixModel build_matrix_model(const ExMat& e, int N, std::uint64_t seed) {
    if (N < 3 || N % 2 == 0) throw UsageError("matrix model order N must be odd and at least 3, got " + std::to_string(N));
    MatrixModel mm;
    mm.N = N;
    mm.ctx = plain_context(e);
    mm.form = skew_normal_form(e);
    for (long d : mm.form.d)
        if (std::gcd(static_cast<long>(N), d) != 1)
            throw UsageError("N=" + std::to_string(N) + " shares a factor with the invariant " + std::to_string(d) +
                             " of the exchange matrix; choose an odd N coprime to it");
    mm.q = mm.q_power(1);
    const int n = e.rank(), pairs = static_cast<int>(mm.form.d.size());
    mm.dim = 1;
    for (int t = 0; t < pairs; ++t) mm.dim *= N;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::complex<double> zeta = std::polar(1.0, 2 * M_PI / N);
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(N, N), S = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        C(j, j) = std::pow(zeta, j);
        S((j + 1) % N, j) = 1;
    }
    auto embed = [&](int t, const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(1, 1);
        for (int s = 0; s < pairs; ++s) r = kron(r, s == t ? m : Eigen::MatrixXcd::Identity(N, N));
        return r;
    };
    std::vector<Eigen::MatrixXcd> Y(n), Yinv(n);
    for (int j = 0; j < n; ++j) {
        double lam = scale(rng);
        Eigen::MatrixXcd base;
        if (j < 2 * pairs) {
            int t = j / 2;
            if (j % 2 == 0) {
                Eigen::MatrixXcd Cd = Eigen::MatrixXcd::Identity(N, N);
                for (long r = 0; r < mm.form.d[t]; ++r) Cd = Cd * C;
                base = embed(t, Cd);
            } else {
                base = embed(t, S);
            }
        } else {
            base = Eigen::MatrixXcd::Identity(mm.dim, mm.dim);
        }
        Y[j] = lam * base;
        Yinv[j] = base.adjoint() / lam;
    }
    auto Uinv = unimodular_inverse(mm.form.U);
    for (int i = 0; i < n; ++i) {
        // e_i = Σ_j c_j u_j with c_j = (U^{-1})_{ij}
        long ord = 0;
        for (int t = 0; t < pairs; ++t) ord -= Uinv[i][2 * t] * Uinv[i][2 * t + 1] * mm.form.d[t];
        Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(mm.dim, mm.dim) * mm.q_power(ord);
        for (int j = 0; j < n; ++j)
            if (Uinv[i][j]) w = w * matrix_power(Y[j], Yinv[j], Uinv[i][j]);
        mm.gens.push_back(w);
        mm.gens_inv.push_back(w.inverse());
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXcd lhs = mm.gens[i] * mm.gens[j];
            Eigen::MatrixXcd rhs = mm.q_power(2L * e(i, j)) * mm.gens[j] * mm.gens[i];
            mm.residual = std::max(mm.residual, (lhs - rhs).norm() / lhs.norm());
        }
    if (mm.residual > 1e-10)
        throw NumericalError("matrix model relation residual " + std::to_string(mm.residual) + " exceeds 1e-10");
    return mm;
}

RelationReport verify_relation_numeric(const ExMat& e, const std::vector<Move>& word, const std::vector<int>& Ns,
                                       double tol) {
    RelationReport rep;
    rep.word = format_moves(word);
    rep.tol = tol;
    QMap f = quantum_pullback_along(Seed(e), word);
    if (!(f.from == f.to)) throw UsageError("move word " + rep.word + " does not return to the starting exchange matrix");
    rep.pass = !Ns.empty();
    for (int N : Ns) {
        RelationRun run{N, 0, 0, ""};
        for (std::uint64_t attempt = 1; attempt <= 4; ++attempt) {
            run.attempts = static_cast<int>(attempt);
            try {
                MatrixModel mm = build_matrix_model(e, N, attempt);
                double dev = 0;
                for (int i = 0; i < e.rank(); ++i) {
                    Eigen::MatrixXcd img = mm.eval(f.images[i]);
                    dev = std::max(dev, (img - mm.gens[i]).norm() / mm.gens[i].norm());
                }
                run.deviation = dev;
                run.error.clear();
                break;
            } catch (const NumericalError& ex) {
                run.error = ex.what();
            }
        }
        if (!run.error.empty()) rep.pass = false;
        rep.max_deviation = std::max(rep.max_deviation, run.deviation);
        rep.runs.push_back(run);
    }
    rep.pass = rep.pass && rep.max_deviation <= tol;
    return rep;
}

nlohmann::json to_json(const RelationReport& r) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& x : r.runs) {
        nlohmann::json j{{"N", x.N}, {"deviation", x.deviation}, {"attempts", x.attempts}};
        if (!x.error.empty()) j["error"] = x.error;
        runs.push_back(j);
    }
    return {{"word", r.word}, {"tol", r.tol}, {"max_deviation", r.max_deviation}, {"pass", r.pass}, {"runs", runs}};
}

} // namespace rlam
