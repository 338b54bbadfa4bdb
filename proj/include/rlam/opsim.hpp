#pragma once

// Operator-level checks: exact Heisenberg symbols and the conjugation action
// of the monomial intertwiner K', and grid simulations of the operator
// pentagon identities.

#include "rlam/cluster.hpp"
#include "rlam/poly.hpp"
#include "rlam/report.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace rlam {

// ---- symbols --------------------------------------------------------------

// Scalars live in Q[π, ħ, Λ]; these are the variable indices.
enum SymVar { kVarPi = 0, kVarHbar = 1, kVarLambda = 2 };
Poly sym_scalar(const Rational& c);
Poly sym_var(SymVar v);
std::string to_string_scalar(const Poly& p);

// Σ a_i t_i + Σ b_i D_i + c with D_i = i ∂/∂t_i, so [t_i, D_j] = -i δ_ij.
struct HSymbol {
    int n = 0;
    std::vector<Poly> a, b;
    Poly c;

    HSymbol() = default;
    explicit HSymbol(int rank);
    static HSymbol t(int rank, int i);
    static HSymbol d(int rank, int i);

    friend HSymbol operator+(const HSymbol& u, const HSymbol& v);
    friend HSymbol operator-(const HSymbol& u, const HSymbol& v);
    friend HSymbol operator*(const Poly& s, const HSymbol& u);
    friend bool operator==(const HSymbol&, const HSymbol&) = default;
};

// [u, v] = i·P·Id; returns P.
Poly hsymbol_bracket(const HSymbol& u, const HSymbol& v);

// x_i = -πi ∂/∂t_i = -π D_i, y_i = Σ_j ε_ij t_j, and x_i + ħ y_i.
HSymbol x_symbol(const ExMat& e, int i);
HSymbol y_symbol(const ExMat& e, int i);
HSymbol xring_symbol(const ExMat& e, int i);

// Id ⊗ diag + ℓ̂ ⊗ off on C² ⊗ L², with ℓ̂ = [[0,1],[-Λ,0]].
struct ZBlockOp {
    HSymbol diag, off;
    friend bool operator==(const ZBlockOp&, const ZBlockOp&) = default;
};

// z_i^{(ε)} = x_i + ε ℓ̂ ħ y_i.
ZBlockOp z_symbol(const ExMat& e, int i, int eps);
ZBlockOp operator+(const ZBlockOp& u, const ZBlockOp& v);
ZBlockOp operator*(const Poly& s, const ZBlockOp& u);

// [u, v] = i·(id + ℓ̂ ell).
struct BlockScalar {
    Poly id, ell;
    friend bool operator==(const BlockScalar&, const BlockScalar&) = default;
};
BlockScalar zblock_bracket(const ZBlockOp& u, const ZBlockOp& v);

// ---- linear coordinate changes ----------------------------------------------

// Pullback of coordinates: χ^* t'_i = Σ_j m(i, j) t_j.
struct LinearMap {
    int n = 0;
    std::vector<Rational> m;

    LinearMap() = default;
    explicit LinearMap(int rank);
    static LinearMap identity(int rank);
    const Rational& operator()(int i, int j) const { return m[static_cast<std::size_t>(i) * n + j]; }
    Rational& operator()(int i, int j) { return m[static_cast<std::size_t>(i) * n + j]; }
    friend bool operator==(const LinearMap&, const LinearMap&) = default;
};

Rational determinant(const LinearMap& m);
// DomainError when singular.
LinearMap inverse(const LinearMap& m);
// Pullback along first then second: the matrix product second·first.
LinearMap then(const LinearMap& first, const LinearMap& second);
nlohmann::json to_json(const LinearMap& m);

// t'_k ↦ -t_k + Σ_j [-ε_kj]_+ t_j, t'_i ↦ t_i otherwise.
LinearMap kprime_linear(const ExMat& e, int k);
LinearMap kprime_linear(const Seed& s, int k);

// K' s K'^{-1}: t-coefficients by pullback, D-coefficients by pushforward.
HSymbol conjugate_symbol(const LinearMap& m, const HSymbol& s);
ZBlockOp conjugate_symbol(const LinearMap& m, const ZBlockOp& s);
// The exchange matrix carried by the map: M^{-T} ε M^{-1}; UsageError if
// the result is not an integer skew matrix.
ExMat transport_exmat(const LinearMap& m, const ExMat& e);

// Brackets and every conjugation formula of K' on `count` random seeds of
// rank 2..max_rank, plus commuting squares along random mutation words.
Report kprime_suite(int count, int max_rank, std::uint64_t seed);
Report heisenberg_suite(int count, std::uint64_t seed);

// ---- grids ---------------------------------------------------------------------

using cplx = std::complex<double>;

struct GridState {
    int dim = 1;
    double L = 60;
    int n = 8192;          // points per axis
    std::vector<cplx> data;  // row-major, axis 0 = t, axis 1 = s
    double hbar = 1;
    int lambda = -1;

    double spacing() const { return L / n; }
    double coord(int j) const { return -L / 2 + j * spacing(); }
    double norm() const;
};

struct Packet {
    double center = 0, width = 1, momentum = 0;
    int hermite = 0;  // degree of the Hermite factor
};
nlohmann::json to_json(const Packet& p);

GridState make_packet_1d(const Packet& p, int n, double L);
// Product packet in (t, s).
GridState make_packet_2d(const Packet& pt, const Packet& ps, int n, double L);

// Relative L² distance after the optimal global phase e^{iφ} on b.
struct Deviation {
    double relative = 0, phase = 0;
};
Deviation aligned_deviation(const std::vector<cplx>& a, const std::vector<cplx>& b);
// Share of the norm² in the outer tenth of each axis.
double boundary_leakage(const GridState& g);

// x = t, y = -2πiħ d/dt on a periodic grid, so [x, y] = 2πiħ; Φ^ħ tables
// are computed once.
class Heisenberg1D {
public:
    Heisenberg1D(int n, double L, double hbar);
    int n() const { return n_; }
    double L() const { return L_; }
    double hbar() const { return hbar_; }

    void apply_phi_position(std::vector<cplx>& v, int sign) const;
    void apply_phi_momentum(std::vector<cplx>& v, int sign) const;
    void apply_phi_sum(std::vector<cplx>& v, int sign) const;
    void apply_exp_position(std::vector<cplx>& v, double alpha) const;  // e^{iαx}
    void apply_exp_momentum(std::vector<cplx>& v, double beta) const;   // e^{iβy}
    void apply_exp_sum(std::vector<cplx>& v, double beta) const;        // e^{iβ(x+y)}, chirp route
    // Largest chirp frequency against the grid Nyquist frequency; > 1 aliases.
    double chirp_ratio() const;
    int suggested_n() const;

private:
    void momentum_multiply(std::vector<cplx>& v, const std::vector<cplx>& mult) const;
    int n_;
    double L_, hbar_;
    std::vector<double> t_, p_;
    std::vector<cplx> phi_pos_, phi_mom_, chirp_;
};

GridState apply_phi_of_position(const GridState& g, double hbar, int sign);
GridState apply_phi_of_momentum(const GridState& g, double hbar, int sign);
GridState apply_phi_of_sum(const GridState& g, double hbar, int sign);

struct PentagonParams {
    double hbar = 1;
    int n = 8192;
    double L = 60;
    int workers = 1;
};

std::vector<Packet> default_basket_1d();
// Φ(x)Φ(y) against Φ(y)Φ(x+y)Φ(x) on the basket; one record per packet and
// a negative control without the middle factor.
Report verify_pentagon_lambda_minus1(const PentagonParams& p);

// The three substitutions of the flat pentagon in exponentiated coordinates.
struct SubstitutionMap {
    std::string name;
    std::vector<RatExpr> images;  // (T, S) ↦ images
};
SubstitutionMap f0_sub_xy();
SubstitutionMap f0_sub_xpyp();
SubstitutionMap f0_sub_sum();
// η ↦ η∘f then η ↦ η∘g acts as η ↦ η∘(f∘g); this returns f∘g.
SubstitutionMap sub_compose(const SubstitutionMap& f, const SubstitutionMap& g);
SubstitutionMap f0_pentagon_lhs();
SubstitutionMap f0_pentagon_rhs();

// F_Λ(x,y) F_Λ(x',y') against F_Λ(x',y') F_Λ(x+x',y+y') F_Λ(x,y) on L²(R²)
// with x = -t, y = πi∂_s, x' = s, y' = πi∂_t; every factor is a multiplier
// after a 1D transform along s, along t, or along the diagonals. Λ = -1 is
// supported for small grids only (two Φ evaluations per table entry).
Report verify_pentagon_2d(int lambda, const PentagonParams& p);
// Λ = 1 with each F_1(x, y) replaced by F_1(x, 0): the reduction for packets
// on which y acts trivially.
Report verify_pentagon_degenerate(const PentagonParams& p);
// Symbolic identity, (2,3) spot check and the 2D grid check.
Report pentagon_f0_substitution(int n = 512, double L = 30);
Report verify_pentagon_lambda_plus1(const PentagonParams& p);

// The four conjugation identities of F_0(x_k, y_k) with x_k = t, y_k = s,
// x_i = nπi∂_s, y_i = nπi∂_t, on Gaussian-polynomial packets.
Report verify_f0_conjugation(int n = 512, double L = 30, const std::vector<int>& ns = {1, -1, 2});

// Λ = -1 chirp and Weyl checks, unitarity of each grid operator.
Report grid_operator_suite(double hbar, int n = 8192, double L = 60);

} // namespace rlam
