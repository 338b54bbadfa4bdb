#pragma once

// Classical cluster X-mutation as exact pullback maps, the log-canonical
// Poisson bracket, and evaluation at R_Λ points.

#include "rlam/cluster.hpp"
#include "rlam/gencomplex.hpp"
#include "rlam/poly.hpp"

#include <optional>

namespace rlam {

// images[i] is the pullback of the target generator X'_i, written in the
// source generators.
struct PullbackMap {
    Seed source;
    Seed target;
    std::vector<RatExpr> images;
};

PullbackMap identity_pullback(const Seed& s);
PullbackMap classical_mutation(const Seed& s, int k);
// P_σ^* X'_{σ(i)} = X_i
PullbackMap classical_permutation(const Seed& s, const Permutation& sigma);
PullbackMap classical_move(const Seed& s, const Move& m);
// f: Γ0 → Γ1 followed by g: Γ1 → Γ2 gives Γ0 → Γ2.
PullbackMap compose_pullbacks(const PullbackMap& f, const PullbackMap& g);
PullbackMap pullback_along(const Seed& s, const std::vector<Move>& moves);
bool is_identity(const PullbackMap& f);

// Coefficient of ℓ in {f, g} = ℓ Σ ε_ij Z_i Z_j ∂_i f ∂_j g.
struct EllExpr {
    RatExpr coeff;
    std::string str(const std::vector<std::string>& names = {}) const;
    friend bool operator==(const EllExpr&, const EllExpr&) = default;
};

EllExpr poisson_bracket(const RatExpr& f, const RatExpr& g, const ExMat& e);

struct PairCheck {
    int i, j;
    bool pass;
};
struct CompatReport {
    bool pass = true;
    std::vector<PairCheck> pairs;
};

// {μ*Z'_i, μ*Z'_j} = ℓ ε'_ij (μ*Z'_i)(μ*Z'_j) for all pairs.
CompatReport check_poisson_compat(const PullbackMap& f);
CompatReport check_poisson_compat(const Seed& s, int k);

// Exact or floating evaluation in R_Λ. Denominators must be units.
GCq eval_at_point(const RatExpr& f, const std::vector<GCq>& point);
GCd eval_at_point(const RatExpr& f, const std::vector<GCd>& point, double unit_tol = 1e-14);

struct PunctureValue {
    std::string puncture;
    GCd value;
    bool satisfied;
};
std::vector<PunctureValue> check_puncture_constraint(const Tri& t, const std::vector<GCd>& point,
                                                     double tol = 1e-12);

// {Z^θ, Z_i} for every generator i; all zero when θ ∈ ker ε.
std::vector<EllExpr> constraint_brackets(const std::vector<long>& theta, const ExMat& e);

nlohmann::json to_json(const PullbackMap& f);

} // namespace rlam
