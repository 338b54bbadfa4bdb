#pragma once

// Finite-dimensional representations of a quantum torus at q² = e^{2πi/N}
// from clock and shift matrices, and numeric checks of mutation relations.

#include "rlam/qtorus.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace rlam {

// U ε Uᵀ = ⊕ d_t J ⊕ 0 with U unimodular, J = [[0,1],[-1,0]].
struct SkewNormalForm {
    std::vector<std::vector<long>> U;
    std::vector<long> d;
};

SkewNormalForm skew_normal_form(const ExMat& e);

struct MatrixModel {
    int N = 0;
    std::complex<double> q;
    int dim = 0;
    QContext ctx;
    SkewNormalForm form;
    std::vector<Eigen::MatrixXcd> gens, gens_inv;
    // max over i<j of ‖W_iW_j − q^{2ε_ij} W_jW_i‖ / ‖W_iW_j‖
    double residual = 0;

    std::complex<double> q_power(long k) const;
    std::complex<double> coeff(const QCoeff& c) const;
    Eigen::MatrixXcd monomial(const Exps& a) const;
    Eigen::MatrixXcd eval(const QElem& x) const;
};

// N odd and coprime to every d_t; q = e^{πi(N+1)/N}. Generators carry positive
// scalar factors drawn from `seed`.
MatrixModel build_matrix_model(const ExMat& e, int N, std::uint64_t seed = 1);

struct RelationRun {
    int N = 0;
    double deviation = 0;
    int attempts = 0;
    std::string error;
};

struct RelationReport {
    std::string word;
    double tol = 1e-8;
    double max_deviation = 0;
    bool pass = false;
    std::vector<RelationRun> runs;
};

// Largest relative Frobenius distance between the composite images and the
// generators. The word must return to the starting exchange matrix.
RelationReport verify_relation_numeric(const ExMat& e, const std::vector<Move>& word, const std::vector<int>& Ns,
                                       double tol = 1e-8);

nlohmann::json to_json(const RelationReport& r);

} // namespace rlam
