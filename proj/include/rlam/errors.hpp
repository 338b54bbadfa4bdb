#pragma once

#include <stdexcept>
#include <string>

namespace rlam {

// Bad arguments or inconsistent inputs (wrong Λ, rank mismatch, bad JSON field).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain of a partial operation (log, inverse, diagonalization).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Evaluation hit a pole or a non-invertible factor.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Numerical procedure did not reach its target (quadrature, retries exhausted).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rlam
