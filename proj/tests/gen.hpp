#pragma once

#include "rlam/rational.hpp"

#include <random>

namespace rlam::testgen {

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double uniform_real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Rational small_rational(int num_bound = 9, int den_bound = 6) {
    return rat(uniform_int(-num_bound, num_bound), uniform_int(1, den_bound));
}

} // namespace rlam::testgen
