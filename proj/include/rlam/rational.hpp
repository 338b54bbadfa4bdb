#pragma once

#include <gmpxx.h>

#include <string>

namespace rlam {

using Rational = mpq_class;
using BigInt = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
// Accepts "p", "-p/q", and decimal literals such as "0.25".
Rational parse_rational(const std::string& s);

inline Rational rat(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

} // namespace rlam
