#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace crn {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "3", "-3/4", "0.125", "+2". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// "3", "-3/4"; never a decimal.
std::string to_string(const Rational& q);

inline int sign_of(const Rational& q) { return sgn(q); }

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace crn
