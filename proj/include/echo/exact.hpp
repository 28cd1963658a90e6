#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace echo {

using ExactInt = mpz_class;
using ExactRat = mpq_class;

/// Canonical "num/den" rendering; integers render without a denominator.
std::string to_fraction_string(const ExactRat& q);

/// Parses "n", "-n", "n/d" or a decimal like "1e6" that denotes an integer.
ExactRat parse_rational(std::string_view text);

inline ExactRat make_rat(long num, long den = 1) {
  ExactRat q(num, den);
  q.canonicalize();
  return q;
}

/// True when q is the square of a rational number.
bool is_rational_square(const ExactRat& q);

/// 2-adic valuation; the caller guarantees n != 0.
unsigned ord2(const ExactInt& n);

/// 2^e as an exact rational (e may be negative).
ExactRat pow2(int e);

/// Rounds q to `places` decimals, ties to even, and renders it in fixed notation.
std::string to_fixed_half_even(const ExactRat& q, unsigned places);

}  // namespace echo
