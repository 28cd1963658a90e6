#pragma once

#include "echo/exact.hpp"

#include <string>
#include <vector>

namespace echo {

/// Dense polynomial over Q, coefficient of x^i at index i. Trailing zeros are
/// trimmed by the functions below; the zero polynomial is empty.
using RatPoly = std::vector<ExactRat>;

RatPoly trim(RatPoly p);
int degree(const RatPoly& p);  // -1 for the zero polynomial
ExactRat evaluate(const RatPoly& p, const ExactRat& x);
RatPoly derivative(const RatPoly& p);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
/// Remainder of a by a nonzero b.
RatPoly poly_rem(const RatPoly& a, const RatPoly& b);

/// Scales p to integer coefficients with content 1 and positive leading term.
std::vector<ExactInt> primitive_part(const RatPoly& p);

/// Distinct rational roots in increasing order, each verified by evaluation.
/// Throws std::invalid_argument for the zero polynomial.
std::vector<ExactRat> rational_roots(const RatPoly& p);

/// Number of distinct real roots in (lo, hi], neither endpoint a root.
std::size_t sturm_count(const RatPoly& p, const ExactRat& lo, const ExactRat& hi);

/// Res(a, b) as the determinant of the Sylvester matrix.
ExactRat resultant(const RatPoly& a, const RatPoly& b);

/// (-1)^{n(n-1)/2} Res(p, p') / lead(p).
ExactRat discriminant(const RatPoly& p);

/// Irreducibility over Q of a degree-4 polynomial: no rational root and no
/// split into rational quadratics (checked through the resolvent cubic).
bool quartic_irreducible(const RatPoly& p);

std::string to_string(const RatPoly& p, char var = 'x');

}  // namespace echo
