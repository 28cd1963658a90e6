#pragma once

#include "echo/weierstrass.hpp"

#include <cstdint>

namespace echo {

/// y^2 + y = x^3 - 3x + 4 and its point P = (4, 7).
RatCurve echo_curve();
RatPoint echo_point();

/// y^2 + a xy + b y = x^3 + b x^2 (Tate normal form with marked point (0,0)).
RatCurve tate_curve(const ExactRat& a, const ExactRat& b);

struct Reduction {
  ModCurve curve;
  bool good = false;
};

/// Reduces coefficients mod p; throws std::domain_error if p divides a denominator.
Reduction reduce_mod_p(const RatCurve& c, std::uint64_t p);
ModPoint reduce_point(const RatPoint& q, std::uint64_t p);

struct OddMultiple {
  long n = 0;
  ExactInt x_num;       // g(n)
  ExactInt y_num;       // f(n)
  ExactInt denom_base;  // b_n; x = g/b_n^2, y = f/b_n^3

  RatPoint point() const;
};

/// (2n+1)P expressed through ECHO terms.
OddMultiple odd_multiple_coords(long n);

/// Admissible change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct VarChange {
  ExactRat u{1}, r{0}, s{0}, t{0};

  /// Apply `this` first, then `next`.
  VarChange then(const VarChange& next) const;
};

RatCurve apply_change(const RatCurve& c, const VarChange& ch);
RatPoint apply_change(const RatPoint& p, const VarChange& ch);

struct TateForm {
  ExactRat a, b;
  VarChange map;  // composed translation, shear and scaling
};

/// Moves q to (0,0) and brings c to y^2 + a xy + b y = x^3 + b x^2.
/// Throws std::domain_error when q, 2q or 3q is the point at infinity.
TateForm tate_normal_form(const RatCurve& c, const RatPoint& q);

}  // namespace echo
