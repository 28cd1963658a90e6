#pragma once

#include "echo/mod_arith.hpp"

#include <optional>
#include <stdexcept>

namespace echo {

/// Long Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F,
/// where F is ExactRat or ModP.
template <class F>
struct Curve {
  F a1, a2, a3, a4, a6;

  F b2() const { return a1 * a1 + field_const(a1, 4) * a2; }
  F b4() const { return field_const(a1, 2) * a4 + a1 * a3; }
  F b6() const { return a3 * a3 + field_const(a1, 4) * a6; }
  F b8() const {
    return a1 * a1 * a6 + field_const(a1, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  F c4() const { return b2() * b2() - field_const(a1, 24) * b4(); }
  F c6() const {
    return -(b2() * b2() * b2()) + field_const(a1, 36) * b2() * b4() - field_const(a1, 216) * b6();
  }
  F discriminant() const {
    F B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - field_const(a1, 8) * B4 * B4 * B4 - field_const(a1, 27) * B6 * B6 +
           field_const(a1, 9) * B2 * B4 * B6;
  }
  F j_invariant() const {
    F d = discriminant();
    if (is_zero(d)) throw std::domain_error("j-invariant of a singular curve");
    F c = c4();
    return c * c * c / d;
  }
  bool operator==(const Curve&) const = default;
};

/// Affine point or the point at infinity (nullopt-like flag).
template <class F>
struct Point {
  bool infinity = true;
  F x{}, y{};

  static Point at_infinity() { return Point{}; }
  static Point affine(F px, F py) { return Point{false, std::move(px), std::move(py)}; }
  bool operator==(const Point& o) const {
    if (infinity || o.infinity) return infinity == o.infinity;
    return x == o.x && y == o.y;
  }
};

template <class F>
bool on_curve(const Point<F>& p, const Curve<F>& c) {
  if (p.infinity) return true;
  F lhs = p.y * p.y + c.a1 * p.x * p.y + c.a3 * p.y;
  F rhs = p.x * p.x * p.x + c.a2 * p.x * p.x + c.a4 * p.x + c.a6;
  return lhs == rhs;
}

template <class F>
Point<F> negate(const Point<F>& p, const Curve<F>& c) {
  if (p.infinity) return p;
  return Point<F>::affine(p.x, -p.y - c.a1 * p.x - c.a3);
}

template <class F>
Point<F> add(const Point<F>& p, const Point<F>& q, const Curve<F>& c) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  F lambda, nu;
  if (p.x == q.x) {
    F denom = field_const(p.x, 2) * p.y + c.a1 * p.x + c.a3;
    if (!(p.y == q.y) || is_zero(denom)) return Point<F>::at_infinity();
    F three = field_const(p.x, 3);
    F two = field_const(p.x, 2);
    lambda = (three * p.x * p.x + two * c.a2 * p.x + c.a4 - c.a1 * p.y) / denom;
    nu = (-(p.x * p.x * p.x) + c.a4 * p.x + two * c.a6 - c.a3 * p.y) / denom;
  } else {
    F dx = q.x - p.x;
    lambda = (q.y - p.y) / dx;
    nu = (p.y * q.x - q.y * p.x) / dx;
  }
  F x3 = lambda * lambda + c.a1 * lambda - c.a2 - p.x - q.x;
  F y3 = -(lambda + c.a1) * x3 - nu - c.a3;
  return Point<F>::affine(std::move(x3), std::move(y3));
}

template <class F>
Point<F> scalar_mul(long long n, const Point<F>& p, const Curve<F>& c) {
  Point<F> base = n < 0 ? negate(p, c) : p;
  unsigned long long k = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  Point<F> acc = Point<F>::at_infinity();
  while (k) {
    if (k & 1) acc = add(acc, base, c);
    k >>= 1;
    if (k) base = add(base, base, c);
  }
  return acc;
}

using RatCurve = Curve<ExactRat>;
using RatPoint = Point<ExactRat>;
using ModCurve = Curve<ModP>;
using ModPoint = Point<ModP>;

}  // namespace echo
