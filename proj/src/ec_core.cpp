#include "echo/ec_core.hpp"

#include "echo/echo_seq.hpp"

#include <stdexcept>

namespace echo {

RatCurve echo_curve() { return RatCurve{0, 0, 1, -3, 4}; }
RatPoint echo_point() { return RatPoint::affine(4, 7); }

RatCurve tate_curve(const ExactRat& a, const ExactRat& b) { return RatCurve{a, b, b, 0, 0}; }

Reduction reduce_mod_p(const RatCurve& c, std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("reduce_mod_p: modulus is not prime");
  Reduction out;
  out.curve = ModCurve{ModP::from_rational(c.a1, p), ModP::from_rational(c.a2, p), ModP::from_rational(c.a3, p),
                       ModP::from_rational(c.a4, p), ModP::from_rational(c.a6, p)};
  out.good = !out.curve.discriminant().is_zero();
  return out;
}

ModPoint reduce_point(const RatPoint& q, std::uint64_t p) {
  if (q.infinity) return ModPoint::at_infinity();
  return ModPoint::affine(ModP::from_rational(q.x, p), ModP::from_rational(q.y, p));
}

RatPoint OddMultiple::point() const {
  ExactInt d2 = denom_base * denom_base;
  ExactInt d3 = d2 * denom_base;
  ExactRat x(x_num, d2), y(y_num, d3);
  x.canonicalize();
  y.canonicalize();
  return RatPoint::affine(x, y);
}

OddMultiple odd_multiple_coords(long n) {
  if (n < 0) throw std::invalid_argument("odd_multiple_coords: n must be non-negative");
  EchoSeq& s = primary_sequence();
  const ExactInt& bn = s.term(n);
  OddMultiple out;
  out.n = n;
  out.denom_base = bn;
  out.x_num = 2 * bn * bn - s.term(n - 3) * s.term(n + 3);
  static const long kFactor[] = {3, 1, 9};
  out.y_num = bn * bn * bn + kFactor[n % 3] * s.term(n - 1) * s.term(n - 1) * s.term(n + 2);
  return out;
}

VarChange VarChange::then(const VarChange& next) const {
  VarChange out;
  out.u = u * next.u;
  out.r = u * u * next.r + r;
  out.s = u * next.s + s;
  out.t = u * u * u * next.t + u * u * s * next.r + t;
  return out;
}

RatCurve apply_change(const RatCurve& c, const VarChange& ch) {
  const ExactRat &u = ch.u, &r = ch.r, &s = ch.s, &t = ch.t;
  if (sgn(u) == 0) throw std::domain_error("change of variables with u = 0");
  ExactRat u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
  RatCurve out;
  out.a1 = (c.a1 + 2 * s) / u;
  out.a2 = (c.a2 - s * c.a1 + 3 * r - s * s) / u2;
  out.a3 = (c.a3 + r * c.a1 + 2 * t) / u3;
  out.a4 = (c.a4 - s * c.a3 + 2 * r * c.a2 - (t + r * s) * c.a1 + 3 * r * r - 2 * s * t) / u4;
  out.a6 = (c.a6 + r * c.a4 + r * r * c.a2 + r * r * r - t * c.a3 - t * t - r * t * c.a1) / u6;
  return out;
}

RatPoint apply_change(const RatPoint& p, const VarChange& ch) {
  if (p.infinity) return p;
  ExactRat u2 = ch.u * ch.u;
  ExactRat x = (p.x - ch.r) / u2;
  ExactRat y = (p.y - ch.s * u2 * x - ch.t) / (u2 * ch.u);
  return RatPoint::affine(x, y);
}

TateForm tate_normal_form(const RatCurve& c, const RatPoint& q) {
  if (q.infinity) throw std::domain_error("tate_normal_form: point is at infinity");
  if (!on_curve(q, c)) throw std::invalid_argument("tate_normal_form: point not on curve");

  VarChange translate;
  translate.r = q.x;
  translate.t = q.y;
  RatCurve c1 = apply_change(c, translate);

  // With the point at the origin, a6 = 0; a3 = 0 means a vertical tangent there.
  if (sgn(c1.a3) == 0) throw std::domain_error("tate_normal_form: 2P is the point at infinity");
  VarChange shear;
  shear.s = c1.a4 / c1.a3;
  RatCurve c2 = apply_change(c1, shear);

  // Now a4 = a6 = 0; a2 = 0 makes the origin a flex.
  if (sgn(c2.a2) == 0) throw std::domain_error("tate_normal_form: 3P is the point at infinity");
  VarChange scale;
  scale.u = c2.a3 / c2.a2;
  RatCurve c3 = apply_change(c2, scale);

  TateForm out;
  out.a = c3.a1;
  out.b = c3.a3;
  out.map = translate.then(shear).then(scale);
  return out;
}

}  // namespace echo
