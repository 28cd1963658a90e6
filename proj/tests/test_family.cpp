#include "doctest.h"

#include "echo/ec_core.hpp"
#include "echo/family_fabulous.hpp"

#include <random>
#include <stdexcept>

using namespace echo;

namespace {

ExactRat pw(const ExactRat& x, unsigned e) {
  ExactRat r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

std::vector<ExactRat> sample_ts() {
  std::vector<ExactRat> ts;
  for (long t = -8; t <= 8; ++t) ts.push_back(ExactRat(t));
  ts.push_back(make_rat(1, 2));
  ts.push_back(make_rat(-7, 3));
  ts.push_back(make_rat(50, 11));
  return ts;
}

}  // namespace

TEST_CASE("quartic coefficients") {
  FabulousQuartic f = fabulous_poly(1, 1);
  CHECK(f.c4 == 1);
  CHECK(f.c3 == -768);
  FabulousQuartic z = fabulous_poly(0, 0);
  CHECK(z.poly() == RatPoly{0, 0, 0, 0, 1});
  CHECK(bad_locus_g(0, 0) == 0);
  CHECK(bad_locus_g(1, 0) == 1);
  // disc(E_{a,b}) = -b^3 Q(a,b)
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) REQUIRE(tate_curve(a, b).discriminant() == -pw(b, 3) * delta_cofactor(a, b));
}

TEST_CASE("the parametrized family lies on the root locus") {
  auto ts = sample_ts();
  REQUIRE(ts.size() == 20);
  for (const ExactRat& t : ts) {
    auto [a, b] = parametrize(t);
    REQUIRE(sgn(b) != 0);
    ExactRat x0 = -96 * b * b;
    REQUIRE(sgn(fabulous_poly(a, b)(x0)) == 0);
    auto roots = rational_roots(fabulous_poly(a, b).poly());
    REQUIRE(std::find(roots.begin(), roots.end(), x0) != roots.end());
  }
  for (long t : {1, 2, 3}) {
    auto [a, b] = parametrize(t);
    CHECK(sgn(bad_locus_g(a, b)) != 0);
    CHECK(sgn(tate_curve(a, b).discriminant()) != 0);
  }
  CHECK_THROWS_AS(parametrize(25), std::domain_error);
  CHECK_THROWS_AS(parametrize(-35), std::domain_error);
  auto [a1, b1] = parametrize(1);
  CHECK(a1 == make_rat(-27, 4));
  CHECK(b1 == make_rat(-729, 64));
}

TEST_CASE("quartic discriminant factors through the bad loci") {
  std::mt19937_64 rng(41);
  int checked = 0;
  while (checked < 10) {
    ExactRat a = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 5) + 1);
    ExactRat b = make_rat(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 5) + 1);
    if (sgn(b) == 0 || sgn(delta_cofactor(a, b)) == 0 || sgn(bad_locus_g(a, b)) == 0) continue;
    ExactRat disc = discriminant(fabulous_poly(a, b).poly());
    ExactRat Q = delta_cofactor(a, b), g = bad_locus_g(a, b);
    REQUIRE(disc == -pow2(62) * pw(b, 15) * pw(Q, 3) * g * g);
    // The shorter form -b^15 * disc(E) * g does not hold.
    REQUIRE(disc != -pw(b, 15) * tate_curve(a, b).discriminant() * g);
    ++checked;
  }
}

TEST_CASE("the ECHO pair has a rational fabulous root and a full certificate") {
  TateForm tf = tate_normal_form(echo_curve(), echo_point());
  auto roots = rational_roots(fabulous_poly(tf.a, tf.b).poly());
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == make_rat(9504, 3125));
  CHECK(certify_kinetic_conditions(tf.a, tf.b).all());
  CHECK(certify_kinetic_conditions(make_rat(-27, 4), make_rat(-729, 64)).all());
  CHECK_THROWS_AS(certify_kinetic_conditions(1, 0), std::domain_error);
}

TEST_CASE("certificate negative controls") {
  // Square discriminant.
  bool found_square = false;
  for (long a = -30; a <= 30 && !found_square; ++a)
    for (long b = -30; b <= 30 && !found_square; ++b) {
      ExactRat d = tate_curve(a, b).discriminant();
      if (sgn(d) == 0 || !is_rational_square(d)) continue;
      CHECK_FALSE(certify_kinetic_conditions(a, b).delta_nonsquare);
      CHECK_FALSE(certify_kinetic_conditions(a, b).all());
      found_square = true;
    }
  CHECK(found_square);
  // Rational 2-torsion: a root of the 2-division cubic gives a point of order 2.
  bool found_torsion = false;
  for (long a = -30; a <= 30 && !found_torsion; ++a)
    for (long b = 1; b <= 30 && !found_torsion; ++b) {
      RatCurve c = tate_curve(a, b);
      if (sgn(c.discriminant()) == 0) continue;
      auto roots = rational_roots(two_torsion_poly(c));
      if (roots.empty()) continue;
      ExactRat x = roots[0], y = -(c.a1 * x + c.a3) / 2;
      RatPoint T = RatPoint::affine(x, y);
      REQUIRE(on_curve(T, c));
      REQUIRE(add(T, T, c).infinity);
      CHECK_FALSE(certify_kinetic_conditions(a, b).no_rational_2_torsion);
      found_torsion = true;
    }
  CHECK(found_torsion);
}

TEST_CASE("division polynomials against explicit points") {
  RatCurve c{0, 0, 0, -1, 0};  // y^2 = x^3 - x
  CHECK(rational_roots(two_torsion_poly(c)) == std::vector<ExactRat>{-1, 0, 1});
  // Put 2P in Tate normal form: the image of P is a rational half of (0,0).
  RatCurve E = echo_curve();
  RatPoint P = echo_point(), P2 = add(P, P, E);
  TateForm tf = tate_normal_form(E, P2);
  RatPoint half = apply_change(P, tf.map);
  auto roots = rational_roots(halving_poly(tate_curve(tf.a, tf.b)));
  CHECK(std::find(roots.begin(), roots.end(), half.x) != roots.end());
  CHECK_FALSE(quartic_irreducible(halving_poly(tate_curve(tf.a, tf.b))));
}

TEST_CASE("certificate is invariant under isomorphism") {
  std::mt19937_64 rng(42);
  std::vector<std::pair<ExactRat, ExactRat>> pairs{{make_rat(6, 5), make_rat(3, 25)}, {0, 1}, {1, -2}, {2, 3}};
  for (long t : {1, 2, -3}) pairs.push_back(parametrize(t));
  for (const auto& [a, b] : pairs) {
    KineticCertificate base = certify_kinetic_conditions(a, b);
    for (int i = 0; i < 5; ++i) {
      auto rnd = [&] { return make_rat(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1); };
      ExactRat u = rnd();
      if (sgn(u) == 0) u = make_rat(3, 2);
      VarChange ch{u, rnd(), rnd(), rnd()};
      RatCurve c2 = apply_change(tate_curve(a, b), ch);
      RatPoint q2 = apply_change(RatPoint::affine(0, 0), ch);
      TateForm back = tate_normal_form(c2, q2);
      REQUIRE(back.a == a);
      REQUIRE(back.b == b);
      REQUIRE(certify_kinetic_conditions(back.a, back.b) == base);
      REQUIRE(c2.j_invariant() == tate_curve(a, b).j_invariant());
    }
  }
}

TEST_CASE("control pair and reports") {
  auto ctrl = find_control_pair();
  REQUIRE(ctrl.has_value());
  CHECK(ctrl->first == 0);
  CHECK(ctrl->second == 1);
  CHECK(certify_kinetic_conditions(ctrl->first, ctrl->second).all());
  CHECK(rational_roots(fabulous_poly(ctrl->first, ctrl->second).poly()).empty());

  FamilyReport r = family_report(1, 20000);
  REQUIRE(r.t.has_value());
  CHECK(r.a == make_rat(-27, 4));
  CHECK(r.certificate.all());
  REQUIRE(r.sweep.has_value());
  CHECK(r.sweep->x == 20000);
  CHECK(r.sweep->pi < 2262);  // bad primes are excluded
  std::string js = to_json(r);
  CHECK(js.find("\"a\": \"-27/4\"") != std::string::npos);
  CHECK(js.find("\"halving_poly_irreducible\": true") != std::string::npos);
  CHECK_THROWS_AS(family_report(25), std::domain_error);
  CHECK_FALSE(pair_report(0, 1).t.has_value());
}
