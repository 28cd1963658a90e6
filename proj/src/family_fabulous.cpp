#include "echo/family_fabulous.hpp"

#include "json.hpp"

#include <stdexcept>

namespace echo {

namespace {

ExactRat pw(const ExactRat& x, unsigned e) {
  ExactRat r = 1;
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

FabulousQuartic fabulous_poly(const ExactRat& a, const ExactRat& b) {
  auto m = [&](long c, unsigned i, unsigned j) -> ExactRat { return c * pw(a, i) * pw(b, j); };
  FabulousQuartic f;
  f.c4 = 1;
  f.c3 = m(-768, 0, 2);
  f.c2 = -2048 * (m(1, 4, 3) - m(1, 3, 3) + m(8, 2, 4) - m(36, 1, 4) + m(16, 0, 5) - m(81, 0, 4));
  f.c1 = 1048576 * (m(1, 4, 5) - m(1, 3, 5) + m(8, 2, 6) - m(36, 1, 6) + m(16, 0, 7));
  f.c0 = 262144 * (m(-1, 10, 5) + m(1, 9, 5) - m(16, 8, 6) + m(72, 7, 6) - m(96, 6, 7) - m(55, 6, 6) +
                   m(512, 5, 7) - m(256, 4, 8) - m(1724, 4, 7) + m(896, 3, 8) + m(1272, 3, 7) - m(256, 2, 9) -
                   m(3984, 2, 8) - m(256, 1, 9) + m(18144, 1, 8) - m(8256, 0, 9) - m(8748, 0, 8));
  return f;
}

ExactRat bad_locus_g(const ExactRat& a, const ExactRat& b) {
  auto m = [&](long c, unsigned i, unsigned j) -> ExactRat { return c * pw(a, i) * pw(b, j); };
  return m(1, 9, 0) + m(16, 7, 1) - m(46, 6, 1) + m(96, 5, 2) - m(360, 4, 2) + m(256, 3, 3) + m(512, 3, 2) -
         m(672, 2, 3) + m(256, 1, 4) + m(128, 0, 4);
}

ExactRat delta_cofactor(const ExactRat& a, const ExactRat& b) {
  return pw(a, 4) - pw(a, 3) + 8 * a * a * b - 36 * a * b + 16 * b * b + 27 * b;
}

std::pair<ExactRat, ExactRat> parametrize(const ExactRat& t) {
  if (t == 25 || t == -35) throw std::domain_error("parametrize: t = " + to_fraction_string(t) + " gives b = 0");
  const ExactRat l1 = t - 25, l2 = t + 35;
  const ExactRat q1 = t * t - 29 * t + 676, q2 = t * t - 10 * t - 279, q3 = t * t + 10 * t + 97;
  const ExactRat p1 = l1 * l2 * q1 * q2 * q2 * q3;
  const ExactRat p2 = l1 * l2 * l2 * pw(q1, 3);
  const ExactRat p3 = pw(q2, 4) * q3;  // never zero: both quadratics lack rational roots
  ExactRat a = p1 / p3, b = p2 / p3;
  a.canonicalize();
  b.canonicalize();
  return {a, b};
}

RatPoly two_torsion_poly(const RatCurve& c) { return trim({c.b6(), 2 * c.b4(), c.b2(), ExactRat(4)}); }

RatPoly halving_poly(const RatCurve& c) { return trim({-c.b8(), -2 * c.b6(), -c.b4(), ExactRat(0), ExactRat(1)}); }

KineticCertificate certify_kinetic_conditions(const ExactRat& a, const ExactRat& b) {
  const RatCurve c = tate_curve(a, b);
  const ExactRat delta = c.discriminant();
  if (sgn(delta) == 0) throw std::domain_error("certify_kinetic_conditions: singular curve");
  KineticCertificate cert;
  cert.delta_nonsquare = !is_rational_square(delta);
  cert.two_delta_nonsquare = !is_rational_square(2 * delta);
  cert.neg_delta_nonsquare = !is_rational_square(-delta);
  cert.neg_two_delta_nonsquare = !is_rational_square(-2 * delta);
  cert.no_rational_2_torsion = rational_roots(two_torsion_poly(c)).empty();
  // j = -4 s^3 (s + 8)  <=>  4 s^4 + 32 s^3 + j = 0
  cert.j_equation_no_root = rational_roots({c.j_invariant(), 0, 0, 32, 4}).empty();
  cert.halving_poly_irreducible = quartic_irreducible(halving_poly(c));
  return cert;
}

std::optional<std::pair<ExactRat, ExactRat>> find_control_pair(long bound) {
  for (long bm = 1; bm <= bound; ++bm) {
    for (long b : {bm, -bm}) {
      for (long step = 0; step <= 2 * bound; ++step) {
        const long a = step % 2 == 1 ? (step + 1) / 2 : -(step / 2);  // 0, 1, -1, 2, -2, ...
        ExactRat A(a), B(b);
        if (sgn(tate_curve(A, B).discriminant()) == 0) continue;
        if (!certify_kinetic_conditions(A, B).all()) continue;
        if (!rational_roots(fabulous_poly(A, B).poly()).empty()) continue;
        return std::make_pair(A, B);
      }
    }
  }
  return std::nullopt;
}

FamilyReport pair_report(const ExactRat& a, const ExactRat& b, std::optional<std::uint64_t> sweep_x,
                         unsigned threads) {
  FamilyReport r;
  r.a = a;
  r.b = b;
  r.discriminant = tate_curve(a, b).discriminant();
  r.g = bad_locus_g(a, b);
  r.fabulous_roots = rational_roots(fabulous_poly(a, b).poly());
  r.certificate = certify_kinetic_conditions(a, b);
  if (sweep_x) {
    SweepOptions opts;
    opts.threads = threads;
    auto records = sweep(family_target(a, b), *sweep_x, opts);
    r.sweep = records.back();
  }
  return r;
}

FamilyReport family_report(const ExactRat& t, std::optional<std::uint64_t> sweep_x, unsigned threads) {
  auto [a, b] = parametrize(t);
  FamilyReport r = pair_report(a, b, sweep_x, threads);
  r.t = t;
  return r;
}

std::string to_json(const FamilyReport& r) {
  nlohmann::ordered_json j;
  if (r.t) j["t"] = to_fraction_string(*r.t);
  j["a"] = to_fraction_string(r.a);
  j["b"] = to_fraction_string(r.b);
  j["discriminant"] = to_fraction_string(r.discriminant);
  j["g"] = to_fraction_string(r.g);
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (const auto& x : r.fabulous_roots) roots.push_back(to_fraction_string(x));
  j["fabulous_roots"] = roots;
  const KineticCertificate& c = r.certificate;
  j["certificate"] = {
      {"delta_nonsquare", c.delta_nonsquare},
      {"two_delta_nonsquare", c.two_delta_nonsquare},
      {"neg_delta_nonsquare", c.neg_delta_nonsquare},
      {"neg_two_delta_nonsquare", c.neg_two_delta_nonsquare},
      {"no_rational_2_torsion", c.no_rational_2_torsion},
      {"j_equation_no_root", c.j_equation_no_root},
      {"halving_poly_irreducible", c.halving_poly_irreducible},
      {"all", c.all()},
  };
  if (r.sweep) {
    j["sweep"] = {{"x", r.sweep->x}, {"odd_order", r.sweep->pi_prime}, {"good_primes", r.sweep->pi},
                  {"ratio", r.sweep->ratio()}};
  }
  return j.dump(2) + "\n";
}

}  // namespace echo
