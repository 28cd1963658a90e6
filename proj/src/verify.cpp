#include "echo/verify.hpp"

#include "echo/agl_group.hpp"
#include "echo/density_engine.hpp"
#include "echo/echo_seq.hpp"
#include "echo/family_fabulous.hpp"
#include "echo/odd_order_sweep.hpp"

#include <functional>
#include <stdexcept>

namespace echo {

namespace {

// A suite body returns an empty string on success, else the first failure.
SuiteResult run_suite(const std::string& name, const std::function<std::string()>& body) {
  SuiteResult r;
  r.name = name;
  try {
    r.detail = body();
    r.passed = r.detail.empty();
    if (r.passed) r.detail = "ok";
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::string sequence_suite() {
  for (long n = -300; n <= 300; ++n) {
    if (term(n) != term_alt(n)) return "definitions disagree at n = " + std::to_string(n);
    if (term(n) != -term(-(n + 1))) return "symmetry fails at n = " + std::to_string(n);
  }
  for (long n = 0; n <= 500; ++n)
    if (h_value(n) != 0) return "h(n) != 0 at n = " + std::to_string(n);
  if (!coprimality_report(300)) return "coprimality fails below 300";
  for (long n = 0; n <= 300; ++n) {
    if (term(n + 7) * d_value(n) != term(n + 1) * d_value(n + 3)) return "d relation fails at n = " + std::to_string(n);
    ExactRat r = d_ratio(n);
    ExactRat expect = n % 3 == 0 ? 3 : 1;
    if (r != expect) return "d_ratio(" + std::to_string(n) + ") = " + to_fraction_string(r);
  }
  ResidueCycle c3 = residue_cycle(3), c5 = residue_cycle(5);
  if (c3.period != 9 || c3.pattern != std::vector<long>{1, 1, 2, 1, 0, 2, 1, 2, 2}) return "mod-3 cycle differs";
  if (c5.period != 24 || c5.contains_zero) return "mod-5 cycle differs";
  return {};
}

std::string curve_suite() {
  const RatCurve E = echo_curve();
  if (E.discriminant() != -6075) return "discriminant of E is not -6075";
  const RatPoint P = echo_point();
  RatPoint acc = P;
  const RatPoint twoP = add(P, P, E);
  for (long n = 0; n <= 100; ++n) {
    OddMultiple om = odd_multiple_coords(n);
    if (!(om.point() == acc)) return "odd multiple differs at n = " + std::to_string(n);
    if (acc.x.get_den() != om.denom_base * om.denom_base) return "x-denominator is not b_n^2 at n = " + std::to_string(n);
    acc = add(acc, twoP, E);
  }
  TateForm tf = tate_normal_form(E, P);
  if (tf.a != ExactRat(6, 5) || tf.b != ExactRat(3, 25)) return "Tate form of (E, P) is not (6/5, 3/25)";
  RatCurve image = apply_change(E, tf.map);
  if (!(image == tate_curve(tf.a, tf.b))) return "Tate substitution does not reproduce the normal form";
  return {};
}

std::string group_suite() {
  if (closure(h2_generators()).order() != 384) return "H_2 closure order is not 384";
  if (full_group(2).order() != 1536) return "AGL2(Z/4) order is not 1536";
  if (!coset_structure_check()) return "coset structure check fails";
  for (unsigned k = 2; k <= 3; ++k) {
    SubgroupRep H = build_hk(k);
    if (H.order() != 6 * (std::size_t(1) << (6 * (k - 1)))) return "H_k order mismatch at k = " + std::to_string(k);
    if (!is_kinetic(H)) return "H_k is not kinetic at k = " + std::to_string(k);
  }
  auto classes = classify_kinetic(2);
  if (classes.size() != 2 || classes[1].representative.order() != 384) return "level-2 classification differs";
  return {};
}

std::string density_suite() {
  if (analytic_density(GroupKind::Hk).total != ExactRat(179, 336)) return "analytic H density is not 179/336";
  if (analytic_density(GroupKind::Full).total != ExactRat(11, 21)) return "analytic full density is not 11/21";
  ExactRat prev = 2;
  const ExactRat target(179, 336);
  for (unsigned k = 2; k <= 4; ++k) {
    ExactRat d = brute_density(k, GroupKind::Hk).total;
    if (d > prev) return "brute density increases at k = " + std::to_string(k);
    if (d < target) return "brute density below the limit at k = " + std::to_string(k);
    prev = d;
  }
  return {};
}

std::string family_suite() {
  for (long t = -10; t <= 10; ++t) {
    auto [a, b] = parametrize(ExactRat(t));
    if (sgn(fabulous_poly(a, b)(-96 * b * b)) != 0) return "-96 b^2 is not a root at t = " + std::to_string(t);
  }
  TateForm tf = tate_normal_form(echo_curve(), echo_point());
  if (rational_roots(fabulous_poly(tf.a, tf.b).poly()).empty()) return "no rational root for (E, P)";
  if (!certify_kinetic_conditions(tf.a, tf.b).all()) return "certificate of (E, P) is not all-true";
  return {};
}

std::string sweep_suite(unsigned threads) {
  SweepOptions opts;
  opts.threads = threads;
  auto rec = sweep(10000, opts);
  const std::uint64_t pp[] = {3, 13, 91, 636}, pi[] = {4, 25, 168, 1229};
  if (rec.size() != 4) return "unexpected record count";
  for (std::size_t i = 0; i < 4; ++i)
    if (rec[i].pi_prime != pp[i] || rec[i].pi != pi[i]) return "table row differs at x = " + std::to_string(rec[i].x);
  return {};
}

}  // namespace

std::vector<SuiteResult> run_invariant_suites(unsigned threads) {
  return {
      run_suite("sequence", sequence_suite),
      run_suite("curve", curve_suite),
      run_suite("group", group_suite),
      run_suite("density", density_suite),
      run_suite("family", family_suite),
      run_suite("sweep", [threads] { return sweep_suite(threads); }),
  };
}

}  // namespace echo
