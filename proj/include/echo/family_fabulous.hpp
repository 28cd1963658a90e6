#pragma once

#include "echo/ec_core.hpp"
#include "echo/odd_order_sweep.hpp"
#include "echo/poly.hpp"

#include <optional>
#include <string>
#include <utility>

namespace echo {

/// Monic quartic in x attached to E_{a,b}; a rational root marks the pairs
/// whose 2-power division tower lands in a conjugate of the index-4 subgroup.
struct FabulousQuartic {
  ExactRat c4{1}, c3, c2, c1, c0;

  RatPoly poly() const { return {c0, c1, c2, c3, c4}; }
  ExactRat operator()(const ExactRat& x) const { return evaluate(poly(), x); }
};

FabulousQuartic fabulous_poly(const ExactRat& a, const ExactRat& b);

/// The genus-0 exceptional locus g(a, b).
ExactRat bad_locus_g(const ExactRat& a, const ExactRat& b);

/// a^4 - a^3 + 8a^2 b - 36ab + 16b^2 + 27b, so that disc(E_{a,b}) = -b^3 Q.
ExactRat delta_cofactor(const ExactRat& a, const ExactRat& b);

/// (a, b) on the rational curve f_{a,b}(-96 b^2) = 0; t = 25 and t = -35 give
/// b = 0 and are rejected with std::domain_error.
std::pair<ExactRat, ExactRat> parametrize(const ExactRat& t);

struct KineticCertificate {
  bool delta_nonsquare = false;
  bool two_delta_nonsquare = false;
  bool neg_delta_nonsquare = false;
  bool neg_two_delta_nonsquare = false;
  bool no_rational_2_torsion = false;
  bool j_equation_no_root = false;
  bool halving_poly_irreducible = false;

  bool all() const {
    return delta_nonsquare && two_delta_nonsquare && neg_delta_nonsquare && neg_two_delta_nonsquare &&
           no_rational_2_torsion && j_equation_no_root && halving_poly_irreducible;
  }
  bool operator==(const KineticCertificate&) const = default;
};

RatPoly two_torsion_poly(const RatCurve& c);  // 4x^3 + b2 x^2 + 2 b4 x + b6
RatPoly halving_poly(const RatCurve& c);      // x-coordinates of the halves of (0,0)

/// Throws std::domain_error for a singular E_{a,b}.
KineticCertificate certify_kinetic_conditions(const ExactRat& a, const ExactRat& b);

/// First (a, b) in the order b = 1, -1, 2, -2, ..., a = 0, 1, -1, ... with an
/// all-true certificate and a fabulous quartic without rational roots.
std::optional<std::pair<ExactRat, ExactRat>> find_control_pair(long bound = 10);

struct FamilyReport {
  std::optional<ExactRat> t;  // set when built from the family parameter
  ExactRat a, b;
  ExactRat discriminant;
  ExactRat g;
  std::vector<ExactRat> fabulous_roots;
  KineticCertificate certificate;
  std::optional<SweepRecord> sweep;  // pi counts primes of good reduction
};

FamilyReport pair_report(const ExactRat& a, const ExactRat& b, std::optional<std::uint64_t> sweep_x = {},
                         unsigned threads = 1);
FamilyReport family_report(const ExactRat& t, std::optional<std::uint64_t> sweep_x = {}, unsigned threads = 1);

std::string to_json(const FamilyReport& r);

}  // namespace echo
