#pragma once

#include "echo/agl_group.hpp"
#include "echo/exact.hpp"

#include <map>
#include <string>
#include <vector>

namespace echo {

enum class GroupKind { Hk, Full };

/// All vectors A x for x in (Z/2^k)^2, sorted by v0 + 2^k v1.
std::vector<Vec2> image_of(const Mat2& A, unsigned k);

/// Solvability of A x = v mod 2^k by 2-adic elimination: pivot on the entry of
/// least valuation (first in row-major order), clear its row and column.
bool colspace_contains(const Vec2& v, const Mat2& A, unsigned k);

/// |im(M - I) n V_M| / |im(M - I)| at level 2, V_M the vectors paired with M.
ExactRat f_fraction(const Mat2& M, GroupKind group = GroupKind::Hk);

/// Labels of the mod-4 case split on A = M - I.
enum class DensityCase { Invertible, DetTwo, DetZeroOddEntry, EvenNonzero, Identity };
const char* case_label(DensityCase c);
DensityCase classify_case(const Mat2& M);

/// Limiting average of |det|_2 over all 2-adic lifts of A mod 2^r.
ExactRat lift_average_det(const Mat2& A, unsigned r);

/// Limiting density contributed by the mod-4 class of M.
ExactRat mu_case(const Mat2& M, GroupKind group = GroupKind::Hk);

struct DensityReport {
  std::string mode;  // "analytic" or "brute"
  GroupKind group = GroupKind::Hk;
  unsigned level = 0;  // brute only
  std::map<std::string, ExactRat> per_case;
  std::map<std::string, std::size_t> case_matrices;  // classes with a nonzero contribution
  ExactRat total;
  // Brute only: the same count restricted to det(M - I) != 0 mod 2^k.
  ExactRat nonsingular_part;
  // Per mod-4 class: contribution and whether ord2 det(M - I) is the same,
  // and below k, for every lift.
  std::map<Mat2, ExactRat> per_class;
  std::map<Mat2, bool> class_resolved;
};

DensityReport analytic_density(GroupKind group);

/// Exact density of pairs (v, M) in the level-k group with v in im(M - I).
DensityReport brute_density(unsigned k, GroupKind group, unsigned threads = 1);

std::string to_json(const DensityReport& r);

}  // namespace echo
