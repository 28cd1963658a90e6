#pragma once

#include "echo/weierstrass.hpp"

#include <cstdint>

namespace echo {

/// y^2 = x^3 + a x + b over F_p, p >= 5, as raw residues.
struct ShortModel {
  std::uint64_t p = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

/// Isomorphic short model via x' = 36x + 3b2, y' = 108(2y + a1 x + a3).
ShortModel short_model(const ModCurve& c);
std::uint64_t short_x(const ModCurve& c, const ModPoint& q);
std::uint64_t short_y(const ModCurve& c, const ModPoint& q);

/// #E(F_p) by enumerating every affine pair. O(p^2); oracle and tiny p only.
std::uint64_t count_points_exhaustive(const ModCurve& c);

/// #E(F_p) = p + 1 + sum of Legendre symbols, O(p log p); p odd.
std::uint64_t count_points_legendre(const ModCurve& c);

/// #E(F_p): exhaustive below 100, otherwise baby-step giant-step over the
/// Hasse interval, intersecting the annihilating multiples of pseudo-random
/// points (seeded by p) until one candidate survives. Throws on singular input.
std::uint64_t group_order(const ModCurve& c);

/// Order of q is odd iff (odd part of #E) * q = O.
bool has_odd_order(const ModPoint& q, const ModCurve& c);

inline std::uint64_t odd_part(std::uint64_t n) {
  while (n != 0 && (n & 1) == 0) n >>= 1;
  return n;
}

}  // namespace echo
