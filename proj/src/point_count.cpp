#include "echo/point_count.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace echo {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Affine arithmetic on a short model with raw residues; `inf` marks O.
struct SPoint {
  std::uint64_t x = 0, y = 0;
  bool inf = true;
};

struct ShortArith {
  std::uint64_t p, a;

  std::uint64_t sub(std::uint64_t u, std::uint64_t v) const { return u >= v ? u - v : u + p - v; }

  SPoint add(const SPoint& P, const SPoint& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    std::uint64_t lam;
    if (P.x == Q.x) {
      if (P.y != Q.y || P.y == 0) return SPoint{};
      std::uint64_t num = (3 * mulmod(P.x, P.x, p) + a) % p;
      lam = mulmod(num, invmod(2 * P.y % p, p), p);
    } else {
      lam = mulmod(sub(Q.y, P.y), invmod(sub(Q.x, P.x), p), p);
    }
    std::uint64_t x3 = sub(sub(mulmod(lam, lam, p), P.x), Q.x);
    std::uint64_t y3 = sub(mulmod(lam, sub(P.x, x3), p), P.y);
    return SPoint{x3, y3, false};
  }

  SPoint neg(const SPoint& P) const { return P.inf ? P : SPoint{P.x, P.y == 0 ? 0 : p - P.y, false}; }

  SPoint mul(std::uint64_t k, SPoint P) const {
    SPoint acc;
    while (k) {
      if (k & 1) acc = add(acc, P);
      k >>= 1;
      if (k) P = add(P, P);
    }
    return acc;
  }
};

// All m in [lo, hi] with m*Q = O, by baby-step giant-step.
std::vector<std::uint64_t> annihilators(const ShortArith& ar, const SPoint& Q, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t width = hi - lo + 1;
  std::uint64_t s = isqrt(width) + 1;
  std::unordered_map<std::uint64_t, std::uint64_t> baby;  // x(jQ) -> j, 1 <= j <= s
  baby.reserve(2 * s);
  std::vector<SPoint> steps(s + 1);
  SPoint cur;
  for (std::uint64_t j = 1; j <= s; ++j) {
    cur = ar.add(cur, Q);
    steps[j] = cur;
    if (!cur.inf) baby.emplace(cur.x, j);
  }
  SPoint giant = ar.mul(s, Q);
  std::set<std::uint64_t> found;
  // R_i = (lo + i s) Q; R_i = O, or R_i = -jQ (m = base + j), or R_i = jQ (m = base - j).
  SPoint R = ar.mul(lo, Q);
  for (std::uint64_t base = lo; base <= hi + s; base += s) {
    if (R.inf) {
      if (base >= lo && base <= hi) found.insert(base);
    } else if (auto it = baby.find(R.x); it != baby.end()) {
      // Each x appears for j and -j; check both signs against the stored j and
      // any other j sharing the x-coordinate (only possible for small orders).
      for (std::uint64_t j = 1; j <= s; ++j) {
        if (steps[j].inf || steps[j].x != R.x) continue;
        std::uint64_t up = base + j, down = base - j;
        if (steps[j].y != R.y && up >= lo && up <= hi) found.insert(up);
        if (steps[j].y == R.y && base >= j && down >= lo && down <= hi) found.insert(down);
        if (steps[j].y == 0) {  // 2-torsion: both signs coincide
          if (up >= lo && up <= hi) found.insert(up);
          if (base >= j && down >= lo && down <= hi) found.insert(down);
        }
      }
    }
    R = ar.add(R, giant);
  }
  return {found.begin(), found.end()};
}

}  // namespace

ShortModel short_model(const ModCurve& c) {
  std::uint64_t p = c.a1.modulus();
  if (p < 5) throw std::domain_error("short model needs p >= 5");
  ModP A = -(field_const(c.a1, 27) * c.c4());
  ModP B = -(field_const(c.a1, 54) * c.c6());
  return ShortModel{p, A.value(), B.value()};
}

std::uint64_t short_x(const ModCurve& c, const ModPoint& q) {
  return (field_const(q.x, 36) * q.x + field_const(q.x, 3) * c.b2()).value();
}

std::uint64_t short_y(const ModCurve& c, const ModPoint& q) {
  return (field_const(q.x, 108) * (field_const(q.x, 2) * q.y + c.a1 * q.x + c.a3)).value();
}

std::uint64_t count_points_exhaustive(const ModCurve& c) {
  std::uint64_t p = c.a1.modulus();
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) {
      if (on_curve(ModPoint::affine(ModP(x, p), ModP(y, p)), c)) ++n;
    }
  }
  return n;
}

std::uint64_t count_points_legendre(const ModCurve& c) {
  std::uint64_t p = c.a1.modulus();
  if (p == 2) return count_points_exhaustive(c);
  // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
  std::int64_t total = static_cast<std::int64_t>(p) + 1;
  for (std::uint64_t xv = 0; xv < p; ++xv) {
    ModP x(xv, p);
    ModP h = c.a1 * x + c.a3;
    ModP rhs = field_const(x, 4) * (x * x * x + c.a2 * x * x + c.a4 * x + c.a6) + h * h;
    total += jacobi(rhs.value(), p);
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t group_order(const ModCurve& c) {
  std::uint64_t p = c.a1.modulus();
  if (c.discriminant().is_zero()) throw std::domain_error("group_order: singular curve");
  if (p < 100) return count_points_exhaustive(c);

  ShortModel sm = short_model(c);
  ShortArith ar{p, sm.a};
  std::uint64_t r = isqrt(4 * p);  // floor(2 sqrt p)
  std::uint64_t lo = p + 1 - r, hi = p + 1 + r;
  // The true order annihilates every point, so the first point's multiples
  // in the interval seed the candidate set.
  std::vector<std::uint64_t> cand;
  std::mt19937_64 rng(p);
  int used = 0;
  while ((used == 0 || cand.size() > 1) && used < 24) {
    std::uint64_t x = rng() % p;
    std::uint64_t rhs = (mulmod(mulmod(x, x, p), x, p) + mulmod(sm.a, x, p) + sm.b) % p;
    if (rhs != 0 && jacobi(rhs, p) != 1) continue;
    SPoint Q{x, sqrtmod(rhs, p), false};
    ++used;
    std::vector<std::uint64_t> found = annihilators(ar, Q, lo, hi);
    if (used == 1) {
      cand = std::move(found);
    } else {
      std::vector<std::uint64_t> next;
      std::set_intersection(cand.begin(), cand.end(), found.begin(), found.end(), std::back_inserter(next));
      cand.swap(next);
    }
  }
  if (cand.size() == 1) return cand.front();
  return count_points_legendre(c);
}

bool has_odd_order(const ModPoint& q, const ModCurve& c) {
  if (q.infinity) return true;
  std::uint64_t m = odd_part(group_order(c));
  return scalar_mul(static_cast<long long>(m), q, c).infinity;
}

}  // namespace echo
