#include "doctest.h"

#include "echo/kernels/kernels.hpp"
#include "echo/mod_arith.hpp"
#include "echo/point_count.hpp"
#include "echo/sieve.hpp"
#include "echo/weierstrass.hpp"

#include <random>
#include <set>

using namespace echo;
using namespace echo::kernels;

namespace {

std::vector<LadderLane> random_lanes(std::mt19937_64& rng, std::size_t n, std::uint64_t pmax) {
  auto primes = primes_in_range(5, pmax);
  std::vector<LadderLane> lanes;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t p = primes[rng() % primes.size()];
    LadderLane l{p, rng() % p, rng() % p, rng() % p, rng() % (2 * p) + 1};
    if (i % 17 == 0) l.x = 0;
    lanes.push_back(l);
  }
  return lanes;
}

// Oracle: affine scalar multiplication on a point with the lane's x.
std::optional<bool> affine_identity(const LadderLane& l) {
  std::uint64_t p = l.p;
  ModP x(l.x, p), a(l.a, p), b(l.b, p);
  ModP rhs = x * x * x + a * x + b;
  if (rhs.is_zero() || jacobi(rhs.value(), p) != 1) return std::nullopt;
  ModCurve c{ModP(0, p), ModP(0, p), ModP(0, p), a, b};
  if (c.discriminant().is_zero()) return std::nullopt;
  ModPoint q = ModPoint::affine(x, ModP(sqrtmod(rhs.value(), p), p));
  return scalar_mul(static_cast<long long>(l.m), q, c).infinity;
}

ImageCounts naive_image(const Mat2& A, unsigned k) {
  std::uint32_t mod = 1u << k, mask = mod - 1;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (std::uint32_t x = 0; x < mod; ++x) {
    for (std::uint32_t y = 0; y < mod; ++y) {
      seen.insert({(A[0] * x + A[1] * y) & mask, (A[2] * x + A[3] * y) & mask});
    }
  }
  ImageCounts c;
  c.size = static_cast<std::uint32_t>(seen.size());
  for (auto [u, v] : seen) ++c.by_class[(u & 3) + 4 * (v & 3)];
  return c;
}

}  // namespace

TEST_CASE("scalar ladder agrees with affine arithmetic") {
  std::mt19937_64 rng(5);
  auto lanes = random_lanes(rng, 3000, 20000);
  // Make half of the scalars multiples of the group order so identities occur.
  for (std::size_t i = 0; i < lanes.size(); i += 2) {
    ModCurve c{ModP(0, lanes[i].p), ModP(0, lanes[i].p), ModP(0, lanes[i].p), ModP(lanes[i].a, lanes[i].p),
               ModP(lanes[i].b, lanes[i].p)};
    if (!c.discriminant().is_zero()) lanes[i].m = count_points_legendre(c) * (1 + rng() % 3);
  }
  std::vector<std::uint8_t> out(lanes.size());
  ladder_is_identity_scalar(lanes, out);
  std::size_t checked = 0, identities = 0;
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    auto expect = affine_identity(lanes[i]);
    if (!expect || out[i] == kDegenerate) continue;
    REQUIRE((out[i] == kIdentity) == *expect);
    ++checked;
    identities += *expect;
  }
  CHECK(checked > 1000);
  CHECK(identities > 300);
}

#if defined(ECHO_HAVE_AVX2)
TEST_CASE("AVX2 ladder is bit-identical to the scalar ladder") {
  if (!isa_supported(Isa::Avx2)) return;
  std::mt19937_64 rng(6);
  for (std::uint64_t pmax : {std::uint64_t{1000}, std::uint64_t{1} << 20, kAvx2LadderPrimeLimit, std::uint64_t{1} << 30}) {
    for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{13}, std::size_t{1000}}) {
      auto lanes = random_lanes(rng, n, pmax);
      std::vector<std::uint8_t> s(n), v(n);
      ladder_is_identity_scalar(lanes, s);
      ladder_is_identity_avx2(lanes, v);
      REQUIRE(s == v);
    }
  }
}

TEST_CASE("AVX2 image counts equal the scalar kernel") {
  if (!isa_supported(Isa::Avx2)) return;
  std::mt19937_64 rng(8);
  for (unsigned k = 1; k <= kMaxImageLevel; ++k) {
    std::uint32_t mask = (1u << k) - 1;
    for (int i = 0; i < 200; ++i) {
      Mat2 A{static_cast<std::uint32_t>(rng()) & mask, static_cast<std::uint32_t>(rng()) & mask,
             static_cast<std::uint32_t>(rng()) & mask, static_cast<std::uint32_t>(rng()) & mask};
      if (i % 5 == 0) A = {A[0] & ~1u & mask, A[1] & ~1u & mask, A[2] & ~3u & mask, A[3] & ~1u & mask};
      REQUIRE(image_class_counts_avx2(A, k) == image_class_counts_scalar(A, k));
    }
  }
}
#endif

TEST_CASE("image counts against direct enumeration") {
  std::mt19937_64 rng(9);
  for (unsigned k = 1; k <= 5; ++k) {
    std::uint32_t mask = (1u << k) - 1;
    for (int i = 0; i < 60; ++i) {
      Mat2 A{static_cast<std::uint32_t>(rng()) & mask, static_cast<std::uint32_t>(rng()) & mask,
             static_cast<std::uint32_t>(rng()) & mask, static_cast<std::uint32_t>(rng()) & mask};
      if (i % 3 == 0) A = {A[0] << 1 & mask, A[1] << 1 & mask, A[2] << 1 & mask, A[3] & mask};
      REQUIRE(image_class_counts_scalar(A, k) == naive_image(A, k));
    }
  }
}

TEST_CASE("dispatch honours the override") {
  set_isa_override(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  Mat2 A{2, 0, 0, 1};
  CHECK(image_class_counts(A, 2).size == 8);
  set_isa_override(std::nullopt);
  CHECK(image_class_counts(A, 2).size == 8);
  CHECK(isa_supported(Isa::Scalar));
  CHECK_THROWS_AS(image_class_counts(A, kMaxImageLevel + 1), std::invalid_argument);
}
