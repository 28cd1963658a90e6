#pragma once

#include "echo/ec_core.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace echo {

struct SweepRecord {
  std::uint64_t x = 0;
  std::uint64_t pi_prime = 0;  // primes counted as hits
  std::uint64_t pi = 0;        // primes tested
  std::string ratio() const;   // pi_prime / pi, half-even to 9 places

  bool operator==(const SweepRecord&) const = default;
};

struct Checkpoint {
  std::uint64_t last_prime = 0;
  std::uint64_t pi_so_far = 0;
  std::uint64_t pi_prime_so_far = 0;

  bool operator==(const Checkpoint&) const = default;
};

inline constexpr std::uint8_t kEvenOrder = 0;
inline constexpr std::uint8_t kOddOrder = 1;
inline constexpr std::uint8_t kSkipped = 2;  // bad reduction, excluded from pi

/// A curve over Q with an integral model and a point on it; classifies primes
/// by the parity of the point's order mod p.
class OddOrderTarget {
 public:
  OddOrderTarget(RatCurve curve, RatPoint point, std::map<std::uint64_t, bool> overrides = {});

  /// out[i] is kOddOrder, kEvenOrder or kSkipped for primes[i].
  void classify(std::span<const std::uint64_t> primes, std::span<std::uint8_t> out) const;
  std::uint8_t classify(std::uint64_t p) const;

  const RatCurve& curve() const { return curve_; }
  const RatPoint& point() const { return point_; }

 private:
  RatCurve curve_;
  RatPoint point_;
  std::map<std::uint64_t, bool> overrides_;
};

/// (E, P) with the bad primes fixed: 3 divides b_4, 5 divides no term.
const OddOrderTarget& echo_target();

/// E_{a,b} rescaled by u = lcm of the denominators so that it is integral,
/// with the point (0,0). Bad primes are skipped.
OddOrderTarget family_target(const ExactRat& a, const ExactRat& b);

bool has_odd_order_naive(const ModPoint& q, const ModCurve& c);

/// p divides some b_n (n >= 0).
bool divides_some_term(std::uint64_t p);

struct SweepOptions {
  unsigned threads = 1;
  std::optional<std::string> checkpoint_path;
  std::uint64_t chunk = 1 << 16;
  // Stop after reducing this many chunks; simulates an interrupted run.
  std::optional<std::size_t> stop_after_chunks;
};

/// 10, 100, ... up to x_max, plus x_max itself when it is not a power of ten.
std::vector<std::uint64_t> decade_boundaries(std::uint64_t x_max);

/// One record per boundary. With a checkpoint path, an existing checkpoint is
/// resumed (only boundaries above its last prime are reported) and progress
/// is saved after every chunk.
std::vector<SweepRecord> sweep(const OddOrderTarget& target, std::uint64_t x_max, const SweepOptions& opts = {});
std::vector<SweepRecord> sweep(std::uint64_t x_max, const SweepOptions& opts = {});

/// One-proportion z statistic (successes/trials - p) / sqrt(p (1 - p) / trials).
double zscore(std::uint64_t successes, std::uint64_t trials, const ExactRat& hypothesized);

}  // namespace echo
