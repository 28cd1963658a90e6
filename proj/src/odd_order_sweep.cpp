#include "echo/odd_order_sweep.hpp"

#include "echo/kernels/kernels.hpp"
#include "echo/point_count.hpp"
#include "echo/report.hpp"
#include "echo/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace echo {

std::string SweepRecord::ratio() const {
  if (pi == 0) return to_fixed_half_even(ExactRat(0), 9);
  return to_fixed_half_even(ExactRat(ExactInt(static_cast<unsigned long>(pi_prime)), ExactInt(static_cast<unsigned long>(pi))), 9);
}

OddOrderTarget::OddOrderTarget(RatCurve curve, RatPoint point, std::map<std::uint64_t, bool> overrides)
    : curve_(std::move(curve)), point_(std::move(point)), overrides_(std::move(overrides)) {
  if (point_.infinity || !on_curve(point_, curve_)) throw std::invalid_argument("target point must be an affine point on the curve");
  for (const ExactRat* c : {&curve_.a1, &curve_.a2, &curve_.a3, &curve_.a4, &curve_.a6, &point_.x, &point_.y}) {
    if (c->get_den() != 1) throw std::invalid_argument("target needs an integral model");
  }
}

std::uint8_t OddOrderTarget::classify(std::uint64_t p) const {
  std::uint8_t out = 0;
  classify(std::span<const std::uint64_t>(&p, 1), std::span<std::uint8_t>(&out, 1));
  return out;
}

void OddOrderTarget::classify(std::span<const std::uint64_t> primes, std::span<std::uint8_t> out) const {
  struct Pending {
    std::size_t slot;
    ModCurve curve;
    ModPoint point;
    std::uint64_t m;
  };
  std::vector<kernels::LadderLane> lanes;
  std::vector<Pending> pending;
  lanes.reserve(primes.size());
  pending.reserve(primes.size());

  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::uint64_t p = primes[i];
    if (auto it = overrides_.find(p); it != overrides_.end()) {
      out[i] = it->second ? kOddOrder : kEvenOrder;
      continue;
    }
    Reduction red = reduce_mod_p(curve_, p);
    if (!red.good) {
      out[i] = kSkipped;
      continue;
    }
    ModPoint q = reduce_point(point_, p);
    if (p < 100) {
      out[i] = has_odd_order(q, red.curve) ? kOddOrder : kEvenOrder;
      continue;
    }
    std::uint64_t m = odd_part(group_order(red.curve));
    ShortModel sm = short_model(red.curve);
    lanes.push_back({p, sm.a, sm.b, short_x(red.curve, q), m});
    pending.push_back({i, red.curve, q, m});
  }

  std::vector<std::uint8_t> verdict(lanes.size());
  kernels::ladder_is_identity(lanes, verdict);
  for (std::size_t j = 0; j < pending.size(); ++j) {
    const Pending& pd = pending[j];
    bool odd;
    if (verdict[j] == kernels::kDegenerate) {
      odd = scalar_mul(static_cast<long long>(pd.m), pd.point, pd.curve).infinity;
    } else {
      odd = verdict[j] == kernels::kIdentity;
    }
    out[pd.slot] = odd ? kOddOrder : kEvenOrder;
  }
}

const OddOrderTarget& echo_target() {
  static const OddOrderTarget target(echo_curve(), echo_point(), {{3, true}, {5, false}});
  return target;
}

OddOrderTarget family_target(const ExactRat& a, const ExactRat& b) {
  if (sgn(b) == 0) throw std::domain_error("family_target: b = 0 gives a singular curve");
  ExactInt u;
  mpz_lcm(u.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  ExactRat ur(u);
  RatCurve c{ur * a, ur * ur * b, ur * ur * ur * b, 0, 0};
  if (sgn(c.discriminant()) == 0) throw std::domain_error("family_target: singular curve");
  return OddOrderTarget(c, RatPoint::affine(0, 0));
}

bool has_odd_order_naive(const ModPoint& q, const ModCurve& c) {
  std::uint64_t order = 1;
  ModPoint cur = q;
  while (!cur.infinity) {
    cur = add(cur, q, c);
    ++order;
  }
  return order % 2 == 1;
}

bool divides_some_term(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("divides_some_term: not a prime");
  return echo_target().classify(p) == kOddOrder;
}

std::vector<std::uint64_t> decade_boundaries(std::uint64_t x_max) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 10; d <= x_max; d *= 10) {
    out.push_back(d);
    if (d > x_max / 10) break;
  }
  if (out.empty() || out.back() != x_max) out.push_back(x_max);
  return out;
}

namespace {

struct Chunk {
  std::uint64_t lo, hi;  // integers in (lo, hi]
  bool boundary;
};

struct ChunkResult {
  std::uint64_t pi = 0, pi_prime = 0, last_prime = 0;
};

}  // namespace

std::vector<SweepRecord> sweep(const OddOrderTarget& target, std::uint64_t x_max, const SweepOptions& opts) {
  if (x_max < 10) throw std::invalid_argument("sweep: x_max must be at least 10");
  if (opts.chunk == 0) throw std::invalid_argument("sweep: chunk size must be positive");

  Checkpoint cp;
  if (opts.checkpoint_path && std::filesystem::exists(*opts.checkpoint_path)) {
    cp = load_checkpoint(*opts.checkpoint_path);
  }

  std::vector<Chunk> chunks;
  std::uint64_t start = cp.last_prime;
  for (std::uint64_t b : decade_boundaries(x_max)) {
    if (b <= start) continue;
    for (std::uint64_t lo = start; lo < b; lo = std::min(b, lo + opts.chunk)) {
      std::uint64_t hi = std::min(b, lo + opts.chunk);
      chunks.push_back({lo, hi, hi == b});
    }
    start = b;
  }

  std::vector<ChunkResult> results(chunks.size());
  std::vector<char> done(chunks.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= chunks.size() || stop.load()) return;
      ChunkResult r;
      try {
        std::vector<std::uint64_t> primes = primes_in_range(chunks[i].lo + 1, chunks[i].hi + 1);
        std::vector<std::uint8_t> cls(primes.size());
        target.classify(primes, cls);
        for (std::size_t j = 0; j < primes.size(); ++j) {
          if (cls[j] == kSkipped) continue;
          ++r.pi;
          if (cls[j] == kOddOrder) ++r.pi_prime;
        }
        if (!primes.empty()) r.last_prime = primes.back();
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      {
        std::lock_guard lock(mu);
        results[i] = r;
        done[i] = 1;
      }
      cv.notify_all();
    }
  };

  unsigned nthreads = std::max(1u, opts.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);

  // Ordered reduction; the checkpoint always describes a prefix of the chunks.
  std::vector<SweepRecord> records;
  std::uint64_t pi = cp.pi_so_far, pi_prime = cp.pi_prime_so_far, last_prime = cp.last_prime;
  std::size_t reduced = 0;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return done[i] || failure; });
      if (failure) break;
    }
    pi += results[i].pi;
    pi_prime += results[i].pi_prime;
    if (results[i].last_prime) last_prime = results[i].last_prime;
    if (chunks[i].boundary) records.push_back({chunks[i].hi, pi_prime, pi});
    if (opts.checkpoint_path) save_checkpoint(*opts.checkpoint_path, {last_prime, pi, pi_prime});
    if (opts.stop_after_chunks && ++reduced >= *opts.stop_after_chunks) {
      stop = true;
      break;
    }
  }
  stop = true;
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

std::vector<SweepRecord> sweep(std::uint64_t x_max, const SweepOptions& opts) {
  return sweep(echo_target(), x_max, opts);
}

double zscore(std::uint64_t successes, std::uint64_t trials, const ExactRat& hypothesized) {
  if (trials == 0) throw std::invalid_argument("zscore: trials must be positive");
  if (sgn(hypothesized) <= 0 || hypothesized >= 1) throw std::invalid_argument("zscore: hypothesized rate must lie in (0,1)");
  double p = hypothesized.get_d();
  double phat = static_cast<double>(successes) / static_cast<double>(trials);
  return (phat - p) / std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

}  // namespace echo
