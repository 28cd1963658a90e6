#include "doctest.h"

#include "echo/ec_core.hpp"
#include "echo/echo_seq.hpp"
#include "echo/odd_order_sweep.hpp"
#include "echo/point_count.hpp"
#include "echo/report.hpp"
#include "echo/sieve.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace echo;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("echo_test_" + name)).string();
}

// Direct scan of exact terms. For a good prime p the first hit is at
// n = (ord P - 1) / 2 <= (p + 1 + 2 sqrt p) / 2, so a bound of 400 covers p < 200.
bool scan_divides(std::uint64_t p, long bound) {
  for (long n = 0; n <= bound; ++n) {
    ExactInt r = term(n) % static_cast<unsigned long>(p);
    if (r == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("sieve against trial division") {
  auto ps = primes_in_range(0, 5000);
  std::vector<std::uint64_t> naive;
  for (std::uint64_t n = 2; n < 5000; ++n) {
    if (is_prime_u64(n)) naive.push_back(n);
  }
  CHECK(ps == naive);
  auto mid = primes_in_range(1000000, 1001000);
  for (auto p : mid) CHECK(is_prime_u64(p));
  CHECK(mid.size() == 75);
  CHECK(small_primes(30) == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
}

TEST_CASE("listed prime divisors") {
  CHECK(divides_some_term(3));
  CHECK_FALSE(divides_some_term(5));
  CHECK(divides_some_term(7));
  CHECK(divides_some_term(2));
  CHECK_THROWS_AS(divides_some_term(9), std::invalid_argument);
}

TEST_CASE("ladder path agrees with naive order computation") {
  const OddOrderTarget& t = echo_target();
  for (std::uint32_t p : small_primes(1000)) {
    if (p == 3 || p == 5) continue;
    Reduction r = reduce_mod_p(echo_curve(), p);
    bool naive = has_odd_order_naive(reduce_point(echo_point(), p), r.curve);
    REQUIRE(has_odd_order(reduce_point(echo_point(), p), r.curve) == naive);
    REQUIRE((t.classify(p) == kOddOrder) == naive);
  }
}

TEST_CASE("odd order matches a direct scan of the sequence") {
  // Every prime below 200 that divides a term does so within the first few
  // hundred indices (the rank of apparition is bounded by the period).
  for (std::uint32_t p : small_primes(200)) REQUIRE(divides_some_term(p) == scan_divides(p, 400));
}

TEST_CASE("decade boundaries") {
  CHECK(decade_boundaries(10) == std::vector<std::uint64_t>{10});
  CHECK(decade_boundaries(1000) == std::vector<std::uint64_t>{10, 100, 1000});
  CHECK(decade_boundaries(2500) == std::vector<std::uint64_t>{10, 100, 1000, 2500});
  CHECK_THROWS_AS(sweep(5), std::invalid_argument);
}

TEST_CASE("sweep reproduces the small table rows") {
  auto rec = sweep(10000);
  REQUIRE(rec.size() == 4);
  CHECK(rec[0] == SweepRecord{10, 3, 4});
  CHECK(rec[1] == SweepRecord{100, 13, 25});
  CHECK(rec[2] == SweepRecord{1000, 91, 168});
  CHECK(rec[3] == SweepRecord{10000, 636, 1229});
  CHECK(rec[0].ratio() == "0.750000000");
  CHECK(rec[1].ratio() == "0.520000000");
}

TEST_CASE("sweep is identical across thread counts and chunk sizes") {
  SweepOptions one;
  one.chunk = 4096;
  auto base = sweep(200000, one);
  for (unsigned th : {4u, 8u}) {
    for (std::uint64_t chunk : {std::uint64_t{1000}, std::uint64_t{4096}, std::uint64_t{65536}}) {
      SweepOptions o;
      o.threads = th;
      o.chunk = chunk;
      REQUIRE(sweep(200000, o) == base);
    }
  }
}

TEST_CASE("checkpoint roundtrip and errors") {
  std::string path = temp_path("roundtrip.ckpt");
  Checkpoint cp{97, 25, 13};
  save_checkpoint(path, cp);
  CHECK(load_checkpoint(path) == cp);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  {
    std::ofstream(path) << "97 25";
  }
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  {
    std::ofstream(path) << "97 x 13";
  }
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  std::filesystem::remove(path);
}

TEST_CASE("interrupted sweep resumes to the same counts") {
  std::string path = temp_path("resume.ckpt");
  std::filesystem::remove(path);
  SweepOptions o;
  o.chunk = 2000;
  o.checkpoint_path = path;
  o.stop_after_chunks = 7;
  auto partial = sweep(100000, o);
  Checkpoint mid = load_checkpoint(path);
  CHECK(mid.last_prime > 0);
  CHECK(mid.last_prime < 100000);

  o.stop_after_chunks.reset();
  o.threads = 4;
  auto resumed = sweep(100000, o);
  auto full = sweep(100000);
  REQUIRE(!resumed.empty());
  CHECK(resumed.back() == full.back());
  // Records from before the interruption plus those after it cover every boundary.
  for (const auto& r : full) {
    bool seen = std::find(partial.begin(), partial.end(), r) != partial.end() ||
                std::find(resumed.begin(), resumed.end(), r) != resumed.end();
    CHECK(seen);
  }
  Checkpoint done = load_checkpoint(path);
  CHECK(done.pi_so_far == full.back().pi);
  CHECK(done.pi_prime_so_far == full.back().pi_prime);
  CHECK(done.last_prime >= mid.last_prime);
  std::filesystem::remove(path);
}

TEST_CASE("family targets skip bad primes") {
  OddOrderTarget t = family_target(make_rat(6, 5), make_rat(3, 25));
  CHECK(t.classify(3) == kSkipped);
  CHECK(t.classify(5) == kSkipped);
  // The rescaled Tate model describes the same pair as (E, P) at good primes.
  for (std::uint32_t p : small_primes(2000)) {
    if (p == 3 || p == 5) continue;
    REQUIRE((t.classify(p) == kOddOrder) == divides_some_term(p));
  }
  CHECK_THROWS_AS(family_target(make_rat(1), make_rat(0)), std::domain_error);
}

TEST_CASE("z statistic") {
  CHECK(zscore(50, 100, make_rat(1, 2)) == doctest::Approx(0.0));
  CHECK(zscore(0, 10, make_rat(1, 2)) == doctest::Approx(-std::sqrt(10.0)));
  CHECK(std::fabs(zscore(41856, 78498, make_rat(179, 336))) < 1.0);
  CHECK_THROWS_AS(zscore(1, 0, make_rat(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(zscore(1, 2, make_rat(1)), std::invalid_argument);
}

TEST_CASE("CSV and JSON emission") {
  CHECK(to_csv({}) == "x,pi_prime,pi,ratio\n");
  std::vector<SweepRecord> rec{{10, 3, 4}, {100, 13, 25}};
  CHECK(to_csv(rec) == "x,pi_prime,pi,ratio\n10,3,4,0.750000000\n100,13,25,0.520000000\n");
  CHECK(to_csv(rec) == to_csv(rec));
  CHECK(to_json(rec).find("\"pi_prime\": 13") != std::string::npos);
}
