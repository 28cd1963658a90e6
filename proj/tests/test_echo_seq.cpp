#include "doctest.h"

#include "echo/echo_seq.hpp"

#include <stdexcept>
#include <thread>
#include <vector>

using namespace echo;

namespace {

// Independent forward oracle: plain vector, division checked by remainder.
std::vector<ExactInt> oracle_terms(int count) {
  std::vector<ExactInt> b{1, 1, 2, 1};
  for (int n = 4; n < count; ++n) {
    ExactInt c = n % 3 == 0 ? 3 : 1;
    ExactInt num = b[n - 1] * b[n - 3] - c * b[n - 2] * b[n - 2];
    REQUIRE(num % b[n - 4] == 0);
    b.push_back(num / b[n - 4]);
  }
  return b;
}

}  // namespace

TEST_CASE("listed terms") {
  CHECK(term(2) == 2);
  CHECK(term(6) == -17);
  CHECK(term(9) == 247);
  CHECK(term(-1) == -1);
  CHECK(term_alt(7) == 2);
  CHECK(term_alt(8) == 101);
  CHECK(term_alt(0) == 1);
  std::vector<long> head{1, 1, 2, 1, -3, -7, -17, 2, 101, 247, 571, -1669, -13766};
  for (std::size_t n = 0; n < head.size(); ++n) CHECK(term(static_cast<long>(n)) == head[n]);
}

TEST_CASE("memoized terms equal the plain recurrence") {
  auto b = oracle_terms(120);
  for (int n = 0; n < 120; ++n) REQUIRE(term(n) == b[n]);
}

TEST_CASE("both definitions agree and the sequence is odd-symmetric") {
  for (long n = -300; n <= 300; ++n) {
    REQUIRE(term(n) == term_alt(n));
    REQUIRE(term(n) == -term(-(n + 1)));
  }
}

TEST_CASE("quartic identity vanishes") {
  CHECK(h_value(1) == 0);
  CHECK(h_value(3) == 0);
  CHECK(h_value(17) == 0);
  for (long n = 0; n <= 500; ++n) REQUIRE(h_value(n) == 0);
}

TEST_CASE("d sequence values and relations") {
  CHECK(d_value(1) == -14);
  CHECK(d_value(4) == -707);
  CHECK(d_value(0) == -9);
  CHECK(d_ratio(2) == 1);
  CHECK(d_ratio(0) == 3);
  CHECK(d_ratio(6) == 3);
  for (long n = 0; n <= 300; ++n) {
    REQUIRE(term(n + 7) * d_value(n) == term(n + 1) * d_value(n + 3));
    ExactRat r = d_ratio(n);
    REQUIRE((r == 1 || r == 3));
    REQUIRE(r == (n % 3 == 0 ? 3 : 1));
  }
}

TEST_CASE("residue cycles") {
  ResidueCycle c3 = residue_cycle(3);
  CHECK(c3.period == 9);
  CHECK(c3.pattern == std::vector<long>{1, 1, 2, 1, 0, 2, 1, 2, 2});
  CHECK(c3.contains_zero);
  ResidueCycle c5 = residue_cycle(5);
  CHECK(c5.period == 24);
  CHECK_FALSE(c5.contains_zero);
  ResidueCycle c1 = residue_cycle(1);
  CHECK(c1.period == 1);
  CHECK(c1.pattern == std::vector<long>{0});
  // The detected patterns hold over a long direct scan.
  for (long n = 0; n <= 300; ++n) {
    ExactInt r3 = term(n) % 3, r5 = term(n) % 5;
    if (r3 < 0) r3 += 3;
    if (r5 < 0) r5 += 5;
    REQUIRE(r3 == c3.pattern[n % 9]);
    REQUIRE(r5 == c5.pattern[n % 24]);
    REQUIRE(r5 != 0);
  }
}

TEST_CASE("residue cycle detection gives up past its bound") {
  CHECK_THROWS_AS(residue_cycle(1000003, 50), std::runtime_error);
}

TEST_CASE("neighbouring terms are coprime") {
  CHECK(coprimality_report(3));
  CHECK(coprimality_report(10));
  CHECK(coprimality_report(300));
}

TEST_CASE("concurrent readers see identical terms") {
  EchoSeq seq;
  std::vector<ExactInt> got(4 * 200);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (long n = 0; n < 200; ++n) got[t * 200 + n] = seq.term(t % 2 ? -n : n);
    });
  }
  for (auto& th : pool) th.join();
  for (long n = 0; n < 200; ++n) {
    CHECK(got[n] == term(n));
    CHECK(got[200 + n] == term(-n));
  }
}
