#pragma once

#include "echo/exact.hpp"

#include <cstdint>
#include <deque>
#include <mutex>
#include <vector>

namespace echo {

/// Which recurrence generates the sequence. Both must produce identical terms.
enum class Definition {
  Primary,   // order-4 Somos-like recurrence, seed (1,1,2,1)
  Appendix,  // order-7 bilinear recurrence, seed (1,1,2,1,-3,-7,-17)
};

struct ResidueCycle {
  long modulus = 0;
  long period = 0;
  std::vector<long> pattern;
  bool contains_zero = false;
};

/// Two-way memoized ECHO sequence indexed by all integers.
///
/// Terms are computed on demand and cached forever; the cache only grows.
/// Concurrent readers are safe because population is serialized by a mutex
/// and deque growth never moves existing elements.
class EchoSeq {
 public:
  explicit EchoSeq(Definition def = Definition::Primary);

  const ExactInt& term(long n);
  Definition definition() const { return def_; }

  // Upper bound on the cached index range, useful for tests and warm-up.
  void warm(long lo, long hi);

 private:
  void extend_forward(long n);
  void extend_backward(long n);

  Definition def_;
  std::deque<ExactInt> fwd_;  // index n >= 0 at fwd_[n]
  std::deque<ExactInt> bwd_;  // index n < 0 at bwd_[-n-1]
  std::mutex mu_;
};

/// Shared primary-definition instance used by the curve and sweep modules.
EchoSeq& primary_sequence();

ExactInt term(long n);
ExactInt term_alt(long n);

/// The three-branch quartic identity in b_{n-3..n}; vanishes for every n >= 0.
ExactInt h_value(long n);

/// d_n = b_n b_{n+5} - b_{n+2} b_{n+3}.
ExactInt d_value(long n);

/// d_n / (b_{n+1} b_{n+4}); throws std::domain_error on a zero denominator.
ExactRat d_ratio(long n);

/// Detects the period of b_n mod m over n >= 0 by comparing sliding windows of
/// seven consecutive residues. Throws std::runtime_error past `search_bound`.
ResidueCycle residue_cycle(long m, long search_bound = 100000);

/// True iff gcd(b_n, b_{n-i}) = 1 for i = 1,2,3 and all 3 <= n <= n_max.
bool coprimality_report(long n_max);

}  // namespace echo
