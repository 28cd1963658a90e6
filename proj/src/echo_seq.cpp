#include "echo/echo_seq.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace echo {

namespace {

const long kPrimarySeed[] = {1, 1, 2, 1};
const long kAppendixSeed[] = {1, 1, 2, 1, -3, -7, -17};

long mod3(long n) { return ((n % 3) + 3) % 3; }

ExactInt exact_div(const ExactInt& num, const ExactInt& den, long n) {
  if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw std::logic_error("inexact division in recurrence at n = " + std::to_string(n));
  }
  ExactInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

EchoSeq::EchoSeq(Definition def) : def_(def) {
  if (def_ == Definition::Primary) {
    for (long v : kPrimarySeed) fwd_.emplace_back(v);
  } else {
    for (long v : kAppendixSeed) fwd_.emplace_back(v);
  }
}

const ExactInt& EchoSeq::term(long n) {
  std::lock_guard lock(mu_);
  if (n >= 0) {
    if (static_cast<std::size_t>(n) >= fwd_.size()) extend_forward(n);
    return fwd_[static_cast<std::size_t>(n)];
  }
  std::size_t slot = static_cast<std::size_t>(-n - 1);
  if (slot >= bwd_.size()) extend_backward(n);
  return bwd_[slot];
}

void EchoSeq::warm(long lo, long hi) {
  term(lo);
  term(hi);
}

// Callers hold mu_. Reads below go straight to the deques to avoid relocking.
void EchoSeq::extend_forward(long n) {
  auto at = [this](long i) -> const ExactInt& { return fwd_[static_cast<std::size_t>(i)]; };
  for (long i = static_cast<long>(fwd_.size()); i <= n; ++i) {
    ExactInt num;
    ExactInt den;
    if (def_ == Definition::Primary) {
      long c = mod3(i) == 0 ? 3 : 1;
      num = at(i - 1) * at(i - 3) - c * at(i - 2) * at(i - 2);
      den = at(i - 4);
    } else {
      num = -at(i - 6) * at(i - 1) + 5 * at(i - 4) * at(i - 3);
      den = at(i - 7);
    }
    fwd_.push_back(exact_div(num, den, i));
  }
}

void EchoSeq::extend_backward(long n) {
  // Values at index j: j >= 0 from fwd_, j < 0 from bwd_.
  auto at = [this](long j) -> const ExactInt& {
    if (j >= 0) {
      if (static_cast<std::size_t>(j) >= fwd_.size()) extend_forward(j);
      return fwd_[static_cast<std::size_t>(j)];
    }
    return bwd_[static_cast<std::size_t>(-j - 1)];
  };
  for (long i = -static_cast<long>(bwd_.size()) - 1; i >= n; --i) {
    ExactInt num;
    ExactInt den;
    if (def_ == Definition::Primary) {
      long c = mod3(i) == 2 ? 3 : 1;
      num = at(i + 3) * at(i + 1) - c * at(i + 2) * at(i + 2);
      den = at(i + 4);
    } else {
      num = -at(i + 1) * at(i + 6) + 5 * at(i + 3) * at(i + 4);
      den = at(i + 7);
    }
    bwd_.push_back(exact_div(num, den, i));
  }
}

EchoSeq& primary_sequence() {
  static EchoSeq seq(Definition::Primary);
  return seq;
}

namespace {
EchoSeq& appendix_sequence() {
  static EchoSeq seq(Definition::Appendix);
  return seq;
}
}  // namespace

ExactInt term(long n) { return primary_sequence().term(n); }
ExactInt term_alt(long n) { return appendix_sequence().term(n); }

ExactInt h_value(long n) {
  EchoSeq& s = primary_sequence();
  const ExactInt b3 = s.term(n - 3), b2 = s.term(n - 2), b1 = s.term(n - 1), b0 = s.term(n);
  ExactInt t1 = b3 * b3 * b0 * b0;
  ExactInt t2 = b3 * b1 * b1 * b1;
  ExactInt t3 = b2 * b2 * b2 * b0;
  ExactInt t4 = b2 * b2 * b1 * b1;
  switch (mod3(n)) {
    case 0: return t1 + t2 + 3 * t3 - 3 * t4;
    case 1: return 3 * t1 + t2 + t3 - t4;
    default: return t1 + 3 * t2 + t3 - 3 * t4;
  }
}

ExactInt d_value(long n) {
  EchoSeq& s = primary_sequence();
  return s.term(n) * s.term(n + 5) - s.term(n + 2) * s.term(n + 3);
}

ExactRat d_ratio(long n) {
  EchoSeq& s = primary_sequence();
  ExactInt den = s.term(n + 1) * s.term(n + 4);
  if (den == 0) throw std::domain_error("d_ratio: vanishing term at n = " + std::to_string(n));
  ExactRat r(d_value(n), den);
  r.canonicalize();
  return r;
}

ResidueCycle residue_cycle(long m, long search_bound) {
  if (m <= 0) throw std::invalid_argument("residue_cycle: modulus must be positive");
  constexpr long kWidth = 7;
  EchoSeq& s = primary_sequence();
  ExactInt mz(m);
  auto res = [&](long n) {
    ExactInt r;
    mpz_fdiv_r(r.get_mpz_t(), s.term(n).get_mpz_t(), mz.get_mpz_t());
    return r.get_si();
  };

  // Residues mod m satisfy a recurrence whose division may not be defined
  // mod m, so periodicity is detected on the observed residues: the first
  // window of width 7 that recurs marks the period, and it is then confirmed
  // over several further periods.
  std::vector<long> r;
  std::map<std::vector<long>, long> seen;
  for (long n = 0; n < search_bound; ++n) {
    r.push_back(res(n));
    if (n + 1 < kWidth) continue;
    std::vector<long> window(r.end() - kWidth, r.end());
    long start = n + 1 - kWidth;
    auto [it, fresh] = seen.emplace(window, start);
    if (fresh) continue;
    long period = start - it->second;
    if (it->second != 0) continue;  // purely periodic from index 0 is expected
    bool ok = true;
    for (long j = 0; j < 4 * period && ok; ++j) ok = res(start + j) == r[static_cast<std::size_t>(j % period)];
    if (!ok) continue;
    ResidueCycle out;
    out.modulus = m;
    out.period = period;
    out.pattern.assign(r.begin(), r.begin() + period);
    for (long v : out.pattern) out.contains_zero = out.contains_zero || v == 0;
    return out;
  }
  throw std::runtime_error("residue_cycle: no period found for modulus " + std::to_string(m));
}

bool coprimality_report(long n_max) {
  EchoSeq& s = primary_sequence();
  ExactInt g;
  for (long n = 3; n <= n_max; ++n) {
    for (long i = 1; i <= 3; ++i) {
      mpz_gcd(g.get_mpz_t(), s.term(n).get_mpz_t(), s.term(n - i).get_mpz_t());
      if (g != 1) return false;
    }
  }
  return true;
}

}  // namespace echo
