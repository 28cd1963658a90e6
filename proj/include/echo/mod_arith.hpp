#pragma once

#include "echo/exact.hpp"

#include <cstdint>
#include <stdexcept>

namespace echo {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse modulo m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Jacobi symbol (a/n) for odd n.
int jacobi(std::uint64_t a, std::uint64_t n);

/// Square root modulo an odd prime p (Tonelli-Shanks); a must be a residue.
std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p);

bool is_prime_u64(std::uint64_t n);

/// Element of Z/pZ carrying its modulus, so curve code can stay generic.
class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

  static ModP from_signed(std::int64_t value, std::uint64_t modulus) {
    std::int64_t r = value % static_cast<std::int64_t>(modulus);
    if (r < 0) r += static_cast<std::int64_t>(modulus);
    return {static_cast<std::uint64_t>(r), modulus};
  }

  /// Reduces a rational number; throws std::domain_error if p divides the denominator.
  static ModP from_rational(const ExactRat& q, std::uint64_t modulus);

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  ModP operator+(const ModP& o) const {
    std::uint64_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    return {s, p_, Raw{}};
  }
  ModP operator-(const ModP& o) const { return {v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_, Raw{}}; }
  ModP operator-() const { return {v_ == 0 ? 0 : p_ - v_, p_, Raw{}}; }
  ModP operator*(const ModP& o) const { return {mulmod(v_, o.v_, p_), p_, Raw{}}; }
  ModP operator/(const ModP& o) const { return {mulmod(v_, invmod(o.v_, p_), p_), p_, Raw{}}; }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }

  bool operator==(const ModP& o) const { return v_ == o.v_ && p_ == o.p_; }

 private:
  struct Raw {};
  ModP(std::uint64_t v, std::uint64_t p, Raw) : v_(v), p_(p) {}

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 1;
};

// Field-generic helpers used by the Weierstrass templates.
inline bool is_zero(const ExactRat& q) { return sgn(q) == 0; }
inline bool is_zero(const ModP& x) { return x.is_zero(); }
inline ExactRat field_const(const ExactRat&, long n) { return ExactRat(n); }
inline ModP field_const(const ModP& like, long n) { return ModP::from_signed(n, like.modulus()); }

}  // namespace echo
