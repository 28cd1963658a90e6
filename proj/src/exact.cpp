#include "echo/exact.hpp"
#include "echo/mod_arith.hpp"

#include <stdexcept>
#include <string>

namespace echo {

std::string to_fraction_string(const ExactRat& q) { return q.get_str(); }

namespace {

ExactInt parse_int(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  ExactInt z;
  std::string buf(s);
  if (buf.front() == '+') buf.erase(0, 1);
  if (z.set_str(buf, 10) != 0) throw std::invalid_argument("malformed integer: " + std::string(s));
  return z;
}

ExactInt pow10(unsigned e) {
  ExactInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

ExactRat parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    ExactInt num = parse_int(text.substr(0, slash));
    ExactInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    ExactRat q(num, den);
    q.canonicalize();
    return q;
  }
  std::string_view mant = text;
  long exp10 = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mant = text.substr(0, e);
    exp10 = parse_int(text.substr(e + 1)).get_si();
  }
  std::string digits;
  bool neg = false;
  std::size_t i = 0;
  if (i < mant.size() && (mant[i] == '-' || mant[i] == '+')) neg = mant[i++] == '-';
  bool seen_dot = false;
  for (; i < mant.size(); ++i) {
    char c = mant[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) --exp10;
    } else {
      throw std::invalid_argument("malformed number: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed number: " + std::string(text));
  ExactRat q(parse_int(digits));
  if (exp10 >= 0) {
    q *= ExactRat(pow10(static_cast<unsigned>(exp10)));
  } else {
    q /= ExactRat(pow10(static_cast<unsigned>(-exp10)));
  }
  q.canonicalize();
  return neg ? ExactRat(-q) : q;
}

bool is_rational_square(const ExactRat& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

unsigned ord2(const ExactInt& n) {
  if (n == 0) throw std::domain_error("ord2 of zero");
  return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
}

ExactRat pow2(int e) {
  ExactInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? ExactRat(p) : ExactRat(ExactInt(1), p);
}

std::string to_fixed_half_even(const ExactRat& q, unsigned places) {
  ExactRat scaled = q * ExactRat(pow10(places));
  ExactInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  ExactRat rem = scaled - ExactRat(fl);
  int c = cmp(rem, ExactRat(1, 2));
  if (c > 0 || (c == 0 && mpz_odd_p(fl.get_mpz_t()))) fl += 1;

  bool neg = fl < 0;
  std::string digits = ExactInt(abs(fl)).get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = neg ? "-" : "";
  out += digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  return out;
}

// ---- modular helpers ----

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("value not invertible modulo " + std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int s = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::uint64_t r = n & 7;
      if (r == 3 || r == 5) s = -s;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (jacobi(a, p) != 1) throw std::domain_error("not a quadratic residue");
  if ((p & 3) == 3) return powmod(a, (p + 1) / 4, p);
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (jacobi(z, p) != -1) ++z;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t x = powmod(a, (q + 1) / 2, p);
  std::uint64_t t = powmod(a, q, p);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return x;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModP ModP::from_rational(const ExactRat& q, std::uint64_t modulus) {
  ExactInt m(static_cast<unsigned long>(modulus));
  ExactInt num, den;
  mpz_fdiv_r(num.get_mpz_t(), q.get_num_mpz_t(), m.get_mpz_t());
  mpz_fdiv_r(den.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t());
  if (den == 0) throw std::domain_error("denominator divisible by p; use an integral model");
  ModP n(num.get_ui(), modulus), d(den.get_ui(), modulus);
  return n / d;
}

}  // namespace echo
