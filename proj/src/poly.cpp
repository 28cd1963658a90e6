#include "echo/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace echo {

RatPoly trim(RatPoly p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

int degree(const RatPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (sgn(p[static_cast<std::size_t>(i)]) != 0) return i;
  return -1;
}

ExactRat evaluate(const RatPoly& p, const ExactRat& x) {
  ExactRat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return trim(d);
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, ExactRat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return trim(out);
}

RatPoly poly_rem(const RatPoly& a, const RatPoly& b) {
  RatPoly r = trim(a);
  const RatPoly d = trim(b);
  if (d.empty()) throw std::domain_error("polynomial division by zero");
  const int db = degree(d);
  while (degree(r) >= db) {
    const int dr = degree(r);
    ExactRat q = r[static_cast<std::size_t>(dr)] / d[static_cast<std::size_t>(db)];
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= q * d[static_cast<std::size_t>(i)];
    r = trim(r);
  }
  return r;
}

std::vector<ExactInt> primitive_part(const RatPoly& p0) {
  RatPoly p = trim(p0);
  if (p.empty()) throw std::invalid_argument("primitive_part of the zero polynomial");
  ExactInt den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<ExactInt> out;
  ExactInt content = 0;
  for (const auto& c : p) {
    ExactInt v = c.get_num() * (den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (out.back() < 0) content = -content;
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
  return out;
}

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  std::vector<RatPoly> chain{trim(p), derivative(p)};
  while (degree(chain.back()) > 0) {
    RatPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(r);
  }
  return chain;
}

std::size_t sign_changes(const std::vector<RatPoly>& chain, const ExactRat& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sgn(evaluate(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Integer roots of a monic integer polynomial: every rational root is an
// integer, so isolate real roots between half-integers and test the integer
// inside each unit interval that still holds a root.
void integer_roots(const RatPoly& g, const std::vector<RatPoly>& chain, ExactInt lo2, ExactInt hi2,
                   std::size_t count, std::vector<ExactRat>& out) {
  // Interval (lo2/2, hi2/2] with odd lo2, hi2.
  if (count == 0) return;
  if (hi2 - lo2 == 2) {
    ExactRat m(ExactInt((lo2 + 1) / 2));
    if (sgn(evaluate(g, m)) == 0) out.push_back(m);
    return;
  }
  ExactInt mid2 = (lo2 + hi2) / 2;
  if (mid2 % 2 == 0) mid2 += 1;  // keep endpoints odd (half-integers)
  std::size_t left = sign_changes(chain, ExactRat(lo2, 2)) - sign_changes(chain, ExactRat(mid2, 2));
  integer_roots(g, chain, lo2, mid2, left, out);
  integer_roots(g, chain, mid2, hi2, count - left, out);
}

}  // namespace

std::size_t sturm_count(const RatPoly& p, const ExactRat& lo, const ExactRat& hi) {
  auto chain = sturm_chain(p);
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

std::vector<ExactRat> rational_roots(const RatPoly& p0) {
  RatPoly p = trim(p0);
  if (p.empty()) throw std::invalid_argument("rational_roots of the zero polynomial");
  std::vector<ExactRat> roots;
  // Factor out x^j.
  std::size_t shift = 0;
  while (sgn(p[shift]) == 0) ++shift;
  if (shift > 0) {
    roots.emplace_back(0);
    p.erase(p.begin(), p.begin() + static_cast<long>(shift));
  }
  const int n = degree(p);
  if (n >= 1) {
    // G(y) = c^{n-1} F(y / c) is monic with integer coefficients, F = primitive part.
    std::vector<ExactInt> F = primitive_part(p);
    const ExactInt& c = F.back();
    RatPoly G(static_cast<std::size_t>(n) + 1);
    ExactInt scale = 1;
    for (int i = n; i >= 0; --i) {
      if (i == n) {
        G[static_cast<std::size_t>(i)] = 1;
      } else {
        G[static_cast<std::size_t>(i)] = ExactRat(F[static_cast<std::size_t>(i)] * scale);
        scale *= c;
      }
    }
    // Cauchy bound 1 + max |g_i|; start from odd half-integer endpoints.
    ExactInt bound = 0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, ExactInt(abs(G[static_cast<std::size_t>(i)].get_num())));
    bound += 2;
    ExactInt lo2 = -2 * bound - 1, hi2 = 2 * bound + 1;
    auto chain = sturm_chain(G);
    std::size_t count = sign_changes(chain, ExactRat(lo2, 2)) - sign_changes(chain, ExactRat(hi2, 2));
    std::vector<ExactRat> ys;
    integer_roots(G, chain, lo2, hi2, count, ys);
    for (const auto& y : ys) {
      ExactRat x = y / ExactRat(c);
      x.canonicalize();
      if (sgn(evaluate(p, x)) != 0) throw std::logic_error("rational_roots: candidate failed verification");
      roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

ExactRat resultant(const RatPoly& a0, const RatPoly& b0) {
  const RatPoly a = trim(a0), b = trim(b0);
  const int m = degree(a), n = degree(b);
  if (m < 0 || n < 0) return 0;
  const int size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<ExactRat>> S(static_cast<std::size_t>(size), std::vector<ExactRat>(static_cast<std::size_t>(size), ExactRat(0)));
  // Rows hold shifted coefficient lists, highest degree first.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) S[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a[static_cast<std::size_t>(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) S[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b[static_cast<std::size_t>(n - j)];

  ExactRat det = 1;
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int r = col; r < size; ++r)
      if (sgn(S[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(S[static_cast<std::size_t>(piv)], S[static_cast<std::size_t>(col)]);
      det = -det;
    }
    const auto& prow = S[static_cast<std::size_t>(col)];
    det *= prow[static_cast<std::size_t>(col)];
    for (int r = col + 1; r < size; ++r) {
      auto& row = S[static_cast<std::size_t>(r)];
      if (sgn(row[static_cast<std::size_t>(col)]) == 0) continue;
      ExactRat f = row[static_cast<std::size_t>(col)] / prow[static_cast<std::size_t>(col)];
      for (int c = col; c < size; ++c) row[static_cast<std::size_t>(c)] -= f * prow[static_cast<std::size_t>(c)];
    }
  }
  det.canonicalize();
  return det;
}

ExactRat discriminant(const RatPoly& p0) {
  const RatPoly p = trim(p0);
  const int n = degree(p);
  if (n < 1) throw std::invalid_argument("discriminant needs degree at least 1");
  ExactRat d = resultant(p, derivative(p)) / p[static_cast<std::size_t>(n)];
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  d.canonicalize();
  return d;
}

bool quartic_irreducible(const RatPoly& p0) {
  const RatPoly p = trim(p0);
  if (degree(p) != 4) throw std::invalid_argument("quartic_irreducible: degree must be 4");
  if (!rational_roots(p).empty()) return false;

  // Monic integer model y^4 + P y^3 + Q y^2 + R y + S; a rational quadratic
  // split lifts to an integral one by Gauss's lemma.
  std::vector<ExactInt> F = primitive_part(p);
  const ExactInt c = F[4];
  const ExactInt P = F[3], Q = F[2] * c, R = F[1] * c * c, S = F[0] * c * c * c;

  // y^2 + a y + b times y^2 + g y + d with theta = b + d a root of the resolvent.
  RatPoly resolvent{ExactRat(-(P * P * S - 4 * Q * S + R * R)), ExactRat(P * R - 4 * S), ExactRat(-Q), ExactRat(1)};
  const RatPoly G{ExactRat(S), ExactRat(R), ExactRat(Q), ExactRat(P), ExactRat(1)};
  auto isqrt_exact = [](const ExactInt& v, ExactInt& root) {
    if (v < 0 || !mpz_perfect_square_p(v.get_mpz_t())) return false;
    mpz_sqrt(root.get_mpz_t(), v.get_mpz_t());
    return true;
  };
  for (const ExactRat& theta_r : rational_roots(resolvent)) {
    if (theta_r.get_den() != 1) continue;
    const ExactInt theta = theta_r.get_num();
    ExactInt root;
    if (!isqrt_exact(theta * theta - 4 * S, root)) continue;
    if (mpz_odd_p(ExactInt(theta + root).get_mpz_t())) continue;
    const ExactInt b = (theta + root) / 2, d = (theta - root) / 2;
    std::vector<std::pair<ExactInt, ExactInt>> ag;
    if (b != d) {
      ExactInt num = R - P * b, den = d - b;
      if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) continue;
      ExactInt a = num / den;
      ag.emplace_back(a, P - a);
    } else {
      ExactInt disc = P * P - 4 * (Q - 2 * b);
      if (!isqrt_exact(disc, root) || mpz_odd_p(ExactInt(P + root).get_mpz_t())) continue;
      ag.emplace_back((P + root) / 2, (P - root) / 2);
    }
    for (const auto& [a, g] : ag) {
      RatPoly prod = poly_mul({ExactRat(b), ExactRat(a), ExactRat(1)}, {ExactRat(d), ExactRat(g), ExactRat(1)});
      if (prod == G) return false;
    }
  }
  return true;
}

std::string to_string(const RatPoly& p0, char var) {
  const RatPoly p = trim(p0);
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(p); i >= 0; --i) {
    const ExactRat& c = p[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    ExactRat mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || i == 0) os << to_fraction_string(mag) << (i > 0 ? "*" : "");
    if (i > 0) os << var;
    if (i > 1) os << '^' << i;
    first = false;
  }
  return os.str();
}

}  // namespace echo
