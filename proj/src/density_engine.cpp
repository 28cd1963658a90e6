#include "echo/density_engine.hpp"

#include "echo/kernels/kernels.hpp"

#include "json.hpp"

#include <array>
#include <bit>
#include <stdexcept>
#include <thread>

namespace echo {

namespace {

Mat2 minus_identity(const Mat2& M, unsigned k) {
  const std::uint32_t m = (1u << k) - 1;
  return {(M[0] - 1) & m, M[1] & m, M[2] & m, (M[3] - 1) & m};
}

unsigned ord2_mod(std::uint32_t x, unsigned k) { return x == 0 ? k : static_cast<unsigned>(std::countr_zero(x)); }

bool has_odd_entry(const Mat2& A) { return ((A[0] | A[1] | A[2] | A[3]) & 1) != 0; }

std::uint16_t vector_mask(const Mat2& M4, GroupKind group) {
  return group == GroupKind::Hk ? h2_vector_mask(M4) : std::uint16_t(0xFFFF);
}

std::vector<Mat2> gl_mod4() {
  std::vector<Mat2> out;
  for (std::uint32_t c = 0; c < 256; ++c) {
    Mat2 M{c & 3, c >> 2 & 3, c >> 4 & 3, c >> 6 & 3};
    if (mat_det(M, 2) & 1) out.push_back(M);
  }
  return out;
}

// c + x * X, where X is the unknown average of |det|_2 over all 2-adic matrices.
struct Affine {
  ExactRat c{0}, x{0};
};

Affine lift_average_affine(const Mat2& A, unsigned r) {
  if (r == 0) return {ExactRat(0), ExactRat(1)};
  const std::uint32_t det = mat_det(A, r);
  if (det != 0) return {pow2(-static_cast<int>(ord2_mod(det, r))), ExactRat(0)};
  if (has_odd_entry(A)) return {pow2(-static_cast<int>(r)) * ExactRat(2, 3), ExactRat(0)};
  // A = 2 A', and |im_k(2A')| = |im_{k-1}(A')| / 4 relative to the ambient size.
  Mat2 half{A[0] >> 1, A[1] >> 1, A[2] >> 1, A[3] >> 1};
  Affine sub = lift_average_affine(half, r - 1);
  return {sub.c / 4, sub.x / 4};
}

// X = (1/16) sum over A mod 2 of rho(A, 1), which is linear in X.
const ExactRat& unknown_average() {
  static const ExactRat value = [] {
    Affine sum;
    for (std::uint32_t c = 0; c < 16; ++c) {
      Affine a = lift_average_affine({c & 1, c >> 1 & 1, c >> 2 & 1, c >> 3 & 1}, 1);
      sum.c += a.c;
      sum.x += a.x;
    }
    sum.c /= 16;
    sum.x /= 16;
    ExactRat x = sum.c / (ExactRat(1) - sum.x);
    x.canonicalize();
    return x;
  }();
  return value;
}

}  // namespace

std::vector<Vec2> image_of(const Mat2& A, unsigned k) {
  if (k == 0 || k > kernels::kMaxImageLevel) throw std::invalid_argument("image_of: level out of range");
  const std::uint32_t n = 1u << k;
  const Mat2 Ar = mat_reduce(A, k);
  std::vector<bool> hit(std::size_t(n) * n, false);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      Vec2 w = mat_apply(Ar, {x, y}, k);
      hit[w[0] + n * w[1]] = true;
    }
  std::vector<Vec2> out;
  for (std::uint32_t i = 0; i < n * n; ++i)
    if (hit[i]) out.push_back({i % n, i / n});
  return out;
}

bool colspace_contains(const Vec2& v, const Mat2& A, unsigned k) {
  const std::uint32_t m = (1u << k) - 1;
  std::uint32_t a[2][2] = {{A[0] & m, A[1] & m}, {A[2] & m, A[3] & m}};
  std::uint32_t rhs[2] = {v[0] & m, v[1] & m};

  // Pivot on the least valuation; ties go to the first entry in row-major order.
  unsigned best = k + 1;
  int pr = 0, pc = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      unsigned e = ord2_mod(a[i][j], k);
      if (e < best) {
        best = e;
        pr = i;
        pc = j;
      }
    }
  if (best >= k) return rhs[0] == 0 && rhs[1] == 0;  // A = 0

  if (pr == 1) {
    std::swap(a[0], a[1]);
    std::swap(rhs[0], rhs[1]);
  }
  if (pc == 1) {
    std::swap(a[0][0], a[0][1]);
    std::swap(a[1][0], a[1][1]);
  }
  const unsigned e = best;
  const std::uint32_t unit = a[0][0] >> e;
  std::uint32_t inv = 1;
  for (int i = 0; i < 5; ++i) inv *= 2 - unit * inv;
  // Row 1 -= (a10 / a00) row 0; column 1 -= (a01 / a00) column 0.
  const std::uint32_t rf = ((a[1][0] >> e) * inv) & m;
  a[1][1] = (a[1][1] - rf * a[0][1]) & m;
  rhs[1] = (rhs[1] - rf * rhs[0]) & m;
  a[1][0] = 0;
  const std::uint32_t cf = ((a[0][1] >> e) * inv) & m;
  a[1][1] = (a[1][1] - cf * a[1][0]) & m;
  a[0][1] = 0;

  // Diagonal system: d x = r mod 2^k is solvable iff ord2(r) >= ord2(d).
  return ord2_mod(rhs[0], k) >= e && ord2_mod(rhs[1], k) >= ord2_mod(a[1][1], k);
}

ExactRat f_fraction(const Mat2& M, GroupKind group) {
  const Mat2 M4 = mat_reduce(M, 2);
  if ((mat_det(M4, 2) & 1) == 0) throw std::invalid_argument("f_fraction: matrix not invertible mod 2");
  const std::uint16_t V = vector_mask(M4, group);
  std::vector<Vec2> im = image_of(minus_identity(M4, 2), 2);
  long inside = 0;
  for (const Vec2& w : im) inside += (V >> (w[0] + 4 * w[1])) & 1;
  ExactRat f(inside, static_cast<long>(im.size()));
  f.canonicalize();
  return f;
}

const char* case_label(DensityCase c) {
  switch (c) {
    case DensityCase::Invertible: return "invertible";
    case DensityCase::DetTwo: return "det_two";
    case DensityCase::DetZeroOddEntry: return "det_zero_odd_entry";
    case DensityCase::EvenNonzero: return "even_nonzero";
    case DensityCase::Identity: return "identity";
  }
  return "?";
}

DensityCase classify_case(const Mat2& M) {
  const Mat2 A = minus_identity(mat_reduce(M, 2), 2);
  const std::uint32_t d = mat_det(A, 2);
  if (d & 1) return DensityCase::Invertible;
  if (d == 2) return DensityCase::DetTwo;
  if (has_odd_entry(A)) return DensityCase::DetZeroOddEntry;
  return A == Mat2{0, 0, 0, 0} ? DensityCase::Identity : DensityCase::EvenNonzero;
}

ExactRat lift_average_det(const Mat2& A, unsigned r) {
  Affine a = lift_average_affine(mat_reduce(A, r), r);
  ExactRat out = a.c + a.x * unknown_average();
  out.canonicalize();
  return out;
}

ExactRat mu_case(const Mat2& M, GroupKind group) {
  const Mat2 M4 = mat_reduce(M, 2);
  // Weight 16 / |V_M|: 4 for H (four vectors per matrix), 1 for the full group.
  const int weight = 16 / std::popcount(vector_mask(M4, group));
  ExactRat mu = weight * f_fraction(M4, group) * lift_average_det(minus_identity(M4, 2), 2) / 96;
  mu.canonicalize();
  return mu;
}

DensityReport analytic_density(GroupKind group) {
  DensityReport r;
  r.mode = "analytic";
  r.group = group;
  r.total = 0;
  for (DensityCase c : {DensityCase::Invertible, DensityCase::DetTwo, DensityCase::DetZeroOddEntry,
                        DensityCase::EvenNonzero, DensityCase::Identity}) {
    r.per_case[case_label(c)] = 0;
    r.case_matrices[case_label(c)] = 0;
  }
  for (const Mat2& M : gl_mod4()) {
    ExactRat mu = mu_case(M, group);
    const char* label = case_label(classify_case(M));
    r.per_case[label] += mu;
    if (sgn(mu) != 0) ++r.case_matrices[label];
    r.per_class[M] = mu;
    r.class_resolved[M] = true;
    r.total += mu;
  }
  r.total.canonicalize();
  return r;
}

DensityReport brute_density(unsigned k, GroupKind group, unsigned threads) {
  if (k < 2) throw std::invalid_argument("brute_density: level must be at least 2");
  if (k > 5) throw std::length_error("brute_density: level above the resource cap of 5");

  struct Partial {
    std::array<std::uint64_t, 256> count{}, nonsingular{};
    std::array<unsigned, 256> min_val, max_val;
    Partial() {
      min_val.fill(~0u);
      max_val.fill(0);
    }
  };
  const std::uint32_t n = 1u << k, mask = n - 1;
  std::array<std::uint16_t, 256> vmask{};
  for (std::uint32_t c = 0; c < 256; ++c) {
    Mat2 M4{c & 3, c >> 2 & 3, c >> 4 & 3, c >> 6 & 3};
    if (mat_det(M4, 2) & 1) vmask[c] = vector_mask(M4, group);
  }

  // Work is split by the top-left entry; each slice is summed exactly, so the
  // result does not depend on the thread count.
  std::vector<Partial> partials(n);
  auto run_slice = [&](std::uint32_t a) {
    Partial& P = partials[a];
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          if (((a * d - b * c) & 1) == 0) continue;
          const std::uint32_t cls = (a & 3) | (b & 3) << 2 | (c & 3) << 4 | (d & 3) << 6;
          const kernels::Mat2 A{(a - 1) & mask, b, c, (d - 1) & mask};
          kernels::ImageCounts ic = kernels::image_class_counts(A, k);
          std::uint64_t hits = 0;
          for (int i = 0; i < 16; ++i)
            if (vmask[cls] >> i & 1) hits += ic.by_class[static_cast<std::size_t>(i)];
          const unsigned val = ord2_mod(mat_det({A[0], A[1], A[2], A[3]}, k), k);
          P.count[cls] += hits;
          if (val < k) P.nonsingular[cls] += hits;
          P.min_val[cls] = std::min(P.min_val[cls], val);
          P.max_val[cls] = std::max(P.max_val[cls], val);
        }
  };
  const unsigned nthreads = std::max(1u, std::min(threads, n));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint32_t a = t; a < n; a += nthreads) run_slice(a);
    });
  }
  for (auto& th : pool) th.join();

  Partial total;
  for (const Partial& P : partials)
    for (std::size_t c = 0; c < 256; ++c) {
      total.count[c] += P.count[c];
      total.nonsingular[c] += P.nonsingular[c];
      total.min_val[c] = std::min(total.min_val[c], P.min_val[c]);
      total.max_val[c] = std::max(total.max_val[c], P.max_val[c]);
    }

  ExactInt group_size = ExactInt(static_cast<unsigned long>(gl_order(k))) * ExactInt(1UL << (2 * k));
  if (group == GroupKind::Hk) group_size /= 4;

  DensityReport r;
  r.mode = "brute";
  r.group = group;
  r.level = k;
  r.total = 0;
  r.nonsingular_part = 0;
  for (DensityCase c : {DensityCase::Invertible, DensityCase::DetTwo, DensityCase::DetZeroOddEntry,
                        DensityCase::EvenNonzero, DensityCase::Identity}) {
    r.per_case[case_label(c)] = 0;
    r.case_matrices[case_label(c)] = 0;
  }
  for (std::uint32_t c = 0; c < 256; ++c) {
    Mat2 M4{c & 3, c >> 2 & 3, c >> 4 & 3, c >> 6 & 3};
    if ((mat_det(M4, 2) & 1) == 0) continue;
    ExactRat part(ExactInt(static_cast<unsigned long>(total.count[c])), group_size);
    part.canonicalize();
    ExactRat ns(ExactInt(static_cast<unsigned long>(total.nonsingular[c])), group_size);
    ns.canonicalize();
    const char* label = case_label(classify_case(M4));
    r.per_case[label] += part;
    if (total.count[c] != 0) ++r.case_matrices[label];
    r.per_class[M4] = part;
    r.class_resolved[M4] = total.min_val[c] == total.max_val[c] && total.max_val[c] < k;
    r.total += part;
    r.nonsingular_part += ns;
  }
  r.total.canonicalize();
  r.nonsingular_part.canonicalize();
  return r;
}

std::string to_json(const DensityReport& r) {
  nlohmann::ordered_json j;
  j["mode"] = r.mode;
  j["group"] = r.group == GroupKind::Hk ? "Hk" : "full";
  if (r.mode == "brute") j["level"] = r.level;
  j["total"] = to_fraction_string(r.total);
  nlohmann::ordered_json cases = nlohmann::ordered_json::object();
  for (const auto& [label, v] : r.per_case) {
    cases[label] = {{"value", to_fraction_string(v)}, {"matrices", r.case_matrices.at(label)}};
  }
  j["per_case"] = cases;
  if (r.mode == "brute") j["nonsingular_part"] = to_fraction_string(r.nonsingular_part);
  return j.dump(2) + "\n";
}

}  // namespace echo
