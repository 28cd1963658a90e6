#include "echo/agl_group.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace echo {

// ---- matrices mod 2^k ----

Mat2 mat_mul(const Mat2& A, const Mat2& B, unsigned k) {
  const std::uint32_t m = (1u << k) - 1;
  return {(A[0] * B[0] + A[1] * B[2]) & m, (A[0] * B[1] + A[1] * B[3]) & m, (A[2] * B[0] + A[3] * B[2]) & m,
          (A[2] * B[1] + A[3] * B[3]) & m};
}

Vec2 mat_apply(const Mat2& A, const Vec2& v, unsigned k) {
  const std::uint32_t m = (1u << k) - 1;
  return {(A[0] * v[0] + A[1] * v[1]) & m, (A[2] * v[0] + A[3] * v[1]) & m};
}

std::uint32_t mat_det(const Mat2& A, unsigned k) {
  const std::uint32_t m = (1u << k) - 1;
  return (A[0] * A[3] - A[1] * A[2]) & m;
}

Mat2 mat_identity() { return {1, 0, 0, 1}; }

Mat2 mat_reduce(const Mat2& A, unsigned k) {
  const std::uint32_t m = (1u << k) - 1;
  return {A[0] & m, A[1] & m, A[2] & m, A[3] & m};
}

// ---- elements ----

AglCode encode(const AglElem& e) {
  const unsigned k = e.k;
  return AglCode(e.v[0]) | AglCode(e.v[1]) << k | AglCode(e.M[0]) << 2 * k | AglCode(e.M[1]) << 3 * k |
         AglCode(e.M[2]) << 4 * k | AglCode(e.M[3]) << 5 * k;
}

AglElem decode(AglCode c, unsigned k) {
  const AglCode m = (AglCode(1) << k) - 1;
  AglElem e;
  e.k = k;
  e.v = {std::uint32_t(c & m), std::uint32_t(c >> k & m)};
  e.M = {std::uint32_t(c >> 2 * k & m), std::uint32_t(c >> 3 * k & m), std::uint32_t(c >> 4 * k & m),
         std::uint32_t(c >> 5 * k & m)};
  return e;
}

AglElem agl_identity(unsigned k) { return AglElem{k, {0, 0}, mat_identity()}; }

AglElem compose(const AglElem& a, const AglElem& b) {
  if (a.k != b.k) throw std::invalid_argument("compose: level mismatch");
  const std::uint32_t m = (1u << a.k) - 1;
  Vec2 mv = mat_apply(a.M, b.v, a.k);
  return AglElem{a.k, {(a.v[0] + mv[0]) & m, (a.v[1] + mv[1]) & m}, mat_mul(a.M, b.M, a.k)};
}

AglElem inverse(const AglElem& a) {
  const unsigned k = a.k;
  const std::uint32_t m = (1u << k) - 1;
  std::uint32_t det = mat_det(a.M, k);
  if ((det & 1) == 0) throw std::domain_error("inverse: matrix not invertible");
  // Odd d: Newton iteration x <- x (2 - d x) doubles the correct low bits.
  std::uint32_t inv = 1;
  for (int i = 0; i < 5; ++i) inv = inv * (2 - det * inv);
  inv &= m;
  Mat2 Mi{(a.M[3] * inv) & m, (0u - a.M[1] * inv) & m, (0u - a.M[2] * inv) & m, (a.M[0] * inv) & m};
  Vec2 w = mat_apply(Mi, a.v, k);
  return AglElem{k, {(0u - w[0]) & m, (0u - w[1]) & m}, Mi};
}

AglElem reduce_level(const AglElem& a, unsigned k) {
  if (k > a.k || k == 0) throw std::invalid_argument("reduce_level: bad target level");
  const std::uint32_t m = (1u << k) - 1;
  return AglElem{k, {a.v[0] & m, a.v[1] & m}, mat_reduce(a.M, k)};
}

std::array<std::uint32_t, 9> embed(const AglElem& a) {
  return {a.M[0], a.M[1], a.v[0], a.M[2], a.M[3], a.v[1], 0, 0, 1};
}

// ---- closure ----

namespace {

// Membership set over codes: a flat bitset while 2^{6k} is small, otherwise a hash set.
class CodeSet {
 public:
  explicit CodeSet(unsigned k) : dense_(6 * k <= 24) {
    if (dense_) bits_.assign((std::size_t(1) << (6 * k)) / 64 + 1, 0);
  }
  bool insert(AglCode c) {
    if (!dense_) return hash_.insert(c).second;
    std::uint64_t& w = bits_[c >> 6];
    std::uint64_t bit = std::uint64_t(1) << (c & 63);
    if (w & bit) return false;
    w |= bit;
    return true;
  }
  bool contains(AglCode c) const { return dense_ ? (bits_[c >> 6] >> (c & 63) & 1) != 0 : hash_.count(c) != 0; }
  void erase_all(const std::vector<AglCode>& codes) {
    if (!dense_) {
      hash_.clear();
      return;
    }
    for (AglCode c : codes) bits_[c >> 6] = 0;
  }

 private:
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<AglCode> hash_;
};

// Right-multiplication BFS from the identity. `reject` may veto an element,
// aborting the closure (returns false).
template <class Reject>
bool bfs_closure(const std::vector<AglElem>& gens, unsigned k, std::size_t max_order, CodeSet& seen,
                 std::vector<AglCode>& out, Reject reject) {
  out.clear();
  AglElem id = agl_identity(k);
  out.push_back(encode(id));
  seen.insert(out.back());
  for (std::size_t i = 0; i < out.size(); ++i) {
    AglElem x = decode(out[i], k);
    for (const AglElem& g : gens) {
      AglElem y = compose(x, g);
      AglCode c = encode(y);
      if (!seen.insert(c)) continue;
      out.push_back(c);
      if (reject(y) || out.size() > max_order) return false;
    }
  }
  return true;
}

unsigned common_level(const std::vector<AglElem>& gens) {
  if (gens.empty()) throw std::invalid_argument("closure: empty generator list");
  unsigned k = gens.front().k;
  for (const auto& g : gens) {
    if (g.k != k) throw std::invalid_argument("closure: generators at different levels");
    if ((mat_det(g.M, k) & 1) == 0) throw std::invalid_argument("closure: generator with even determinant");
  }
  return k;
}

}  // namespace

bool SubgroupRep::contains(const AglElem& e) const {
  return e.k == level && std::binary_search(elements.begin(), elements.end(), encode(e));
}

SubgroupRep closure(const std::vector<AglElem>& gens, std::size_t max_order) {
  unsigned k = common_level(gens);
  CodeSet seen(k);
  SubgroupRep G;
  G.level = k;
  G.generators = gens;
  if (!bfs_closure(gens, k, max_order, seen, G.elements, [](const AglElem&) { return false; })) {
    throw std::length_error("closure exceeds the configured order cap of " + std::to_string(max_order));
  }
  std::sort(G.elements.begin(), G.elements.end());
  return G;
}

std::vector<AglElem> agl_generators(unsigned k) {
  // A translation plus transvections, a sign flip and diag(5, 1), which
  // together generate GL2(Z/2^k) (5 generates the units that are 1 mod 4).
  const std::uint32_t m = (1u << k) - 1;
  return {
      AglElem{k, {1, 0}, mat_identity()},
      AglElem{k, {0, 0}, {1, 1, 0, 1}},
      AglElem{k, {0, 0}, {1, 0, 1, 1}},
      AglElem{k, {0, 0}, {m, 0, 0, 1}},
      AglElem{k, {0, 0}, {5u & m, 0, 0, 1}},
  };
}

SubgroupRep full_group(unsigned k) {
  if (k > kMaxClosureLevel) throw std::length_error("full_group: level above the materialization cap");
  return closure(agl_generators(k));
}

bool is_kinetic(const SubgroupRep& G) {
  const unsigned k = G.level;
  std::set<Mat2> mats;
  std::set<AglCode> mod2;
  for (AglCode c : G.elements) {
    AglElem e = decode(c, k);
    mats.insert(e.M);
    mod2.insert(encode(reduce_level(e, 1)));
  }
  return mats.size() == gl_order(k) && mod2.size() == agl_order(1);
}

// ---- H_k ----

std::vector<AglElem> h2_generators() {
  return {AglElem{2, {1, 2}, {2, 1, 3, 0}}, AglElem{2, {3, 3}, {2, 3, 1, 3}}};
}

namespace {

const std::vector<bool>& h2_table() {
  static const std::vector<bool> table = [] {
    std::vector<bool> t(std::size_t(1) << 12, false);
    for (AglCode c : closure(h2_generators()).elements) t[c] = true;
    return t;
  }();
  return table;
}

}  // namespace

bool in_hk(const AglElem& e) {
  if (e.k < 2) throw std::invalid_argument("in_hk: level must be at least 2");
  return h2_table()[encode(reduce_level(e, 2))];
}

SubgroupRep build_hk(unsigned k) {
  if (k < 2) throw std::invalid_argument("build_hk: level must be at least 2");
  if (k > kMaxClosureLevel) throw std::length_error("build_hk: level above the materialization cap");
  SubgroupRep H;
  H.level = k;
  // Generators: lifts of the level-2 generators and the kernel of reduction mod 4.
  for (const AglElem& g : h2_generators()) H.generators.push_back(AglElem{k, g.v, g.M});
  if (k > 2) {
    const std::uint32_t m = (1u << k) - 1;
    H.generators.push_back(AglElem{k, {4, 0}, mat_identity()});
    H.generators.push_back(AglElem{k, {0, 4}, mat_identity()});
    H.generators.push_back(AglElem{k, {0, 0}, {5, 0, 0, 1}});
    H.generators.push_back(AglElem{k, {0, 0}, {1, 4, 0, 1}});
    H.generators.push_back(AglElem{k, {0, 0}, {1, 0, 4, 1}});
    H.generators.push_back(AglElem{k, {0, 0}, {1, 0, 0, 5u & m}});
  }
  const AglCode total = AglCode(1) << (6 * k);
  for (AglCode c = 0; c < total; ++c) {
    AglElem e = decode(c, k);
    if ((mat_det(e.M, k) & 1) && in_hk(e)) H.elements.push_back(c);
  }
  return H;
}

std::uint16_t h2_vector_mask(const Mat2& M4) {
  std::uint16_t mask = 0;
  for (std::uint32_t v1 = 0; v1 < 4; ++v1) {
    for (std::uint32_t v0 = 0; v0 < 4; ++v0) {
      if (h2_table()[encode(AglElem{2, {v0, v1}, mat_reduce(M4, 2)})]) mask |= std::uint16_t(1u << (v0 + 4 * v1));
    }
  }
  return mask;
}

// ---- conjugacy ----

std::vector<AglCode> conjugate_elements(const SubgroupRep& G, const AglElem& g) {
  AglElem gi = inverse(g);
  std::vector<AglCode> out;
  out.reserve(G.elements.size());
  for (AglCode c : G.elements) out.push_back(encode(compose(compose(g, decode(c, G.level)), gi)));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::set<std::vector<AglCode>> conjugation_orbit(const SubgroupRep& G) {
  std::vector<AglElem> gens = agl_generators(G.level);
  std::set<std::vector<AglCode>> orbit{G.elements};
  std::vector<std::vector<AglCode>> frontier{G.elements};
  while (!frontier.empty()) {
    std::vector<std::vector<AglCode>> next;
    for (const auto& elems : frontier) {
      SubgroupRep H;
      H.level = G.level;
      H.elements = elems;
      for (const AglElem& g : gens) {
        auto c = conjugate_elements(H, g);
        if (orbit.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  return orbit;
}

}  // namespace

ConjugacyClass conjugacy_class(const SubgroupRep& G) {
  auto orbit = conjugation_orbit(G);
  ConjugacyClass cls;
  cls.representative = G;
  cls.canonical = *orbit.begin();
  cls.conjugates = orbit.size();
  return cls;
}

bool are_conjugate(const SubgroupRep& A, const SubgroupRep& B) {
  if (A.level != B.level || A.order() != B.order()) return false;
  return conjugation_orbit(A).count(B.elements) != 0;
}

// ---- classification ----

namespace {

// Deduplicates subgroups up to conjugacy, computing each orbit once.
class ClassCollector {
 public:
  void add(SubgroupRep G) {
    if (covered_.count(G.elements)) return;
    auto orbit = conjugation_orbit(G);
    ConjugacyClass cls;
    cls.canonical = *orbit.begin();
    cls.conjugates = orbit.size();
    cls.representative = std::move(G);
    for (const auto& e : orbit) covered_.insert(e);
    classes_.push_back(std::move(cls));
  }

  std::vector<ConjugacyClass> take() {
    std::sort(classes_.begin(), classes_.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
      if (a.representative.order() != b.representative.order()) {
        return a.representative.order() > b.representative.order();
      }
      return a.canonical < b.canonical;
    });
    return std::move(classes_);
  }

 private:
  std::set<std::vector<AglCode>> covered_;
  std::vector<ConjugacyClass> classes_;
};

// Two elements generating G, found by a seeded search.
std::pair<AglElem, AglElem> generating_pair(const SubgroupRep& G) {
  std::mt19937_64 rng(0x5eed + G.order());
  for (int attempt = 0; attempt < 100000; ++attempt) {
    AglElem a = decode(G.elements[rng() % G.order()], G.level);
    AglElem b = decode(G.elements[rng() % G.order()], G.level);
    if (closure({a, b}, G.order()).order() == G.order()) return {a, b};
  }
  throw std::runtime_error("no generating pair found");
}

std::vector<Mat2> gl_elements(unsigned k) {
  std::vector<Mat2> out;
  const std::uint32_t n = 1u << k;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d)
          if ((a * d - b * c) & 1) out.push_back({a, b, c, d});
  return out;
}

std::vector<ConjugacyClass> classify_level2() {
  const unsigned k = 2;
  const std::vector<Mat2> gl = gl_elements(k);

  // GL-stable subgroups W of (Z/4)^2, as 16-bit masks over v0 + 4 v1.
  std::set<std::uint16_t> stable;
  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      std::uint16_t W = 0;
      for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t y = 0; y < 4; ++y) {
          std::uint32_t v0 = (x * (a & 3) + y * (b & 3)) & 3, v1 = (x * (a >> 2) + y * (b >> 2)) & 3;
          W |= std::uint16_t(1u << (v0 + 4 * v1));
        }
      bool ok = true;
      for (const Mat2& M : gl) {
        for (std::uint32_t i = 0; i < 16 && ok; ++i) {
          if (!(W >> i & 1)) continue;
          Vec2 w = mat_apply(M, {i & 3, i >> 2}, k);
          ok = (W >> (w[0] + 4 * w[1]) & 1) != 0;
        }
        if (!ok) break;
      }
      if (ok) stable.insert(W);
    }
  }

  // A generating pair of GL2(Z/4).
  Mat2 g1{}, g2{};
  bool found = false;
  for (std::size_t i = 0; i < gl.size() && !found; ++i) {
    for (std::size_t j = i + 1; j < gl.size() && !found; ++j) {
      if (closure({AglElem{k, {0, 0}, gl[i]}, AglElem{k, {0, 0}, gl[j]}}).order() == gl.size()) {
        g1 = gl[i];
        g2 = gl[j];
        found = true;
      }
    }
  }
  if (!found) throw std::logic_error("GL2(Z/4) has no generating pair");

  ClassCollector collector;
  std::set<std::vector<AglCode>> seen;
  for (std::uint16_t W : stable) {
    std::vector<AglElem> wgens;
    for (std::uint32_t i = 0; i < 16; ++i)
      if (W >> i & 1 && i != 0) wgens.push_back(AglElem{k, {i & 3, i >> 2}, mat_identity()});
    for (std::uint32_t v1 = 0; v1 < 16; ++v1) {
      for (std::uint32_t v2 = 0; v2 < 16; ++v2) {
        std::vector<AglElem> gens = wgens;
        gens.push_back(AglElem{k, {v1 & 3, v1 >> 2}, g1});
        gens.push_back(AglElem{k, {v2 & 3, v2 >> 2}, g2});
        SubgroupRep G = closure(gens);
        std::uint16_t trans = 0;
        for (AglCode c : G.elements) {
          AglElem e = decode(c, k);
          if (e.M == mat_identity()) trans |= std::uint16_t(1u << (e.v[0] + 4 * e.v[1]));
        }
        if (trans != W || !is_kinetic(G)) continue;
        if (!seen.insert(G.elements).second) continue;
        collector.add(std::move(G));
      }
    }
  }
  return collector.take();
}

// Kernel of reduction AGL2(Z/8) -> AGL2(Z/4): (4a, I + 4B), coordinates
// (a0, a1, b00, b01, b10, b11) packed into 6 bits.
AglElem kernel_elem(std::uint32_t n) {
  auto bit = [n](int i) { return (n >> i) & 1u; };
  return AglElem{3, {4 * bit(0), 4 * bit(1)}, {1 + 4 * bit(2), 4 * bit(3), 4 * bit(4), 1 + 4 * bit(5)}};
}

int kernel_coords(const AglElem& e) {
  if ((e.v[0] & 3) || (e.v[1] & 3) || (e.M[0] & 3) != 1 || (e.M[1] & 3) || (e.M[2] & 3) || (e.M[3] & 3) != 1) {
    return -1;
  }
  return int((e.v[0] >> 2) | (e.v[1] >> 2) << 1 | (e.M[0] >> 2) << 2 | (e.M[1] >> 2) << 3 | (e.M[2] >> 2) << 4 |
             (e.M[3] >> 2) << 5);
}

AglElem lift_to_8(const AglElem& e) { return AglElem{3, e.v, e.M}; }

std::uint64_t span_mask(std::uint64_t W, std::uint32_t n) {
  std::uint64_t out = W;
  for (std::uint32_t w = 0; w < 64; ++w)
    if (W >> w & 1) out |= std::uint64_t(1) << (w ^ n);
  return out;
}

std::vector<ConjugacyClass> classify_level3() {
  const unsigned k = 3;
  // Every subspace of F_2^6, as 64-bit membership masks.
  std::set<std::uint64_t> subspaces{1};
  std::vector<std::uint64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t W : frontier)
      for (std::uint32_t n = 1; n < 64; ++n)
        if (!(W >> n & 1)) {
          std::uint64_t S = span_mask(W, n);
          if (subspaces.insert(S).second) next.push_back(S);
        }
    frontier = std::move(next);
  }

  ClassCollector collector;
  std::set<std::vector<AglCode>> seen;
  CodeSet scratch(k);
  std::vector<AglCode> elems;

  for (const ConjugacyClass& image : classify_level2()) {
    const SubgroupRep& Q = image.representative;
    auto [q1, q2] = generating_pair(Q);
    const AglElem base1 = lift_to_8(q1), base2 = lift_to_8(q2);

    // Conjugation by a lift of q on N depends only on q; record it as a map on 6-bit vectors.
    std::array<std::array<std::uint32_t, 64>, 2> action{};
    for (int gi = 0; gi < 2; ++gi) {
      const AglElem& g = gi == 0 ? base1 : base2;
      AglElem ginv = inverse(g);
      for (std::uint32_t n = 0; n < 64; ++n) {
        int c = kernel_coords(compose(compose(g, kernel_elem(n)), ginv));
        if (c < 0) throw std::logic_error("conjugation left the kernel");
        action[gi][n] = std::uint32_t(c);
      }
    }

    for (std::uint64_t W : subspaces) {
      bool stable = true;
      for (std::uint32_t n = 0; n < 64 && stable; ++n)
        if (W >> n & 1) stable = (W >> action[0][n] & 1) && (W >> action[1][n] & 1);
      if (!stable) continue;

      const std::size_t wsize = std::size_t(std::popcount(W));
      std::vector<AglElem> wgens;
      std::uint64_t spanned = 1;
      for (std::uint32_t n = 1; n < 64; ++n)
        if ((W >> n & 1) && !(spanned >> n & 1)) {
          wgens.push_back(kernel_elem(n));
          spanned = span_mask(spanned, n);
        }
      std::vector<std::uint32_t> transversal;
      std::uint64_t covered = 0;
      for (std::uint32_t n = 0; n < 64; ++n)
        if (!(covered >> n & 1)) {
          transversal.push_back(n);
          for (std::uint32_t w = 0; w < 64; ++w)
            if (W >> w & 1) covered |= std::uint64_t(1) << (w ^ n);
        }

      const std::size_t target = Q.order() * wsize;
      for (std::uint32_t t1 : transversal) {
        for (std::uint32_t t2 : transversal) {
          std::vector<AglElem> gens = wgens;
          gens.push_back(compose(base1, kernel_elem(t1)));
          gens.push_back(compose(base2, kernel_elem(t2)));
          bool ok = bfs_closure(gens, k, target, scratch, elems, [W](const AglElem& e) {
            int c = kernel_coords(e);
            return c >= 0 && !(W >> c & 1);
          });
          scratch.erase_all(elems);
          if (!ok || elems.size() != target) continue;
          SubgroupRep G;
          G.level = k;
          G.generators = gens;
          G.elements = elems;
          std::sort(G.elements.begin(), G.elements.end());
          if (!is_kinetic(G) || !seen.insert(G.elements).second) continue;
          collector.add(std::move(G));
        }
      }
    }
  }
  return collector.take();
}

}  // namespace

std::vector<ConjugacyClass> classify_kinetic(unsigned k) {
  if (k == 2) return classify_level2();
  if (k == 3) return classify_level3();
  throw std::invalid_argument("classify_kinetic: level must be 2 or 3");
}

// ---- coset structure ----

std::vector<Mat2> j_group() {
  SubgroupRep J = closure({AglElem{2, {0, 0}, {0, 3, 1, 0}}, AglElem{2, {0, 0}, {1, 3, 3, 0}}});
  std::vector<Mat2> out;
  for (AglCode c : J.elements) out.push_back(decode(c, 2).M);
  return out;
}

bool coset_partition_holds(const SubgroupRep& H, const std::vector<Mat2>& J) {
  if (H.level != 2) return false;
  const Mat2 shifts[4] = {mat_identity(), {1, 3, 0, 1}, {1, 2, 0, 1}, {1, 1, 0, 1}};
  std::vector<AglCode> parts;
  for (std::uint32_t v1 = 0; v1 < 4; ++v1) {
    for (std::uint32_t v0 = 0; v0 < 4; ++v0) {
      const Mat2& T = shifts[(v0 & 1) * 2 + (v1 & 1)];
      for (const Mat2& M : J) parts.push_back(encode(AglElem{2, {v0, v1}, mat_mul(T, M, 2)}));
    }
  }
  std::sort(parts.begin(), parts.end());
  if (std::adjacent_find(parts.begin(), parts.end()) != parts.end()) return false;  // not disjoint
  return parts == H.elements;
}

bool coset_structure_check() {
  const std::vector<Mat2> J = j_group();
  if (J.size() != 24) return false;
  bool nonabelian = false;
  for (const Mat2& A : J)
    for (const Mat2& B : J) nonabelian = nonabelian || mat_mul(A, B, 2) != mat_mul(B, A, 2);
  // A unique subgroup of order 3 (two elements of order 3) means the Sylow-3 is normal.
  int order3 = 0;
  for (const Mat2& A : J) {
    Mat2 A3 = mat_mul(mat_mul(A, A, 2), A, 2);
    if (A != mat_identity() && A3 == mat_identity()) ++order3;
  }
  return nonabelian && order3 == 2 && coset_partition_holds(closure(h2_generators()), J);
}

}  // namespace echo
