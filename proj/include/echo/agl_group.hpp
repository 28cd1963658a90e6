#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace echo {

using Mat2 = std::array<std::uint32_t, 4>;  // row-major [[m0, m1], [m2, m3]]
using Vec2 = std::array<std::uint32_t, 2>;

Mat2 mat_mul(const Mat2& A, const Mat2& B, unsigned k);
Vec2 mat_apply(const Mat2& A, const Vec2& v, unsigned k);
std::uint32_t mat_det(const Mat2& A, unsigned k);
Mat2 mat_identity();
Mat2 mat_reduce(const Mat2& A, unsigned k);

/// (v, M) in (Z/2^k)^2 x| GL2(Z/2^k); (v1, M1)(v2, M2) = (v1 + M1 v2, M1 M2).
struct AglElem {
  unsigned k = 1;
  Vec2 v{};
  Mat2 M{1, 0, 0, 1};

  bool operator==(const AglElem&) const = default;
};

/// Bit-packed element: v0 | v1 << k | m00 << 2k | m01 << 3k | m10 << 4k | m11 << 5k.
using AglCode = std::uint64_t;

AglCode encode(const AglElem& e);
AglElem decode(AglCode c, unsigned k);

AglElem agl_identity(unsigned k);
/// Throws std::invalid_argument on a level mismatch.
AglElem compose(const AglElem& a, const AglElem& b);
AglElem inverse(const AglElem& a);
AglElem reduce_level(const AglElem& a, unsigned k);

/// 3x3 matrix [[M, v], [0, 1]] over Z/2^k.
std::array<std::uint32_t, 9> embed(const AglElem& a);

struct SubgroupRep {
  unsigned level = 1;
  std::vector<AglElem> generators;
  std::vector<AglCode> elements;  // sorted

  std::size_t order() const { return elements.size(); }
  bool contains(const AglElem& e) const;
};

/// Largest level for which closures are materialized by default.
inline constexpr unsigned kMaxClosureLevel = 4;

/// Breadth-first closure; throws std::length_error past `max_order` elements.
SubgroupRep closure(const std::vector<AglElem>& gens, std::size_t max_order = std::size_t(1) << 25);

inline std::uint64_t agl_order(unsigned k) { return 24ULL << (6 * (k - 1)); }
inline std::uint64_t gl_order(unsigned k) { return 6ULL << (4 * (k - 1)); }

std::vector<AglElem> agl_generators(unsigned k);
SubgroupRep full_group(unsigned k);

/// Surjects onto GL2(Z/2^k) and onto AGL2(Z/2).
bool is_kinetic(const SubgroupRep& G);

/// The printed generators of the index-4 subgroup at level 2.
std::vector<AglElem> h2_generators();
/// (v, M) lies in H_k iff its reduction mod 4 lies in H_2.
bool in_hk(const AglElem& e);
SubgroupRep build_hk(unsigned k);

/// Vectors v with (v, M) in H_2, for M mod 4; bit (v0 + 4 v1) set when present.
std::uint16_t h2_vector_mask(const Mat2& M4);

/// The sorted element set of g G g^-1.
std::vector<AglCode> conjugate_elements(const SubgroupRep& G, const AglElem& g);

struct ConjugacyClass {
  SubgroupRep representative;
  std::vector<AglCode> canonical;  // lexicographically least conjugate element set
  std::size_t conjugates = 0;      // size of the conjugation orbit
};

/// Orbit of G under conjugation by the whole group, summarized.
ConjugacyClass conjugacy_class(const SubgroupRep& G);
bool are_conjugate(const SubgroupRep& A, const SubgroupRep& B);

/// All kinetic subgroups of AGL2(Z/2^k) up to conjugacy, for k in {2, 3}.
std::vector<ConjugacyClass> classify_kinetic(unsigned k);

/// H = V00 x J u V01 x T1 J u V10 x T2 J u V11 x T3 J with coset shifts
/// T1 = [1 3; 0 1], T2 = [1 2; 0 1], T3 = [1 1; 0 1], where Vij = {v : v = (i, j) mod 2}.
bool coset_partition_holds(const SubgroupRep& H, const std::vector<Mat2>& J);
std::vector<Mat2> j_group();
bool coset_structure_check();

}  // namespace echo
