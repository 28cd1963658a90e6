#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2/FMA variant.
// The variant is picked once at runtime; tests pin each one and compare.

#include <array>
#include <cstdint>
#include <optional>
#include <span>

namespace echo::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);

/// Best supported ISA, unless overridden (tests, or ECHO_ISA=scalar|avx2).
Isa active_isa();
void set_isa_override(std::optional<Isa> isa);

// ---- x-only Montgomery ladder on y^2 = x^3 + a x + b over F_p ----

struct LadderLane {
  std::uint64_t p = 0;  // odd prime
  std::uint64_t a = 0, b = 0;
  std::uint64_t x = 0;  // x-coordinate of the base point
  std::uint64_t m = 0;  // scalar
};

inline constexpr std::uint8_t kNotIdentity = 0;
inline constexpr std::uint8_t kIdentity = 1;
// x = 0 or the ladder hit (0:0); the caller must decide with affine arithmetic.
inline constexpr std::uint8_t kDegenerate = 2;

/// out[i] classifies m_i * (x_i, *) against the point at infinity.
void ladder_is_identity(std::span<const LadderLane> lanes, std::span<std::uint8_t> out);
void ladder_is_identity_scalar(std::span<const LadderLane> lanes, std::span<std::uint8_t> out);
#if defined(ECHO_HAVE_AVX2)
// Lanes with p >= 2^26 are handed to the scalar kernel.
void ladder_is_identity_avx2(std::span<const LadderLane> lanes, std::span<std::uint8_t> out);
#endif

inline constexpr std::uint64_t kAvx2LadderPrimeLimit = 1ULL << 26;

// ---- image of a 2x2 matrix acting on (Z/2^k)^2 ----

using Mat2 = std::array<std::uint32_t, 4>;  // row-major, entries reduced mod 2^k

struct ImageCounts {
  std::uint32_t size = 0;
  // Image vectors per residue class mod 4, index (v0 mod 4) + 4 (v1 mod 4).
  std::array<std::uint32_t, 16> by_class{};

  bool operator==(const ImageCounts&) const = default;
};

inline constexpr unsigned kMaxImageLevel = 8;

ImageCounts image_class_counts(const Mat2& A, unsigned k);
ImageCounts image_class_counts_scalar(const Mat2& A, unsigned k);
#if defined(ECHO_HAVE_AVX2)
ImageCounts image_class_counts_avx2(const Mat2& A, unsigned k);
#endif

}  // namespace echo::kernels
