#include "echo/kernels/kernels.hpp"

#include <immintrin.h>

#include <vector>

namespace echo::kernels {

// Eight y values per step; the packed index v0 | v1 << k is formed in-register
// and only the scatter into the hit table stays scalar.
ImageCounts image_class_counts_avx2(const Mat2& A, unsigned k) {
  const std::uint32_t n = 1u << k, mask = n - 1;
  if (n < 8) return image_class_counts_scalar(A, k);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(n) * n, 0);

  const __m256i vmask = _mm256_set1_epi32(static_cast<int>(mask));
  const __m256i a01 = _mm256_set1_epi32(static_cast<int>(A[1]));
  const __m256i a11 = _mm256_set1_epi32(static_cast<int>(A[3]));
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  const __m128i shift = _mm_cvtsi32_si128(static_cast<int>(k));
  alignas(32) std::uint32_t idx[8];

  for (std::uint32_t x = 0; x < n; ++x) {
    const __m256i c0 = _mm256_set1_epi32(static_cast<int>(A[0] * x));
    const __m256i c1 = _mm256_set1_epi32(static_cast<int>(A[2] * x));
    for (std::uint32_t y = 0; y < n; y += 8) {
      __m256i yv = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(y)), lane);
      __m256i v0 = _mm256_and_si256(_mm256_add_epi32(c0, _mm256_mullo_epi32(a01, yv)), vmask);
      __m256i v1 = _mm256_and_si256(_mm256_add_epi32(c1, _mm256_mullo_epi32(a11, yv)), vmask);
      __m256i packed = _mm256_or_si256(v0, _mm256_sll_epi32(v1, shift));
      _mm256_store_si256(reinterpret_cast<__m256i*>(idx), packed);
      for (int j = 0; j < 8; ++j) hit[idx[j]] = 1;
    }
  }

  ImageCounts out;
  for (std::uint32_t i = 0; i < n * n; ++i) {
    if (!hit[i]) continue;
    std::uint32_t v0 = i & mask, v1 = i >> k;
    ++out.size;
    ++out.by_class[(v0 & 3) + 4 * (v1 & 3)];
  }
  return out;
}

}  // namespace echo::kernels
