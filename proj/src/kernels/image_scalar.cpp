#include "echo/kernels/kernels.hpp"

#include <vector>

namespace echo::kernels {

ImageCounts image_class_counts_scalar(const Mat2& A, unsigned k) {
  const std::uint32_t n = 1u << k, mask = n - 1;
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      std::uint32_t v0 = (A[0] * x + A[1] * y) & mask;
      std::uint32_t v1 = (A[2] * x + A[3] * y) & mask;
      hit[v0 | (v1 << k)] = 1;
    }
  }
  ImageCounts out;
  for (std::uint32_t idx = 0; idx < n * n; ++idx) {
    if (!hit[idx]) continue;
    std::uint32_t v0 = idx & mask, v1 = idx >> k;
    ++out.size;
    ++out.by_class[(v0 & 3) + 4 * (v1 & 3)];
  }
  return out;
}

}  // namespace echo::kernels
