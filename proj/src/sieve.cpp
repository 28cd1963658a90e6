#include "echo/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace echo {

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi <= lo) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  if (hi <= lo) return out;
  auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<std::uint32_t> base = small_primes(root);

  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<char> composite;
  for (std::uint64_t seg = lo; seg < hi; seg += kSegment) {
    std::uint64_t end = std::min(hi, seg + kSegment);
    composite.assign(end - seg, 0);
    for (std::uint32_t q : base) {
      std::uint64_t qq = static_cast<std::uint64_t>(q) * q;
      if (qq >= end) break;
      std::uint64_t start = std::max(qq, (seg + q - 1) / q * q);
      for (std::uint64_t j = start; j < end; j += q) composite[j - seg] = 1;
    }
    for (std::uint64_t n = seg; n < end; ++n) {
      if (!composite[n - seg]) out.push_back(n);
    }
  }
  return out;
}

}  // namespace echo
