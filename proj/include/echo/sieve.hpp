#pragma once

#include <cstdint>
#include <vector>

namespace echo {

/// Primes p <= limit by a plain sieve of Eratosthenes.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

/// Primes in [lo, hi) using a segmented sieve over the base primes up to sqrt(hi).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

}  // namespace echo
