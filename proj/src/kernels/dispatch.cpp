#include "echo/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace echo::kernels {

namespace {

// -1: no override, otherwise the Isa value.
std::atomic<int> g_override{-1};

Isa detect() {
  if (const char* env = std::getenv("ECHO_ISA")) {
    std::string_view v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && isa_supported(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(ECHO_HAVE_AVX2)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() {
  int o = g_override.load(std::memory_order_relaxed);
  if (o >= 0) return static_cast<Isa>(o);
  static const Isa detected = detect();
  return detected;
}

void set_isa_override(std::optional<Isa> isa) {
  if (isa && !isa_supported(*isa)) throw std::invalid_argument("ISA not supported on this CPU");
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void ladder_is_identity(std::span<const LadderLane> lanes, std::span<std::uint8_t> out) {
  if (out.size() < lanes.size()) throw std::invalid_argument("ladder output span too small");
#if defined(ECHO_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return ladder_is_identity_avx2(lanes, out);
#endif
  ladder_is_identity_scalar(lanes, out);
}

ImageCounts image_class_counts(const Mat2& A, unsigned k) {
  if (k == 0 || k > kMaxImageLevel) throw std::invalid_argument("image level out of range");
#if defined(ECHO_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return image_class_counts_avx2(A, k);
#endif
  return image_class_counts_scalar(A, k);
}

}  // namespace echo::kernels
