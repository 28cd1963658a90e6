#include "echo/kernels/kernels.hpp"

namespace echo::kernels {

namespace {

struct Fp {
  std::uint64_t p;
  std::uint64_t add(std::uint64_t u, std::uint64_t v) const {
    std::uint64_t s = u + v;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t u, std::uint64_t v) const { return u >= v ? u - v : u + p - v; }
  std::uint64_t mul(std::uint64_t u, std::uint64_t v) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(u) * v % p);
  }
};

std::uint8_t run_lane(const LadderLane& L) {
  const Fp f{L.p};
  const std::uint64_t a = L.a % L.p, b = L.b % L.p, xp = L.x % L.p;
  if (xp == 0) return kDegenerate;
  if (L.m == 0) return kIdentity;
  const std::uint64_t b4 = f.mul(4, b), b8 = f.mul(8, b);

  std::uint64_t X0 = 1, Z0 = 0, X1 = xp, Z1 = 1;
  for (int bit = 63 - __builtin_clzll(L.m); bit >= 0; --bit) {
    bool set = (L.m >> bit) & 1;
    if (set) {
      std::swap(X0, X1);
      std::swap(Z0, Z1);
    }
    // R1 <- R0 + R1 (difference is the base point), R0 <- 2 R0
    std::uint64_t x0x1 = f.mul(X0, X1), z0z1 = f.mul(Z0, Z1);
    std::uint64_t t = f.sub(x0x1, f.mul(a, z0z1));
    std::uint64_t cross = f.add(f.mul(X0, Z1), f.mul(X1, Z0));
    std::uint64_t nX1 = f.sub(f.mul(t, t), f.mul(b4, f.mul(z0z1, cross)));
    std::uint64_t d = f.sub(f.mul(X0, Z1), f.mul(X1, Z0));
    std::uint64_t nZ1 = f.mul(xp, f.mul(d, d));

    std::uint64_t xx = f.mul(X0, X0), zz = f.mul(Z0, Z0);
    std::uint64_t u = f.sub(xx, f.mul(a, zz));
    std::uint64_t nX0 = f.sub(f.mul(u, u), f.mul(b8, f.mul(X0, f.mul(zz, Z0))));
    std::uint64_t inner = f.add(f.add(f.mul(xx, X0), f.mul(a, f.mul(X0, zz))), f.mul(b, f.mul(zz, Z0)));
    std::uint64_t nZ0 = f.mul(4 % L.p, f.mul(Z0, inner));

    X0 = nX0;
    Z0 = nZ0;
    X1 = nX1;
    Z1 = nZ1;
    if (set) {
      std::swap(X0, X1);
      std::swap(Z0, Z1);
    }
  }
  if (Z0 != 0) return kNotIdentity;
  return X0 != 0 ? kIdentity : kDegenerate;
}

}  // namespace

void ladder_is_identity_scalar(std::span<const LadderLane> lanes, std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < lanes.size(); ++i) out[i] = run_lane(lanes[i]);
}

}  // namespace echo::kernels
