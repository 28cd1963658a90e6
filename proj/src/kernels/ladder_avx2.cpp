#include "echo/kernels/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace echo::kernels {

namespace {

// Residues below 2^26 held in doubles: products stay below 2^52 and are
// exact, and fnmadd recovers the remainder exactly from an approximate quotient.
struct VFp {
  __m256d p, pinv, zero;

  __m256d reduce_once(__m256d r) const {
    __m256d neg = _mm256_cmp_pd(r, zero, _CMP_LT_OQ);
    r = _mm256_add_pd(r, _mm256_and_pd(neg, p));
    __m256d big = _mm256_cmp_pd(r, p, _CMP_GE_OQ);
    return _mm256_sub_pd(r, _mm256_and_pd(big, p));
  }
  __m256d mul(__m256d u, __m256d v) const {
    __m256d h = _mm256_mul_pd(u, v);
    __m256d q = _mm256_floor_pd(_mm256_mul_pd(h, pinv));
    return reduce_once(_mm256_fnmadd_pd(q, p, h));
  }
  __m256d add(__m256d u, __m256d v) const {
    __m256d s = _mm256_add_pd(u, v);
    __m256d big = _mm256_cmp_pd(s, p, _CMP_GE_OQ);
    return _mm256_sub_pd(s, _mm256_and_pd(big, p));
  }
  __m256d sub(__m256d u, __m256d v) const {
    __m256d d = _mm256_sub_pd(u, v);
    __m256d neg = _mm256_cmp_pd(d, zero, _CMP_LT_OQ);
    return _mm256_add_pd(d, _mm256_and_pd(neg, p));
  }
};

inline void cswap(__m256d mask, __m256d& u, __m256d& v) {
  __m256d nu = _mm256_blendv_pd(u, v, mask);
  __m256d nv = _mm256_blendv_pd(v, u, mask);
  u = nu;
  v = nv;
}

bool eligible(const LadderLane& L) {
  return L.p > 2 && L.p < kAvx2LadderPrimeLimit && L.m != 0 && L.x % L.p != 0;
}

void run4(const LadderLane* L, std::uint8_t* out) {
  alignas(32) double pv[4], av[4], bv[4], xv[4], inv[4];
  std::uint64_t maxm = 0;
  for (int i = 0; i < 4; ++i) {
    pv[i] = static_cast<double>(L[i].p);
    inv[i] = 1.0 / pv[i];
    av[i] = static_cast<double>(L[i].a % L[i].p);
    bv[i] = static_cast<double>(L[i].b % L[i].p);
    xv[i] = static_cast<double>(L[i].x % L[i].p);
    maxm = std::max(maxm, L[i].m);
  }
  const VFp f{_mm256_load_pd(pv), _mm256_load_pd(inv), _mm256_setzero_pd()};
  const __m256d a = _mm256_load_pd(av), b = _mm256_load_pd(bv), xp = _mm256_load_pd(xv);
  const __m256d four = f.reduce_once(_mm256_set1_pd(4.0));
  const __m256d b4 = f.mul(four, b), b8 = f.mul(f.add(four, four), b);

  __m256d X0 = _mm256_set1_pd(1.0), Z0 = _mm256_setzero_pd(), X1 = xp, Z1 = _mm256_set1_pd(1.0);
  for (int bit = 63 - __builtin_clzll(maxm); bit >= 0; --bit) {
    alignas(32) std::uint64_t bits[4];
    for (int i = 0; i < 4; ++i) bits[i] = ((L[i].m >> bit) & 1) ? ~0ULL : 0ULL;
    __m256d mask = _mm256_castsi256_pd(_mm256_load_si256(reinterpret_cast<const __m256i*>(bits)));
    cswap(mask, X0, X1);
    cswap(mask, Z0, Z1);

    __m256d x0x1 = f.mul(X0, X1), z0z1 = f.mul(Z0, Z1);
    __m256d t = f.sub(x0x1, f.mul(a, z0z1));
    __m256d cross = f.add(f.mul(X0, Z1), f.mul(X1, Z0));
    __m256d nX1 = f.sub(f.mul(t, t), f.mul(b4, f.mul(z0z1, cross)));
    __m256d d = f.sub(f.mul(X0, Z1), f.mul(X1, Z0));
    __m256d nZ1 = f.mul(xp, f.mul(d, d));

    __m256d xx = f.mul(X0, X0), zz = f.mul(Z0, Z0);
    __m256d u = f.sub(xx, f.mul(a, zz));
    __m256d z3 = f.mul(zz, Z0);
    __m256d nX0 = f.sub(f.mul(u, u), f.mul(b8, f.mul(X0, z3)));
    __m256d inner = f.add(f.add(f.mul(xx, X0), f.mul(a, f.mul(X0, zz))), f.mul(b, z3));
    __m256d nZ0 = f.mul(four, f.mul(Z0, inner));

    X0 = nX0;
    Z0 = nZ0;
    X1 = nX1;
    Z1 = nZ1;
    cswap(mask, X0, X1);
    cswap(mask, Z0, Z1);
  }
  alignas(32) double xo[4], zo[4];
  _mm256_store_pd(xo, X0);
  _mm256_store_pd(zo, Z0);
  for (int i = 0; i < 4; ++i) {
    if (zo[i] != 0.0) {
      out[i] = kNotIdentity;
    } else {
      out[i] = xo[i] != 0.0 ? kIdentity : kDegenerate;
    }
  }
}

}  // namespace

void ladder_is_identity_avx2(std::span<const LadderLane> lanes, std::span<std::uint8_t> out) {
  std::size_t i = 0;
  for (; i + 4 <= lanes.size(); i += 4) {
    const LadderLane* g = lanes.data() + i;
    if (eligible(g[0]) && eligible(g[1]) && eligible(g[2]) && eligible(g[3])) {
      run4(g, out.data() + i);
    } else {
      ladder_is_identity_scalar(lanes.subspan(i, 4), out.subspan(i, 4));
    }
  }
  if (i < lanes.size()) ladder_is_identity_scalar(lanes.subspan(i), out.subspan(i));
}

}  // namespace echo::kernels
