// Compiled with -mavx2; only called after a runtime CPU check.

#include <immintrin.h>

#include "schanuel/kernels.hpp"

namespace schanuel::kernels::avx2 {
namespace {

// c * 2^32 mod p: the multiplier in Montgomery form, so that a Montgomery
// product with a plain residue yields the plain residue c * v mod p.
inline std::uint32_t to_montgomery(std::uint32_t c, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>((std::uint64_t{c} << 32) % p);
}

// Lanes hold 64-bit products t < p^2. Returns (t + m p) / 2^32 < 2p in the low
// 32 bits of each lane, where m = t * (-p^{-1}) mod 2^32.
inline __m256i redc(__m256i t, __m256i neg_pinv, __m256i p64) noexcept {
  const __m256i m = _mm256_mul_epu32(t, neg_pinv);
  return _mm256_srli_epi64(_mm256_add_epi64(t, _mm256_mul_epu32(m, p64)), 32);
}

// v < 2p  ->  v mod p, using unsigned min against the wrapped difference.
inline __m256i fold(__m256i v, __m256i p32) noexcept {
  return _mm256_min_epu32(v, _mm256_sub_epi32(v, p32));
}

inline __m256i mulmod8(__m256i v, __m256i cm, __m256i neg_pinv, __m256i p64,
                       __m256i p32) noexcept {
  const __m256i even = redc(_mm256_mul_epu32(v, cm), neg_pinv, p64);
  const __m256i odd = redc(_mm256_mul_epu32(_mm256_srli_epi64(v, 32), cm), neg_pinv, p64);
  return fold(_mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA), p32);
}

}  // namespace

void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
          const Modulus& m) noexcept {
  if (c == 0) return;
  const std::size_t n = dst.size();
  std::size_t i = 0;
  if (m.p == 2) {
    // c == 1 here; addition in F_2 is xor.
    for (; i + 8 <= n; i += 8) {
      const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), _mm256_xor_si256(d, s));
    }
    for (; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  const __m256i cm = _mm256_set1_epi64x(to_montgomery(c, m.p));
  const __m256i neg_pinv = _mm256_set1_epi64x(m.neg_pinv);
  const __m256i p64 = _mm256_set1_epi64x(m.p);
  const __m256i p32 = _mm256_set1_epi32(static_cast<int>(m.p));
  for (; i + 8 <= n; i += 8) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    const __m256i prod = mulmod8(s, cm, neg_pinv, p64, p32);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i),
                        fold(_mm256_add_epi32(d, prod), p32));
  }
  if (i < n) scalar::axpy(dst.subspan(i), src.subspan(i), c, m);
}

void scale(std::span<std::uint32_t> dst, std::uint32_t c, const Modulus& m) noexcept {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  if (m.p == 2) {
    if (c == 0) {
      for (auto& v : dst) v = 0;
    }
    return;
  }
  const __m256i cm = _mm256_set1_epi64x(to_montgomery(c, m.p));
  const __m256i neg_pinv = _mm256_set1_epi64x(m.neg_pinv);
  const __m256i p64 = _mm256_set1_epi64x(m.p);
  const __m256i p32 = _mm256_set1_epi32(static_cast<int>(m.p));
  for (; i + 8 <= n; i += 8) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i),
                        mulmod8(d, cm, neg_pinv, p64, p32));
  }
  if (i < n) scalar::scale(dst.subspan(i), c, m);
}

}  // namespace schanuel::kernels::avx2
