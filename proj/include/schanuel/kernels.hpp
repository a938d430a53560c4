#pragma once

// Row kernels for exact elimination over F_p.
//
// Every dense operation in the library bottoms out in two loops: dst += c * src
// and dst *= c, both mod p. A portable scalar version is always built; an AVX2
// version (Montgomery multiplication on 32-bit lanes) is built on x86-64 and
// picked at startup when the CPU supports it. SCHANUEL_LAB_KERNEL=scalar forces
// the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace schanuel::kernels {

/// Precomputed constants for one modulus. For odd p, `neg_pinv` = -p^{-1} mod 2^32.
struct Modulus {
  std::uint32_t p = 2;
  std::uint32_t neg_pinv = 0;

  static Modulus make(std::uint32_t p) noexcept;
};

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b) noexcept;
bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;
/// Overrides the startup selection. Returns false if `b` is not available here.
bool set_backend(Backend b) noexcept;

/// dst[i] = (dst[i] + c * src[i]) mod p. Sizes must match; c < p; entries < p.
void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
          const Modulus& m) noexcept;
/// dst[i] = (c * dst[i]) mod p.
void scale(std::span<std::uint32_t> dst, std::uint32_t c, const Modulus& m) noexcept;

namespace scalar {
void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
          const Modulus& m) noexcept;
void scale(std::span<std::uint32_t> dst, std::uint32_t c, const Modulus& m) noexcept;
}  // namespace scalar

#if defined(SCHANUEL_HAVE_AVX2)
namespace avx2 {
void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
          const Modulus& m) noexcept;
void scale(std::span<std::uint32_t> dst, std::uint32_t c, const Modulus& m) noexcept;
}  // namespace avx2
#endif

}  // namespace schanuel::kernels
