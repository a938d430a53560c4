#include "schanuel/kernels.hpp"

namespace schanuel::kernels::scalar {

void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
          const Modulus& m) noexcept {
  if (c == 0) return;
  const std::uint64_t p = m.p;
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<std::uint32_t>((dst[i] + std::uint64_t{c} * src[i]) % p);
  }
}

void scale(std::span<std::uint32_t> dst, std::uint32_t c, const Modulus& m) noexcept {
  const std::uint64_t p = m.p;
  for (auto& v : dst) v = static_cast<std::uint32_t>((std::uint64_t{c} * v) % p);
}

}  // namespace schanuel::kernels::scalar
