#include <cstdlib>
#include <string_view>

#include "schanuel/kernels.hpp"

namespace schanuel::kernels {
namespace {

using AxpyFn = void (*)(std::span<std::uint32_t>, std::span<const std::uint32_t>, std::uint32_t,
                        const Modulus&) noexcept;
using ScaleFn = void (*)(std::span<std::uint32_t>, std::uint32_t, const Modulus&) noexcept;

struct Table {
  Backend backend;
  AxpyFn axpy;
  ScaleFn scale;
};

constexpr Table kScalar{Backend::Scalar, &scalar::axpy, &scalar::scale};
#if defined(SCHANUEL_HAVE_AVX2)
constexpr Table kAvx2{Backend::Avx2, &avx2::axpy, &avx2::scale};
#endif

bool cpu_has_avx2() noexcept {
#if defined(SCHANUEL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Table select_initial() noexcept {
  if (const char* env = std::getenv("SCHANUEL_LAB_KERNEL")) {
    if (std::string_view(env) == "scalar") return kScalar;
  }
#if defined(SCHANUEL_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

Table& table() noexcept {
  static Table t = select_initial();
  return t;
}

}  // namespace

Modulus Modulus::make(std::uint32_t p) noexcept {
  Modulus m;
  m.p = p;
  if (p % 2 == 1) {
    // Newton iteration for p^{-1} mod 2^32; each step doubles the correct bits.
    std::uint32_t inv = p;
    for (int k = 0; k < 5; ++k) inv *= 2u - p * inv;
    m.neg_pinv = 0u - inv;
  }
  return m;
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept {
  if (b == Backend::Scalar) return true;
  return cpu_has_avx2();
}

Backend active_backend() noexcept { return table().backend; }

bool set_backend(Backend b) noexcept {
  if (!backend_available(b)) return false;
#if defined(SCHANUEL_HAVE_AVX2)
  table() = (b == Backend::Avx2) ? kAvx2 : kScalar;
#else
  table() = kScalar;
#endif
  return true;
}

void axpy(std::span<std::uint32_t> dst, std::span<const std::uint32_t> src, std::uint32_t c,
          const Modulus& m) noexcept {
  table().axpy(dst, src, c, m);
}

void scale(std::span<std::uint32_t> dst, std::uint32_t c, const Modulus& m) noexcept {
  table().scale(dst, c, m);
}

}  // namespace schanuel::kernels
