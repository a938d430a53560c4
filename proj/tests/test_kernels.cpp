#include <doctest.h>

#include <random>
#include <vector>

#include "schanuel/field.hpp"
#include "schanuel/kernels.hpp"
#include "schanuel/matrix.hpp"

using namespace schanuel;
namespace kn = schanuel::kernels;

namespace {

std::vector<std::uint32_t> random_row(std::size_t n, std::uint32_t p, std::mt19937_64& rng) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(rng() % p);
  return v;
}

// Plain 64-bit reference, independent of either kernel.
std::vector<std::uint32_t> reference_axpy(std::vector<std::uint32_t> d, const std::vector<std::uint32_t>& s,
                                          std::uint32_t c, std::uint32_t p) {
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = static_cast<std::uint32_t>((d[i] + std::uint64_t{c} * s[i]) % p);
  return d;
}

const std::uint32_t kPrimes[] = {2, 3, 5, 7, 251, 65521, 65537, 1000003, 2147483629, 2147483647};

}  // namespace

TEST_CASE("scalar kernel matches the reference") {
  std::mt19937_64 rng(1);
  for (std::uint32_t p : kPrimes) {
    const auto m = kn::Modulus::make(p);
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 100u}) {
      auto d = random_row(n, p, rng);
      const auto s = random_row(n, p, rng);
      const std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
      auto want = reference_axpy(d, s, c, p);
      kn::scalar::axpy(d, s, c, m);
      CHECK(d == want);
      auto e = random_row(n, p, rng);
      auto zeros = std::vector<std::uint32_t>(n, 0);
      auto want_scale = reference_axpy(zeros, e, c, p);
      kn::scalar::scale(e, c, m);
      CHECK(e == want_scale);
    }
  }
}

#if defined(SCHANUEL_HAVE_AVX2)
TEST_CASE("avx2 kernel is equivalent to the scalar kernel") {
  if (!kn::backend_available(kn::Backend::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(2);
  for (std::uint32_t p : kPrimes) {
    const auto m = kn::Modulus::make(p);
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = rng() % 70;
      auto d1 = random_row(n, p, rng);
      auto d2 = d1;
      const auto s = random_row(n, p, rng);
      std::uint32_t c = static_cast<std::uint32_t>(rng() % p);
      if (t % 10 == 0) c = p - 1;
      if (t % 10 == 1) c = 0;
      kn::scalar::axpy(d1, s, c, m);
      kn::avx2::axpy(d2, s, c, m);
      CAPTURE(p);
      CAPTURE(n);
      CHECK(d1 == d2);
      kn::scalar::scale(d1, c, m);
      kn::avx2::scale(d2, c, m);
      CHECK(d1 == d2);
    }
    // Extremes: all entries p-1.
    std::vector<std::uint32_t> a(37, p - 1), b(37, p - 1), s(37, p - 1);
    kn::scalar::axpy(a, s, p - 1, m);
    kn::avx2::axpy(b, s, p - 1, m);
    CHECK(a == b);
  }
}

TEST_CASE("elimination agrees across backends") {
  if (!kn::backend_available(kn::Backend::Avx2)) return;
  const auto before = kn::active_backend();
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {3u, 65537u, 2147483647u}) {
    PrimeField f(p);
    for (int t = 0; t < 30; ++t) {
      const std::size_t r = 1 + rng() % 20;
      const std::size_t c = 1 + rng() % 40;
      Matrix a(f, r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) a.set(i, j, static_cast<Scalar>(rng() % p));
      }
      kn::set_backend(kn::Backend::Scalar);
      const auto x = rref(a);
      const auto prod = a * a.transpose();
      kn::set_backend(kn::Backend::Avx2);
      const auto y = rref(a);
      CHECK(x.reduced == y.reduced);
      CHECK(x.pivot_columns == y.pivot_columns);
      CHECK(prod == a * a.transpose());
    }
  }
  kn::set_backend(before);
}
#endif

TEST_CASE("backend selection") {
  CHECK(kn::backend_available(kn::Backend::Scalar));
  const auto before = kn::active_backend();
  CHECK(kn::set_backend(kn::Backend::Scalar));
  CHECK(kn::active_backend() == kn::Backend::Scalar);
  CHECK(kn::backend_name(kn::Backend::Scalar) == "scalar");
  kn::set_backend(before);
}
