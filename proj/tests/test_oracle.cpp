#include <doctest.h>

#include "oracle/brute_ext.hpp"
#include "schanuel/ext.hpp"

using namespace schanuel;

TEST_CASE("oracle sanity on A2") {
  auto a2 = builtin_algebra("a2");
  auto s1 = simple_module(a2, 0);
  auto s2 = simple_module(a2, 1);
  // One nonsplit extension S2 -> I2 -> S1, none the other way.
  CHECK(oracle::extension_classes(s1, s2) == 2);
  CHECK(oracle::extension_classes(s2, s1) == 1);
  CHECK(oracle::extension_classes(s1, s1) == 1);
  CHECK(oracle::all_small_modules(a2, 1).size() == 1 + 1 + 1 + 2);
}

TEST_CASE("oracle sanity on the loop") {
  auto loop = builtin_algebra("loop");
  auto s = simple_module(loop, 0);
  CHECK(oracle::extension_classes(s, s) == 2);
  CHECK(oracle::extension_classes(s, indecomposable_injective(loop, 0)) == 1);
  // Square-zero 2x2 matrices over F_2: 0, E12, E21 and the all-ones matrix.
  std::size_t two_dim = 0;
  for (const auto& m : oracle::all_small_modules(loop, 2)) two_dim += m.total_dim() == 2;
  CHECK(two_dim == 4);
}

TEST_CASE("ext_dim matches the oracle on every small algebra") {
  for (const auto& [name, alg] : oracle::small_algebras()) {
    CAPTURE(name);
    CHECK(alg->dimension() <= 3);
    const auto mods = oracle::all_small_modules(alg, 2);
    for (const auto& c : mods) {
      for (const auto& a : mods) {
        const std::size_t classes = oracle::extension_classes(c, a);
        CHECK(classes == (std::size_t{1} << ext_dim(c, a)));
      }
    }
  }
}
