#include <doctest.h>

#include <random>

#include "schanuel/error.hpp"
#include "schanuel/harness.hpp"
#include "support.hpp"

using namespace schanuel;
using namespace testing_support;

namespace {

using Dims = std::vector<std::size_t>;

// The full naturality system N_a F_s - F_t M_a = 0 in the unknown entries of
// the vertex maps, assembled directly; its nullity is dim Hom(m, n).
Matrix naturality_system(const Representation& m, const Representation& n) {
  const auto& q = m.algebra()->quiver();
  std::vector<std::size_t> off{0};
  for (std::size_t v = 0; v < q.vertex_count(); ++v) off.push_back(off.back() + n.dim(v) * m.dim(v));
  std::size_t eqs = 0;
  for (const auto& a : q.arrows()) eqs += n.dim(a.target) * m.dim(a.source);
  const PrimeField& f = m.field();
  Matrix sys(f, eqs, off.back());
  std::size_t row = 0;
  for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
    const auto& a = q.arrow(ai);
    const Matrix& na = n.arrow_map(ai);
    const Matrix& ma = m.arrow_map(ai);
    const std::size_t ms = m.dim(a.source), mt = m.dim(a.target), ns = n.dim(a.source), nt = n.dim(a.target);
    for (std::size_t r = 0; r < nt; ++r) {
      for (std::size_t c = 0; c < ms; ++c, ++row) {
        // (N_a F_s)(r,c) = sum_k N_a(r,k) F_s(k,c)
        for (std::size_t k = 0; k < ns; ++k) {
          const std::size_t col = off[a.source] + k * ms + c;
          sys.set(row, col, f.add(sys(row, col), na(r, k)));
        }
        // (F_t M_a)(r,c) = sum_k F_t(r,k) M_a(k,c)
        for (std::size_t k = 0; k < mt; ++k) {
          const std::size_t col = off[a.target] + r * mt + k;
          sys.set(row, col, f.sub(sys(row, col), ma(k, c)));
        }
      }
    }
  }
  return sys;
}

std::size_t naive_hom_dim(const Representation& m, const Representation& n) {
  const Matrix sys = naturality_system(m, n);
  return sys.cols() - rank(sys);
}

// Counts natural transformations over F_2 by trying every tuple of vertex maps.
std::size_t brute_hom_count(const Representation& m, const Representation& n) {
  std::size_t entries = 0;
  for (std::size_t v = 0; v < m.dims().size(); ++v) entries += m.dim(v) * n.dim(v);
  REQUIRE(entries <= 16);
  std::size_t count = 0;
  for (std::uint32_t bits = 0; bits < (1u << entries); ++bits) {
    std::vector<Matrix> maps;
    std::size_t pos = 0;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
      Matrix x(m.field(), n.dim(v), m.dim(v));
      for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) x.set(r, c, (bits >> pos++) & 1u);
      }
      maps.push_back(std::move(x));
    }
    try {
      RepMorphism(m, n, maps);
      ++count;
    } catch (const Error&) {
    }
  }
  return count;
}

}  // namespace

TEST_CASE("hom examples") {
  auto a2 = builtin_algebra("a2");
  auto s1 = simple_module(a2, 0);
  auto s2 = simple_module(a2, 1);
  CHECK(HomSpace(s1, s2).dim() == 0);
  CHECK(brute_hom_count(s1, s2) == 1);
  auto p1 = indecomposable_projective(a2, 0);
  auto i2 = indecomposable_injective(a2, 1);
  CHECK(p1 == i2);
  CHECK(HomSpace(p1, i2).dim() == 1);
  CHECK(brute_hom_count(p1, i2) == 2);
  for (const auto& m : {s1, s2, i2}) {
    HomSpace h(m, m);
    CHECK(h.coordinates(RepMorphism::identity(m)).has_value());
  }
}

TEST_CASE("hom dimension agrees with the naturality system and brute force") {
  std::mt19937_64 rng(41);
  std::size_t brute = 0;
  for (int t = 0; t < 150; ++t) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[t % 3];
    auto alg = random_algebra(rng, p);
    auto m = random_module(alg, 3, rng);
    auto n = random_module(alg, 3, rng);
    CAPTURE(t);
    HomSpace h(m, n);
    CHECK(h.dim() == naive_hom_dim(m, n));
    for (const auto& f : h.basis()) {
      CHECK(f.is_natural());
      CHECK(f.source() == m);
      CHECK(f.target() == n);
    }
    CHECK(rank(h.basis_matrix()) == h.dim());
    if (p == 2) {
      std::size_t entries = 0;
      for (std::size_t v = 0; v < alg->vertex_count(); ++v) entries += m.dim(v) * n.dim(v);
      if (entries <= 12) {
        CHECK(brute_hom_count(m, n) == (std::size_t{1} << h.dim()));
        ++brute;
      }
    }
    // Coordinates round-trip.
    if (h.dim() > 0) {
      std::vector<Scalar> coeffs(h.dim());
      for (auto& c : coeffs) c = static_cast<Scalar>(rng() % p);
      const auto f = h.combine(coeffs);
      CHECK(h.coordinates(f) == coeffs);
    }
  }
  CHECK(brute >= 20);
}

TEST_CASE("coordinates reject morphisms outside the space") {
  auto a2 = builtin_algebra("a2");
  auto i2 = indecomposable_injective(a2, 1);
  auto s1 = simple_module(a2, 0);
  HomSpace h(i2, i2);
  CHECK_FALSE(h.coordinates(RepMorphism::zero(i2, s1)).has_value());
}

TEST_CASE("kernel and cokernel examples") {
  auto a2 = builtin_algebra("a2");
  auto s1 = simple_module(a2, 0);
  auto s2 = simple_module(a2, 1);
  auto i2 = indecomposable_injective(a2, 1);
  CHECK(kernel(RepMorphism::identity(i2)).object.is_zero());
  CHECK(kernel(RepMorphism::zero(i2, s1)).object.dims() == i2.dims());
  const RepMorphism collapse(i2, s1, {mat(a2, 1, 1, {1}), Matrix(a2->field(), 0, 1)});
  CHECK(kernel(collapse).object == s2);

  const RepMorphism incl(s2, i2, {Matrix(a2->field(), 1, 0), mat(a2, 1, 1, {1})});
  CHECK(cokernel(incl).object == s1);
  CHECK(cokernel(RepMorphism::identity(i2)).object.is_zero());
  CHECK(cokernel(RepMorphism::zero(s1, i2)).object.dims() == i2.dims());
}

TEST_CASE("kernel and cokernel universal properties") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 80; ++t) {
    auto alg = random_algebra(rng, t % 2 ? 3 : 2);
    auto m = random_module(alg, 3, rng);
    auto n = random_module(alg, 3, rng);
    auto x = random_module(alg, 2, rng);
    const RepMorphism f = random_morphism(m, n, rng);
    CAPTURE(t);
    const auto k = kernel(f);
    CHECK(k.inclusion.is_mono());
    CHECK(compose(f, k.inclusion).is_zero());
    const auto c = cokernel(f);
    CHECK(c.projection.is_epi());
    CHECK(compose(c.projection, f).is_zero());
    CHECK(k.object.total_dim() + n.total_dim() == c.object.total_dim() + m.total_dim());

    // Every t : X -> M with f t = 0 factors uniquely through the kernel.
    for (const auto& g : hom_basis(x, m)) {
      if (!compose(f, g).is_zero()) continue;
      const auto u = factor_through_mono(g, k.inclusion);
      CHECK(compose(k.inclusion, u) == g);
    }
    for (const auto& g : hom_basis(n, x)) {
      if (!compose(g, f).is_zero()) continue;
      const auto u = factor_through_epi(g, c.projection);
      CHECK(compose(u, c.projection) == g);
    }
    // Uniqueness: the inclusion is mono, so Hom(X, ker) -> Hom(X, M) is injective.
    HomSpace hk(x, k.object);
    for (const auto& g : hk.basis()) CHECK_FALSE(compose(k.inclusion, g).is_zero());
  }
}

TEST_CASE("direct sums") {
  auto a2 = builtin_algebra("a2");
  auto s1 = simple_module(a2, 0);
  auto s2 = simple_module(a2, 1);
  auto i1 = indecomposable_injective(a2, 0);
  auto i2 = indecomposable_injective(a2, 1);
  CHECK(direct_sum(a2, std::span<const Representation>{}).total.is_zero());
  auto b = direct_sum(s1, s2);
  CHECK(b.total.dims() == Dims{1, 1});
  CHECK(b.total.arrow_map(0).is_zero());
  CHECK(b.verify());
  CHECK(direct_sum(i1, i2).total.dims() == Dims{2, 1});

  std::mt19937_64 rng(47);
  for (int t = 0; t < 40; ++t) {
    auto alg = random_algebra(rng, 3);
    const std::vector<Representation> parts{random_module(alg, 2, rng), random_module(alg, 2, rng),
                                            random_module(alg, 2, rng)};
    const auto all = direct_sum(alg, parts);
    CHECK(all.verify());
    const auto left = sum(sum(parts[0], parts[1]), parts[2]);
    const auto right = sum(parts[0], sum(parts[1], parts[2]));
    const auto iso = is_isomorphic(left, right, 5);
    CHECK(iso.kind == IsoOutcome::Kind::Witness);
    if (iso.witness) CHECK(iso.witness->is_iso());
  }
}

TEST_CASE("isomorphism testing") {
  auto a2 = builtin_algebra("a2");
  auto s1 = simple_module(a2, 0);
  auto s2 = simple_module(a2, 1);
  auto i2 = indecomposable_injective(a2, 1);
  CHECK(is_isomorphic(i2, i2, 1).kind == IsoOutcome::Kind::Witness);
  CHECK(is_isomorphic(s1, s2, 1).kind == IsoOutcome::Kind::NotIsomorphic);
  auto swap = is_isomorphic(sum(i2, s1), sum(s1, i2), 1);
  REQUIRE(swap.kind == IsoOutcome::Kind::Witness);
  CHECK(swap.witness->is_iso());
  CHECK(swap.witness->is_natural());
  // Same dimension vector, different structure.
  CHECK(is_isomorphic(i2, sum(s1, s2), 1).kind == IsoOutcome::Kind::NotIsomorphic);

  std::mt19937_64 rng(53);
  for (int t = 0; t < 60; ++t) {
    auto alg = random_algebra(rng, 2);
    auto m = random_module(alg, 2, rng);
    auto n = random_module(alg, 2, rng);
    const auto mn = is_isomorphic(m, n, t);
    const auto nm = is_isomorphic(n, m, t + 1);
    CAPTURE(t);
    CHECK(mn.kind != IsoOutcome::Kind::Inconclusive);
    CHECK(mn.kind == nm.kind);
    if (mn.witness) CHECK(mn.witness->is_iso());
  }
}

TEST_CASE("random representations satisfy their relations") {
  auto loop = builtin_algebra("loop", 3);
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto m = random_representation(loop, 3, s);
    CHECK((m.arrow_map(0) * m.arrow_map(0)).is_zero());
    CHECK(random_representation(loop, 3, s) == m);
  }
  auto a2 = builtin_algebra("a2", 5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto m = random_representation(a2, 3, s);
    for (auto d : m.dims()) CHECK(d <= 3);
  }
}

TEST_CASE("representation validation") {
  auto loop = builtin_algebra("loop");
  CHECK_THROWS_AS(rep(loop, {2}, {mat(loop, 2, 2, {1, 0, 0, 1})}), Error);
  CHECK_THROWS_AS(rep(loop, {2}, {mat(loop, 1, 2, {0, 0})}), Error);
  auto a2 = builtin_algebra("a2");
  auto s1 = simple_module(a2, 0);
  auto i2 = indecomposable_injective(a2, 1);
  // Identity at vertex 0 but zero at vertex 1 is not natural on I2 -> I2.
  CHECK_THROWS_AS(RepMorphism(i2, i2, {mat(a2, 1, 1, {1}), mat(a2, 1, 1, {0})}), Error);
  CHECK_THROWS_AS(compose(RepMorphism::identity(s1), RepMorphism::identity(i2)), Error);
}
