#include <doctest.h>

#include <random>

#include "schanuel/error.hpp"
#include "schanuel/harness.hpp"
#include "schanuel/lemmas.hpp"
#include "schanuel/schanuel.hpp"
#include "support.hpp"

using namespace schanuel;
using namespace testing_support;

TEST_CASE("A2 resolution and dimensions") {
  auto alg = builtin_algebra("a2");
  auto s1 = simple_module(alg, 0);
  auto s2 = simple_module(alg, 1);
  auto i1 = indecomposable_injective(alg, 0);
  auto i2 = indecomposable_injective(alg, 1);
  auto env = injective_envelope(s2);
  CHECK(env.b() == i2);
  CHECK(env.c() == s1);
  auto r = injective_resolution(s2, 2);
  REQUIRE(r.steps.size() == 3);
  CHECK(r.injective(0).dims() == std::vector<std::size_t>{1, 1});
  CHECK(r.injective(1).dims() == std::vector<std::size_t>{1, 0});
  CHECK(r.injective(2).dims() == std::vector<std::size_t>{0, 0});
  CHECK(injective_dimension(s2, 4).to_string() == "Finite(1)");
  CHECK(injective_dimension(s1, 4).to_string() == "Finite(0)");
  CHECK(global_dimension(alg, 4).to_string() == "Finite(1)");

  auto padded = pad_step(env, i1);
  auto res = verify_schanuel(env, padded);
  CHECK(res.report.passed());
  CHECK(res.witness.has_value());

  auto r2 = pad_resolution(injective_resolution(s2, 3), 0, i1, 3);
  auto ls = verify_long_schanuel(injective_resolution(s2, 3), r2, 1);
  CHECK(ls.report.passed());

  auto diag = pad_step(env, i2, env.x());
  CHECK(diag.c().dims() == std::vector<std::size_t>{2, 1});
  InjectiveResolution alt{s2, {diag}};
  auto dt = verify_dimension_theorem(s2, alt, 1);
  CHECK(dt.passed());
  for (const auto& c : dt.checks) INFO(c.name);
}

TEST_CASE("loop mod a^2 is periodic") {
  auto alg = builtin_algebra("loop");
  auto s = simple_module(alg, 0);
  auto d = injective_dimension(s, 8);
  CHECK(d.to_string() == "AtLeast(9)");
  CHECK(d.periodic);
  auto r1 = injective_resolution(s, 5);
  auto r2 = pad_resolution(r1, 0, indecomposable_injective(alg, 0), 5);
  auto ls = verify_long_schanuel(r1, r2, 2);
  CHECK(ls.report.passed());
  CHECK(ls.witnesses.size() == 5);
}

TEST_CASE("pushout comparison golden A2") {
  auto alg = builtin_algebra("a2");
  auto env = injective_envelope(simple_module(alg, 1));
  auto l = pushout_diagram(env, env);
  CHECK(l.m.dims() == std::vector<std::size_t>{2, 1});
  CHECK(l.report.passed());
}

TEST_CASE("envelope and cosyzygy examples") {
  auto a2 = builtin_algebra("a2");
  auto i2 = indecomposable_injective(a2, 1);
  auto env = injective_envelope(i2);
  CHECK(env.x().is_iso());
  CHECK(env.c().is_zero());
  auto r = injective_resolution(i2, 3);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(r.cosyzygy(k).is_zero());

  auto loop = builtin_algebra("loop");
  auto s = simple_module(loop, 0);
  auto le = injective_envelope(s);
  CHECK(le.b() == indecomposable_injective(loop, 0));
  CHECK(le.c() == s);
  CHECK(cosyzygy(s, 0) == s);
  CHECK(cosyzygy(s, 5) == s);
  CHECK(cosyzygy(simple_module(a2, 1), 1) == simple_module(a2, 0));
  auto lr = injective_resolution(s, 3);
  for (std::size_t k = 0; k < 4; ++k) CHECK(lr.injective(k) == indecomposable_injective(loop, 0));
}

TEST_CASE("injective and global dimension examples") {
  auto a2 = builtin_algebra("a2");
  CHECK(injective_dimension(indecomposable_injective(a2, 1), 3).to_string() == "Finite(0)");
  CHECK(global_dimension(builtin_algebra("semisimple"), 3).to_string() == "Finite(0)");
  auto g = global_dimension(builtin_algebra("loop"), 8);
  CHECK(g.to_string() == "AtLeast(9)");
  CHECK(global_dimension(builtin_algebra("a3"), 4).to_string() == "Finite(1)");
}

TEST_CASE("schanuel examples") {
  auto a2 = builtin_algebra("a2");
  auto env = injective_envelope(simple_module(a2, 1));
  auto same = verify_schanuel(env, env);
  CHECK(same.report.passed());
  REQUIRE(same.witness.has_value());
  CHECK(same.witness->is_iso());

  auto loop = builtin_algebra("loop");
  auto lenv = injective_envelope(simple_module(loop, 0));
  CHECK(verify_schanuel(lenv, pad_step(lenv, indecomposable_injective(loop, 0))).report.passed());

  // A non-injective middle is rejected.
  auto s1 = simple_module(a2, 0);
  auto s2 = simple_module(a2, 1);
  CHECK_THROWS_AS(verify_schanuel(env, Conflation::split(s2, s1)), Error);

  // Iso form: identity, and a shear automorphism of S2 (+) S2.
  CHECK(verify_schanuel_iso_form(env, env, RepMorphism::identity(s2)).report.passed());
  auto e = sum(s2, s2);
  auto e_env = injective_envelope(e);
  auto shear = RepMorphism(e, e, {Matrix(a2->field(), 0, 0), mat(a2, 2, 2, {1, 1, 0, 1})});
  auto padded = pad_step(e_env, indecomposable_injective(a2, 0));
  CHECK(verify_schanuel_iso_form(e_env, padded, shear).report.passed());
  auto i2 = indecomposable_injective(a2, 1);
  auto not_iso = RepMorphism(i2, sum(s1, s2), {mat(a2, 1, 1, {1}), mat(a2, 1, 1, {0})});
  CHECK_THROWS_AS(verify_schanuel_iso_form(injective_envelope(i2), injective_envelope(sum(s1, s2)), not_iso), Error);
}

TEST_CASE("long schanuel and dimension theorem examples") {
  auto a2 = builtin_algebra("a2");
  auto s2 = simple_module(a2, 1);
  auto r = injective_resolution(s2, 5);
  auto same = verify_long_schanuel(r, r, 2);
  CHECK(same.report.passed());
  for (const auto& w : same.witnesses) CHECK(w.is_iso());
  CHECK_THROWS_AS(verify_long_schanuel(injective_resolution(s2, 2), r, 2), Error);

  // alt = the canonical resolution itself; padded by I1.
  CHECK(verify_dimension_theorem(s2, injective_resolution(s2, 0), 1).passed());
  auto padded = pad_resolution(injective_resolution(s2, 0), 0, indecomposable_injective(a2, 0), 0);
  auto dt = verify_dimension_theorem(s2, padded, 1);
  CHECK(dt.passed());
  CHECK(dt.data["f_dims"] == nlohmann::ordered_json({2, 0}));
  // The canonical resolution of the loop simple never terminates.
  auto loop = builtin_algebra("loop");
  auto s = simple_module(loop, 0);
  CHECK_THROWS_AS(verify_dimension_theorem(s, injective_resolution(s, 1), 1), Error);
}

TEST_CASE("resolution invariants on random modules") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 80; ++t) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[t % 3];
    auto alg = random_algebra(rng, p, 8);
    auto m = random_module(alg, 2, rng);
    CAPTURE(t);
    auto env = injective_envelope(m);
    CHECK(socle_inclusion(env.b()).source().dims() == socle_inclusion(m).source().dims());
    auto r = injective_resolution(m, 2);
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
      const auto& st = r.steps[k];
      CHECK(Conflation::is_valid(st.x(), st.y()));
      CHECK(is_injective(st.b()));
      if (k + 1 < r.steps.size()) CHECK(st.c() == r.steps[k + 1].a());
    }

    // Resolution independence of the verdict.
    const auto canon = injective_resolution(m, 3);
    const auto padded = pad_resolution(canon, rng() % 2, random_injective(alg, 1, rng), 3);
    const auto d1 = dimension_from_resolution(canon);
    const auto d2 = dimension_from_resolution(padded);
    CHECK(d1.kind == d2.kind);
    CHECK(d1.n == d2.n);

    // Dimension-vector pre-check of Schanuel.
    const auto c2 = pad_step(env, random_injective(alg, 1, rng));
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
      CHECK(env.b().dim(v) + c2.c().dim(v) == c2.b().dim(v) + env.c().dim(v));
    }

    // Global dimension through simples bounds every module.
    const auto gl = global_dimension(alg, 3);
    const auto im = injective_dimension(m, 3);
    if (gl.kind == DimensionVerdict::Kind::Finite) {
      CHECK(im.kind == DimensionVerdict::Kind::Finite);
      CHECK(im.n <= gl.n);
    }
  }
}
