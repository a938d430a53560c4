#include "schanuel/lemmas.hpp"

#include <random>

#include "schanuel/error.hpp"
#include "schanuel/resolve.hpp"

namespace schanuel {
namespace {

std::vector<Scalar> random_nonzero(std::mt19937_64& rng, std::size_t n, Scalar p) {
  std::vector<Scalar> v(n, 0);
  if (n == 0) return v;
  do {
    for (auto& x : v) x = static_cast<Scalar>(rng() % p);
  } while (std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; }));
  return v;
}

nlohmann::ordered_json class_json(const ExtClass& d) {
  nlohmann::ordered_json j;
  j["c"] = to_json(d.c_obj());
  j["a"] = to_json(d.a_obj());
  j["coords"] = d.coords;
  return j;
}

}  // namespace

Report verify_injectivity_characterizations(const Representation& e, std::size_t sample_budget,
                                            std::uint64_t seed, std::size_t max_dim) {
  Report r;
  r.name = "injectivity_characterizations";
  const auto& alg = e.algebra();
  const bool inj = is_injective(e);
  r.add("ext_vanishes", true, inj ? "injective" : "not injective").witness = inj;

  std::mt19937_64 rng(seed);
  std::vector<Representation> cs;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) cs.push_back(simple_module(alg, v));
  for (std::size_t k = 0; k < sample_budget; ++k) cs.push_back(random_representation(alg, max_dim, rng()));

  bool all_split = true;
  std::size_t sampled = 0;
  nlohmann::ordered_json counterexample;
  for (const auto& c : cs) {
    auto space = ExtSpace::make(c, e);
    ExtClass d{space, random_nonzero(rng, space->dim(), e.field().p())};
    const Conflation conf = realize(d);
    ++sampled;
    if (!is_split(conf)) {
      if (all_split) {
        counterexample["class"] = class_json(d);
        counterexample["middle"] = to_json(conf.b());
      }
      all_split = false;
    }
  }
  Check& ii = r.add("sampled_conflations_split", all_split == inj,
                    std::to_string(sampled) + " sampled, " + (all_split ? "all split" : "some not split"));
  ii.witness = counterexample.is_null() ? nlohmann::ordered_json(all_split) : counterexample;

  const Conflation env = injective_envelope(e);
  const bool env_split = is_split(env).has_value();
  r.add("envelope_splits", env_split == inj, env_split ? "envelope splits" : "envelope does not split")
      .witness = to_json(env.b());
  r.data["injective"] = inj;
  r.data["sampled_split"] = all_split;
  r.data["envelope_split"] = env_split;
  return r;
}

Report verify_summand_injectivity(const Representation& e, const Representation& g) {
  Report r;
  r.name = "summand_injectivity";
  const bool ie = is_injective(e);
  const bool ig = is_injective(g);
  const bool is = is_injective(direct_sum(e, g).total);
  r.add("sum_iff_both", is == (ie && ig));
  r.data["e_injective"] = ie;
  r.data["g_injective"] = ig;
  r.data["sum_injective"] = is;
  return r;
}

CompositionDiagram composition_diagram(const Conflation& t_h, const Conflation& t_d, const Conflation& t_g,
                                       const RepMorphism& f) {
  if (!(f.source() == t_h.a()) || !(f.target() == t_g.a()) || !(t_h.b() == t_g.b()) ||
      !(t_d.b() == t_h.c()) || !(t_d.c() == t_g.c())) {
    throw Error(ErrorCode::HypothesisViolated, "objects of the three triangles do not match");
  }
  if (!(compose(t_g.x(), f) == t_h.x())) throw Error(ErrorCode::HypothesisViolated, "h != g o f");
  if (!(compose(t_d.y(), t_h.y()) == t_g.y())) throw Error(ErrorCode::HypothesisViolated, "d' o h' != g'");
  if (!t_d.x().is_mono()) throw Error(ErrorCode::UniquenessFailure, "d is not mono");

  RepMorphism f_prime = factor_through_mono(compose(t_h.y(), t_g.x()), t_d.x());
  CompositionDiagram out{f, f_prime, std::nullopt, {}};
  Report& r = out.report;
  r.name = "composition_diagram";
  r.add("square_d_fprime", compose(t_d.x(), f_prime) == compose(t_h.y(), t_g.x()));

  const ExtClass dh = ext_class_of(t_h);
  const ExtClass dd = ext_class_of(t_d);
  const ExtClass dg = ext_class_of(t_g);

  const bool exact = Conflation::is_valid(f, f_prime);
  r.add("top_row_conflation", exact, "A -f-> B -f'-> D");
  if (exact) {
    out.top = Conflation::make(f, f_prime);
    const ExtClass lhs = ext_class_of(*out.top);
    const ExtClass rhs = pullback(t_d.x(), dh);
    r.add("top_class_is_d_pullback", lhs == rhs).witness = class_json(lhs);
  } else {
    r.add("top_class_is_d_pullback", false, "top row not exact");
  }
  const ExtClass ii = pushforward(f_prime, dg);
  r.add("fprime_push_dg_eq_dd", ii == dd).witness = class_json(ii);
  const ExtClass lhs3 = pushforward(f, dh);
  const ExtClass rhs3 = pullback(t_d.y(), dg);
  r.add("f_push_dh_eq_dprime_pull_dg", lhs3 == rhs3).witness = class_json(lhs3);
  return out;
}

PushoutDiagram pushout_diagram(const Conflation& t1, const Conflation& t2, bool class_identity) {
  if (!(t1.a() == t2.a())) throw Error(ErrorCode::HypothesisViolated, "conflations start at different objects");
  const Representation& a = t1.a();
  const Biproduct bsum = direct_sum(t1.b(), t2.b());
  const RepMorphism anti_parts[] = {t1.x(), -t2.x()};
  const CokernelResult ck = cokernel(pair(bsum, anti_parts, a));
  const Representation& m = ck.object;
  RepMorphism m2 = compose(ck.projection, bsum.injections[0]);
  RepMorphism m1 = compose(ck.projection, bsum.injections[1]);
  const RepMorphism to_c1[] = {t1.y(), RepMorphism::zero(t2.b(), t1.c())};
  const RepMorphism to_c2[] = {RepMorphism::zero(t1.b(), t2.c()), t2.y()};
  RepMorphism e1 = factor_through_epi(copair(bsum, to_c1, t1.c()), ck.projection);
  RepMorphism e2 = factor_through_epi(copair(bsum, to_c2, t2.c()), ck.projection);

  PushoutDiagram out{m, m1, m2, e1, e2, std::nullopt, std::nullopt, {}};
  Report& r = out.report;
  r.name = "pushout_diagram";
  r.add("square_pushout", compose(m1, t2.x()) == compose(m2, t1.x()));
  r.add("square_e1", compose(e1, m2) == t1.y());
  r.add("square_e2", compose(e2, m1) == t2.y());
  r.data["m_dims"] = m.dims();

  const ExtClass d1 = ext_class_of(t1);
  const ExtClass d2 = ext_class_of(t2);
  const bool row1_ok = Conflation::is_valid(m1, e1);
  r.add("row1_conflation", row1_ok, "B2 -> M -> C1");
  if (row1_ok) {
    out.row1 = Conflation::make(m1, e1);
    const ExtClass lhs = ext_class_of(*out.row1);
    r.add("row1_class_is_x2_push_d1", lhs == pushforward(t2.x(), d1)).witness = class_json(lhs);
  }
  const bool row2_ok = Conflation::is_valid(m2, e2);
  r.add("row2_conflation", row2_ok, "B1 -> M -> C2");
  if (row2_ok) {
    out.row2 = Conflation::make(m2, e2);
    const ExtClass lhs = ext_class_of(*out.row2);
    r.add("row2_class_is_x1_push_d2", lhs == pushforward(t1.x(), d2)).witness = class_json(lhs);
  }
  if (!class_identity) return out;
  const ExtClass total = add_classes(pullback(e1, d1), pullback(e2, d2));
  r.add("e1_pull_d1_plus_e2_pull_d2_zero", total.is_zero()).witness = class_json(total);
  return out;
}

}  // namespace schanuel
