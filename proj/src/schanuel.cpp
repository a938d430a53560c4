#include "schanuel/schanuel.hpp"

#include "schanuel/error.hpp"
#include "schanuel/lemmas.hpp"

namespace schanuel {
namespace {

std::vector<std::size_t> add_dims(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::size_t cover_dim(const Representation& m) {
  const auto top = top_dims(m);
  std::size_t total = 0;
  for (std::size_t v = 0; v < top.size(); ++v) {
    if (top[v]) total += top[v] * indecomposable_projective(m.algebra(), v).total_dim();
  }
  return total;
}

// C ~= mid (+) end from a split row mid -> C -> end.
std::optional<RepMorphism> split_iso(const std::optional<Conflation>& row) {
  if (!row) return std::nullopt;
  const auto sw = is_split(*row);
  if (!sw) return std::nullopt;
  const Biproduct canon = direct_sum(row->a(), row->c());
  const RepMorphism parts[] = {row->x(), sw->section};
  RepMorphism iso = copair(canon, parts, row->b());
  if (!iso.is_iso()) return std::nullopt;
  return iso;
}

Conflation with_prefix(const std::optional<Representation>& prefix, const Conflation& step) {
  if (!prefix) return step;
  const Conflation id = Conflation::make(RepMorphism::identity(*prefix),
                                         RepMorphism::zero(*prefix, Representation::zero(prefix->algebra())));
  return direct_sum(id, step);
}

struct LevelChain {
  Report report;
  std::vector<RepMorphism> witnesses;
  std::optional<Representation> prefix_left;   // prefix at the last level reached
  std::optional<Representation> prefix_right;
};

// Level l compares  P_l (+) X^l  with  Q_l (+) X'^l  where the prefixes alternate
// between the two resolutions and X, X' are the cosyzygies of r1, r2 (swapped at odd l).
LevelChain run_levels(const InjectiveResolution& r1, const InjectiveResolution& r2, std::size_t levels,
                      const SchanuelOptions& opts) {
  LevelChain out;
  RepMorphism phi = RepMorphism::identity(r1.base);
  for (std::size_t l = 0; l < levels; ++l) {
    const InjectiveResolution& left = (l % 2 == 0) ? r1 : r2;
    const InjectiveResolution& right = (l % 2 == 0) ? r2 : r1;
    const Conflation c1 = with_prefix(out.prefix_left, left.steps.at(l));
    const Conflation c2 = with_prefix(out.prefix_right, right.steps.at(l));
    SchanuelOptions step_opts = opts;
    step_opts.seed = opts.seed + 7919 * (l + 1);
    SchanuelResult res = verify_schanuel_iso_form(c1, c2, phi, step_opts);
    out.report.merge(res.report, "level" + std::to_string(l + 1) + ".");
    if (!res.witness) break;
    phi = *res.witness;
    out.witnesses.push_back(phi);
    out.prefix_left = c1.b();
    out.prefix_right = c2.b();
  }
  return out;
}

void require_resolution(const InjectiveResolution& r, std::size_t steps, const char* which) {
  if (r.steps.size() < steps) {
    throw Error(ErrorCode::DepthInsufficient, std::string(which) + " resolution is too short");
  }
  for (std::size_t k = 0; k < steps; ++k) {
    if (!(r.steps[k].a() == r.cosyzygy(k))) {
      throw Error(ErrorCode::HypothesisViolated, std::string(which) + " resolution steps do not chain");
    }
    if (!is_injective(r.steps[k].b())) {
      throw Error(ErrorCode::HypothesisViolated,
                  std::string(which) + " resolution has a non-injective term at " + std::to_string(k));
    }
  }
}

}  // namespace

SchanuelResult verify_schanuel(const Conflation& c1, const Conflation& c2, const SchanuelOptions& opts) {
  if (!(c1.a() == c2.a())) throw Error(ErrorCode::HypothesisViolated, "the conflations start at different objects");
  if (!is_injective(c1.b())) throw Error(ErrorCode::HypothesisViolated, "first middle term is not injective");
  if (!is_injective(c2.b())) throw Error(ErrorCode::HypothesisViolated, "second middle term is not injective");

  SchanuelResult out;
  Report& r = out.report;
  r.name = "schanuel";
  const Representation lhs = direct_sum(c1.b(), c2.c()).total;  // I (+) F'
  const Representation rhs = direct_sum(c2.b(), c1.c()).total;  // I' (+) F
  const bool dims_ok = add_dims(c1.b().dims(), c2.c().dims()) == add_dims(c2.b().dims(), c1.c().dims());
  r.add("dimension_vectors", dims_ok);
  r.data["lhs_dims"] = lhs.dims();
  r.data["rhs_dims"] = rhs.dims();
  if (!dims_ok) return out;

  const std::size_t cover = cover_dim(lhs);
  const bool class_identity = cover <= opts.presentation_limit;
  r.data["pushout_class_identity"] =
      class_identity ? "checked" : "skipped: projective cover dimension " + std::to_string(cover);
  PushoutDiagram pushout = pushout_diagram(c1, c2, class_identity);
  r.merge(pushout.report, "pushout.");
  r.data["pushout_dims"] = pushout.m.dims();
  const auto phi1 = split_iso(pushout.row2);  // I (+) F' -> C
  const auto phi2 = split_iso(pushout.row1);  // I' (+) F -> C
  r.add("pushout_splits_as_i_plus_fprime", phi1.has_value());
  r.add("pushout_splits_as_iprime_plus_f", phi2.has_value());
  if (phi1 && phi2) {
    RepMorphism w = compose(inverse(*phi2), *phi1);
    const bool ok = w.source() == lhs && w.target() == rhs && w.is_natural() && w.is_iso();
    r.add("explicit_witness", ok).witness = to_json(w);
    if (ok) out.witness = std::move(w);
  }

  if (opts.independent_search) {
    const IsoOutcome iso = is_isomorphic(lhs, rhs, opts.seed, opts.trials);
    Verdict v = Verdict::Pass;
    if (iso.kind == IsoOutcome::Kind::NotIsomorphic) v = Verdict::Fail;
    if (iso.kind == IsoOutcome::Kind::Inconclusive) v = Verdict::Inconclusive;
    Check& c = r.add_verdict("iso_search", v, to_string(iso.kind) + ": " + iso.reason);
    if (iso.witness) c.witness = to_json(*iso.witness);
  }
  return out;
}

SchanuelResult verify_schanuel_iso_form(const Conflation& c1, const Conflation& c2, const RepMorphism& phi,
                                        const SchanuelOptions& opts) {
  if (!(phi.source() == c1.a()) || !(phi.target() == c2.a())) {
    throw Error(ErrorCode::HypothesisViolated, "phi must map E to E'");
  }
  if (!phi.is_iso()) throw Error(ErrorCode::NotAnIsomorphism, "vertical map is not an isomorphism");
  const Conflation moved = Conflation::make(compose(c2.x(), phi), c2.y());
  return verify_schanuel(c1, moved, opts);
}

LongSchanuelResult verify_long_schanuel(const InjectiveResolution& r1, const InjectiveResolution& r2,
                                        std::size_t n, const SchanuelOptions& opts) {
  if (!(r1.base == r2.base)) throw Error(ErrorCode::HypothesisViolated, "resolutions of different objects");
  if (r1.depth() < 2 * n + 1 || r2.depth() < 2 * n + 1) {
    throw Error(ErrorCode::DepthInsufficient, "long Schanuel up to n needs depth >= 2n+1");
  }
  require_resolution(r1, 2 * n + 1, "first");
  require_resolution(r2, 2 * n + 1, "second");
  LevelChain chain = run_levels(r1, r2, 2 * n + 1, opts);
  LongSchanuelResult out{std::move(chain.report), std::move(chain.witnesses)};
  out.report.name = "long_schanuel";
  out.report.add("all_levels_witnessed", out.witnesses.size() == 2 * n + 1,
                 std::to_string(out.witnesses.size()) + " of " + std::to_string(2 * n + 1) + " levels");
  auto& dims = out.report.data["level_dims"] = nlohmann::ordered_json::array();
  for (const auto& w : out.witnesses) dims.push_back(w.source().dims());
  return out;
}

Report verify_dimension_theorem(const Representation& m, const InjectiveResolution& alt, std::size_t n,
                                const SchanuelOptions& opts) {
  if (n == 0) throw Error(ErrorCode::HypothesisViolated, "the dimension theorem needs n >= 1");
  if (!(alt.base == m)) throw Error(ErrorCode::HypothesisViolated, "alternative sequence does not start at m");
  require_resolution(alt, n, "alternative");
  const InjectiveResolution canon = injective_resolution(m, n - 1);
  if (!is_injective(canon.cosyzygy(n))) {
    throw Error(ErrorCode::HypothesisViolated, "canonical cosyzygy G^n is not injective");
  }

  Report r;
  r.name = "dimension_theorem";
  r.add("canonical_cosyzygy_injective", true, "G^" + std::to_string(n) + " of the canonical resolution is injective");
  LevelChain chain = run_levels(alt, canon, n, opts);
  r.merge(chain.report, "");
  const Representation& f = alt.cosyzygy(n);
  r.data["f_dims"] = f.dims();
  if (chain.witnesses.size() != n) {
    r.add("i_iso_g_plus_f", false, "level chain stopped early");
    r.add("f_injective", is_injective(f));
    return r;
  }
  // Odd n: left = I, right = G (+) F. Even n: left = G (+) F, right = I.
  const RepMorphism& w = chain.witnesses.back();
  const bool odd = n % 2 == 1;
  const Representation g_obj = odd ? *chain.prefix_right : *chain.prefix_left;
  const RepMorphism psi = odd ? inverse(w) : w;  // G (+) F -> I
  const Biproduct gf = direct_sum(g_obj, f);
  const bool shape_ok = psi.source() == gf.total;
  r.add("i_iso_g_plus_f", shape_ok && psi.is_iso()).witness = to_json(psi);
  if (!shape_ok) return r;
  const Representation& i_obj = psi.target();
  r.data["i_dims"] = i_obj.dims();
  r.data["g_dims"] = g_obj.dims();

  const RepMorphism mu = compose(psi, gf.injections[1]);
  const RepMorphism pi = compose(gf.projections[0], inverse(psi));
  const bool exact = Conflation::is_valid(mu, pi);
  r.add("split_conflation_f_i_g", exact && is_split(Conflation::make(mu, pi)).has_value());
  r.add("i_injective", is_injective(i_obj));
  r.add("f_injective", is_injective(f));
  return r;
}

}  // namespace schanuel
