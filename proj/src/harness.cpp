#include "schanuel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "schanuel/builtins.hpp"
#include "schanuel/error.hpp"
#include "schanuel/lemmas.hpp"
#include "schanuel/schanuel.hpp"

namespace schanuel {

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Composition: return "lemma31";
    case Suite::Pushout: return "lemma32";
    case Suite::Injectivity: return "prop22";
    case Suite::SumInjectivity: return "prop24";
    case Suite::Schanuel: return "schanuel";
    case Suite::LongSchanuel: return "long_schanuel";
    case Suite::DimensionTheorem: return "dimthm";
    case Suite::RoundTrip: return "roundtrip";
  }
  return "unknown";
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma31", "lemma32", "prop22", "prop24",
                                              "schanuel", "long_schanuel", "dimthm", "roundtrip"};
  return names;
}

Suite parse_suite(const std::string& name) {
  for (int s = 0; s <= static_cast<int>(Suite::RoundTrip); ++s) {
    if (to_string(static_cast<Suite>(s)) == name) return static_cast<Suite>(s);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

// --- random instances --------------------------------------------------------------

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::vector<Path> paths_of_length(const Quiver& q, std::size_t len) {
  std::vector<Path> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) out.push_back(trivial_path(v));
  for (std::size_t l = 0; l < len; ++l) {
    std::vector<Path> next;
    for (const auto& p : out) {
      for (auto a : q.outgoing(p.target)) next.push_back(concat(p, make_path(q, {a})));
    }
    out = std::move(next);
  }
  return out;
}

bool has_cycle(const Quiver& q) { return !paths_of_length(q, q.vertex_count()).empty(); }

std::string describe(const BoundQuiverAlgebra& alg) {
  const Quiver& q = alg.quiver();
  std::string s = "p=" + std::to_string(alg.field().p()) + " n=" + std::to_string(q.vertex_count()) + " arrows=";
  for (const auto& a : q.arrows()) s += std::to_string(a.source) + ">" + std::to_string(a.target) + ",";
  s += " rels=";
  for (const auto& r : alg.relations().generators) {
    for (const auto& t : r.terms) {
      s += std::to_string(t.coeff) + "*";
      for (auto a : t.arrows) s += std::to_string(a);
      s += "+";
    }
    s += ";";
  }
  s += " dim=" + std::to_string(alg.dimension());
  return s;
}

}  // namespace

AlgebraPtr random_algebra(std::mt19937_64& rng, std::uint64_t p, std::size_t max_algebra_dim) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const std::size_t n = 1 + pick(rng, 3);
    const std::size_t m = pick(rng, 8) == 0 ? 0 : 1 + pick(rng, 3);
    std::vector<Arrow> arrows;
    for (std::size_t k = 0; k < m; ++k) {
      arrows.push_back({pick(rng, n), pick(rng, n), "a" + std::to_string(k)});
    }
    Quiver q(n, arrows);
    RelationSet rels;
    const std::size_t bound = 2 + pick(rng, 3);
    const bool cyclic = has_cycle(q);
    const std::size_t mode = pick(rng, 3);
    if (mode >= 1) {
      // Extra degree-2 relations: monomials, or differences of parallel paths.
      const auto two = paths_of_length(q, 2);
      for (std::size_t i = 0; i < two.size(); ++i) {
        if (pick(rng, 3) != 0) continue;
        Relation r{{RelationTerm{1, two[i].arrows}}};
        if (mode == 2) {
          for (std::size_t j = i + 1; j < two.size(); ++j) {
            if (two[j].source == two[i].source && two[j].target == two[i].target) {
              r.terms.push_back(RelationTerm{static_cast<Scalar>(p - 1), two[j].arrows});
              break;
            }
          }
        }
        rels.generators.push_back(std::move(r));
      }
    }
    if (cyclic || pick(rng, 2) == 0) {
      for (auto& g : all_paths_of_length(q, bound).generators) rels.generators.push_back(std::move(g));
    }
    try {
      AlgebraPtr alg = build_algebra(q, rels, PrimeField(p), std::max<std::size_t>(bound, n + 1));
      if (alg->dimension() <= max_algebra_dim) return alg;
    } catch (const Error&) {
      // Not admissible within the bound: draw again.
    }
  }
  return linear_algebra(2, p);
}

RepMorphism random_morphism(const Representation& s, const Representation& t, std::mt19937_64& rng) {
  const HomSpace hom(s, t);
  std::vector<Scalar> c(hom.dim());
  for (auto& x : c) x = static_cast<Scalar>(rng() % s.field().p());
  return hom.combine(c);
}

Representation random_injective(const AlgebraPtr& alg, std::size_t max_copies, std::mt19937_64& rng) {
  std::vector<Representation> parts;
  const std::size_t copies = pick(rng, max_copies + 1);
  for (std::size_t k = 0; k < copies; ++k) parts.push_back(indecomposable_injective(alg, pick(rng, alg->vertex_count())));
  return direct_sum(alg, parts).total;
}

Representation random_module(const AlgebraPtr& alg, std::size_t max_dim, std::mt19937_64& rng) {
  const std::size_t cap = std::max<std::size_t>(8, max_dim);
  const std::size_t nv = alg->vertex_count();
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::optional<Representation> m;
    switch (pick(rng, 6)) {
      case 0:
      case 1: m = random_representation(alg, max_dim, rng()); break;
      case 2: m = simple_module(alg, pick(rng, nv)); break;
      case 3: m = random_injective(alg, 2, rng); break;
      case 4: {
        std::vector<Representation> ps{indecomposable_projective(alg, pick(rng, nv))};
        if (pick(rng, 2)) ps.push_back(indecomposable_projective(alg, pick(rng, nv)));
        const Representation p = direct_sum(alg, ps).total;
        const Representation q = indecomposable_projective(alg, pick(rng, nv));
        m = cokernel(random_morphism(q, p, rng)).object;
        break;
      }
      default: {
        const Representation a = random_injective(alg, 2, rng);
        const Representation b = random_injective(alg, 1, rng);
        m = kernel(random_morphism(a, b, rng)).object;
        break;
      }
    }
    if (m->total_dim() <= cap) return *m;
  }
  return random_representation(alg, max_dim, rng());
}

// --- trials ----------------------------------------------------------------------------

namespace {

constexpr std::size_t kEnvelopeCap = 24;
constexpr std::size_t kResolutionCap = 36;

ExtClass random_class(std::shared_ptr<const ExtSpace> space, std::mt19937_64& rng) {
  ExtClass d = ExtClass::zero(std::move(space));
  for (auto& x : d.coords) x = static_cast<Scalar>(rng() % d.a_obj().field().p());
  return d;
}

// A uniformly random nonzero class when E(C, A) != 0.
ExtClass random_nonzero_class(std::shared_ptr<const ExtSpace> space, std::mt19937_64& rng) {
  ExtClass d = random_class(space, rng);
  while (space->dim() > 0 && d.is_zero()) d = random_class(space, rng);
  return d;
}

// E(C, A) for random C (and A unless given), redrawn a few times looking for a nonzero space.
std::shared_ptr<const ExtSpace> nonzero_ext(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng,
                                            const Representation* a) {
  std::shared_ptr<const ExtSpace> space;
  for (int attempt = 0; attempt < 12; ++attempt) {
    const Representation c = pick(rng, 3) == 0 ? simple_module(alg, pick(rng, alg->vertex_count()))
                                               : random_module(alg, cfg.max_dim, rng);
    space = ExtSpace::make(c, a ? *a : random_module(alg, cfg.max_dim, rng));
    if (space->dim() > 0) break;
  }
  return space;
}

Report trial_roundtrip(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng, std::size_t& items) {
  Report r;
  r.name = "roundtrip";
  const auto space = nonzero_ext(alg, cfg, rng, nullptr);
  const Representation& a = space->a_obj();
  std::vector<ExtClass> classes{ExtClass::zero(space)};
  for (std::size_t k = 0; k < space->dim(); ++k) classes.push_back(ExtClass::basis(space, k));
  if (space->dim() > 0) {
    for (int k = 0; k < 8; ++k) classes.push_back(random_class(space, rng));
  }
  items = classes.size();
  r.data["ext_dim"] = space->dim();
  r.data["nontrivial"] = space->dim() > 0;
  bool all = true;
  for (const auto& d : classes) {
    const Conflation conf = realize(d);
    ExtClass back = ext_class_of(conf, space);
    if (cfg.inject_fault && !back.coords.empty()) back.coords[0] = a.field().add(back.coords[0], 1);
    if (cfg.inject_fault && back.coords.empty()) all = false;
    if (!(back == d)) {
      all = false;
      r.add("roundtrip", false).witness = {{"coords", d.coords}, {"recovered", back.coords}};
    }
  }
  r.add("all_classes_roundtrip", all, std::to_string(classes.size()) + " classes");
  return r;
}

Report trial_composition(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng) {
  const ExtClass delta_f = random_nonzero_class(nonzero_ext(alg, cfg, rng, nullptr), rng);
  const Conflation top = realize(delta_f);  // A -f-> B -f'-> D
  const ExtClass delta_g = random_nonzero_class(nonzero_ext(alg, cfg, rng, &top.b()), rng);
  const Conflation t_g = realize(delta_g);  // B -g-> C -g'-> F
  const Representation& a = top.a();
  const Representation& d = top.c();
  const Representation& f_obj = t_g.c();
  const RepMorphism h = compose(t_g.x(), top.x());
  const Conflation t_h = Conflation::from_inflation(h);  // A -h-> C -h'-> E
  const RepMorphism dm = factor_through_epi(compose(t_h.y(), t_g.x()), top.y());
  const RepMorphism dprime = factor_through_epi(t_g.y(), t_h.y());
  const Conflation t_d = Conflation::make(dm, dprime);
  Report r = composition_diagram(t_h, t_d, t_g, top.x()).report;
  r.data["dims"] = {{"A", a.dims()}, {"B", top.b().dims()}, {"C", t_g.b().dims()}, {"D", d.dims()},
                    {"E", t_h.c().dims()}, {"F", f_obj.dims()}};
  r.data["nontrivial"] = !delta_f.is_zero() && !delta_g.is_zero();
  return r;
}

Report trial_pushout(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng) {
  const ExtClass d1 = random_nonzero_class(nonzero_ext(alg, cfg, rng, nullptr), rng);
  const ExtClass d2 = random_nonzero_class(nonzero_ext(alg, cfg, rng, &d1.a_obj()), rng);
  Report r = pushout_diagram(realize(d1), realize(d2)).report;
  r.data["nontrivial"] = !d1.is_zero() && !d2.is_zero();
  return r;
}

Report trial_sum_injectivity(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng) {
  auto draw = [&] {
    if (pick(rng, 2)) return random_injective(alg, 2, rng);
    Representation m = random_module(alg, cfg.max_dim, rng);
    for (int k = 0; k < 8 && is_injective(m); ++k) m = random_module(alg, cfg.max_dim, rng);
    return m;
  };
  const Representation e = draw();
  const Representation g = draw();
  Report r = verify_summand_injectivity(e, g);
  r.data["nontrivial"] = !is_injective(e) || !is_injective(g);
  return r;
}

std::size_t padding_copies(const AlgebraPtr& alg) { return alg->dimension() > 8 ? 1 : 2; }

std::size_t injective_mass(const InjectiveResolution& r) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < r.steps.size(); ++k) s += r.injective(k).total_dim();
  return s;
}

// Canonical resolution of e with up to `steps` terms, stopping after a zero cosyzygy;
// nullopt once the injective terms outweigh cap.
std::optional<InjectiveResolution> bounded_resolution(const Representation& e, std::size_t steps, std::size_t cap) {
  InjectiveResolution r = injective_resolution(e, 0);
  for (;;) {
    if (injective_mass(r) > cap) return std::nullopt;
    if (r.steps.size() == steps || r.cosyzygy(r.steps.size()).is_zero()) return r;
    r = extend_resolution(std::move(r), r.steps.size());
  }
}

// Redraws E until its first `steps` injective terms have total dimension <= cap, so that
// the Hom systems of the padded objects stay desk-sized; keeps the smallest module otherwise.
// Injective draws, for which every verifier degenerates, are mostly passed over.
Representation module_with_small_resolution(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng,
                                            std::size_t steps, std::size_t cap) {
  std::optional<Representation> best;
  std::size_t best_mass = 0;
  const bool allow_injective = pick(rng, 8) == 0;
  for (int attempt = 0; attempt < 32; ++attempt) {
    Representation e = random_module(alg, cfg.max_dim, rng);
    const auto r = bounded_resolution(e, steps, cap);
    if (r && (allow_injective || !r->cosyzygy(1).is_zero())) return e;
    const std::size_t mass = e.total_dim();
    if (!best || mass < best_mass) {
      best = std::move(e);
      best_mass = mass;
    }
  }
  return *best;
}

Conflation random_padding(const Conflation& step, std::mt19937_64& rng) {
  const Representation j = random_injective(step.a().algebra(), padding_copies(step.a().algebra()), rng);
  std::optional<RepMorphism> twist;
  if (pick(rng, 2)) twist = random_morphism(step.a(), j, rng);
  return pad_step(step, j, twist);
}

Report trial_schanuel(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng, std::uint64_t seed) {
  const Representation e = module_with_small_resolution(alg, cfg, rng, 1, kEnvelopeCap);
  const Conflation env = injective_envelope(e);
  const Conflation c1 = pick(rng, 3) == 0 ? env : random_padding(env, rng);
  const Conflation c2 = random_padding(env, rng);
  SchanuelOptions opts;
  opts.seed = seed;
  SchanuelResult res = verify_schanuel(c1, c2, opts);
  if (cfg.inject_fault && res.witness) {
    const RepMorphism broken = res.witness->scaled(0);
    res.report.add("explicit_witness_recheck", broken.is_iso()).witness = to_json(broken);
  }
  res.report.data["nontrivial"] = !is_injective(e);
  return res.report;
}

InjectiveResolution random_alternative(const Representation& e, std::size_t depth, std::size_t pad_below,
                                       std::mt19937_64& rng) {
  InjectiveResolution r = injective_resolution(e, depth);
  const std::size_t pads = 1 + pick(rng, 2);
  for (std::size_t k = 0; k < pads; ++k) {
    const std::size_t step = pick(rng, pad_below);
    const Representation j = random_injective(e.algebra(), padding_copies(e.algebra()), rng);
    std::optional<RepMorphism> twist;
    if (pick(rng, 2)) twist = random_morphism(r.steps[step].a(), j, rng);
    r = pad_resolution(r, step, j, depth, twist);
  }
  return r;
}

Report trial_long_schanuel(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng,
                           std::uint64_t seed) {
  const Representation e = module_with_small_resolution(alg, cfg, rng, 4, kResolutionCap);
  const InjectiveResolution r1 = injective_resolution(e, 3);
  const InjectiveResolution r2 = random_alternative(e, 3, 4, rng);
  SchanuelOptions opts;
  opts.seed = seed;
  Report r = verify_long_schanuel(r1, r2, 1, opts).report;
  r.data["nontrivial"] = !is_injective(e);
  return r;
}

Report trial_dimension_theorem(const AlgebraPtr& alg, const SuiteConfig& cfg, std::mt19937_64& rng, std::uint64_t seed,
                    std::size_t& items) {
  std::optional<Representation> chosen;
  std::size_t chosen_n = 0;
  for (int attempt = 0; attempt < 48 && chosen_n == 0; ++attempt) {
    const Representation e = random_module(alg, cfg.max_dim, rng);
    const auto r = bounded_resolution(e, 4, kResolutionCap);
    if (!r) continue;
    const DimensionVerdict v = dimension_from_resolution(*r);
    if (v.kind != DimensionVerdict::Kind::Finite || v.n > 3) continue;
    if (!chosen || v.n > 0) {
      chosen = e;
      chosen_n = v.n;
    }
  }
  // Nothing of finite injective dimension <= 3 turned up; fall back to an injective.
  const Representation e = chosen ? *chosen : random_injective(alg, 2, rng);
  const std::size_t n = std::max<std::size_t>(chosen_n, 1);
  const InjectiveResolution alt = random_alternative(e, n - 1, n, rng);
  SchanuelOptions opts;
  opts.seed = seed;
  opts.independent_search = false;
  Report r = verify_dimension_theorem(e, alt, n, opts);
  r.data["idim"] = "Finite(" + std::to_string(chosen_n) + ")";
  r.data["n"] = n;
  r.data["nontrivial"] = chosen_n > 0;
  items = 1;
  return r;
}

nlohmann::ordered_json failures(const Report& r) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    if (c.verdict == Verdict::Pass) continue;
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["verdict"] = to_string(c.verdict);
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (!c.witness.is_null()) cj["witness"] = c.witness;
    j.push_back(std::move(cj));
  }
  return j;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 g(seq);
  return g();
}

TrialOutcome run_trial(const SuiteConfig& cfg, std::size_t index) {
  TrialOutcome out;
  out.index = index;
  out.seed = trial_seed(cfg.seed, index);
  std::mt19937_64 rng(out.seed);
  try {
    AlgebraPtr alg = cfg.fixed_algebra;
    if (!alg) {
      alg = cfg.algebra == "random" ? random_algebra(rng, cfg.primes.at(pick(rng, cfg.primes.size())))
                                    : builtin_algebra(cfg.algebra, cfg.primes.at(pick(rng, cfg.primes.size())));
    }
    out.algebra = describe(*alg);
    Report r;
    switch (cfg.suite) {
      case Suite::RoundTrip: r = trial_roundtrip(alg, cfg, rng, out.items); break;
      case Suite::Composition: r = trial_composition(alg, cfg, rng); break;
      case Suite::Pushout: r = trial_pushout(alg, cfg, rng); break;
      case Suite::Injectivity: {
        Representation e = random_module(alg, cfg.max_dim, rng);
        for (int k = 0; k < 8 && pick(rng, 2) == 0 && is_injective(e); ++k) e = random_module(alg, cfg.max_dim, rng);
        r = verify_injectivity_characterizations(e, 10, rng(), cfg.max_dim);
        r.data["nontrivial"] = !is_injective(e);
        break;
      }
      case Suite::SumInjectivity: r = trial_sum_injectivity(alg, cfg, rng); break;
      case Suite::Schanuel: r = trial_schanuel(alg, cfg, rng, out.seed); break;
      case Suite::LongSchanuel: r = trial_long_schanuel(alg, cfg, rng, out.seed); break;
      case Suite::DimensionTheorem: r = trial_dimension_theorem(alg, cfg, rng, out.seed, out.items); break;
    }
    out.verdict = r.verdict();
    out.nontrivial = r.data.value("nontrivial", false);
    out.detail = out.verdict == Verdict::Pass ? r.data : failures(r);
  } catch (const std::exception& e) {
    out.verdict = Verdict::Fail;
    out.error = e.what();
  }
  return out;
}

Verdict SuiteResult::verdict() const {
  if (failed > 0) return Verdict::Fail;
  if (inconclusive > config.inconclusive_ceiling) return Verdict::Fail;
  return inconclusive > 0 ? Verdict::Inconclusive : Verdict::Pass;
}

SuiteResult run_suite(const SuiteConfig& cfg) {
  if (cfg.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (cfg.inject_fault && cfg.suite != Suite::Schanuel && cfg.suite != Suite::RoundTrip) {
    throw Error(ErrorCode::InvalidArgument, "fault injection is available for the schanuel and roundtrip suites");
  }
  SuiteResult res;
  res.config = cfg;
  res.trials.resize(cfg.trials);
  const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, cfg.trials));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) res.trials[i] = run_trial(cfg, i);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::set<std::string> algebras;
  for (const auto& t : res.trials) {
    if (t.verdict == Verdict::Pass) ++res.passed;
    if (t.verdict == Verdict::Fail) ++res.failed;
    if (t.verdict == Verdict::Inconclusive) ++res.inconclusive;
    res.items += t.items;
    if (t.nontrivial) ++res.nontrivial;
    if (!t.algebra.empty()) algebras.insert(t.algebra);
  }
  res.distinct_algebras = algebras.size();
  return res;
}

nlohmann::ordered_json SuiteResult::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = schanuel::to_string(config.suite);
  j["seed"] = config.seed;
  j["trials"] = config.trials;
  j["max_dim"] = config.max_dim;
  j["algebra"] = config.fixed_algebra ? "instance" : config.algebra;
  j["verdict"] = schanuel::to_string(verdict());
  j["passed"] = passed;
  j["failed"] = failed;
  j["inconclusive"] = inconclusive;
  j["inconclusive_ceiling"] = config.inconclusive_ceiling;
  j["items"] = items;
  j["nontrivial"] = nontrivial;
  j["distinct_algebras"] = distinct_algebras;
  auto& list = j["results"] = nlohmann::ordered_json::array();
  for (const auto& t : trials) {
    nlohmann::ordered_json tj;
    tj["index"] = t.index;
    tj["seed"] = t.seed;
    tj["verdict"] = schanuel::to_string(t.verdict);
    tj["algebra"] = t.algebra;
    if (!t.error.empty()) tj["error"] = t.error;
    if (t.verdict != Verdict::Pass && !t.detail.is_null()) tj["detail"] = t.detail;
    list.push_back(std::move(tj));
  }
  return j;
}

}  // namespace schanuel
