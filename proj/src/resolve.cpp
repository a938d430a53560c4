#include "schanuel/resolve.hpp"

#include "schanuel/error.hpp"

namespace schanuel {

Conflation injective_envelope(const Representation& m) {
  const auto& alg = m.algebra();
  const PrimeField& f = m.field();
  const RepMorphism soc = socle_inclusion(m);
  std::vector<Representation> parts;
  std::vector<RepMorphism> components;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
    const Matrix& s = soc.map(v);  // dim m_v x dim soc_v
    if (s.cols() == 0) continue;
    const Representation iv = indecomposable_injective(alg, v);
    // Functionals lambda_u with lambda_u s = e_u^T pick out socle coordinate u.
    const auto lambdas = solve_right(s.transpose(), Matrix::identity(f, s.cols()));
    if (!lambdas) throw Error(ErrorCode::ExtensionFailed, "socle basis is not independent");
    for (std::size_t u = 0; u < s.cols(); ++u) {
      Matrix lambda(f, 1, m.dim(v));
      for (std::size_t k = 0; k < m.dim(v); ++k) lambda.set(0, k, (*lambdas)(k, u));
      parts.push_back(iv);
      components.push_back(map_to_injective(m, v, lambda));
    }
  }
  const Biproduct env = direct_sum(alg, parts);
  RepMorphism mu = pair(env, components, m);
  if (!mu.is_mono()) throw Error(ErrorCode::ExtensionFailed, "envelope map is not mono");
  return Conflation::from_inflation(std::move(mu));
}

const Representation& InjectiveResolution::cosyzygy(std::size_t k) const {
  if (k == 0) return base;
  return steps.at(k - 1).c();
}

InjectiveResolution extend_resolution(InjectiveResolution r, std::size_t depth) {
  while (r.steps.size() < depth + 1) {
    const Representation& g = r.steps.empty() ? r.base : r.steps.back().c();
    r.steps.push_back(injective_envelope(g));
  }
  return r;
}

InjectiveResolution injective_resolution(const Representation& m, std::size_t depth) {
  return extend_resolution(InjectiveResolution{m, {}}, depth);
}

Representation cosyzygy(const Representation& m, std::size_t n) {
  Representation g = m;
  for (std::size_t k = 0; k < n; ++k) g = injective_envelope(g).c();
  return g;
}

Conflation pad_step(const Conflation& step, const Representation& j, const std::optional<RepMorphism>& twist) {
  if (!is_injective(j)) throw Error(ErrorCode::HypothesisViolated, "padding object is not injective");
  const RepMorphism t = twist ? *twist : RepMorphism::zero(step.a(), j);
  if (!(t.source() == step.a()) || !(t.target() == j)) {
    throw Error(ErrorCode::HypothesisViolated, "twist must map the cosyzygy into the padding object");
  }
  const Biproduct mid = direct_sum(step.b(), j);
  const RepMorphism parts[] = {step.x(), t};
  return Conflation::from_inflation(pair(mid, parts, step.a()));
}

InjectiveResolution pad_resolution(const InjectiveResolution& r, std::size_t k, const Representation& j,
                                   std::size_t depth, const std::optional<RepMorphism>& twist) {
  if (k >= r.steps.size()) throw Error(ErrorCode::DepthInsufficient, "no step to pad");
  InjectiveResolution out{r.base, {r.steps.begin(), r.steps.begin() + static_cast<std::ptrdiff_t>(k)}};
  out.steps.push_back(pad_step(r.steps[k], j, twist));
  return extend_resolution(std::move(out), std::max(depth, k));
}

std::string DimensionVerdict::to_string() const {
  return std::string(kind == Kind::Finite ? "Finite(" : "AtLeast(") + std::to_string(n) + ")";
}

namespace {

void detect_period(DimensionVerdict& out, const std::vector<Representation>& gs) {
  for (std::size_t j = 1; j < gs.size() && !out.periodic; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (gs[i].dims() != gs[j].dims()) continue;
      if (is_isomorphic(gs[i], gs[j], 0x5eed + i * 131 + j).kind == IsoOutcome::Kind::Witness) {
        out.periodic = true;
        out.period_from = i;
        out.period_to = j;
        break;
      }
    }
  }
}

}  // namespace

DimensionVerdict injective_dimension(const Representation& m, std::size_t max_depth) {
  std::vector<Representation> gs{m};
  for (std::size_t n = 0;; ++n) {
    if (is_injective(gs.back())) return {DimensionVerdict::Kind::Finite, n, gs.back()};
    if (n == max_depth) break;
    gs.push_back(injective_envelope(gs.back()).c());
  }
  DimensionVerdict out{DimensionVerdict::Kind::AtLeast, max_depth + 1, gs.back()};
  detect_period(out, gs);
  return out;
}

DimensionVerdict dimension_from_resolution(const InjectiveResolution& r) {
  for (std::size_t n = 0; n <= r.steps.size(); ++n) {
    if (is_injective(r.cosyzygy(n))) return {DimensionVerdict::Kind::Finite, n, r.cosyzygy(n)};
  }
  return {DimensionVerdict::Kind::AtLeast, r.steps.size() + 1, r.cosyzygy(r.steps.size())};
}

DimensionVerdict global_dimension(const AlgebraPtr& alg, std::size_t max_depth) {
  std::optional<DimensionVerdict> best;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
    DimensionVerdict d = injective_dimension(simple_module(alg, v), max_depth);
    if (!best) {
      best = std::move(d);
      continue;
    }
    const bool worse = (d.kind == DimensionVerdict::Kind::AtLeast && best->kind == DimensionVerdict::Kind::Finite) ||
                       (d.kind == best->kind && d.n > best->n) ||
                       (d.kind == best->kind && d.n == best->n && d.periodic && !best->periodic);
    if (worse) best = std::move(d);
  }
  if (!best) return {DimensionVerdict::Kind::Finite, 0, Representation::zero(alg)};
  return *best;
}

}  // namespace schanuel
