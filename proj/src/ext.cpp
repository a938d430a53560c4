#include "schanuel/ext.hpp"

#include <stdexcept>

#include "schanuel/error.hpp"

namespace schanuel {
namespace {

Matrix unit_column(const PrimeField& f, std::size_t n, std::size_t k) {
  Matrix e(f, n, 1);
  e.set(k, 0, 1);
  return e;
}

void require_same_rep(const Representation& a, const Representation& b, ErrorCode code, const char* what) {
  if (!(a == b)) throw Error(code, what);
}

// rho : P0 -> target sending each generator to the chosen element.
RepMorphism from_generators(const ProjectiveCover& pc, const std::vector<Matrix>& images,
                            const Representation& target) {
  // Column (s, b) at vertex u is target(b) applied to the image of generator s, b a basis path v_s -> u.
  const auto& alg = target.algebra();
  std::vector<Matrix> maps;
  for (std::size_t u = 0; u < alg->vertex_count(); ++u) {
    Matrix m(target.field(), target.dim(u), pc.sum.total.dim(u));
    std::size_t col = 0;
    for (std::size_t s = 0; s < pc.vertices.size(); ++s) {
      for (const auto& b : alg->basis(pc.vertices[s], u)) {
        Matrix x = images[s];
        for (auto a : b.arrows) x = target.arrow_map(a) * x;
        m.set_block(0, col++, x);
      }
    }
    maps.push_back(std::move(m));
  }
  return RepMorphism::trusted(pc.sum.total, target, std::move(maps));
}

// Lifts every generator image of `pc` through `epi` vertexwise.
std::vector<Matrix> lift_generators(const ProjectiveCover& pc, const RepMorphism& along,
                                    const RepMorphism& epi) {
  std::vector<Matrix> out;
  for (std::size_t s = 0; s < pc.vertices.size(); ++s) {
    const std::size_t v = pc.vertices[s];
    auto sol = solve_right(epi.map(v), along.map(v) * pc.generators[s]);
    if (!sol) throw Error(ErrorCode::LiftFailed, "generator does not lift through the deflation");
    out.push_back(std::move(*sol));
  }
  return out;
}

}  // namespace

// --- Conflation -------------------------------------------------------------------

bool Conflation::is_valid(const RepMorphism& x, const RepMorphism& y) {
  if (!(x.target() == y.source())) return false;
  if (!x.is_mono() || !y.is_epi()) return false;
  if (!compose(y, x).is_zero()) return false;
  for (std::size_t v = 0; v < x.maps().size(); ++v) {
    if (x.source().dim(v) + y.target().dim(v) != x.target().dim(v)) return false;
  }
  return true;
}

Conflation Conflation::make(RepMorphism x, RepMorphism y) {
  if (!is_valid(x, y)) throw Error(ErrorCode::NotAConflation, "sequence is not short exact");
  return Conflation(std::move(x), std::move(y));
}

Conflation Conflation::from_inflation(RepMorphism x) {
  if (!x.is_mono()) throw Error(ErrorCode::NotAConflation, "inflation is not mono");
  CokernelResult ck = cokernel(x);
  return Conflation(std::move(x), std::move(ck.projection));
}

Conflation Conflation::from_deflation(RepMorphism y) {
  if (!y.is_epi()) throw Error(ErrorCode::NotAConflation, "deflation is not epi");
  KernelResult k = kernel(y);
  return Conflation(std::move(k.inclusion), std::move(y));
}

Conflation Conflation::split(const Representation& a, const Representation& c) {
  const Biproduct bp = direct_sum(a, c);
  return Conflation(bp.injections[0], bp.projections[1]);
}

Conflation direct_sum(const Conflation& c1, const Conflation& c2) {
  return Conflation::make(direct_sum_morphism(c1.x(), c2.x()), direct_sum_morphism(c1.y(), c2.y()));
}

// --- presentations ----------------------------------------------------------------------

ProjectiveCover projective_cover(const Representation& m) {
  const auto& alg = m.algebra();
  const Quiver& q = alg->quiver();
  const PrimeField& f = m.field();
  std::vector<std::size_t> vertices;
  std::vector<Matrix> generators;
  std::vector<Representation> parts;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    Matrix rad(f, m.dim(v), 0);
    for (auto a : q.incoming(v)) rad = hstack(rad, m.arrow_map(a));
    const CokernelProjection top = cokernel_projection(rad);
    if (top.dim == 0) continue;
    const Representation pv = indecomposable_projective(alg, v);
    for (auto k : top.complement) {
      vertices.push_back(v);
      generators.push_back(unit_column(f, m.dim(v), k));
      parts.push_back(pv);
    }
  }
  Biproduct sum = direct_sum(alg, parts);
  ProjectiveCover pc{std::move(sum), std::move(vertices), std::move(generators), RepMorphism::zero(m, m)};
  pc.cover = from_generators(pc, pc.generators, m);
  if (!pc.cover.is_epi()) throw Error(ErrorCode::LiftFailed, "top generators do not generate");
  return pc;
}

std::shared_ptr<const Presentation> presentation(const Representation& c) {
  ProjectiveCover p0 = projective_cover(c);
  KernelResult omega = kernel(p0.cover);
  ProjectiveCover p1 = projective_cover(omega.object);
  return std::make_shared<const Presentation>(Presentation{c, std::move(p0), std::move(omega), std::move(p1)});
}

// --- ExtSpace ----------------------------------------------------------------------------

std::shared_ptr<const ExtSpace> ExtSpace::make(std::shared_ptr<const Presentation> pres,
                                               const Representation& a) {
  if (pres->c.algebra() != a.algebra()) throw Error(ErrorCode::AlgebraMismatch, "E(C, A) across algebras");
  HomSpace cocycles(pres->omega.object, a);
  // Coboundaries: restrictions to Omega C of the Yoneda basis of Hom(P0, A).
  const PrimeField& f = a.field();
  const ProjectiveCover& p0 = pres->p0;
  Matrix bounds(f, cocycles.dim(), 0);
  for (std::size_t s = 0; s < p0.vertices.size(); ++s) {
    const std::size_t v = p0.vertices[s];
    for (std::size_t k = 0; k < a.dim(v); ++k) {
      const RepMorphism yon = compose(map_from_projective(a, v, unit_column(f, a.dim(v), k)),
                                      p0.sum.projections[s]);
      const auto coords = cocycles.coordinates(compose(yon, pres->omega.inclusion));
      if (!coords) throw std::logic_error("coboundary outside the cocycle space");
      bounds = hstack(bounds, Matrix::column(f, *coords));
    }
  }
  CokernelProjection coker = cokernel_projection(bounds);
  return std::shared_ptr<const ExtSpace>(new ExtSpace(std::move(pres), std::move(cocycles), std::move(coker)));
}

std::shared_ptr<const ExtSpace> ExtSpace::make(const Representation& c, const Representation& a) {
  return make(schanuel::presentation(c), a);
}

std::vector<Scalar> ExtSpace::coordinates(const RepMorphism& cocycle) const {
  const auto z = cocycles_.coordinates(cocycle);
  if (!z) throw Error(ErrorCode::DimensionMismatch, "map is not a cocycle Omega C -> A");
  const Matrix out = coker_.proj * Matrix::column(a_obj().field(), *z);
  return {out.values().begin(), out.values().end()};
}

RepMorphism ExtSpace::cocycle(std::span<const Scalar> coords) const {
  if (coords.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "wrong number of Ext coordinates");
  const Matrix z = coker_.section * Matrix::column(a_obj().field(), coords);
  return cocycles_.combine(z.values());
}

std::size_t ext_dim(const Representation& c, const Representation& a) { return ExtSpace::make(c, a)->dim(); }

// --- ExtClass ------------------------------------------------------------------------------

bool ExtClass::is_zero() const noexcept {
  for (auto c : coords) {
    if (c != 0) return false;
  }
  return true;
}

ExtClass ExtClass::zero(std::shared_ptr<const ExtSpace> space) {
  const std::size_t d = space->dim();
  return ExtClass{std::move(space), std::vector<Scalar>(d, 0)};
}

ExtClass ExtClass::basis(std::shared_ptr<const ExtSpace> space, std::size_t k) {
  ExtClass out = zero(std::move(space));
  out.coords.at(k) = 1;
  return out;
}

bool operator==(const ExtClass& a, const ExtClass& b) {
  return a.coords == b.coords && a.c_obj() == b.c_obj() && a.a_obj() == b.a_obj();
}

ExtClass ext_class_of(const Conflation& conf) {
  return ext_class_of(conf, ExtSpace::make(conf.c(), conf.a()));
}

ExtClass ext_class_of(const Conflation& conf, std::shared_ptr<const ExtSpace> space) {
  if (!(space->c_obj() == conf.c()) || !(space->a_obj() == conf.a())) {
    throw Error(ErrorCode::BaseMismatch, "Ext space does not match the conflation ends");
  }
  const Presentation& pres = *space->presentation();
  const auto lifts = lift_generators(pres.p0, RepMorphism::identity(conf.c()), conf.y());
  const RepMorphism rho = from_generators(pres.p0, lifts, conf.b());
  const RepMorphism phi = factor_through_mono(compose(rho, pres.omega.inclusion), conf.x());
  auto coords = space->coordinates(phi);
  return ExtClass{std::move(space), std::move(coords)};
}

Conflation realize(const ExtClass& delta) {
  const Presentation& pres = *delta.space->presentation();
  const Representation& a = delta.a_obj();
  const Biproduct sum = direct_sum(a, pres.p0.sum.total);
  const RepMorphism phi = delta.cocycle();
  const RepMorphism parts[] = {phi, -pres.omega.inclusion};
  const RepMorphism anti = pair(sum, parts, pres.omega.object);
  CokernelResult ck = cokernel(anti);
  RepMorphism x = compose(ck.projection, sum.injections[0]);
  const RepMorphism down[] = {RepMorphism::zero(a, delta.c_obj()), pres.p0.cover};
  RepMorphism y = factor_through_epi(copair(sum, down, delta.c_obj()), ck.projection);
  return Conflation::make(std::move(x), std::move(y));
}

ExtClass pushforward(const RepMorphism& f, const ExtClass& delta) {
  require_same_rep(f.source(), delta.a_obj(), ErrorCode::SourceMismatch, "pushforward: f does not start at A");
  auto space = ExtSpace::make(delta.space->presentation(), f.target());
  auto coords = space->coordinates(compose(f, delta.cocycle()));
  return ExtClass{std::move(space), std::move(coords)};
}

ExtClass pullback(const RepMorphism& g, const ExtClass& delta) {
  require_same_rep(g.target(), delta.c_obj(), ErrorCode::TargetMismatch, "pullback: g does not end at C");
  const Presentation& pres = *delta.space->presentation();
  auto space = ExtSpace::make(g.source(), delta.a_obj());
  const Presentation& pres2 = *space->presentation();
  // Chain map P0' -> P0 over g, then its restriction Omega C' -> Omega C.
  const auto lifts = lift_generators(pres2.p0, g, pres.p0.cover);
  const RepMorphism g0 = from_generators(pres2.p0, lifts, pres.p0.sum.total);
  const RepMorphism g1 = factor_through_mono(compose(g0, pres2.omega.inclusion), pres.omega.inclusion);
  auto coords = space->coordinates(compose(delta.cocycle(), g1));
  return ExtClass{std::move(space), std::move(coords)};
}

ExtClass add_classes(const ExtClass& d1, const ExtClass& d2) {
  if (!(d1.c_obj() == d2.c_obj()) || !(d1.a_obj() == d2.a_obj())) {
    throw Error(ErrorCode::BaseMismatch, "adding classes of different Ext groups");
  }
  const PrimeField& f = d1.a_obj().field();
  ExtClass out = d1;
  for (std::size_t k = 0; k < out.coords.size(); ++k) out.coords[k] = f.add(out.coords[k], d2.coords[k]);
  return out;
}

ExtClass scale_class(const ExtClass& d, Scalar c) {
  const PrimeField& f = d.a_obj().field();
  ExtClass out = d;
  for (auto& x : out.coords) x = f.mul(x, c % f.p());
  return out;
}

// --- splitting ---------------------------------------------------------------------------------

Biproduct split_structure(const Conflation& conf, const RepMorphism& retraction) {
  if (!(retraction.source() == conf.b()) || !(retraction.target() == conf.a()) ||
      !(compose(retraction, conf.x()) == RepMorphism::identity(conf.a()))) {
    throw Error(ErrorCode::NotARetraction, "r o x is not the identity");
  }
  const RepMorphism idem = RepMorphism::identity(conf.b()) - compose(conf.x(), retraction);
  RepMorphism section = factor_through_epi(idem, conf.y());
  Biproduct bp{conf.b(), {conf.x(), section}, {retraction, conf.y()}};
  if (!bp.verify()) throw std::logic_error("split_structure: biproduct identities fail");
  return bp;
}

std::optional<SplitWitness> is_split(const Conflation& conf) {
  const bool zero_class = ext_class_of(conf).is_zero();
  const HomSpace hom(conf.b(), conf.a());
  const auto r = solve_in_hom(
      hom, [&](const RepMorphism& m) { return compose(m, conf.x()); }, RepMorphism::identity(conf.a()));
  if (r.has_value() != zero_class) throw std::logic_error("is_split: retraction search disagrees with Ext class");
  if (!r) return std::nullopt;
  Biproduct bp = split_structure(conf, *r);
  RepMorphism section = bp.injections[1];
  return SplitWitness{*r, std::move(section), std::move(bp)};
}

bool is_injective(const Representation& m) {
  for (std::size_t v = 0; v < m.algebra()->vertex_count(); ++v) {
    if (ext_dim(simple_module(m.algebra(), v), m) != 0) return false;
  }
  return true;
}

}  // namespace schanuel
