#include "schanuel/rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "schanuel/error.hpp"

namespace schanuel {
namespace {

bool relations_hold(const BoundQuiverAlgebra& alg, const std::vector<std::size_t>& dims,
                    const std::vector<Matrix>& maps) {
  const Quiver& q = alg.quiver();
  for (const auto& rel : alg.relations().generators) {
    const std::size_t s = q.arrow(rel.terms.front().arrows.front()).source;
    const std::size_t t = q.arrow(rel.terms.front().arrows.back()).target;
    Matrix total(alg.field(), dims[t], dims[s]);
    for (const auto& term : rel.terms) {
      Matrix m = Matrix::identity(alg.field(), dims[s]);
      for (auto a : term.arrows) m = maps[a] * m;
      total += m.scaled(term.coeff);
    }
    if (!total.is_zero()) return false;
  }
  return true;
}

void check_shapes(const BoundQuiverAlgebra& alg, const std::vector<std::size_t>& dims,
                  const std::vector<Matrix>& maps) {
  const Quiver& q = alg.quiver();
  if (dims.size() != q.vertex_count()) {
    throw Error(ErrorCode::InvalidRepresentation, "dimension vector has wrong length");
  }
  if (maps.size() != q.arrow_count()) {
    throw Error(ErrorCode::InvalidRepresentation, "wrong number of arrow maps");
  }
  for (std::size_t a = 0; a < maps.size(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (!(maps[a].field() == alg.field()) || maps[a].rows() != dims[arr.target] ||
        maps[a].cols() != dims[arr.source]) {
      throw Error(ErrorCode::InvalidRepresentation, "map of arrow '" + arr.label + "' has wrong shape");
    }
  }
}

std::vector<std::size_t> hom_offsets(const Representation& src, const Representation& tgt) {
  std::vector<std::size_t> off(src.dims().size() + 1, 0);
  for (std::size_t v = 0; v < src.dims().size(); ++v) off[v + 1] = off[v] + tgt.dim(v) * src.dim(v);
  return off;
}

std::vector<Matrix> unvectorize(const Representation& src, const Representation& tgt,
                                const std::vector<std::size_t>& off, std::span<const Scalar> vec) {
  std::vector<Matrix> maps;
  maps.reserve(src.dims().size());
  for (std::size_t v = 0; v < src.dims().size(); ++v) {
    Matrix m(src.field(), tgt.dim(v), src.dim(v));
    for (std::size_t r = 0; r < tgt.dim(v); ++r) {
      for (std::size_t c = 0; c < src.dim(v); ++c) m.set(r, c, vec[off[v] + r * src.dim(v) + c]);
    }
    maps.push_back(std::move(m));
  }
  return maps;
}

void require_same_algebra(const Representation& a, const Representation& b) {
  if (a.algebra() != b.algebra()) {
    throw Error(ErrorCode::AlgebraMismatch, "representations over different algebras");
  }
}

Matrix right_inverse(const Matrix& epi) {
  auto sol = solve_right(epi, Matrix::identity(epi.field(), epi.rows()));
  if (!sol) throw Error(ErrorCode::LiftFailed, "vertex map is not surjective");
  return *sol;
}

Scalar draw(std::mt19937_64& rng, Scalar bound) { return static_cast<Scalar>(rng() % bound); }

}  // namespace

// --- Representation ---------------------------------------------------------

Representation::Representation(AlgebraPtr algebra, std::vector<std::size_t> dims,
                               std::vector<Matrix> arrow_maps)
    : algebra_(std::move(algebra)), data_(std::make_shared<const Data>(Data{std::move(dims), std::move(arrow_maps)})) {
  if (!algebra_) throw Error(ErrorCode::InvalidRepresentation, "null algebra");
  check_shapes(*algebra_, data_->dims, data_->maps);
  if (!relations_hold(*algebra_, data_->dims, data_->maps)) {
    throw Error(ErrorCode::InvalidRepresentation, "a relation does not act as zero");
  }
}

Representation::Representation(Trusted, AlgebraPtr algebra, std::vector<std::size_t> dims,
                               std::vector<Matrix> arrow_maps)
    : algebra_(std::move(algebra)), data_(std::make_shared<const Data>(Data{std::move(dims), std::move(arrow_maps)})) {
  if (!algebra_) throw Error(ErrorCode::InvalidRepresentation, "null algebra");
  check_shapes(*algebra_, data_->dims, data_->maps);
}

Representation Representation::trusted(AlgebraPtr algebra, std::vector<std::size_t> dims,
                                       std::vector<Matrix> arrow_maps) {
  return Representation(Trusted{}, std::move(algebra), std::move(dims), std::move(arrow_maps));
}

Representation Representation::zero(const AlgebraPtr& algebra) {
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < algebra->quiver().arrow_count(); ++a) maps.emplace_back(algebra->field(), 0, 0);
  return Representation(algebra, std::vector<std::size_t>(algebra->vertex_count(), 0), std::move(maps));
}

std::size_t Representation::total_dim() const noexcept {
  return std::accumulate(data_->dims.begin(), data_->dims.end(), std::size_t{0});
}

Matrix Representation::path_map(const Path& p) const {
  if (p.arrows.empty()) return Matrix::identity(field(), data_->dims.at(p.source));
  Matrix m = data_->maps.at(p.arrows.front());
  for (std::size_t k = 1; k < p.arrows.size(); ++k) m = data_->maps.at(p.arrows[k]) * m;
  return m;
}

// --- RepMorphism --------------------------------------------------------------

RepMorphism::RepMorphism(Trusted, Representation source, Representation target,
                         std::vector<Matrix> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {}

RepMorphism::RepMorphism(Representation source, Representation target, std::vector<Matrix> maps)
    : source_(std::move(source)), target_(std::move(target)), maps_(std::move(maps)) {
  require_same_algebra(source_, target_);
  const std::size_t n = source_.dims().size();
  if (maps_.size() != n) throw Error(ErrorCode::NotNatural, "wrong number of vertex maps");
  for (std::size_t v = 0; v < n; ++v) {
    if (maps_[v].rows() != target_.dim(v) || maps_[v].cols() != source_.dim(v)) {
      throw Error(ErrorCode::NotNatural, "vertex map " + std::to_string(v) + " has wrong shape");
    }
  }
  if (!is_natural()) throw Error(ErrorCode::NotNatural, "a naturality square does not commute");
}

RepMorphism RepMorphism::trusted(Representation source, Representation target, std::vector<Matrix> maps) {
  return RepMorphism(Trusted{}, std::move(source), std::move(target), std::move(maps));
}

RepMorphism RepMorphism::identity(const Representation& m) {
  std::vector<Matrix> maps;
  for (auto d : m.dims()) maps.push_back(Matrix::identity(m.field(), d));
  return trusted(m, m, std::move(maps));
}

RepMorphism RepMorphism::zero(const Representation& source, const Representation& target) {
  require_same_algebra(source, target);
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < source.dims().size(); ++v) {
    maps.emplace_back(source.field(), target.dim(v), source.dim(v));
  }
  return trusted(source, target, std::move(maps));
}

bool RepMorphism::is_natural() const {
  const Quiver& q = source_.algebra()->quiver();
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    if (!(target_.arrow_map(a) * maps_[arr.source] == maps_[arr.target] * source_.arrow_map(a))) {
      return false;
    }
  }
  return true;
}

bool RepMorphism::is_zero() const noexcept {
  for (const auto& m : maps_) {
    if (!m.is_zero()) return false;
  }
  return true;
}

bool RepMorphism::is_mono() const {
  for (const auto& m : maps_) {
    if (rank(m) != m.cols()) return false;
  }
  return true;
}

bool RepMorphism::is_epi() const {
  for (const auto& m : maps_) {
    if (rank(m) != m.rows()) return false;
  }
  return true;
}

bool RepMorphism::is_iso() const {
  for (const auto& m : maps_) {
    if (!is_invertible(m)) return false;
  }
  return true;
}

RepMorphism RepMorphism::operator+(const RepMorphism& rhs) const {
  if (!(source_ == rhs.source_) || !(target_ == rhs.target_)) {
    throw Error(ErrorCode::DimensionMismatch, "adding morphisms with different endpoints");
  }
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < maps_.size(); ++v) maps.push_back(maps_[v] + rhs.maps_[v]);
  return trusted(source_, target_, std::move(maps));
}

RepMorphism RepMorphism::operator-() const { return scaled(source_.field().neg(1)); }

RepMorphism RepMorphism::operator-(const RepMorphism& rhs) const { return *this + (-rhs); }

RepMorphism RepMorphism::scaled(Scalar c) const {
  std::vector<Matrix> maps;
  for (const auto& m : maps_) maps.push_back(m.scaled(c));
  return trusted(source_, target_, std::move(maps));
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorCode::TargetMismatch, "composition: target of f is not the source of g");
  }
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.maps().size(); ++v) maps.push_back(g.map(v) * f.map(v));
  return RepMorphism::trusted(f.source(), g.target(), std::move(maps));
}

RepMorphism inverse(const RepMorphism& f) {
  std::vector<Matrix> maps;
  for (const auto& m : f.maps()) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::NotAnIsomorphism, "vertex map not square");
    auto inv = invert(m);
    if (!inv) throw Error(ErrorCode::NotAnIsomorphism, "vertex map not invertible");
    maps.push_back(std::move(*inv));
  }
  return RepMorphism::trusted(f.target(), f.source(), std::move(maps));
}

// --- canonical modules ----------------------------------------------------------

Representation simple_module(const AlgebraPtr& alg, std::size_t vertex) {
  if (vertex >= alg->vertex_count()) throw Error(ErrorCode::BadVertex, "no vertex " + std::to_string(vertex));
  std::vector<std::size_t> dims(alg->vertex_count(), 0);
  dims[vertex] = 1;
  std::vector<Matrix> maps;
  for (const auto& a : alg->quiver().arrows()) maps.emplace_back(alg->field(), dims[a.target], dims[a.source]);
  return Representation(alg, std::move(dims), std::move(maps));
}

Representation indecomposable_projective(const AlgebraPtr& alg, std::size_t vertex) {
  if (vertex >= alg->vertex_count()) throw Error(ErrorCode::BadVertex, "no vertex " + std::to_string(vertex));
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) dims.push_back(alg->basis_dim(vertex, j));
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    const auto& from = alg->basis(vertex, arr.source);
    Matrix m(alg->field(), dims[arr.target], dims[arr.source]);
    for (std::size_t k = 0; k < from.size(); ++k) {
      const auto nf = alg->normal_form(concat(from[k], make_path(q, {a})));
      for (std::size_t r = 0; r < nf.size(); ++r) m.set(r, k, nf[r]);
    }
    maps.push_back(std::move(m));
  }
  return Representation(alg, std::move(dims), std::move(maps));
}

Representation indecomposable_injective(const AlgebraPtr& alg, std::size_t vertex) {
  if (vertex >= alg->vertex_count()) throw Error(ErrorCode::BadVertex, "no vertex " + std::to_string(vertex));
  const Quiver& q = alg->quiver();
  std::vector<std::size_t> dims;
  for (std::size_t j = 0; j < q.vertex_count(); ++j) dims.push_back(alg->basis_dim(j, vertex));
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    // Precomposition with a sends paths target(a) -> vertex to paths source(a) -> vertex.
    const auto& from = alg->basis(arr.target, vertex);
    Matrix pre(alg->field(), dims[arr.source], dims[arr.target]);
    for (std::size_t k = 0; k < from.size(); ++k) {
      const auto nf = alg->normal_form(concat(make_path(q, {a}), from[k]));
      for (std::size_t r = 0; r < nf.size(); ++r) pre.set(r, k, nf[r]);
    }
    maps.push_back(pre.transpose());
  }
  return Representation(alg, std::move(dims), std::move(maps));
}

RepMorphism socle_inclusion(const Representation& m) {
  const auto& alg = m.algebra();
  const Quiver& q = alg->quiver();
  std::vector<Matrix> incl;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    Matrix stacked(m.field(), 0, m.dim(v));
    for (auto a : q.outgoing(v)) stacked = vstack(stacked, m.arrow_map(a));
    incl.push_back(kernel_basis(stacked));
    dims.push_back(incl.back().cols());
  }
  std::vector<Matrix> maps;
  for (const auto& a : q.arrows()) maps.emplace_back(m.field(), dims[a.target], dims[a.source]);
  Representation soc(alg, std::move(dims), std::move(maps));
  return RepMorphism(std::move(soc), m, std::move(incl));
}

std::vector<std::size_t> top_dims(const Representation& m) {
  const Quiver& q = m.algebra()->quiver();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    Matrix rad(m.field(), m.dim(v), 0);
    for (auto a : q.incoming(v)) rad = hstack(rad, m.arrow_map(a));
    out.push_back(m.dim(v) - rank(rad));
  }
  return out;
}

RepMorphism map_from_projective(const Representation& m, std::size_t vertex, const Matrix& element) {
  const auto& alg = m.algebra();
  if (element.rows() != m.dim(vertex) || element.cols() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "element does not live at the vertex");
  }
  Representation proj = indecomposable_projective(alg, vertex);
  std::vector<Matrix> maps;
  for (std::size_t j = 0; j < alg->vertex_count(); ++j) {
    const auto& paths = alg->basis(vertex, j);
    Matrix f(m.field(), m.dim(j), paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
      Matrix x = element;
      for (auto a : paths[k].arrows) x = m.arrow_map(a) * x;
      f.set_block(0, k, x);
    }
    maps.push_back(std::move(f));
  }
  return RepMorphism(std::move(proj), m, std::move(maps));
}

RepMorphism map_to_injective(const Representation& m, std::size_t vertex, const Matrix& functional) {
  const auto& alg = m.algebra();
  if (functional.cols() != m.dim(vertex) || functional.rows() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "functional does not live at the vertex");
  }
  Representation inj = indecomposable_injective(alg, vertex);
  std::vector<Matrix> maps;
  for (std::size_t j = 0; j < alg->vertex_count(); ++j) {
    const auto& paths = alg->basis(j, vertex);
    Matrix f(m.field(), paths.size(), m.dim(j));
    for (std::size_t k = 0; k < paths.size(); ++k) f.set_block(k, 0, functional * m.path_map(paths[k]));
    maps.push_back(std::move(f));
  }
  return RepMorphism(m, std::move(inj), std::move(maps));
}

// --- Hom ----------------------------------------------------------------------------

HomSpace::HomSpace(Representation source, Representation target)
    : source_(std::move(source)),
      target_(std::move(target)),
      offsets_(hom_offsets(source_, target_)),
      basis_(source_.field(), offsets_.back(), 0) {
  require_same_algebra(source_, target_);
  const AlgebraPtr& alg = source_.algebra();
  const Quiver& q = alg->quiver();
  const PrimeField& fld = source_.field();
  const std::size_t nv = q.vertex_count();

  // Top generators: unit vectors complementing the radical at each vertex.
  for (std::size_t v = 0; v < nv; ++v) {
    Matrix rad(fld, source_.dim(v), 0);
    for (auto a : q.incoming(v)) rad = hstack(rad, source_.arrow_map(a));
    for (auto i : cokernel_projection(rad).complement) gens_.emplace_back(v, i);
  }
  gen_offsets_.assign(1, 0);
  for (const auto& [v, i] : gens_) gen_offsets_.push_back(gen_offsets_.back() + target_.dim(v));
  const std::size_t nvars = gen_offsets_.back();

  // P0 = (+)_g P_{v(g)}; at vertex u its basis is the pairs (g, b) with b a basis path v(g) -> u.
  // g_map[u] is the cover P0_u -> M_u, n_paths[u][g] the maps N(b) for those paths.
  // n_paths[u][v] holds N(b) for the basis paths b : v -> u, m_paths likewise for M.
  std::vector<Matrix> g_map;
  std::vector<std::vector<std::vector<Matrix>>> n_paths(nv, std::vector<std::vector<Matrix>>(nv));
  std::vector<std::vector<std::vector<Matrix>>> m_paths(nv, std::vector<std::vector<Matrix>>(nv));
  std::vector<bool> is_gen_vertex(nv, false);
  for (const auto& [v, i] : gens_) is_gen_vertex[v] = true;
  for (std::size_t u = 0; u < nv; ++u) {
    for (std::size_t v = 0; v < nv; ++v) {
      if (!is_gen_vertex[v]) continue;
      for (const auto& b : alg->basis(v, u)) {
        n_paths[u][v].push_back(target_.path_map(b));
        m_paths[u][v].push_back(source_.path_map(b));
      }
    }
  }
  std::vector<std::vector<std::size_t>> block_start(nv);
  for (std::size_t u = 0; u < nv; ++u) {
    std::size_t cols = 0;
    for (const auto& [v, i] : gens_) {
      block_start[u].push_back(cols);
      cols += alg->basis_dim(v, u);
    }
    Matrix cover(fld, source_.dim(u), cols);
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const auto [v, i] = gens_[g];
      for (std::size_t k = 0; k < m_paths[u][v].size(); ++k) {
        const Matrix& pm = m_paths[u][v][k];
        for (std::size_t r = 0; r < source_.dim(u); ++r) cover.set(r, block_start[u][g] + k, pm(r, i));
      }
    }
    g_map.push_back(std::move(cover));
  }

  // Relations: top generators of the kernel of the cover, as a submodule of P0.
  std::vector<Matrix> omega;
  for (std::size_t u = 0; u < nv; ++u) omega.push_back(kernel_basis(g_map[u]));
  std::vector<Matrix> projective_arrows;  // arrow maps of P_v, indexed [v * arrows + a]
  for (std::size_t v = 0; v < nv; ++v) {
    const Representation pv = indecomposable_projective(alg, v);
    for (std::size_t a = 0; a < q.arrow_count(); ++a) projective_arrows.push_back(pv.arrow_map(a));
  }
  std::vector<std::pair<std::size_t, Matrix>> relations;
  for (std::size_t u = 0; u < nv; ++u) {
    if (omega[u].cols() == 0) continue;
    Matrix rad(fld, g_map[u].cols(), 0);
    for (auto a : q.incoming(u)) {
      const std::size_t w = q.arrow(a).source;
      Matrix act(fld, g_map[u].cols(), g_map[w].cols());
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const Matrix& pa = projective_arrows[gens_[g].first * q.arrow_count() + a];
        act.set_block(block_start[u][g], block_start[w][g], pa);
      }
      rad = hstack(rad, act * omega[w]);
    }
    const RrefResult rr = rref(hstack(rad, omega[u]));
    for (auto c : rr.pivot_columns) {
      if (c < rad.cols()) continue;
      relations.emplace_back(u, omega[u].select_cols(std::vector<std::size_t>{c - rad.cols()}));
    }
  }

  std::size_t neq = 0;
  for (const auto& [u, w] : relations) neq += target_.dim(u);
  Matrix system(fld, neq, nvars);
  std::size_t row = 0;
  for (const auto& [u, w] : relations) {
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      Matrix acc(fld, target_.dim(u), target_.dim(gens_[g].first));
      const auto& maps = n_paths[u][gens_[g].first];
      for (std::size_t k = 0; k < maps.size(); ++k) {
        const Scalar c = w(block_start[u][g] + k, 0);
        if (c) acc += maps[k].scaled(c);
      }
      system.set_block(row, gen_offsets_[g], acc);
    }
    row += target_.dim(u);
  }
  auto kb = kernel_with_free_columns(system);
  free_vars_ = std::move(kb.free_columns);

  // f_u = H_u(n) s_u with H_u(n) = [N(b) n_g] and s_u a right inverse of the cover.
  std::vector<Matrix> sections;
  for (std::size_t u = 0; u < nv; ++u) {
    auto s = solve_right(g_map[u], Matrix::identity(fld, source_.dim(u)));
    if (!s) throw std::logic_error("top generators do not generate");
    sections.push_back(std::move(*s));
  }
  basis_ = Matrix(fld, offsets_.back(), kb.basis.cols());
  for (std::size_t k = 0; k < kb.basis.cols(); ++k) {
    for (std::size_t u = 0; u < nv; ++u) {
      Matrix h(fld, target_.dim(u), g_map[u].cols());
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const std::size_t nd = target_.dim(gens_[g].first);
        Matrix ng(fld, nd, 1);
        for (std::size_t r = 0; r < nd; ++r) ng.set(r, 0, kb.basis(gen_offsets_[g] + r, k));
        if (ng.is_zero()) continue;
        const auto& maps = n_paths[u][gens_[g].first];
        for (std::size_t j = 0; j < maps.size(); ++j) h.set_block(0, block_start[u][g] + j, maps[j] * ng);
      }
      const Matrix fu = h * sections[u];
      for (std::size_t r = 0; r < fu.rows(); ++r) {
        for (std::size_t c = 0; c < fu.cols(); ++c) basis_.set(offsets_[u] + r * fu.cols() + c, k, fu(r, c));
      }
    }
  }
}

RepMorphism HomSpace::element(std::size_t k) const {
  std::vector<Scalar> col(basis_.rows());
  for (std::size_t r = 0; r < col.size(); ++r) col[r] = basis_(r, k);
  return RepMorphism::trusted(source_, target_, unvectorize(source_, target_, offsets_, col));
}

RepMorphism HomSpace::combine(std::span<const Scalar> coeffs) const {
  if (coeffs.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "wrong number of coefficients");
  const Matrix v = basis_ * Matrix::column(source_.field(), coeffs);
  return RepMorphism::trusted(source_, target_, unvectorize(source_, target_, offsets_, v.values()));
}

std::vector<RepMorphism> HomSpace::basis() const {
  std::vector<RepMorphism> out;
  for (std::size_t k = 0; k < dim(); ++k) out.push_back(element(k));
  return out;
}

std::optional<std::vector<Scalar>> HomSpace::coordinates(const RepMorphism& f) const {
  if (!(f.source() == source_) || !(f.target() == target_)) return std::nullopt;
  if (!f.is_natural()) return std::nullopt;
  std::vector<Scalar> params;
  for (const auto& [u, i] : gens_) {
    const Matrix& fu = f.map(u);
    for (std::size_t r = 0; r < fu.rows(); ++r) params.push_back(fu(r, i));
  }
  // A natural map is determined by its values on the generators.
  std::vector<Scalar> coeffs;
  for (auto fv : free_vars_) coeffs.push_back(params[fv]);
  return coeffs;
}

std::vector<Scalar> vectorize(const RepMorphism& f) {
  std::vector<Scalar> out;
  for (const auto& m : f.maps()) out.insert(out.end(), m.values().begin(), m.values().end());
  return out;
}

std::vector<RepMorphism> hom_basis(const Representation& m, const Representation& n) {
  return HomSpace(m, n).basis();
}

// --- kernels and cokernels -----------------------------------------------------------

KernelResult kernel(const RepMorphism& f) {
  const Representation& src = f.source();
  const Quiver& q = src.algebra()->quiver();
  std::vector<Matrix> incl;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    incl.push_back(kernel_basis(f.map(v)));
    dims.push_back(incl.back().cols());
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    auto sol = solve_right(incl[arr.target], src.arrow_map(a) * incl[arr.source]);
    if (!sol) throw Error(ErrorCode::NotNatural, "kernel is not a subrepresentation");
    maps.push_back(std::move(*sol));
  }
  Representation ker = Representation::trusted(src.algebra(), std::move(dims), std::move(maps));
  RepMorphism inclusion(ker, src, std::move(incl));
  return KernelResult{std::move(ker), std::move(inclusion)};
}

CokernelResult cokernel(const RepMorphism& f) {
  const Representation& tgt = f.target();
  const Quiver& q = tgt.algebra()->quiver();
  std::vector<CokernelProjection> cps;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    cps.push_back(cokernel_projection(f.map(v)));
    dims.push_back(cps.back().dim);
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const Arrow& arr = q.arrow(a);
    maps.push_back(cps[arr.target].proj * tgt.arrow_map(a) * cps[arr.source].section);
  }
  Representation coker = Representation::trusted(tgt.algebra(), std::move(dims), std::move(maps));
  std::vector<Matrix> proj;
  for (auto& cp : cps) proj.push_back(std::move(cp.proj));
  RepMorphism projection(tgt, coker, std::move(proj));
  return CokernelResult{std::move(coker), std::move(projection)};
}

RepMorphism factor_through_mono(const RepMorphism& t, const RepMorphism& mono) {
  if (!(t.target() == mono.target())) throw Error(ErrorCode::TargetMismatch, "factor_through_mono targets differ");
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < t.maps().size(); ++v) {
    auto sol = solve_right(mono.map(v), t.map(v));
    if (!sol) throw Error(ErrorCode::LiftFailed, "map does not factor through the monomorphism");
    maps.push_back(std::move(*sol));
  }
  try {
    return RepMorphism(t.source(), mono.source(), std::move(maps));
  } catch (const Error&) {
    throw Error(ErrorCode::LiftFailed, "factorization through a non-mono is not natural");
  }
}

RepMorphism factor_through_epi(const RepMorphism& t, const RepMorphism& epi) {
  if (!(t.source() == epi.source())) throw Error(ErrorCode::SourceMismatch, "factor_through_epi sources differ");
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < t.maps().size(); ++v) {
    Matrix u = t.map(v) * right_inverse(epi.map(v));
    if (!(u * epi.map(v) == t.map(v))) {
      throw Error(ErrorCode::LiftFailed, "map does not factor through the epimorphism");
    }
    maps.push_back(std::move(u));
  }
  try {
    return RepMorphism(epi.target(), t.target(), std::move(maps));
  } catch (const Error&) {
    throw Error(ErrorCode::LiftFailed, "factorization through a non-epi is not natural");
  }
}

// --- biproducts ------------------------------------------------------------------------

bool Biproduct::verify() const {
  const std::size_t n = injections.size();
  if (projections.size() != n) return false;
  RepMorphism sum = RepMorphism::zero(total, total);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RepMorphism pi = compose(projections[i], injections[j]);
      if (i == j ? !(pi == RepMorphism::identity(injections[j].source())) : !pi.is_zero()) return false;
    }
    sum = sum + compose(injections[i], projections[i]);
  }
  return sum == RepMorphism::identity(total);
}

Biproduct direct_sum(const AlgebraPtr& alg, std::span<const Representation> parts) {
  for (const auto& p : parts) {
    if (p.algebra() != alg) throw Error(ErrorCode::AlgebraMismatch, "summand over a different algebra");
  }
  const Quiver& q = alg->quiver();
  const PrimeField& f = alg->field();
  std::vector<std::size_t> dims(q.vertex_count(), 0);
  for (const auto& p : parts) {
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += p.dim(v);
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.arrow_map(a));
    maps.push_back(block_diagonal(f, blocks));
  }
  Representation total = Representation::trusted(alg, dims, std::move(maps));
  Biproduct out{total, {}, {}};
  std::vector<std::size_t> offset(q.vertex_count(), 0);
  for (const auto& p : parts) {
    std::vector<Matrix> inj;
    std::vector<Matrix> proj;
    for (std::size_t v = 0; v < dims.size(); ++v) {
      Matrix i(f, dims[v], p.dim(v));
      i.set_block(offset[v], 0, Matrix::identity(f, p.dim(v)));
      proj.push_back(i.transpose());
      inj.push_back(std::move(i));
      offset[v] += p.dim(v);
    }
    out.injections.push_back(RepMorphism::trusted(p, total, std::move(inj)));
    out.projections.push_back(RepMorphism::trusted(total, p, std::move(proj)));
  }
  return out;
}

Biproduct direct_sum(const Representation& a, const Representation& b) {
  const Representation parts[] = {a, b};
  return direct_sum(a.algebra(), parts);
}

RepMorphism direct_sum_morphism(const RepMorphism& f, const RepMorphism& g) {
  const Biproduct src = direct_sum(f.source(), g.source());
  const Biproduct tgt = direct_sum(f.target(), g.target());
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.maps().size(); ++v) {
    const Matrix blocks[] = {f.map(v), g.map(v)};
    maps.push_back(block_diagonal(f.source().field(), blocks));
  }
  return RepMorphism::trusted(src.total, tgt.total, std::move(maps));
}

RepMorphism copair(const Biproduct& source, std::span<const RepMorphism> components,
                   const Representation& target) {
  if (components.size() != source.projections.size()) {
    throw Error(ErrorCode::DimensionMismatch, "copair: one component per summand required");
  }
  RepMorphism out = RepMorphism::zero(source.total, target);
  for (std::size_t k = 0; k < components.size(); ++k) out = out + compose(components[k], source.projections[k]);
  return out;
}

RepMorphism pair(const Biproduct& target, std::span<const RepMorphism> components,
                 const Representation& source) {
  if (components.size() != target.injections.size()) {
    throw Error(ErrorCode::DimensionMismatch, "pair: one component per summand required");
  }
  RepMorphism out = RepMorphism::zero(source, target.total);
  for (std::size_t k = 0; k < components.size(); ++k) out = out + compose(target.injections[k], components[k]);
  return out;
}

// --- isomorphism testing ------------------------------------------------------------------

std::string to_string(IsoOutcome::Kind k) {
  switch (k) {
    case IsoOutcome::Kind::Witness: return "witness";
    case IsoOutcome::Kind::NotIsomorphic: return "not_isomorphic";
    case IsoOutcome::Kind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

bool all_blocks_invertible(const Representation& m, const std::vector<std::size_t>& off,
                           std::span<const Scalar> vec) {
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    const std::size_t d = m.dim(v);
    Matrix b(m.field(), d, d);
    for (std::size_t i = 0; i < d * d; ++i) b.set(i / d, i % d, vec[off[v] + i]);
    if (rank(b) != d) return false;
  }
  return true;
}

std::optional<IsoOutcome> accept_witness(const Representation& m, const Representation& n,
                                         const std::vector<std::size_t>& off,
                                         std::span<const Scalar> vec, const std::string& how) {
  RepMorphism w(m, n, unvectorize(m, n, off, vec));
  if (!w.is_iso()) return std::nullopt;
  return IsoOutcome{IsoOutcome::Kind::Witness, std::move(w), how};
}

}  // namespace

IsoOutcome is_isomorphic(const Representation& m, const Representation& n, std::uint64_t seed,
                         std::size_t trials) {
  require_same_algebra(m, n);
  using Kind = IsoOutcome::Kind;
  if (m.dims() != n.dims()) return {Kind::NotIsomorphic, std::nullopt, "dimension vectors differ"};
  if (m.total_dim() == 0) return {Kind::Witness, RepMorphism::zero(m, n), "zero objects"};

  const HomSpace mn(m, n);
  const HomSpace nm(n, m);
  if (mn.dim() != nm.dim()) return {Kind::NotIsomorphic, std::nullopt, "dim Hom(m,n) != dim Hom(n,m)"};
  if (HomSpace(m, m).dim() != mn.dim() || HomSpace(n, n).dim() != mn.dim()) {
    return {Kind::NotIsomorphic, std::nullopt, "endomorphism dimensions differ from Hom dimensions"};
  }
  if (mn.dim() == 0) return {Kind::NotIsomorphic, std::nullopt, "Hom(m,n) = 0"};

  const PrimeField& f = m.field();
  const auto off = hom_offsets(m, n);
  const Matrix& B = mn.basis_matrix();
  const std::size_t d = mn.dim();
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Scalar> c(d);
    for (auto& x : c) x = draw(rng, f.p());
    const Matrix v = B * Matrix::column(f, c);
    if (all_blocks_invertible(m, off, v.values())) {
      if (auto w = accept_witness(m, n, off, v.values(), "random trial " + std::to_string(t))) return *w;
    }
  }

  // Exhaustive: p^d <= 2^20. Odometer over coefficient vectors; wrapping a digit
  // from p-1 to 0 is one more addition of its basis column, so each step adds
  // the columns of every digit it touches.
  double log2_count = static_cast<double>(d) * std::log2(static_cast<double>(f.p()));
  if (log2_count > 20.0) {
    return {Kind::Inconclusive, std::nullopt,
            "no witness in " + std::to_string(trials) + " random trials; exhaustive search too large"};
  }
  const std::size_t nvars = B.rows();
  std::vector<std::vector<Scalar>> cols(d, std::vector<Scalar>(nvars));
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t r = 0; r < nvars; ++r) cols[k][r] = B(r, k);
  }
  std::vector<Scalar> digits(d, 0);
  std::vector<Scalar> cur(nvars, 0);
  while (true) {
    std::size_t k = 0;
    for (; k < d; ++k) {
      for (std::size_t r = 0; r < nvars; ++r) cur[r] = f.add(cur[r], cols[k][r]);
      if (++digits[k] < f.p()) break;
      digits[k] = 0;
    }
    if (k == d) break;
    if (all_blocks_invertible(m, off, cur)) {
      if (auto w = accept_witness(m, n, off, cur, "exhaustive search")) return *w;
    }
  }
  return {Kind::NotIsomorphic, std::nullopt, "exhaustive search found no invertible morphism"};
}

// --- random instances ---------------------------------------------------------------------

Representation random_representation(const AlgebraPtr& alg, std::size_t max_dim, std::uint64_t seed) {
  if (max_dim < 1) throw Error(ErrorCode::InvalidArgument, "max_dim must be >= 1");
  constexpr std::size_t kTriesPerShape = 64;
  constexpr std::size_t kTotalBudget = 100000;
  const Quiver& q = alg->quiver();
  const PrimeField& f = alg->field();
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> dims(q.vertex_count());
  for (auto& d : dims) d = rng() % (max_dim + 1);
  std::size_t spent = 0;
  while (true) {
    for (std::size_t t = 0; t < kTriesPerShape; ++t) {
      if (++spent > kTotalBudget) {
        throw Error(ErrorCode::GenerationBudgetExceeded, "random_representation gave up");
      }
      std::vector<Matrix> maps;
      for (const auto& a : q.arrows()) {
        Matrix m(f, dims[a.target], dims[a.source]);
        for (std::size_t r = 0; r < m.rows(); ++r) {
          for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, draw(rng, f.p()));
        }
        maps.push_back(std::move(m));
      }
      if (relations_hold(*alg, dims, maps)) return Representation(alg, dims, std::move(maps));
    }
    auto largest = std::max_element(dims.begin(), dims.end());
    if (*largest == 0) break;
    --*largest;
  }
  return Representation::zero(alg);
}

}  // namespace schanuel
