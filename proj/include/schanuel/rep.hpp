#pragma once

// The ambient additive category: finite-dimensional representations of a bound
// quiver algebra, their morphisms, Hom spaces, kernels, cokernels, biproducts,
// and isomorphism testing.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "schanuel/matrix.hpp"
#include "schanuel/quiver.hpp"

namespace schanuel {

class Representation {
 public:
  /// Arrow maps are (dim target) x (dim source). Throws InvalidRepresentation on
  /// shape errors or when a relation does not evaluate to zero.
  Representation(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> arrow_maps);

  static Representation zero(const AlgebraPtr& algebra);
  /// Checks shapes only; for objects built from valid ones (sums, kernels, cokernels).
  static Representation trusted(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> arrow_maps);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  const PrimeField& field() const noexcept { return algebra_->field(); }
  const std::vector<std::size_t>& dims() const noexcept { return data_->dims; }
  std::size_t dim(std::size_t v) const { return data_->dims.at(v); }
  std::size_t total_dim() const noexcept;
  bool is_zero() const noexcept { return total_dim() == 0; }
  const Matrix& arrow_map(std::size_t a) const { return data_->maps.at(a); }
  const std::vector<Matrix>& arrow_maps() const noexcept { return data_->maps; }

  /// The linear map of a path, dim(source) -> dim(target).
  Matrix path_map(const Path& p) const;

  friend bool operator==(const Representation& a, const Representation& b) noexcept {
    if (a.algebra_ != b.algebra_) return false;
    return a.data_ == b.data_ || (a.data_->dims == b.data_->dims && a.data_->maps == b.data_->maps);
  }

 private:
  struct Trusted {};
  Representation(Trusted, AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> arrow_maps);

  struct Data {
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
  };
  AlgebraPtr algebra_;
  std::shared_ptr<const Data> data_;  // immutable, shared between copies
};

class RepMorphism {
 public:
  /// Vertex map v is (target dim v) x (source dim v). Throws NotNatural when a
  /// naturality square fails, AlgebraMismatch across algebras.
  RepMorphism(Representation source, Representation target, std::vector<Matrix> maps);

  static RepMorphism identity(const Representation& m);
  static RepMorphism zero(const Representation& source, const Representation& target);
  /// Skips the naturality check; for maps already known to be natural.
  static RepMorphism trusted(Representation source, Representation target, std::vector<Matrix> maps);

  const Representation& source() const noexcept { return source_; }
  const Representation& target() const noexcept { return target_; }
  const Matrix& map(std::size_t v) const { return maps_.at(v); }
  const std::vector<Matrix>& maps() const noexcept { return maps_; }

  bool is_zero() const noexcept;
  bool is_mono() const;
  bool is_epi() const;
  bool is_iso() const;
  bool is_natural() const;

  RepMorphism operator+(const RepMorphism& rhs) const;
  RepMorphism operator-(const RepMorphism& rhs) const;
  RepMorphism operator-() const;
  RepMorphism scaled(Scalar c) const;

  friend bool operator==(const RepMorphism& a, const RepMorphism& b) noexcept {
    return a.maps_ == b.maps_ && a.source_ == b.source_ && a.target_ == b.target_;
  }

 private:
  struct Trusted {};
  RepMorphism(Trusted, Representation source, Representation target, std::vector<Matrix> maps);

  Representation source_;
  Representation target_;
  std::vector<Matrix> maps_;
};

/// g after f. Throws TargetMismatch unless f.target() == g.source().
RepMorphism compose(const RepMorphism& g, const RepMorphism& f);
/// Inverse of an isomorphism; throws NotAnIsomorphism otherwise.
RepMorphism inverse(const RepMorphism& f);

Representation simple_module(const AlgebraPtr& alg, std::size_t vertex);
/// Paths starting at `vertex`; arrows act by postcomposition.
Representation indecomposable_projective(const AlgebraPtr& alg, std::size_t vertex);
/// Dual of the paths ending at `vertex`; arrows act by the transpose of precomposition.
Representation indecomposable_injective(const AlgebraPtr& alg, std::size_t vertex);

/// Inclusion of soc(m), where soc(m)_v is the joint kernel of the arrows leaving v.
RepMorphism socle_inclusion(const Representation& m);
/// Dimension vector of m / rad m.
std::vector<std::size_t> top_dims(const Representation& m);

/// The morphism P_vertex -> m sending e_vertex to `element` (a column in m_vertex).
RepMorphism map_from_projective(const Representation& m, std::size_t vertex, const Matrix& element);
/// The morphism m -> I_vertex induced by `functional` (a 1 x dim m_vertex row).
RepMorphism map_to_injective(const Representation& m, std::size_t vertex, const Matrix& functional);

/// Hom(source, target). A morphism is parametrized by its values on the top
/// generators of the source, subject to the relations of a projective
/// presentation; coordinates are the free parameters. Vectorized morphisms
/// run vertex by vertex, each vertex map row-major.
class HomSpace {
 public:
  HomSpace(Representation source, Representation target);

  const Representation& source() const noexcept { return source_; }
  const Representation& target() const noexcept { return target_; }
  std::size_t dim() const noexcept { return basis_.cols(); }
  /// Columns are vectorized basis morphisms.
  const Matrix& basis_matrix() const noexcept { return basis_; }

  RepMorphism element(std::size_t k) const;
  RepMorphism combine(std::span<const Scalar> coeffs) const;
  std::vector<RepMorphism> basis() const;
  /// Coordinates of f in the basis, or nullopt if f is not in this space.
  std::optional<std::vector<Scalar>> coordinates(const RepMorphism& f) const;

 private:
  Representation source_;
  Representation target_;
  std::vector<std::size_t> offsets_;
  Matrix basis_;
  std::vector<std::size_t> free_vars_;
  std::vector<std::pair<std::size_t, std::size_t>> gens_;  // (vertex, coordinate) of each top generator
  std::vector<std::size_t> gen_offsets_;
};

std::vector<Scalar> vectorize(const RepMorphism& f);
std::vector<RepMorphism> hom_basis(const Representation& m, const Representation& n);

/// Finds some f in `space` with op(f) == rhs, where op is linear. Returns nullopt if none.
template <class Op>
std::optional<RepMorphism> solve_in_hom(const HomSpace& space, Op&& op, const RepMorphism& rhs);

struct KernelResult {
  Representation object;
  RepMorphism inclusion;
};
struct CokernelResult {
  Representation object;
  RepMorphism projection;
};

KernelResult kernel(const RepMorphism& f);
CokernelResult cokernel(const RepMorphism& f);

/// u with mono o u == t. Throws LiftFailed if t does not factor.
RepMorphism factor_through_mono(const RepMorphism& t, const RepMorphism& mono);
/// u with u o epi == t. Throws LiftFailed if t does not factor.
RepMorphism factor_through_epi(const RepMorphism& t, const RepMorphism& epi);

struct Biproduct {
  Representation total;
  std::vector<RepMorphism> injections;
  std::vector<RepMorphism> projections;

  /// p_i i_j = delta_ij and sum_i i_i p_i = id.
  bool verify() const;
};

Biproduct direct_sum(const AlgebraPtr& alg, std::span<const Representation> parts);
Biproduct direct_sum(const Representation& a, const Representation& b);
/// f (+) g between the canonical sums.
RepMorphism direct_sum_morphism(const RepMorphism& f, const RepMorphism& g);
/// (+)_k X_k -> Y, the sum of components[k] o p_k.
RepMorphism copair(const Biproduct& source, std::span<const RepMorphism> components,
                   const Representation& target);
/// X -> (+)_k Y_k, the sum of i_k o components[k].
RepMorphism pair(const Biproduct& target, std::span<const RepMorphism> components,
                 const Representation& source);

struct IsoOutcome {
  enum class Kind { Witness, NotIsomorphic, Inconclusive };
  Kind kind;
  std::optional<RepMorphism> witness;
  std::string reason;
};

std::string to_string(IsoOutcome::Kind k);

/// Randomized search with exhaustive fallback when p^dim Hom <= 2^20. A witness
/// is always re-verified before being returned.
IsoOutcome is_isomorphic(const Representation& m, const Representation& n, std::uint64_t seed,
                         std::size_t trials = 256);

/// Dims uniform in [0, max_dim] per vertex, arrow matrices uniform, rejected until
/// every relation holds; after a fixed number of rejections the largest dimension
/// shrinks by one and sampling restarts.
Representation random_representation(const AlgebraPtr& alg, std::size_t max_dim, std::uint64_t seed);

// ---------------------------------------------------------------------------

template <class Op>
std::optional<RepMorphism> solve_in_hom(const HomSpace& space, Op&& op, const RepMorphism& rhs) {
  const std::vector<Scalar> target = vectorize(rhs);
  Matrix images(space.source().field(), target.size(), space.dim());
  for (std::size_t k = 0; k < space.dim(); ++k) {
    const std::vector<Scalar> col = vectorize(op(space.element(k)));
    for (std::size_t r = 0; r < col.size(); ++r) images.set(r, k, col[r]);
  }
  const auto sol = solve_right(images, Matrix::column(space.source().field(), target));
  if (!sol) return std::nullopt;
  std::vector<Scalar> coeffs(space.dim());
  for (std::size_t k = 0; k < space.dim(); ++k) coeffs[k] = (*sol)(k, 0);
  return space.combine(coeffs);
}

}  // namespace schanuel
