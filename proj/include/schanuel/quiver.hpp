#pragma once

// Quivers, admissible relations and the bound quiver algebra kQ/I.
//
// Paths are written left to right: the path (a, b) means "a, then b", so
// target(a) == source(b). A representation is a covariant functor on the
// quiver, and a path acts on it as M_b * M_a.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schanuel/field.hpp"

namespace schanuel {

struct Arrow {
  std::size_t source = 0;
  std::size_t target = 0;
  std::string label;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

class Quiver {
 public:
  /// Throws BadVertex for out-of-range endpoints, InvalidArgument for duplicate labels.
  Quiver(std::size_t vertex_count, std::vector<Arrow> arrows);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  const Arrow& arrow(std::size_t i) const { return arrows_.at(i); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }
  std::optional<std::size_t> arrow_index(const std::string& label) const;

  /// Arrows leaving / entering v, in arrow order.
  const std::vector<std::size_t>& outgoing(std::size_t v) const { return outgoing_.at(v); }
  const std::vector<std::size_t>& incoming(std::size_t v) const { return incoming_.at(v); }

  friend bool operator==(const Quiver& a, const Quiver& b) {
    return a.vertex_count_ == b.vertex_count_ && a.arrows_ == b.arrows_;
  }

 private:
  std::size_t vertex_count_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<std::size_t>> incoming_;
};

struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const noexcept { return arrows.size(); }

  /// Canonical order: by length, then lexicographic in arrow indices, then by source.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (auto c = a.arrows <=> b.arrows; c != 0) return c;
    return a.source <=> b.source;
  }
  friend bool operator==(const Path& a, const Path& b) = default;
};

Path trivial_path(std::size_t vertex);
/// Throws NotComposable unless the arrows chain; an empty list needs `source`.
Path make_path(const Quiver& q, std::vector<std::size_t> arrows, std::size_t source = 0);
/// Concatenation u then w; throws NotComposable if target(u) != source(w).
Path concat(const Path& u, const Path& w);
std::string path_to_string(const Quiver& q, const Path& p);

struct RelationTerm {
  Scalar coeff = 1;
  std::vector<std::size_t> arrows;

  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/// One generator of the ideal: a linear combination of parallel paths of length >= 2.
struct Relation {
  std::vector<RelationTerm> terms;

  friend bool operator==(const Relation&, const Relation&) = default;
};

struct RelationSet {
  std::vector<Relation> generators;

  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

/// Monomial relations: every path of length exactly `length`.
RelationSet all_paths_of_length(const Quiver& q, std::size_t length);

class BoundQuiverAlgebra;
using AlgebraPtr = std::shared_ptr<const BoundQuiverAlgebra>;

class BoundQuiverAlgebra {
 public:
  const Quiver& quiver() const noexcept { return quiver_; }
  const PrimeField& field() const noexcept { return field_; }
  const RelationSet& relations() const noexcept { return relations_; }
  std::size_t vertex_count() const noexcept { return quiver_.vertex_count(); }
  std::size_t max_path_length() const noexcept { return max_path_length_; }
  /// Least N with every path of length N in the ideal.
  std::size_t nilpotency_degree() const noexcept { return nilpotency_degree_; }
  std::size_t dimension() const noexcept { return dimension_; }

  /// Basis of e_i A e_j: the standard paths i -> j, in canonical order.
  const std::vector<Path>& basis(std::size_t i, std::size_t j) const;
  std::size_t basis_dim(std::size_t i, std::size_t j) const { return basis(i, j).size(); }

  /// Coordinates of a path in basis(source, target).
  std::vector<Scalar> normal_form(const Path& p) const;
  /// Product of two basis elements given by coordinates, u in e_i A e_j and
  /// w in e_j A e_k; returns coordinates in e_i A e_k.
  std::vector<Scalar> multiply(std::size_t i, std::size_t j, std::size_t k,
                               const std::vector<Scalar>& u, const std::vector<Scalar>& w) const;

  /// Re-checks (xy)z = x(yz) on up to `budget` triples of basis paths.
  bool check_associativity(std::size_t budget) const;

 private:
  friend AlgebraPtr build_algebra(Quiver q, RelationSet rels, PrimeField field,
                                  std::size_t max_path_length);
  BoundQuiverAlgebra(Quiver q, RelationSet rels, PrimeField field, std::size_t max_len);

  using PathKey = std::pair<std::size_t, std::vector<std::size_t>>;

  Quiver quiver_;
  RelationSet relations_;
  PrimeField field_;
  std::size_t max_path_length_;
  std::size_t nilpotency_degree_ = 0;
  std::size_t dimension_ = 0;

  std::vector<Path> short_paths_;  // all paths of length < N, canonical order
  std::map<PathKey, std::size_t> short_index_;
  // Normal form of each short path: (position in its basis list, coefficient).
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> normal_forms_;
  std::vector<std::vector<Path>> basis_;  // indexed i * n + j
};

/// Builds kQ/I. The ideal is saturated from the generators by explicit
/// two-sided multiplication by paths; nilpotency must be certified within
/// `max_path_length` (>= 2) using only products whose terms fit the bound.
/// Throws NotAdmissible, NotComposable, or InvalidArgument.
AlgebraPtr build_algebra(Quiver q, RelationSet rels, PrimeField field, std::size_t max_path_length);

}  // namespace schanuel
