#pragma once

// Conflations, extension classes in presentation coordinates, realization,
// the actions f_* and g^*, and split / injectivity tests.
//
// E(C, A) is coordinatized as coker(Hom(P0, A) -> Hom(Omega C, A)) where
// P0 -> C is the canonical projective cover and Omega C its kernel.
// A conflation A -x-> B -y-> C has class [phi] where phi : Omega C -> A is the
// unique map with x phi = rho incl, rho : P0 -> B any lift of the cover.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "schanuel/rep.hpp"

namespace schanuel {

class Conflation {
 public:
  /// Throws NotAConflation unless x is mono, y is epi and im x = ker y.
  static Conflation make(RepMorphism x, RepMorphism y);
  /// x together with its cokernel; throws NotAConflation if x is not mono.
  static Conflation from_inflation(RepMorphism x);
  /// The kernel of y together with y; throws NotAConflation if y is not epi.
  static Conflation from_deflation(RepMorphism y);
  /// A -> A (+) C -> C with the canonical injection and projection.
  static Conflation split(const Representation& a, const Representation& c);

  const Representation& a() const noexcept { return x_.source(); }
  const Representation& b() const noexcept { return x_.target(); }
  const Representation& c() const noexcept { return y_.target(); }
  const RepMorphism& x() const noexcept { return x_; }
  const RepMorphism& y() const noexcept { return y_; }

  static bool is_valid(const RepMorphism& x, const RepMorphism& y);

 private:
  Conflation(RepMorphism x, RepMorphism y) : x_(std::move(x)), y_(std::move(y)) {}
  RepMorphism x_;
  RepMorphism y_;
};

/// Direct sum of two conflations, on the canonical sums.
Conflation direct_sum(const Conflation& c1, const Conflation& c2);

struct ProjectiveCover {
  Biproduct sum;                       // (+) P_v, ordered by vertex then copy
  std::vector<std::size_t> vertices;   // vertex of each summand
  std::vector<Matrix> generators;      // image of e_v for each summand
  RepMorphism cover;                   // sum.total -> m
};

/// Generators are the unit vectors at the coordinates complementary to rad m.
ProjectiveCover projective_cover(const Representation& m);

struct Presentation {
  Representation c;
  ProjectiveCover p0;
  KernelResult omega;  // Omega C -> P0
  ProjectiveCover p1;  // P1 -> Omega C
};

std::shared_ptr<const Presentation> presentation(const Representation& c);

class ExtSpace {
 public:
  static std::shared_ptr<const ExtSpace> make(std::shared_ptr<const Presentation> pres,
                                              const Representation& a);
  static std::shared_ptr<const ExtSpace> make(const Representation& c, const Representation& a);

  const Representation& c_obj() const noexcept { return pres_->c; }
  const Representation& a_obj() const noexcept { return cocycles_.target(); }
  const std::shared_ptr<const Presentation>& presentation() const noexcept { return pres_; }
  const HomSpace& cocycles() const noexcept { return cocycles_; }
  std::size_t dim() const noexcept { return coker_.dim; }

  /// Coordinates of the class of a cocycle Omega C -> A.
  std::vector<Scalar> coordinates(const RepMorphism& cocycle) const;
  /// Canonical cocycle representing the given coordinates.
  RepMorphism cocycle(std::span<const Scalar> coords) const;

 private:
  ExtSpace(std::shared_ptr<const Presentation> pres, HomSpace cocycles, CokernelProjection coker)
      : pres_(std::move(pres)), cocycles_(std::move(cocycles)), coker_(std::move(coker)) {}

  std::shared_ptr<const Presentation> pres_;
  HomSpace cocycles_;
  CokernelProjection coker_;
};

std::size_t ext_dim(const Representation& c, const Representation& a);

struct ExtClass {
  std::shared_ptr<const ExtSpace> space;
  std::vector<Scalar> coords;

  const Representation& c_obj() const noexcept { return space->c_obj(); }
  const Representation& a_obj() const noexcept { return space->a_obj(); }
  bool is_zero() const noexcept;
  RepMorphism cocycle() const { return space->cocycle(coords); }

  static ExtClass zero(std::shared_ptr<const ExtSpace> space);
  static ExtClass basis(std::shared_ptr<const ExtSpace> space, std::size_t k);

  /// Same objects and same coordinates.
  friend bool operator==(const ExtClass& a, const ExtClass& b);
};

/// Throws LiftFailed only if conf is not actually a conflation.
ExtClass ext_class_of(const Conflation& conf);
ExtClass ext_class_of(const Conflation& conf, std::shared_ptr<const ExtSpace> space);
/// B = coker((phi, -incl) : Omega C -> A (+) P0).
Conflation realize(const ExtClass& delta);
/// f_* delta for f : A -> A'. Throws SourceMismatch.
ExtClass pushforward(const RepMorphism& f, const ExtClass& delta);
/// g^* delta for g : C' -> C. Throws TargetMismatch.
ExtClass pullback(const RepMorphism& g, const ExtClass& delta);
/// Throws BaseMismatch unless both live in the same E(C, A).
ExtClass add_classes(const ExtClass& d1, const ExtClass& d2);
ExtClass scale_class(const ExtClass& d, Scalar c);

struct SplitWitness {
  RepMorphism retraction;  // r with r x = id_A
  RepMorphism section;     // s with y s = id_C
  Biproduct biproduct;     // B = A (+) C with injections (x, s), projections (r, y)
};

/// Builds the section s = factor of (id_B - x r) through y and verifies the
/// biproduct identities. Throws NotARetraction if r x != id.
Biproduct split_structure(const Conflation& conf, const RepMorphism& retraction);
/// nullopt when not split. Cross-checks against ext_class_of and throws
/// std::logic_error if the two disagree.
std::optional<SplitWitness> is_split(const Conflation& conf);

/// Ext^1(S_i, m) = 0 for every simple S_i.
bool is_injective(const Representation& m);

}  // namespace schanuel
