#pragma once

// Schanuel's lemma in its three forms and the injective dimension theorem,
// each verified constructively with explicit isomorphism witnesses.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "schanuel/report.hpp"
#include "schanuel/resolve.hpp"

namespace schanuel {

struct SchanuelOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 256;
  /// Also run is_isomorphic on the two sums, independently of the explicit witness.
  bool independent_search = true;
  /// The pushout's class identity is checked only when the projective cover of
  /// I (+) F' (isomorphic to the pushout) has at most this total dimension.
  std::size_t presentation_limit = 96;
};

struct SchanuelResult {
  Report report;
  std::optional<RepMorphism> witness;  // I (+) F' -> I' (+) F
};

/// c1 = (E -> I -> F), c2 = (E -> I' -> F') with the same E and injective middles;
/// HypothesisViolated otherwise. The witness goes through the pushout C of the two
/// inflations and its splittings C ~= I (+) F' and C ~= I' (+) F.
SchanuelResult verify_schanuel(const Conflation& c1, const Conflation& c2, const SchanuelOptions& opts = {});

/// phi : E -> E' must be an isomorphism (NotAnIsomorphism otherwise); c2 is
/// transported along phi^-1 and verify_schanuel is applied.
SchanuelResult verify_schanuel_iso_form(const Conflation& c1, const Conflation& c2, const RepMorphism& phi,
                                        const SchanuelOptions& opts = {});

struct LongSchanuelResult {
  Report report;
  /// witnesses[l - 1] : left side at level l -> right side at level l.
  std::vector<RepMorphism> witnesses;
};

/// Levels 1 .. 2n+1. Both resolutions must have base the same object and depth >= 2n+1
/// (DepthInsufficient otherwise).
LongSchanuelResult verify_long_schanuel(const InjectiveResolution& r1, const InjectiveResolution& r2,
                                        std::size_t n, const SchanuelOptions& opts = {});

/// `alt` supplies E -> I^0 -> ... -> I^{n-1} -> F through its first n steps. Requires
/// n >= 1, injective I^k, and G^n of the canonical resolution injective; throws
/// HypothesisViolated otherwise. Checks F injective and rebuilds I ~= G (+) F with
/// the split conflation F -> I -> G.
Report verify_dimension_theorem(const Representation& m, const InjectiveResolution& alt, std::size_t n,
                                const SchanuelOptions& opts = {});

}  // namespace schanuel
