#pragma once

// Injective envelopes and resolutions, cosyzygies, injective and global dimension.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schanuel/ext.hpp"

namespace schanuel {

/// m -> E(m) -> coker with E(m) = (+)_i I_i^{dim soc(m)_i}, summands ordered
/// by vertex then copy. Throws ExtensionFailed if the extension of the socle
/// inclusion is not mono.
Conflation injective_envelope(const Representation& m);

/// steps[k] is G^k -> I^k -> G^{k+1}; steps[k].c() is literally steps[k+1].a().
struct InjectiveResolution {
  Representation base;
  std::vector<Conflation> steps;

  std::size_t depth() const noexcept { return steps.empty() ? 0 : steps.size() - 1; }
  const Representation& injective(std::size_t k) const { return steps.at(k).b(); }
  /// G^0 = base, G^k = steps[k-1].c() for 1 <= k <= steps.size().
  const Representation& cosyzygy(std::size_t k) const;
};

/// depth + 1 canonical envelope steps.
InjectiveResolution injective_resolution(const Representation& m, std::size_t depth);
/// Appends canonical steps until the resolution has depth + 1 steps.
InjectiveResolution extend_resolution(InjectiveResolution r, std::size_t depth);
Representation cosyzygy(const Representation& m, std::size_t n);

/// G -> I (+) J by (x, twist) with the recomputed cokernel. J must be injective
/// (HypothesisViolated otherwise); twist defaults to zero.
Conflation pad_step(const Conflation& step, const Representation& j,
                    const std::optional<RepMorphism>& twist = std::nullopt);
/// Pads step k of r and continues canonically to the given depth.
InjectiveResolution pad_resolution(const InjectiveResolution& r, std::size_t k, const Representation& j,
                                   std::size_t depth, const std::optional<RepMorphism>& twist = std::nullopt);

struct DimensionVerdict {
  enum class Kind { Finite, AtLeast };
  Kind kind = Kind::Finite;
  std::size_t n = 0;
  Representation witness;  // G^n when finite, the last cosyzygy examined otherwise
  bool periodic = false;   // some G^i ~= G^j with i < j: provably infinite
  std::size_t period_from = 0;
  std::size_t period_to = 0;

  std::string to_string() const;
};

/// Finite(n) for the least n <= max_depth with G^n injective, else AtLeast(max_depth + 1)
/// with a periodicity search among G^0..G^max_depth.
DimensionVerdict injective_dimension(const Representation& m, std::size_t max_depth);
/// The same verdict read off a given resolution: least n <= steps.size() with G^n injective.
DimensionVerdict dimension_from_resolution(const InjectiveResolution& r);
/// Supremum over the simple modules.
DimensionVerdict global_dimension(const AlgebraPtr& alg, std::size_t max_depth);

}  // namespace schanuel
