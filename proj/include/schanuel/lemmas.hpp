#pragma once

// Checkable forms of the injectivity characterizations, summand injectivity,
// and the two diagram lemmas behind Schanuel's lemma.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "schanuel/ext.hpp"
#include "schanuel/report.hpp"

namespace schanuel {

/// Three tests of injectivity: is_injective(e); every sampled class in E(C, e)
/// realizes to a split conflation, with C = every simple plus `sample_budget`
/// random modules; the envelope inflation of e splits. Passes iff they agree.
Report verify_injectivity_characterizations(const Representation& e, std::size_t sample_budget,
                                            std::uint64_t seed, std::size_t max_dim = 3);

/// is_injective(e (+) g) iff both are injective.
Report verify_summand_injectivity(const Representation& e, const Representation& g);

struct CompositionDiagram {
  RepMorphism f;        // A -> B
  RepMorphism f_prime;  // B -> D
  std::optional<Conflation> top;  // A -> B -> D, when exact
  Report report;
};

/// t_h = (A -h-> C -h'-> E), t_d = (D -d-> E -d'-> F), t_g = (B -g-> C -g'-> F)
/// with h = g f and d' h' = g'. Throws HypothesisViolated otherwise.
CompositionDiagram composition_diagram(const Conflation& t_h, const Conflation& t_d, const Conflation& t_g,
                                       const RepMorphism& f);

struct PushoutDiagram {
  Representation m;  // coker((x1, -x2) : A -> B1 (+) B2)
  RepMorphism m1;    // B2 -> M
  RepMorphism m2;    // B1 -> M
  RepMorphism e1;    // M -> C1
  RepMorphism e2;    // M -> C2
  std::optional<Conflation> row1;  // B2 -m1-> M -e1-> C1
  std::optional<Conflation> row2;  // B1 -m2-> M -e2-> C2
  Report report;
};

/// Throws HypothesisViolated unless t1.a() == t2.a(). With class_identity false the
/// sum-of-pullbacks check, which needs a presentation of M, is skipped.
PushoutDiagram pushout_diagram(const Conflation& t1, const Conflation& t2, bool class_identity = true);

}  // namespace schanuel
