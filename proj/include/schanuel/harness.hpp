#pragma once

// Seeded random instances and the property suites that drive every verifier.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "schanuel/report.hpp"

namespace schanuel {

enum class Suite { Composition, Pushout, Injectivity, SumInjectivity, Schanuel, LongSchanuel, DimensionTheorem, RoundTrip };

std::string to_string(Suite s);
/// Throws InvalidArgument for unknown names.
Suite parse_suite(const std::string& name);
const std::vector<std::string>& suite_names();

/// Quivers with 1-3 vertices and up to 3 arrows, monomial or commutativity
/// relations plus a nilpotency bound; total dimension <= max_algebra_dim.
AlgebraPtr random_algebra(std::mt19937_64& rng, std::uint64_t p, std::size_t max_algebra_dim = 16);

/// Mixes plain rejection samples with simples, injectives, quotients of
/// projectives and kernels between injectives, for structural diversity.
Representation random_module(const AlgebraPtr& alg, std::size_t max_dim, std::mt19937_64& rng);
/// Random direct sum of indecomposable injectives (possibly zero).
Representation random_injective(const AlgebraPtr& alg, std::size_t max_copies, std::mt19937_64& rng);
RepMorphism random_morphism(const Representation& s, const Representation& t, std::mt19937_64& rng);

struct SuiteConfig {
  Suite suite = Suite::Schanuel;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::size_t max_dim = 3;
  /// Builtin name, or "random" for a fresh random algebra per trial.
  std::string algebra = "random";
  /// Used instead of `algebra` when set (e.g. from an instance file).
  AlgebraPtr fixed_algebra;
  /// Primes drawn for random algebras.
  std::vector<std::uint64_t> primes{2, 3, 5};
  std::size_t threads = 1;
  std::size_t inconclusive_ceiling = 0;
  /// Replaces the verified object with a corrupted one in every trial; the suite must fail.
  bool inject_fault = false;
};

struct TrialOutcome {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Pass;
  std::string algebra;
  std::string error;  // set when the trial threw
  std::size_t items = 1;  // classes checked, modules checked, ...
  bool nontrivial = false;  // nonzero classes, non-injective base object, ...
  nlohmann::ordered_json detail;  // failed checks, or summary data
};

struct SuiteResult {
  SuiteConfig config;
  std::vector<TrialOutcome> trials;  // sorted by index
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inconclusive = 0;
  std::size_t items = 0;
  std::size_t nontrivial = 0;
  std::size_t distinct_algebras = 0;

  /// Fail on any failure or when inconclusive trials exceed the ceiling.
  Verdict verdict() const;
  nlohmann::ordered_json to_json() const;
};

std::uint64_t trial_seed(std::uint64_t seed, std::size_t index);
TrialOutcome run_trial(const SuiteConfig& config, std::size_t index);
SuiteResult run_suite(const SuiteConfig& config);

}  // namespace schanuel
