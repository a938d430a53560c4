#pragma once

// Small named algebras used by tests, the CLI and the property harness.

#include <cstdint>
#include <string>
#include <vector>

#include "schanuel/quiver.hpp"

namespace schanuel {

/// semisimple (one vertex), a2 (0 -> 1), a3 (0 -> 1 -> 2), loop (one loop a, a^2 = 0).
/// Throws InvalidArgument for unknown names.
AlgebraPtr builtin_algebra(const std::string& name, std::uint64_t p = 2);
const std::vector<std::string>& builtin_algebra_names();

/// Linear A_n quiver 0 -> 1 -> ... -> n-1, no relations.
AlgebraPtr linear_algebra(std::size_t n, std::uint64_t p);
/// One vertex, one loop, relation a^k.
AlgebraPtr truncated_loop(std::size_t k, std::uint64_t p);

}  // namespace schanuel
