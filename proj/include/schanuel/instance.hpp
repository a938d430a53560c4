#pragma once

// The JSON instance file: a prime, a quiver with relations, named modules and
// named conflations. Serialization is canonical, so a canonical file round-trips
// byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schanuel/error.hpp"
#include "schanuel/ext.hpp"

namespace schanuel {

struct Diagnostic {
  std::string field;  // e.g. modules[1].maps.a[3]
  std::size_t line = 0;  // 1-based; 0 when the location is a field path only
  std::string message;
};

class InstanceError : public Error {
 public:
  InstanceError(ErrorCode code, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct NamedModule {
  std::string name;
  Representation rep;
};

struct NamedConflation {
  std::string name;
  std::string a;
  std::string b;
  std::string c;
  Conflation conf;
};

struct InstanceFile {
  std::uint64_t field_p = 2;
  std::optional<std::size_t> max_path_length;
  AlgebraPtr algebra;
  std::vector<NamedModule> modules;
  std::vector<NamedConflation> conflations;

  /// Throws UnknownModule.
  const Representation& module(const std::string& name) const;
  /// Throws UnknownModule.
  const NamedConflation& conflation(const std::string& name) const;
};

inline constexpr std::size_t kDefaultMaxPathLength = 8;

/// Throws InstanceError with code ParseError (malformed JSON) or ValidationError.
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const InstanceFile& inst);

/// Pretty-prints JSON with two-space indentation, keeping arrays of scalars on one line.
std::string format_json(const nlohmann::ordered_json& j);

}  // namespace schanuel
