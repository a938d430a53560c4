#pragma once

// Verification reports: named checks with verdicts and JSON witnesses.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "schanuel/rep.hpp"

namespace schanuel {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
  nlohmann::ordered_json witness;
};

struct Report {
  std::string name;
  std::vector<Check> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  Check& add(std::string check_name, bool ok, std::string detail = {});
  Check& add_verdict(std::string check_name, Verdict v, std::string detail = {});
  /// Appends every check of `other`, prefixing names with `prefix`.
  void merge(const Report& other, const std::string& prefix);

  /// Fail if any check failed, else Inconclusive if any was, else Pass.
  Verdict verdict() const;
  bool passed() const { return verdict() == Verdict::Pass; }
  const Check* find(const std::string& check_name) const;
};

nlohmann::ordered_json to_json(const Report& r);
nlohmann::ordered_json to_json(const Matrix& m);
nlohmann::ordered_json to_json(const Representation& m);
/// Vertex maps only.
nlohmann::ordered_json to_json(const RepMorphism& f);

}  // namespace schanuel
