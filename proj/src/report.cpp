#include "schanuel/report.hpp"

namespace schanuel {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

Check& Report::add(std::string check_name, bool ok, std::string detail) {
  return add_verdict(std::move(check_name), ok ? Verdict::Pass : Verdict::Fail, std::move(detail));
}

Check& Report::add_verdict(std::string check_name, Verdict v, std::string detail) {
  checks.push_back(Check{std::move(check_name), v, std::move(detail), nullptr});
  return checks.back();
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& c : other.checks) {
    Check copy = c;
    copy.name = prefix + c.name;
    checks.push_back(std::move(copy));
  }
}

Verdict Report::verdict() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    if (c.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

const Check* Report::find(const std::string& check_name) const {
  for (const auto& c : checks) {
    if (c.name == check_name) return &c;
  }
  return nullptr;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["verdict"] = to_string(r.verdict());
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["verdict"] = to_string(c.verdict);
    if (!c.detail.empty()) cj["detail"] = c.detail;
    if (!c.witness.is_null()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  if (!r.data.empty()) j["data"] = r.data;
  return j;
}

nlohmann::ordered_json to_json(const Matrix& m) {
  auto j = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (auto v : m.row(r)) row.push_back(v);
    j.push_back(std::move(row));
  }
  return j;
}

nlohmann::ordered_json to_json(const Representation& m) {
  nlohmann::ordered_json j;
  j["dims"] = m.dims();
  auto& maps = j["maps"] = nlohmann::ordered_json::array();
  for (const auto& a : m.arrow_maps()) maps.push_back(to_json(a));
  return j;
}

nlohmann::ordered_json to_json(const RepMorphism& f) {
  auto j = nlohmann::ordered_json::array();
  for (const auto& m : f.maps()) j.push_back(to_json(m));
  return j;
}

}  // namespace schanuel
