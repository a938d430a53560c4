#include "schanuel/builtins.hpp"

#include "schanuel/error.hpp"

namespace schanuel {

AlgebraPtr linear_algebra(std::size_t n, std::uint64_t p) {
  std::vector<Arrow> arrows;
  for (std::size_t i = 0; i + 1 < n; ++i) arrows.push_back({i, i + 1, "a" + std::to_string(i)});
  return build_algebra(Quiver(n, std::move(arrows)), {}, PrimeField(p), std::max<std::size_t>(n, 2));
}

AlgebraPtr truncated_loop(std::size_t k, std::uint64_t p) {
  Quiver q(1, {{0, 0, "a"}});
  RelationSet rels{{Relation{{RelationTerm{1, std::vector<std::size_t>(k, 0)}}}}};
  return build_algebra(std::move(q), std::move(rels), PrimeField(p), std::max<std::size_t>(k, 2));
}

AlgebraPtr builtin_algebra(const std::string& name, std::uint64_t p) {
  if (name == "semisimple") return build_algebra(Quiver(1, {}), {}, PrimeField(p), 2);
  if (name == "a2") return linear_algebra(2, p);
  if (name == "a3") return linear_algebra(3, p);
  if (name == "loop") return truncated_loop(2, p);
  throw Error(ErrorCode::InvalidArgument, "unknown builtin algebra '" + name + "'");
}

const std::vector<std::string>& builtin_algebra_names() {
  static const std::vector<std::string> names{"semisimple", "a2", "a3", "loop"};
  return names;
}

}  // namespace schanuel
