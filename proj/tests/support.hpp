#pragma once

#include <vector>

#include "schanuel/builtins.hpp"
#include "schanuel/rep.hpp"

namespace testing_support {

using namespace schanuel;

inline Matrix mat(const AlgebraPtr& alg, std::size_t r, std::size_t c, std::initializer_list<std::int64_t> v) {
  return Matrix::from_rows(alg->field(), r, c, v);
}

inline Representation rep(const AlgebraPtr& alg, std::vector<std::size_t> dims, std::vector<Matrix> maps) {
  return Representation(alg, std::move(dims), std::move(maps));
}

inline Representation sum(const Representation& a, const Representation& b) { return direct_sum(a, b).total; }

}  // namespace testing_support
