#include "schanuel/quiver.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "schanuel/error.hpp"
#include "schanuel/matrix.hpp"

namespace schanuel {
namespace {

constexpr std::size_t kPathBudget = 20000;

// Accumulates row vectors and keeps only an echelon basis of their span.
class RowSpan {
 public:
  RowSpan(PrimeField f, std::size_t cols) : field_(f), cols_(cols), rows_(f, 0, cols) {}

  void add(const std::vector<Scalar>& v) {
    if (std::all_of(v.begin(), v.end(), [](Scalar x) { return x == 0; })) return;
    pending_.push_back(v);
    if (pending_.size() > 2 * cols_ + 32) compact();
  }

  const RrefResult& reduced() {
    compact();
    return current_;
  }

 private:
  void compact() {
    if (pending_.empty() && have_current_) return;
    Matrix m(field_, rows_.rows() + pending_.size(), cols_);
    m.set_block(0, 0, rows_);
    for (std::size_t r = 0; r < pending_.size(); ++r) {
      for (std::size_t c = 0; c < cols_; ++c) m.set(rows_.rows() + r, c, pending_[r][c]);
    }
    pending_.clear();
    current_ = rref(m);
    rows_ = current_.reduced.block(0, 0, current_.rank, cols_);
    have_current_ = true;
  }

  PrimeField field_;
  std::size_t cols_;
  Matrix rows_;
  std::vector<std::vector<Scalar>> pending_;
  RrefResult current_{Matrix(field_, 0, 0), {}, 0};
  bool have_current_ = false;
};

std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len) {
  std::vector<Path> out;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) out.push_back(trivial_path(v));
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).source != out[i].target) continue;
        Path p = out[i];
        p.arrows.push_back(a);
        p.target = q.arrow(a).target;
        out.push_back(std::move(p));
        if (out.size() > kPathBudget) {
          throw Error(ErrorCode::NotAdmissible,
                      "more than " + std::to_string(kPathBudget) +
                          " paths within max_path_length; lower the bound");
        }
      }
    }
    begin = end;
  }
  // Lengths are generated in order; within a length, extension by ascending
  // arrow index of a lexicographically sorted list is already lexicographic.
  return out;
}

struct ParallelInfo {
  std::size_t source;
  std::size_t target;
  std::size_t min_len;
  std::size_t max_len;
};

ParallelInfo validate_relation(const Quiver& q, const PrimeField& f, const Relation& r,
                               std::size_t index) {
  const std::string where = "relation " + std::to_string(index);
  if (r.terms.empty()) throw Error(ErrorCode::NotAdmissible, where + " has no terms");
  ParallelInfo info{0, 0, SIZE_MAX, 0};
  for (std::size_t t = 0; t < r.terms.size(); ++t) {
    const auto& term = r.terms[t];
    if (term.coeff >= f.p()) {
      throw Error(ErrorCode::ValidationError, where + " coefficient not reduced mod p");
    }
    if (term.arrows.size() < 2) {
      throw Error(ErrorCode::NotAdmissible, where + " has a path of length < 2");
    }
    const Path p = make_path(q, term.arrows);
    if (t == 0) {
      info.source = p.source;
      info.target = p.target;
    } else if (p.source != info.source || p.target != info.target) {
      throw Error(ErrorCode::NotAdmissible, where + " mixes paths with different endpoints");
    }
    info.min_len = std::min(info.min_len, p.length());
    info.max_len = std::max(info.max_len, p.length());
  }
  return info;
}

}  // namespace

Quiver::Quiver(std::size_t vertex_count, std::vector<Arrow> arrows)
    : vertex_count_(vertex_count),
      arrows_(std::move(arrows)),
      outgoing_(vertex_count),
      incoming_(vertex_count) {
  std::set<std::string> labels;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    if (a.source >= vertex_count_ || a.target >= vertex_count_) {
      throw Error(ErrorCode::BadVertex, "arrow '" + a.label + "' has an endpoint out of range");
    }
    if (!labels.insert(a.label).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate arrow label '" + a.label + "'");
    }
    outgoing_[a.source].push_back(i);
    incoming_[a.target].push_back(i);
  }
}

std::optional<std::size_t> Quiver::arrow_index(const std::string& label) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].label == label) return i;
  }
  return std::nullopt;
}

Path trivial_path(std::size_t vertex) { return Path{vertex, vertex, {}}; }

Path make_path(const Quiver& q, std::vector<std::size_t> arrows, std::size_t source) {
  if (arrows.empty()) {
    if (source >= q.vertex_count()) throw Error(ErrorCode::BadVertex, "trivial path vertex");
    return trivial_path(source);
  }
  for (auto a : arrows) {
    if (a >= q.arrow_count()) throw Error(ErrorCode::NotComposable, "unknown arrow index");
  }
  for (std::size_t k = 1; k < arrows.size(); ++k) {
    if (q.arrow(arrows[k - 1]).target != q.arrow(arrows[k]).source) {
      throw Error(ErrorCode::NotComposable, "arrows '" + q.arrow(arrows[k - 1]).label + "' and '" +
                                                q.arrow(arrows[k]).label + "' do not compose");
    }
  }
  Path p{q.arrow(arrows.front()).source, q.arrow(arrows.back()).target, std::move(arrows)};
  return p;
}

Path concat(const Path& u, const Path& w) {
  if (u.target != w.source) throw Error(ErrorCode::NotComposable, "path endpoints do not match");
  Path p{u.source, w.target, u.arrows};
  p.arrows.insert(p.arrows.end(), w.arrows.begin(), w.arrows.end());
  return p;
}

std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e" + std::to_string(p.source);
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += '.';
    s += q.arrow(p.arrows[k]).label;
  }
  return s;
}

RelationSet all_paths_of_length(const Quiver& q, std::size_t length) {
  RelationSet rels;
  for (const auto& p : enumerate_paths(q, length)) {
    if (p.length() == length) rels.generators.push_back(Relation{{RelationTerm{1, p.arrows}}});
  }
  return rels;
}

BoundQuiverAlgebra::BoundQuiverAlgebra(Quiver q, RelationSet rels, PrimeField field,
                                       std::size_t max_len)
    : quiver_(std::move(q)), relations_(std::move(rels)), field_(field), max_path_length_(max_len) {}

const std::vector<Path>& BoundQuiverAlgebra::basis(std::size_t i, std::size_t j) const {
  const std::size_t n = vertex_count();
  if (i >= n || j >= n) throw Error(ErrorCode::BadVertex, "vertex out of range");
  return basis_[i * n + j];
}

std::vector<Scalar> BoundQuiverAlgebra::normal_form(const Path& p) const {
  std::vector<Scalar> out(basis(p.source, p.target).size(), 0);
  if (p.length() >= nilpotency_degree_) return out;
  const auto it = short_index_.find(PathKey{p.source, p.arrows});
  if (it == short_index_.end()) throw Error(ErrorCode::NotComposable, "not a path of the quiver");
  for (const auto& [pos, c] : normal_forms_[it->second]) out[pos] = c;
  return out;
}

std::vector<Scalar> BoundQuiverAlgebra::multiply(std::size_t i, std::size_t j, std::size_t k,
                                                 const std::vector<Scalar>& u,
                                                 const std::vector<Scalar>& w) const {
  const auto& bu = basis(i, j);
  const auto& bw = basis(j, k);
  std::vector<Scalar> out(basis(i, k).size(), 0);
  for (std::size_t a = 0; a < bu.size(); ++a) {
    if (u.at(a) == 0) continue;
    for (std::size_t b = 0; b < bw.size(); ++b) {
      if (w.at(b) == 0) continue;
      const Scalar c = field_.mul(u[a], w[b]);
      const auto nf = normal_form(concat(bu[a], bw[b]));
      for (std::size_t t = 0; t < out.size(); ++t) out[t] = field_.add(out[t], field_.mul(c, nf[t]));
    }
  }
  return out;
}

bool BoundQuiverAlgebra::check_associativity(std::size_t budget) const {
  const std::size_t n = vertex_count();
  std::size_t checked = 0;
  auto unit = [](std::size_t size, std::size_t pos) {
    std::vector<Scalar> v(size, 0);
    v[pos] = 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const auto& bx = basis(i, j);
          const auto& by = basis(j, k);
          const auto& bz = basis(k, l);
          for (std::size_t x = 0; x < bx.size(); ++x) {
            for (std::size_t y = 0; y < by.size(); ++y) {
              for (std::size_t z = 0; z < bz.size(); ++z) {
                if (checked++ >= budget) return true;
                const auto ux = unit(bx.size(), x);
                const auto uy = unit(by.size(), y);
                const auto uz = unit(bz.size(), z);
                const auto left = multiply(i, k, l, multiply(i, j, k, ux, uy), uz);
                const auto right = multiply(i, j, l, ux, multiply(j, k, l, uy, uz));
                if (left != right) return false;
              }
            }
          }
        }
      }
    }
  }
  return true;
}

AlgebraPtr build_algebra(Quiver q, RelationSet rels, PrimeField field, std::size_t max_path_length) {
  if (max_path_length < 2) throw Error(ErrorCode::InvalidArgument, "max_path_length must be >= 2");
  std::vector<ParallelInfo> infos;
  for (std::size_t r = 0; r < rels.generators.size(); ++r) {
    infos.push_back(validate_relation(q, field, rels.generators[r], r));
  }

  const std::vector<Path> paths = enumerate_paths(q, max_path_length);
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t k = 0; k < paths.size(); ++k) index[{paths[k].source, paths[k].arrows}] = k;

  auto paths_ending_at = [&](std::size_t v, std::size_t max_len) {
    std::vector<const Path*> out;
    for (const auto& p : paths) {
      if (p.target == v && p.length() <= max_len) out.push_back(&p);
    }
    return out;
  };
  auto paths_starting_at = [&](std::size_t v, std::size_t max_len) {
    std::vector<const Path*> out;
    for (const auto& p : paths) {
      if (p.source == v && p.length() <= max_len) out.push_back(&p);
    }
    return out;
  };

  // Certify nilpotency with exact ideal elements u r w whose terms all fit in
  // the enumerated range; nothing is truncated, so the span lies inside I.
  RowSpan exact(field, paths.size());
  for (std::size_t r = 0; r < rels.generators.size(); ++r) {
    const auto& info = infos[r];
    if (info.max_len > max_path_length) continue;
    const std::size_t slack = max_path_length - info.max_len;
    for (const Path* u : paths_ending_at(info.source, slack)) {
      for (const Path* w : paths_starting_at(info.target, slack - u->length())) {
        std::vector<Scalar> row(paths.size(), 0);
        for (const auto& term : rels.generators[r].terms) {
          std::vector<std::size_t> arrows = u->arrows;
          arrows.insert(arrows.end(), term.arrows.begin(), term.arrows.end());
          arrows.insert(arrows.end(), w->arrows.begin(), w->arrows.end());
          const std::size_t col = index.at({u->source, arrows});
          row[col] = field.add(row[col], term.coeff);
        }
        exact.add(row);
      }
    }
  }
  const RrefResult& ideal = exact.reduced();
  std::vector<bool> unit_row(paths.size(), false);
  for (std::size_t k = 0; k < ideal.rank; ++k) {
    const std::size_t pc = ideal.pivot_columns[k];
    bool unit = true;
    for (std::size_t c = pc + 1; c < paths.size() && unit; ++c) unit = ideal.reduced(k, c) == 0;
    unit_row[pc] = unit;
  }
  std::optional<std::size_t> nilpotency;
  for (std::size_t len = 1; len <= max_path_length && !nilpotency; ++len) {
    bool all_in = true;
    for (std::size_t k = 0; k < paths.size() && all_in; ++k) {
      if (paths[k].length() == len && !unit_row[k]) all_in = false;
    }
    if (all_in) nilpotency = len;
  }
  if (!nilpotency) {
    throw Error(ErrorCode::NotAdmissible,
                "paths of length <= " + std::to_string(max_path_length) +
                    " never all lie in the ideal");
  }
  const std::size_t N = *nilpotency;

  auto alg = std::shared_ptr<BoundQuiverAlgebra>(
      new BoundQuiverAlgebra(std::move(q), std::move(rels), field, max_path_length));
  alg->nilpotency_degree_ = N;
  const Quiver& quiver = alg->quiver_;
  const std::size_t n = quiver.vertex_count();

  for (const auto& p : paths) {
    if (p.length() < N) {
      alg->short_index_[{p.source, p.arrows}] = alg->short_paths_.size();
      alg->short_paths_.push_back(p);
    }
  }
  const auto& shorts = alg->short_paths_;
  const std::size_t S = shorts.size();

  // Now every path of length >= N is known to lie in I, so I / (paths >= N) is
  // spanned by the truncations of u r w. Columns run in reverse canonical
  // order so that the leading (eliminated) path of each relation is the largest.
  auto column_of = [&](std::size_t short_idx) { return S - 1 - short_idx; };
  RowSpan truncated(field, S);
  for (std::size_t r = 0; r < alg->relations_.generators.size(); ++r) {
    const auto& info = infos[r];
    if (info.min_len >= N) continue;
    const std::size_t slack = N - 1 - info.min_len;
    for (const Path* u : paths_ending_at(info.source, slack)) {
      for (const Path* w : paths_starting_at(info.target, slack - u->length())) {
        std::vector<Scalar> row(S, 0);
        for (const auto& term : alg->relations_.generators[r].terms) {
          if (u->length() + term.arrows.size() + w->length() >= N) continue;
          std::vector<std::size_t> arrows = u->arrows;
          arrows.insert(arrows.end(), term.arrows.begin(), term.arrows.end());
          arrows.insert(arrows.end(), w->arrows.begin(), w->arrows.end());
          const std::size_t col = column_of(alg->short_index_.at({u->source, arrows}));
          row[col] = field.add(row[col], term.coeff);
        }
        truncated.add(row);
      }
    }
  }
  const RrefResult& quotient = truncated.reduced();
  std::vector<std::optional<std::size_t>> pivot_row(S);
  for (std::size_t k = 0; k < quotient.rank; ++k) pivot_row[quotient.pivot_columns[k]] = k;

  alg->basis_.assign(n * n, {});
  std::vector<std::size_t> basis_pos(S, SIZE_MAX);
  for (std::size_t s = 0; s < S; ++s) {
    if (pivot_row[column_of(s)]) continue;
    auto& list = alg->basis_[shorts[s].source * n + shorts[s].target];
    basis_pos[s] = list.size();
    list.push_back(shorts[s]);
  }
  alg->normal_forms_.assign(S, {});
  for (std::size_t s = 0; s < S; ++s) {
    auto& nf = alg->normal_forms_[s];
    if (const auto row = pivot_row[column_of(s)]) {
      for (std::size_t t = 0; t < S; ++t) {
        if (t == s) continue;
        const Scalar v = quotient.reduced(*row, column_of(t));
        if (v != 0) nf.emplace_back(basis_pos[t], field.neg(v));
      }
    } else {
      nf.emplace_back(basis_pos[s], 1);
    }
  }
  for (const auto& list : alg->basis_) alg->dimension_ += list.size();

  if (!alg->check_associativity(4096)) {
    throw Error(ErrorCode::NotAdmissible, "multiplication of basis paths is not associative");
  }
  return alg;
}

}  // namespace schanuel
