#include "schanuel/instance.hpp"

#include <map>
#include <set>
#include <sstream>

namespace schanuel {
namespace {

using json = nlohmann::ordered_json;

std::string join(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "; ";
    if (d.line != 0) out += "line " + std::to_string(d.line) + ": ";
    if (!d.field.empty()) out += d.field + ": ";
    out += d.message;
  }
  return out;
}

class Reader {
 public:
  std::vector<Diagnostic> diags;

  void fail(std::string field, std::string message) { diags.push_back({std::move(field), 0, std::move(message)}); }

  const json* member(const json& obj, const std::string& path, const char* key, bool required = true) {
    if (!obj.is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path.empty() ? std::string(key) : path + "." + key, "missing field");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::uint64_t> uint(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_number_integer() || (!j->is_number_unsigned() && j->get<std::int64_t>() < 0)) {
      fail(path, "expected a non-negative integer");
      return std::nullopt;
    }
    return j->get<std::uint64_t>();
  }

  std::optional<std::string> str(const json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return j->get<std::string>();
  }

  const json* array(const json* j, const std::string& path) {
    if (!j) return nullptr;
    if (!j->is_array()) {
      fail(path, "expected an array");
      return nullptr;
    }
    return j;
  }

  // Flat row-major entries; each must lie in [0, p).
  std::optional<Matrix> matrix(const json* j, const std::string& path, const PrimeField& f, std::size_t rows,
                               std::size_t cols) {
    if (!array(j, path)) return std::nullopt;
    if (j->size() != rows * cols) {
      fail(path, "expected " + std::to_string(rows * cols) + " entries (" + std::to_string(rows) + "x" +
                     std::to_string(cols) + "), got " + std::to_string(j->size()));
      return std::nullopt;
    }
    Matrix m(f, rows, cols);
    bool ok = true;
    for (std::size_t k = 0; k < j->size(); ++k) {
      const json& e = (*j)[k];
      const std::string at = path + "[" + std::to_string(k) + "]";
      if (!e.is_number_integer()) {
        fail(at, "entry is not an integer");
        ok = false;
        continue;
      }
      const bool negative = !e.is_number_unsigned() && e.get<std::int64_t>() < 0;
      if (negative || e.get<std::uint64_t>() >= f.p()) {
        fail(at, "entry " + e.dump() + " is outside [0, " + std::to_string(f.p()) + ")");
        ok = false;
        continue;
      }
      m.set(k / cols, k % cols, static_cast<Scalar>(e.get<std::uint64_t>()));
    }
    if (!ok) return std::nullopt;
    return m;
  }
};

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

[[noreturn]] void raise(Reader& rd) { throw InstanceError(ErrorCode::ValidationError, std::move(rd.diags)); }

json flat(const Matrix& m) {
  json j = json::array();
  for (auto v : m.values()) j.push_back(v);
  return j;
}

json vertex_maps(const RepMorphism& f) {
  json j = json::array();
  for (const auto& m : f.maps()) j.push_back(flat(m));
  return j;
}

bool scalar_array(const json& j) {
  for (const auto& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void format_into(const json& j, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      os << inner << json(it.key()).dump() << ": ";
      format_into(it.value(), os, indent + 1);
      os << (k + 1 < j.size() ? ",\n" : "\n");
    }
    os << pad << "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
    } else if (scalar_array(j)) {
      os << "[";
      for (std::size_t k = 0; k < j.size(); ++k) os << (k ? ", " : "") << j[k].dump();
      os << "]";
    } else {
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        os << inner;
        format_into(j[k], os, indent + 1);
        os << (k + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << "]";
    }
  } else {
    os << j.dump();
  }
}

}  // namespace

InstanceError::InstanceError(ErrorCode code, std::vector<Diagnostic> diagnostics)
    : Error(code, join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

const Representation& InstanceFile::module(const std::string& name) const {
  for (const auto& m : modules) {
    if (m.name == name) return m.rep;
  }
  throw Error(ErrorCode::UnknownModule, "no module named '" + name + "'");
}

const NamedConflation& InstanceFile::conflation(const std::string& name) const {
  for (const auto& c : conflations) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::UnknownModule, "no conflation named '" + name + "'");
}

std::string format_json(const json& j) {
  std::ostringstream os;
  format_into(j, os, 0);
  os << "\n";
  return os.str();
}

InstanceFile parse_instance(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InstanceError(ErrorCode::ParseError, {{"", line_of(text, e.byte), e.what()}});
  }
  Reader rd;
  InstanceFile inst;
  if (!root.is_object()) {
    rd.fail("", "instance must be a JSON object");
    raise(rd);
  }
  static const std::set<std::string> known{"field_p", "max_path_length", "quiver", "relations", "modules",
                                           "conflations"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (!known.count(it.key())) rd.fail(it.key(), "unknown field");
  }

  const auto p = rd.uint(rd.member(root, "", "field_p"), "field_p");
  if (p) {
    try {
      PrimeField check(*p);
      inst.field_p = *p;
    } catch (const Error& e) {
      rd.fail("field_p", e.what());
    }
  }
  if (const json* mpl = rd.member(root, "", "max_path_length", false)) {
    inst.max_path_length = rd.uint(mpl, "max_path_length");
  }

  // Quiver.
  std::optional<Quiver> quiver;
  if (const json* q = rd.member(root, "", "quiver")) {
    const auto nv = rd.uint(rd.member(*q, "quiver", "vertices"), "quiver.vertices");
    const json* arrows = rd.array(rd.member(*q, "quiver", "arrows"), "quiver.arrows");
    std::vector<Arrow> list;
    if (nv && arrows) {
      for (std::size_t k = 0; k < arrows->size(); ++k) {
        const std::string at = "quiver.arrows[" + std::to_string(k) + "]";
        const json& a = (*arrows)[k];
        auto label = rd.str(rd.member(a, at, "label"), at + ".label");
        auto s = rd.uint(rd.member(a, at, "source"), at + ".source");
        auto t = rd.uint(rd.member(a, at, "target"), at + ".target");
        if (label && s && t) list.push_back({*s, *t, *label});
      }
      try {
        quiver.emplace(*nv, list);
      } catch (const Error& e) {
        rd.fail("quiver", e.what());
      }
    }
  }
  if (!rd.diags.empty() || !quiver) raise(rd);
  const PrimeField field(inst.field_p);

  // Relations.
  RelationSet rels;
  if (const json* rs = rd.array(rd.member(root, "", "relations"), "relations")) {
    for (std::size_t g = 0; g < rs->size(); ++g) {
      const std::string gat = "relations[" + std::to_string(g) + "]";
      if (!rd.array(&(*rs)[g], gat)) continue;
      Relation rel;
      for (std::size_t t = 0; t < (*rs)[g].size(); ++t) {
        const std::string at = gat + "[" + std::to_string(t) + "]";
        const json& term = (*rs)[g][t];
        auto coeff = rd.uint(rd.member(term, at, "coeff"), at + ".coeff");
        if (coeff && *coeff >= inst.field_p) rd.fail(at + ".coeff", "coefficient outside [0, p)");
        const json* path = rd.array(rd.member(term, at, "path"), at + ".path");
        if (!coeff || !path) continue;
        RelationTerm rt{static_cast<Scalar>(*coeff % inst.field_p), {}};
        bool ok = true;
        for (std::size_t k = 0; k < path->size(); ++k) {
          auto label = rd.str(&(*path)[k], at + ".path[" + std::to_string(k) + "]");
          auto idx = label ? quiver->arrow_index(*label) : std::nullopt;
          if (label && !idx) rd.fail(at + ".path[" + std::to_string(k) + "]", "unknown arrow '" + *label + "'");
          if (!idx) {
            ok = false;
            continue;
          }
          rt.arrows.push_back(*idx);
        }
        if (!ok) continue;
        try {
          make_path(*quiver, rt.arrows);
        } catch (const Error& e) {
          rd.fail(at + ".path", e.what());
          continue;
        }
        rel.terms.push_back(std::move(rt));
      }
      rels.generators.push_back(std::move(rel));
    }
  }
  if (!rd.diags.empty()) raise(rd);
  try {
    inst.algebra = build_algebra(*quiver, rels, field, inst.max_path_length.value_or(kDefaultMaxPathLength));
  } catch (const Error& e) {
    rd.fail("relations", e.what());
    raise(rd);
  }
  const Quiver& q = inst.algebra->quiver();

  // Modules.
  std::map<std::string, std::size_t> module_index;
  if (const json* ms = rd.array(rd.member(root, "", "modules"), "modules")) {
    for (std::size_t i = 0; i < ms->size(); ++i) {
      const std::string at = "modules[" + std::to_string(i) + "]";
      const json& mj = (*ms)[i];
      auto name = rd.str(rd.member(mj, at, "name"), at + ".name");
      const json* dj = rd.array(rd.member(mj, at, "dims"), at + ".dims");
      const json* maps = rd.member(mj, at, "maps");
      if (!name || !dj || !maps) continue;
      if (module_index.count(*name)) {
        rd.fail(at + ".name", "duplicate module name '" + *name + "'");
        continue;
      }
      if (dj->size() != q.vertex_count()) {
        rd.fail(at + ".dims", "expected " + std::to_string(q.vertex_count()) + " entries");
        continue;
      }
      std::vector<std::size_t> dims;
      bool ok = true;
      for (std::size_t v = 0; v < dj->size(); ++v) {
        auto d = rd.uint(&(*dj)[v], at + ".dims[" + std::to_string(v) + "]");
        ok = ok && d.has_value();
        dims.push_back(d.value_or(0));
      }
      if (!maps->is_object()) {
        rd.fail(at + ".maps", "expected an object keyed by arrow label");
        continue;
      }
      for (auto it = maps->begin(); it != maps->end(); ++it) {
        if (!q.arrow_index(it.key())) rd.fail(at + ".maps." + it.key(), "unknown arrow");
      }
      std::vector<Matrix> mats;
      for (const auto& a : q.arrows()) {
        const std::string mat = at + ".maps." + a.label;
        auto it = maps->find(a.label);
        if (it == maps->end()) {
          rd.fail(mat, "missing map");
          ok = false;
          continue;
        }
        auto m = ok ? rd.matrix(&*it, mat, field, dims[a.target], dims[a.source]) : std::nullopt;
        if (!m) {
          ok = false;
          continue;
        }
        mats.push_back(std::move(*m));
      }
      if (!ok) continue;
      try {
        inst.modules.push_back({*name, Representation(inst.algebra, dims, std::move(mats))});
        module_index[*name] = inst.modules.size() - 1;
      } catch (const Error& e) {
        rd.fail(at, e.what());
      }
    }
  }

  // Conflations.
  if (const json* cs = rd.member(root, "", "conflations", false)) {
    if (rd.array(cs, "conflations")) {
      std::set<std::string> names;
      for (std::size_t i = 0; i < cs->size(); ++i) {
        const std::string at = "conflations[" + std::to_string(i) + "]";
        const json& cj = (*cs)[i];
        auto name = rd.str(rd.member(cj, at, "name"), at + ".name");
        std::optional<std::string> ends[3];
        const char* keys[3] = {"a", "b", "c"};
        bool ok = name.has_value();
        for (int k = 0; k < 3; ++k) {
          ends[k] = rd.str(rd.member(cj, at, keys[k]), at + "." + keys[k]);
          if (ends[k] && !module_index.count(*ends[k])) {
            rd.fail(at + "." + keys[k], "unknown module '" + *ends[k] + "'");
            ends[k].reset();
          }
          ok = ok && ends[k].has_value();
        }
        if (name && !names.insert(*name).second) {
          rd.fail(at + ".name", "duplicate conflation name '" + *name + "'");
          ok = false;
        }
        const json* xj = rd.array(rd.member(cj, at, "x"), at + ".x");
        const json* yj = rd.array(rd.member(cj, at, "y"), at + ".y");
        if (!ok || !xj || !yj) continue;
        const Representation& a = inst.modules[module_index[*ends[0]]].rep;
        const Representation& b = inst.modules[module_index[*ends[1]]].rep;
        const Representation& c = inst.modules[module_index[*ends[2]]].rep;
        auto read_maps = [&](const json* j, const std::string& key, const Representation& s,
                             const Representation& t) -> std::optional<std::vector<Matrix>> {
          if (j->size() != q.vertex_count()) {
            rd.fail(at + "." + key, "expected one map per vertex");
            return std::nullopt;
          }
          std::vector<Matrix> out;
          for (std::size_t v = 0; v < j->size(); ++v) {
            auto m = rd.matrix(&(*j)[v], at + "." + key + "[" + std::to_string(v) + "]", field, t.dim(v), s.dim(v));
            if (!m) return std::nullopt;
            out.push_back(std::move(*m));
          }
          return out;
        };
        auto xm = read_maps(xj, "x", a, b);
        auto ym = read_maps(yj, "y", b, c);
        if (!xm || !ym) continue;
        try {
          RepMorphism x(a, b, std::move(*xm));
          RepMorphism y(b, c, std::move(*ym));
          inst.conflations.push_back({*name, *ends[0], *ends[1], *ends[2], Conflation::make(x, y)});
        } catch (const Error& e) {
          rd.fail(at, e.what());
        }
      }
    }
  }
  if (!rd.diags.empty()) raise(rd);
  return inst;
}

std::string serialize_instance(const InstanceFile& inst) {
  const Quiver& q = inst.algebra->quiver();
  json root;
  root["field_p"] = inst.field_p;
  if (inst.max_path_length) root["max_path_length"] = *inst.max_path_length;
  json arrows = json::array();
  for (const auto& a : q.arrows()) {
    json aj;
    aj["label"] = a.label;
    aj["source"] = a.source;
    aj["target"] = a.target;
    arrows.push_back(std::move(aj));
  }
  root["quiver"]["vertices"] = q.vertex_count();
  root["quiver"]["arrows"] = std::move(arrows);
  json rels = json::array();
  for (const auto& r : inst.algebra->relations().generators) {
    json rj = json::array();
    for (const auto& t : r.terms) {
      json tj;
      tj["coeff"] = t.coeff;
      json path = json::array();
      for (auto a : t.arrows) path.push_back(q.arrow(a).label);
      tj["path"] = std::move(path);
      rj.push_back(std::move(tj));
    }
    rels.push_back(std::move(rj));
  }
  root["relations"] = std::move(rels);
  json mods = json::array();
  for (const auto& m : inst.modules) {
    json mj;
    mj["name"] = m.name;
    mj["dims"] = m.rep.dims();
    json maps = json::object();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) maps[q.arrow(a).label] = flat(m.rep.arrow_map(a));
    mj["maps"] = std::move(maps);
    mods.push_back(std::move(mj));
  }
  root["modules"] = std::move(mods);
  if (!inst.conflations.empty()) {
    json cs = json::array();
    for (const auto& c : inst.conflations) {
      json cj;
      cj["name"] = c.name;
      cj["a"] = c.a;
      cj["b"] = c.b;
      cj["c"] = c.c;
      cj["x"] = vertex_maps(c.conf.x());
      cj["y"] = vertex_maps(c.conf.y());
      cs.push_back(std::move(cj));
    }
    root["conflations"] = std::move(cs);
  }
  return format_json(root);
}

}  // namespace schanuel
