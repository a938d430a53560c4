#include "schanuel/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schanuel/builtins.hpp"
#include "schanuel/harness.hpp"
#include "schanuel/instance.hpp"
#include "schanuel/resolve.hpp"
#include "schanuel/schanuel.hpp"

namespace schanuel {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string instance;
  std::string module;
  std::vector<std::string> conflations;
  std::size_t depth = 2;
  std::size_t max_depth = 8;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  std::size_t max_dim = 3;
  bool json = false;
  std::string suite;
  std::string algebra = "random";
  std::size_t threads = 1;
  std::size_t inconclusive_ceiling = 0;
  bool inject_fault = false;
  std::size_t iso_trials = 256;
};

struct Loaded {
  InstanceFile inst;
  std::string hash;
};

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Loaded load(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidArgument, "--instance is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return {parse_instance(text), fnv1a(text)};
}

std::string dims_str(const std::vector<std::size_t>& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

std::string term_str(const Representation& m) { return m.is_zero() ? "0" : dims_str(m.dims()); }

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Fail: return kExitFail;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitFail;
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::HypothesisViolated:
    case ErrorCode::DepthInsufficient:
    case ErrorCode::NotAConflation:
    case ErrorCode::NotAnIsomorphism:
      return kExitHypothesis;
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::UnknownModule:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

void print_checks(const Report& r, std::ostream& out) {
  std::size_t width = 5;
  for (const auto& c : r.checks) width = std::max(width, c.name.size());
  for (const auto& c : r.checks) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(12)
        << to_string(c.verdict);
    if (!c.detail.empty()) out << c.detail;
    out << "\n";
  }
  out << "verdict: " << to_string(r.verdict()) << "\n";
}

// --- check --------------------------------------------------------------------------

int cmd_check(const Options& o, std::ostream& out) {
  const Loaded l = load(o.instance);
  const InstanceFile& inst = l.inst;
  ordered_json j;
  j["instance_hash"] = l.hash;
  j["field_p"] = inst.field_p;
  j["algebra_dim"] = inst.algebra->dimension();
  j["vertices"] = inst.algebra->vertex_count();
  auto& mods = j["modules"] = ordered_json::array();
  for (const auto& m : inst.modules) {
    mods.push_back({{"name", m.name}, {"dims", m.rep.dims()}, {"injective", is_injective(m.rep)}});
  }
  auto& confs = j["conflations"] = ordered_json::array();
  for (const auto& c : inst.conflations) {
    confs.push_back({{"name", c.name}, {"a", c.a}, {"b", c.b}, {"c", c.c},
                     {"class_zero", ext_class_of(c.conf).is_zero()}});
  }
  j["verdict"] = "pass";
  if (o.json) {
    out << format_json(j);
    return kExitPass;
  }
  out << "instance ok  p=" << inst.field_p << "  vertices=" << inst.algebra->vertex_count()
      << "  algebra dim=" << inst.algebra->dimension() << "  hash=" << l.hash << "\n";
  for (const auto& m : inst.modules) {
    out << "  module " << m.name << "  dims " << dims_str(m.rep.dims()) << (is_injective(m.rep) ? "  injective" : "")
        << "\n";
  }
  for (const auto& c : inst.conflations) {
    out << "  conflation " << c.name << ": " << c.a << " >-> " << c.b << " ->> " << c.c
        << (ext_class_of(c.conf).is_zero() ? "  (split)" : "") << "\n";
  }
  return kExitPass;
}

// --- resolve / idim -------------------------------------------------------------------

int cmd_resolve(const Options& o, std::ostream& out) {
  const Loaded l = load(o.instance);
  const Representation& m = l.inst.module(o.module);
  const InjectiveResolution r = injective_resolution(m, o.depth);
  const DimensionVerdict v = injective_dimension(m, o.depth);

  // Rows up to and including the first zero injective term.
  std::size_t rows = r.steps.size();
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    if (r.injective(k).is_zero()) {
      rows = k + 1;
      break;
    }
  }
  ordered_json j;
  j["instance_hash"] = l.hash;
  j["module"] = o.module;
  j["depth"] = o.depth;
  auto& steps = j["steps"] = ordered_json::array();
  for (std::size_t k = 0; k < rows; ++k) {
    steps.push_back({{"k", k},
                     {"G", r.cosyzygy(k).dims()},
                     {"I", r.injective(k).dims()},
                     {"G_injective", is_injective(r.cosyzygy(k))}});
  }
  j["idim"] = v.to_string();
  j["periodic"] = v.periodic;
  if (v.periodic) j["period"] = {v.period_from, v.period_to};
  if (o.json) {
    out << format_json(j);
    return kExitPass;
  }
  out << "injective resolution of " << o.module << " (depth " << o.depth << ")\n";
  out << "  " << std::left << std::setw(4) << "k" << std::setw(14) << "G^k" << std::setw(14) << "I^k"
      << "G^k injective\n";
  for (std::size_t k = 0; k < rows; ++k) {
    out << "  " << std::setw(4) << k << std::setw(14) << dims_str(r.cosyzygy(k).dims()) << std::setw(14)
        << term_str(r.injective(k)) << (is_injective(r.cosyzygy(k)) ? "yes" : "no") << "\n";
  }
  out << "idim: " << v.to_string() << "\n";
  out << "periodic: " << (v.periodic ? "yes" : "no");
  if (v.periodic) out << "  (G^" << v.period_from << " ~= G^" << v.period_to << ")";
  out << "\n";
  return kExitPass;
}

int cmd_idim(const Options& o, std::ostream& out) {
  const Loaded l = load(o.instance);
  const Representation& m = l.inst.module(o.module);
  const DimensionVerdict v = injective_dimension(m, o.max_depth);
  ordered_json j;
  j["instance_hash"] = l.hash;
  j["module"] = o.module;
  j["max_depth"] = o.max_depth;
  j["verdict"] = v.to_string();
  j["witness"] = to_json(v.witness);
  j["periodic"] = v.periodic;
  if (v.periodic) j["period"] = {v.period_from, v.period_to};
  if (o.json) {
    out << format_json(j);
    return kExitPass;
  }
  out << "idim " << o.module << ": " << v.to_string() << "\n";
  out << "  witness cosyzygy G^" << (v.kind == DimensionVerdict::Kind::Finite ? v.n : o.max_depth) << " dims "
      << dims_str(v.witness.dims()) << "\n";
  if (v.periodic) {
    out << "  periodic: G^" << v.period_from << " ~= G^" << v.period_to << ", injective dimension is infinite\n";
  }
  return kExitPass;
}

// --- schanuel -------------------------------------------------------------------------

int cmd_schanuel(const Options& o, std::ostream& out) {
  if (o.conflations.size() != 2) throw Error(ErrorCode::InvalidArgument, "give exactly two --conflation names");
  const Loaded l = load(o.instance);
  const NamedConflation& c1 = l.inst.conflation(o.conflations[0]);
  const NamedConflation& c2 = l.inst.conflation(o.conflations[1]);
  SchanuelOptions opts;
  opts.seed = o.seed;
  opts.trials = o.iso_trials;
  const SchanuelResult res = verify_schanuel(c1.conf, c2.conf, opts);
  const Verdict v = res.report.verdict();
  if (o.json) {
    ordered_json j = to_json(res.report);
    j["instance_hash"] = l.hash;
    j["seed"] = o.seed;
    j["conflations"] = o.conflations;
    out << format_json(j);
    return exit_for(v);
  }
  out << "Schanuel: " << c1.b << " (+) " << c2.c << "  vs  " << c2.b << " (+) " << c1.c << "\n";
  out << "  dims " << dims_str(res.report.data["lhs_dims"].get<std::vector<std::size_t>>()) << " vs "
      << dims_str(res.report.data["rhs_dims"].get<std::vector<std::size_t>>()) << "\n";
  print_checks(res.report, out);
  if (v != Verdict::Pass) out << "seed " << o.seed << "  instance " << l.hash << "\n";
  return exit_for(v);
}

// --- prop -----------------------------------------------------------------------------

int cmd_prop(const Options& o, std::ostream& out) {
  SuiteConfig cfg;
  cfg.suite = parse_suite(o.suite);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.max_dim = o.max_dim;
  cfg.algebra = o.algebra;
  cfg.threads = o.threads;
  cfg.inconclusive_ceiling = o.inconclusive_ceiling;
  cfg.inject_fault = o.inject_fault;
  std::string hash;
  if (!o.instance.empty()) {
    Loaded l = load(o.instance);
    cfg.fixed_algebra = l.inst.algebra;
    hash = l.hash;
  } else if (cfg.algebra != "random") {
    builtin_algebra(cfg.algebra);  // validates the name
  }
  const SuiteResult res = run_suite(cfg);
  const Verdict v = res.verdict();
  if (o.json) {
    ordered_json j = res.to_json();
    if (!hash.empty()) j["instance_hash"] = hash;
    out << format_json(j);
    return exit_for(v);
  }
  out << "suite " << o.suite << "  seed " << o.seed << "  trials " << o.trials << "\n";
  out << "  passed " << res.passed << "  failed " << res.failed << "  inconclusive " << res.inconclusive
      << " (ceiling " << o.inconclusive_ceiling << ")  items " << res.items << "  nontrivial "
      << res.nontrivial << "  algebras "
      << res.distinct_algebras << "\n";
  for (const auto& t : res.trials) {
    if (t.verdict == Verdict::Pass) continue;
    out << "  trial " << t.index << " seed " << t.seed << ": " << to_string(t.verdict) << "  [" << t.algebra
        << "]\n";
    if (!t.error.empty()) out << "    error: " << t.error << "\n";
    if (!t.detail.is_null()) out << "    " << t.detail.dump() << "\n";
  }
  out << "verdict: " << to_string(v) << "\n";
  return exit_for(v);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"schanuel-lab: verified homological algebra over bound quiver algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_instance = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--instance", o.instance, "instance JSON file");
    if (required) opt->required();
  };
  auto add_seed = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "random seed")->envname("SCHANUEL_LAB_SEED");
  };
  auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json, "machine-readable output"); };

  CLI::App* check = app.add_subcommand("check", "validate an instance file");
  add_instance(check, true);
  add_json(check);

  CLI::App* resolve = app.add_subcommand("resolve", "print the canonical injective resolution of a module");
  add_instance(resolve, true);
  resolve->add_option("--module", o.module, "module name")->required();
  resolve->add_option("--depth", o.depth, "resolution depth")->capture_default_str();
  add_json(resolve);

  CLI::App* idim = app.add_subcommand("idim", "injective dimension of a module");
  add_instance(idim, true);
  idim->add_option("--module", o.module, "module name")->required();
  idim->add_option("--max-depth", o.max_depth, "search bound")->capture_default_str();
  add_json(idim);

  CLI::App* sch = app.add_subcommand("schanuel", "verify I (+) F' ~= I' (+) F for two named conflations");
  add_instance(sch, true);
  sch->add_option("--conflation", o.conflations, "conflation name (give twice)")->required()->allow_extra_args(false);
  add_seed(sch);
  sch->add_option("--trials", o.iso_trials, "random trials for the independent iso search")->capture_default_str();
  add_json(sch);

  CLI::App* prop = app.add_subcommand("prop", "run a seeded property suite");
  add_instance(prop, false);
  prop->add_option("--suite", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  prop->add_option("--trials", o.trials, "number of trials")->capture_default_str();
  add_seed(prop);
  prop->add_option("--max-dim", o.max_dim, "per-vertex dimension bound for random modules")->capture_default_str();
  prop->add_option("--algebra", o.algebra, "builtin algebra name, or random")->capture_default_str();
  prop->add_option("--threads", o.threads, "worker threads")->capture_default_str();
  prop->add_option("--inconclusive-ceiling", o.inconclusive_ceiling, "allowed inconclusive trials")
      ->capture_default_str();
  prop->add_flag("--inject-fault", o.inject_fault, "corrupt the verified object in every trial");
  add_json(prop);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*resolve) return cmd_resolve(o, out);
    if (*idim) return cmd_idim(o, out);
    if (*sch) return cmd_schanuel(o, out);
    if (*prop) return cmd_prop(o, out);
  } catch (const InstanceError& e) {
    err << e.what() << "\n";
    for (const auto& d : e.diagnostics()) {
      err << "  " << (d.field.empty() ? "<root>" : d.field);
      if (d.line) err << " (line " << d.line << ")";
      err << ": " << d.message << "\n";
    }
    return exit_for(e.code());
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace schanuel
