#include "triplelab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "triplelab/axioms.hpp"
#include "triplelab/configurations.hpp"
#include "triplelab/error.hpp"
#include "triplelab/parallel.hpp"
#include "triplelab/preserver.hpp"
#include "triplelab/random.hpp"
#include "triplelab/remark.hpp"
#include "triplelab/serialization.hpp"
#include "triplelab/ttp.hpp"

namespace triplelab::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "triple-lab/1";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  const RunConfig& config;
  Tolerance tol;
  std::optional<AtomicTriple> triple;
};

AtomicTriple load_triple(const RunConfig& c) {
  if (c.factor_spec_path.empty()) throw ConfigError(c.command + " needs --factor-spec");
  try {
    return parse_atomic_triple(read_json_file(c.factor_spec_path));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Pair sampling shared by the pairwise commands. The mode cycles through
// generic, orthogonal, collinear and superposed pairs, falling back to a
// generic pair when the factor has no room for the requested relation.

struct PairSample {
  std::size_t summand = 0;
  std::string mode;
  Tripotent e;
  Tripotent v;
};

PairSample sample_pair(const AtomicTriple& t, std::uint64_t seed, std::size_t i) {
  Rng rng(trial_seed(seed, i));
  const std::size_t count = t.summand_count();
  const std::size_t s = i % count;
  auto draw = [&] { return mix_seed(rng.index(std::size_t{1} << 40)); };
  Tripotent e = sample_minimal_tripotent(t, s, draw());
  switch ((i / count) % 4) {
    case 1:
      try {
        return {s, "orthogonal", e, sample_orthogonal_minimal(t, e, s, draw())};
      } catch (const Error&) {
      }
      break;
    case 2:
      if (auto c = sample_collinear_minimal(t, e, draw())) return {s, "collinear", e, *c};
      break;
    case 3:
      if (auto c = sample_collinear_minimal(t, e, draw())) {
        const double theta = 2.0 * std::acos(-1.0) * rng.uniform();
        const Complex l1 = std::cos(theta) * rng.unit_phase();
        const Complex l2 = std::sin(theta) * rng.unit_phase();
        return {s, "superposition", e, collinear_superposition(t, e, *c, l1, l2)};
      }
      break;
    default:
      break;
  }
  return {s, "generic", e, sample_minimal_tripotent(t, s, draw())};
}

json pair_witness(const AtomicTriple& t, std::size_t i, const PairSample& p) {
  return {{"trial", i},
          {"summand", p.summand},
          {"mode", p.mode},
          {"e", element_to_json(t, p.e.element())},
          {"v", element_to_json(t, p.v.element())}};
}

double threshold_at_least(double floor, const Tolerance& tol) { return std::max(floor, tol.abs_tol); }

// ---------------------------------------------------------------------------
// Commands. Each returns the report plus optional extra top-level fields.

struct Outcome {
  Outcome() = default;
  Outcome(Report r) : report(std::move(r)) {}  // NOLINT: implicit on purpose

  Report report;
  json extra = json::object();
  std::string csv;  // ttp-table only
};

Outcome cmd_verify_axioms(Context& ctx) {
  return {verify_jbstar_axioms(*ctx.triple, ctx.config.trials, ctx.config.seed, ctx.tol,
                               ctx.config.threads)};
}

Outcome cmd_sample_minimal(Context& ctx) {
  const AtomicTriple& t = *ctx.triple;
  struct Row {
    json entry;
    double defect = 0.0;
  };
  auto rows = run_indexed<Row>(ctx.config.trials, ctx.config.threads, [&](std::size_t i) {
    const std::size_t s = i % t.summand_count();
    const Tripotent e = sample_minimal_tripotent(t, s, trial_seed(ctx.config.seed, i));
    const Element& x = e.element();
    const double cube = t.norm(t.triple_product(x, x, x) - x);
    const auto& p = e.peirce();
    Row r;
    r.defect = cube + std::abs(p.dim(2) - 1);
    r.entry = {{"index", i},
               {"summand", s},
               {"rank", e.rank()},
               {"peirce_dims", {p.dim(2), p.dim(1), p.dim(0)}},
               {"tripotent_defect", cube},
               {"element", element_to_json(t, x)}};
    return r;
  });
  Report r("minimal_samples", ctx.tol.abs_tol);
  r.trials = ctx.config.trials;
  json samples = json::array();
  for (auto& row : rows) {
    r.record(row.defect, row.entry);
    samples.push_back(std::move(row.entry));
  }
  Outcome o(std::move(r));
  o.extra["samples"] = std::move(samples);
  return o;
}

Outcome cmd_gap_vs_formula(Context& ctx) {
  const AtomicTriple& t = *ctx.triple;
  struct Row {
    double violation = 0.0;
    json witness;
    bool aborted = false;
  };
  auto rows = run_indexed<Row>(ctx.config.trials, ctx.config.threads, [&](std::size_t i) {
    const PairSample p = sample_pair(t, ctx.config.seed, i);
    Row row;
    row.witness = pair_witness(t, i, p);
    const double d = gap_distance(t, p.e.element(), p.v.element());
    row.witness["gap_distance"] = d;
    try {
      const double f = gap_formula(t, p.e, p.v, ctx.tol);
      row.witness["gap_formula"] = f;
      row.violation = std::abs(f - d);
    } catch (const Error& err) {
      row.aborted = true;
      row.witness["error"] = err.what();
    }
    return row;
  });
  Report r("gap_formula_matches_distance", threshold_at_least(1e-7, ctx.tol));
  r.trials = ctx.config.trials;
  for (const auto& row : rows) {
    if (row.aborted) r.abort_trial(row.witness);
    else r.record(row.violation, row.witness);
  }
  r.details = {{"factor", t.label()}, {"seed", ctx.config.seed}};
  return {std::move(r)};
}

std::string csv_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Outcome cmd_ttp_table(Context& ctx) {
  const AtomicTriple& t = *ctx.triple;
  struct Row {
    json entry;
    double symmetry = 0.0;
    std::string csv;
  };
  auto rows = run_indexed<Row>(ctx.config.trials, ctx.config.threads, [&](std::size_t i) {
    const PairSample p = sample_pair(t, ctx.config.seed, i);
    const Complex ev = ttp(t, p.e, p.v);
    const Complex ve = ttp(t, p.v, p.e);
    const double d = gap_distance(t, p.e.element(), p.v.element());
    Row row;
    row.symmetry = std::abs(ev - std::conj(ve));
    row.entry = {{"index", i},          {"summand", p.summand},
                 {"mode", p.mode},      {"ttp", complex_to_json(ev)},
                 {"ttp_reverse", complex_to_json(ve)},
                 {"symmetry_defect", row.symmetry},
                 {"gap_distance", d}};
    row.csv = std::to_string(i) + "," + std::to_string(p.summand) + "," + p.mode + "," +
              csv_number(ev.real()) + "," + csv_number(ev.imag()) + "," +
              csv_number(row.symmetry) + "," + csv_number(d) + "\n";
    return row;
  });
  Report r("ttp_conjugate_symmetry", ctx.tol.abs_tol);
  r.trials = ctx.config.trials;
  Outcome o;
  json table = json::array();
  o.csv = "index,summand,mode,ttp_re,ttp_im,symmetry_defect,gap_distance\n";
  for (auto& row : rows) {
    r.record(row.symmetry, row.entry);
    o.csv += row.csv;
    table.push_back(std::move(row.entry));
  }
  o.report = std::move(r);
  o.extra["rows"] = std::move(table);
  return o;
}

Complex alpha_of(const RelativePosition& rp) {
  return std::visit(
      [](const auto& k) -> Complex {
        if constexpr (requires { k.alpha; }) {
          return k.alpha;
        } else {
          return Complex(0.0, 0.0);
        }
      },
      rp.kind);
}

bool cyclic_quadrangles(const AtomicTriple& t, const Element& e, const QuadranglePosition& q,
                        const Tolerance& tol) {
  const std::array<const Element*, 4> u = {&e, &q.v2, &q.v3, &q.v4};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!is_quadrangle(t, *u[k], *u[(k + 1) % 4], *u[(k + 2) % 4], *u[(k + 3) % 4], tol)) return false;
  }
  return true;
}

Outcome cmd_relative_position(Context& ctx) {
  const AtomicTriple& t = *ctx.triple;
  const Tolerance check_tol{threshold_at_least(1e-8, ctx.tol), threshold_at_least(1e-8, ctx.tol)};
  struct Row {
    std::string kind;
    bool failed = false;
    bool degenerate = false;
    double residual = 0.0, product = 0.0, norm = 0.0, alpha = 0.0, cyclic = 0.0;
    json witness;
  };
  auto rows = run_indexed<Row>(ctx.config.trials, ctx.config.threads, [&](std::size_t i) {
    const PairSample p = sample_pair(t, ctx.config.seed, i);
    Row row;
    row.witness = pair_witness(t, i, p);
    try {
      const RelativePosition rp = relative_position(t, p.e, p.v, ctx.tol);
      row.kind = rp.tag();
      row.degenerate = rp.degenerate_split;
      row.residual = rp.residual;
      const auto d = constraint_defects(rp);
      row.product = d.product;
      row.norm = d.norm;
      row.alpha = std::abs(std::abs(alpha_of(rp)) - std::abs(ttp(t, p.v, p.e)));
      if (const auto* q = std::get_if<QuadranglePosition>(&rp.kind); q && rp.frame_complete) {
        row.cyclic = cyclic_quadrangles(t, p.e.element(), *q, check_tol) ? 0.0 : 1.0;
      }
      row.witness["position"] = to_json(t, rp);
    } catch (const Error& err) {
      row.failed = true;
      row.witness["error"] = err.what();
    }
    return row;
  });
  Report reconstruction("reconstruction", 100.0 * std::max(ctx.tol.abs_tol, ctx.tol.rel_tol));
  Report product("coefficient_product", check_tol.abs_tol);
  Report norm("coefficient_norm", check_tol.abs_tol);
  Report alpha("alpha_matches_ttp", check_tol.abs_tol);
  Report cyclic("quadrangle_cyclic_permutation", 0.0);
  std::map<std::string, double> counts = {
      {"orthogonal", 0}, {"collinear", 0}, {"quadrangle", 0}, {"trangle", 0}, {"degenerate_split", 0}};
  for (const auto& row : rows) {
    if (row.failed) {
      reconstruction.abort_trial(row.witness);
      continue;
    }
    counts[row.kind] += 1;
    if (row.degenerate) counts["degenerate_split"] += 1;
    reconstruction.record(row.residual, row.witness);
    product.record(row.product, row.witness);
    norm.record(row.norm, row.witness);
    alpha.record(row.alpha, row.witness);
    cyclic.record(row.cyclic, row.witness);
  }
  Report r("relative_position", 0.0);
  r.trials = ctx.config.trials;
  for (auto* c : {&reconstruction, &product, &norm, &alpha, &cyclic}) {
    c->trials = ctx.config.trials;
    r.checks.push_back(std::move(*c));
  }
  for (const auto& [k, v] : counts) r.values["count_" + k] = v;
  r.details = {{"factor", t.label()}, {"seed", ctx.config.seed}};
  return {std::move(r)};
}

MapSpec load_map_spec(const Context& ctx) {
  if (ctx.config.map_spec_path.empty()) return random_automorphism_spec(*ctx.triple, ctx.config.seed);
  try {
    return parse_map_spec(read_json_file(ctx.config.map_spec_path));
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

struct LoadedMap {
  MapSpec spec;
  AtomicTriple out;
  ElementMap phi;
};

LoadedMap load_map(const Context& ctx) {
  MapSpec spec = load_map_spec(ctx);
  try {
    AtomicTriple out = output_triple(spec, *ctx.triple, ctx.tol);
    ElementMap phi = as_element_map(spec, *ctx.triple, out, ctx.tol);
    return {std::move(spec), std::move(out), std::move(phi)};
  } catch (const Error& e) {
    throw ConfigError(std::string("map spec does not fit the factor spec: ") + e.what());
  }
}

Outcome cmd_preserver_check(Context& ctx) {
  const LoadedMap m = load_map(ctx);
  const AtomicTriple& t = *ctx.triple;
  const auto& c = ctx.config;
  const std::string& prop = c.property;
  Report r("preserver_check", 0.0);
  r.trials = c.trials;
  auto want = [&](const char* name) { return prop == "all" || prop == name; };
  if (want("ttp")) r.checks.push_back(check_ttp_preservation(m.phi, t, m.out, c.trials, c.seed, ctx.tol, c.threads));
  if (want("orthogonality")) {
    r.checks.push_back(check_orthogonality_preservation(m.phi, t, m.out, c.trials, c.seed, ctx.tol, c.threads));
  }
  if (want("isometry")) {
    r.checks.push_back(check_isometry_on_minimals(m.phi, t, m.out, c.trials, c.seed, ctx.tol, c.threads));
  }
  if (want("collinearity")) {
    r.checks.push_back(check_collinearity_preservation(m.phi, t, m.out, c.trials, c.seed, ctx.tol, c.threads));
  }
  Outcome o;
  if (prop == "classify") {
    Report cls("linearity_classification", 0.0);
    cls.trials = c.trials;
    try {
      const auto result = classify_real_linear_isometry(m.phi, t, m.out, c.trials, c.seed, ctx.tol);
      cls.details = to_json(result);
    } catch (const Error& e) {
      cls.record(1.0, {{"error", e.what()}});
    }
    r.checks.push_back(std::move(cls));
  }
  r.details = {{"factor", t.label()}, {"output_factor", m.out.label()}, {"seed", c.seed}};
  o.report = std::move(r);
  o.extra["map_spec"] = to_json(m.spec);
  return o;
}

Outcome cmd_remark35(Context& ctx) { return {verify_remark_counterexamples(ctx.tol)}; }

Outcome cmd_socle_extend(Context& ctx) {
  const LoadedMap m = load_map(ctx);
  const AtomicTriple& t = *ctx.triple;
  const double limit = threshold_at_least(1e-8, ctx.tol);
  Report r("socle_extension", 0.0);
  r.trials = 1;
  Report fit("complex_linear_fit", limit);
  Report products("triple_products_preserved", limit);
  const auto samples = socle_samples(m.phi, t, m.out, ctx.config.seed);
  // Fit with an unlimited consistency threshold so the residual is always
  // available, then judge it here.
  const Tolerance loose{1e300, 1e300};
  const SocleExtension ext = extend_to_socle(t, m.out, samples, loose, ctx.config.seed);
  fit.trials = samples.size();
  products.trials = 16;
  fit.record(ext.residual, {{"residual", ext.residual}, {"error", "InconsistentSamples"}});
  r.values["residual"] = ext.residual;
  r.values["smallest_singular_value"] = ext.smallest_singular_value;
  r.values["samples"] = static_cast<double>(samples.size());
  if (ext.residual <= limit) {
    products.record(ext.triple_defect, {{"triple_defect", ext.triple_defect}});
    r.values["triple_defect"] = ext.triple_defect;
  }
  r.checks = {fit};
  if (ext.residual <= limit) r.checks.push_back(products);
  try {
    r.values["real_fit_residual"] = extend_to_socle_real(t, m.out, samples, loose).residual;
  } catch (const Error&) {
  }
  Outcome o;
  o.report = std::move(r);
  o.extra["map_spec"] = to_json(m.spec);
  if (ext.residual <= limit) o.extra["linear_map"] = matrix_to_json(ext.map);
  return o;
}

using Command = std::function<Outcome(Context&)>;

const std::map<std::string, std::pair<Command, bool>>& commands() {
  // name -> (handler, needs a factor spec)
  static const std::map<std::string, std::pair<Command, bool>> table = {
      {"verify-axioms", {cmd_verify_axioms, true}},
      {"sample-minimal", {cmd_sample_minimal, true}},
      {"gap-vs-formula", {cmd_gap_vs_formula, true}},
      {"ttp-table", {cmd_ttp_table, true}},
      {"relative-position", {cmd_relative_position, true}},
      {"preserver-check", {cmd_preserver_check, true}},
      {"remark35", {cmd_remark35, false}},
      {"socle-extend", {cmd_socle_extend, true}},
  };
  return table;
}

void validate(const RunConfig& c) {
  if (!commands().contains(c.command)) throw ConfigError("unknown command \"" + c.command + "\"");
  if (c.trials < 1) throw ConfigError("--trials must be at least 1");
  if (!(c.tol > 0.0) || !std::isfinite(c.tol)) throw ConfigError("--tol must be a positive number");
  if (c.format != "json" && c.format != "text" && c.format != "csv") {
    throw ConfigError("--format must be json, text or csv");
  }
  if (c.format == "csv" && c.command != "ttp-table") throw ConfigError("csv output is only available for ttp-table");
  static const std::array<const char*, 6> properties = {"all", "ttp", "orthogonality", "isometry",
                                                         "collinearity", "classify"};
  if (std::find(properties.begin(), properties.end(), c.property) == properties.end()) {
    throw ConfigError("unknown --property \"" + c.property + "\"");
  }
  if (c.threads < 1) throw ConfigError("--threads must be at least 1");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  json head = json::object();
  try {
    validate(config);
    Context ctx{config, Tolerance{config.tol, config.tol}, std::nullopt};
    const auto& [handler, needs_factor] = commands().at(config.command);
    if (needs_factor) ctx.triple = load_triple(config);
    head["schema"] = kSchema;
    head["command"] = config.command;
    if (ctx.triple) head["factor"] = to_json(*ctx.triple);
    head["seed"] = config.seed;
    head["trials"] = config.trials;
    head["tol"] = config.tol;
    try {
      outcome = handler(ctx);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      // A library failure during the run is a finding, not a usage error.
      outcome.report = Report(config.command, 0.0);
      outcome.report.abort_trial({{"error", e.what()}});
    }
  } catch (const ConfigError& e) {
    err << "triple-lab: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "triple-lab: " << e.what() << "\n";
    return kExitConfigError;
  }

  const bool pass = outcome.report.pass();
  if (config.format == "csv") {
    out << outcome.csv;
  } else if (config.format == "text") {
    out << "triple-lab " << config.command;
    if (head.contains("factor")) out << "  factor=" << parse_atomic_triple(head["factor"]).label();
    out << "  seed=" << config.seed << "  trials=" << config.trials << "  tol=" << config.tol << "\n";
    out << to_text(outcome.report);
  } else {
    json doc = head;
    doc["verdict"] = pass ? "pass" : "fail";
    doc["report"] = to_json(outcome.report);
    for (auto& [k, v] : outcome.extra.items()) doc[k] = v;
    out << doc.dump(2) << "\n";
  }
  return pass ? kExitPass : kExitPropertyFailure;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for JB*-triples, tripotents and their preservers", "triple-lab"};
  app.require_subcommand(1);
  RunConfig config;
  std::string tol_text;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool factor) {
    if (factor) sub->add_option("--factor-spec", config.factor_spec_path, "factor spec JSON file")->required();
    sub->add_option("--trials", config.trials, "number of trials")->capture_default_str();
    sub->add_option("--seed", seed, "base seed")->capture_default_str();
    sub->add_option("--tol", tol_text, "tolerance (default 1e-9, or TRIPLE_LAB_TOL)");
    sub->add_option("--threads", config.threads, "worker threads")->capture_default_str();
    sub->add_option("--format", config.format, "json or text")->capture_default_str();
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const std::array<Sub, 8> subs = {{
      {"verify-axioms", "check the JB*-triple axioms on random elements"},
      {"sample-minimal", "sample minimal tripotents and their Peirce data"},
      {"gap-vs-formula", "compare the gap norm with its closed form"},
      {"ttp-table", "tabulate transition pseudo-probabilities (json, text or csv)"},
      {"relative-position", "decompose pairs of minimal tripotents"},
      {"preserver-check", "check preserver properties of a map spec"},
      {"remark35", "reproduce the equal-TTP / unequal-distance counterexamples"},
      {"socle-extend", "fit a linear extension of a map from minimal tripotents"},
  }};
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    const std::string name = s.name;
    add_common(sub, name != "remark35");
    if (name == "preserver-check" || name == "socle-extend") {
      sub->add_option("--map-spec", config.map_spec_path, "map spec JSON file (random automorphism if omitted)");
    }
    if (name == "preserver-check") {
      sub->add_option("--property", config.property, "ttp, orthogonality, isometry, collinearity, classify or all")
          ->capture_default_str();
    }
    sub->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "triple-lab: " << e.what() << "\n";
    return kExitConfigError;
  }
  config.seed = seed;
  const char* env = std::getenv("TRIPLE_LAB_TOL");
  if (tol_text.empty() && env != nullptr && *env != '\0') tol_text = env;
  if (!tol_text.empty()) {
    char* end = nullptr;
    const double v = std::strtod(tol_text.c_str(), &end);
    if (end == tol_text.c_str() || *end != '\0') {
      err << "triple-lab: invalid tolerance \"" << tol_text << "\"\n";
      return kExitConfigError;
    }
    config.tol = v;
  }
  return run(config, out, err);
}

}  // namespace triplelab::cli
