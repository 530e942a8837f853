#include "potentia/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <set>
#include <ostream>
#include <sstream>

#include "potentia/io.hpp"
#include "potentia/parallel.hpp"
#include "potentia/report.hpp"

namespace potentia::cli {

namespace fs = std::filesystem;
using report::json;

namespace {

constexpr double kResidualTolerance = 1e-3;
constexpr const char* kDefaultSolveGrid = "n=256,L=4";
constexpr const char* kDefaultLabGrid = "n=64,L=4";

struct Context {
  const RunConfig& config;
  json doc;
  int exit_code = kExitOk;
  std::vector<std::pair<fs::path, std::string>> text_files;
  std::vector<std::pair<fs::path, Field>> fields;
};

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InputError(std::string("missing required flag ") + flag);
  return *v;
}

Grid grid_or(const RunConfig& c, const char* fallback, int dim) { return io::parse_grid(c.grid.value_or(fallback), dim); }

Weight weight_or_unit(const RunConfig& c, int dim) { return c.weight ? io::parse_weight(*c.weight, dim) : Weight::unit(dim); }

std::string csv_preamble(const RunConfig& c) {
  return "# potentia " + std::string(kToolVersion) + " seed=" + std::to_string(c.seed) + "\n";
}

void add_csv(Context& ctx, const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<std::string>>& rows) {
  std::string text = csv_preamble(ctx.config);
  auto line = [&text](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text += (i ? "," : "") + cells[i];
    text += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  ctx.text_files.emplace_back(name, std::move(text));
}

// Grid weights: a coarse lattice plus clusters of spacing 2h around the
// origin and the nodes where w is smallest and largest, so that balls
// straddling a singularity are sampled from the smallest radii on.
BallFamily weight_family(const Weight& w, const std::optional<int>& samples) {
  const int dim = w.dim();
  if (w.is_power()) return BallFamily::lattice(dim, 1.0, 0.5, 1e-3, 2.0, samples.value_or(20));
  const Grid& g = w.as_grid().grid;
  const auto& v = w.as_grid().values;
  const double h = g.spacing();
  const double ratio = std::sqrt(2.0);
  const int fit = static_cast<int>(std::floor(std::log(g.half_width() / (4.0 * h)) / std::log(ratio) + 1e-9)) + 1;
  BallFamily fam = BallFamily::lattice(dim, g.half_width() / 2.0, g.half_width() / 4.0, 2.0 * h, ratio,
                                       std::max(1, samples.value_or(fit)));
  const auto cluster = BallFamily::lattice(dim, 4.0 * h, 2.0 * h, 1.0, 2.0, 1).centers;
  const auto lo = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  const auto hi = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  std::set<Point> seen(fam.centers.begin(), fam.centers.end());
  for (std::size_t anchor : {g.origin_index(), lo, hi}) {
    const Point a = g.point(anchor);
    for (const auto& c : cluster) {
      Point x(a.size());
      for (std::size_t d = 0; d < a.size(); ++d) x[d] = a[d] + c[d];
      if (g.contains(x) && seen.insert(x).second) fam.centers.push_back(x);
    }
  }
  return fam;
}

void check_operator(Context& ctx) {
  const auto op = io::load_operator(need(ctx.config.op, "--op"));
  const std::size_t count = op.dim() == 1 ? 2 : static_cast<std::size_t>(ctx.config.samples.value_or(2048));
  const auto sphere = SphereSample::uniform(op.dim(), count);
  const auto ell = ellipticity_margin(op, sphere);
  const int defect = canceling_defect(op, sphere);
  ctx.doc["samples"]["sphere_directions"] = sphere.count();
  report::add_condition(ctx.doc, "ellipticity");
  report::add_condition(ctx.doc, "canceling");
  ctx.doc["parameters"]["operator"] = io::operator_to_json(op);
  auto& r = ctx.doc["results"];
  r["elliptic"] = ell.elliptic();
  r["margin"] = report::number(ell.margin);
  r["structurally_non_elliptic"] = ell.structurally_non_elliptic;
  r["canceling"] = defect == 0;
  r["canceling_defect"] = defect;
  r["samples"] = sphere.count();
  if (!ell.elliptic()) ctx.exit_code = kExitCheckFailed;
}

void check_weight(Context& ctx) {
  const auto& c = ctx.config;
  const int dim = c.grid ? io::parse_grid(*c.grid).dim() : 2;
  Weight w = io::parse_weight(need(c.weight, "--weight"), dim);
  if (c.grid) {
    const Grid g = io::parse_grid(*c.grid, w.dim());
    ctx.doc["grid"] = report::to_json(g);
    if (w.is_power()) w = Weight::sampled_power(g, w.as_power().alpha);
  } else if (!w.is_power()) {
    ctx.doc["grid"] = report::to_json(w.as_grid().grid);
  }
  const double p = c.p.value_or(2.0);
  const auto family = weight_family(w, c.samples);
  const auto ap = ap_constant(w, p, family);
  ctx.doc["parameters"]["weight"] = w.describe();
  ctx.doc["parameters"]["p"] = report::number(p);
  ctx.doc["samples"]["centers"] = family.centers.size();
  ctx.doc["samples"]["radii"] = family.count;
  ctx.doc["samples"]["balls"] = ap.balls;
  report::add_condition(ctx.doc, "A_p");
  auto& r = ctx.doc["results"];
  r["ap"] = report::to_json(ap);
  const std::optional<double> alpha = c.weight && c.weight->rfind("power:", 0) == 0
                                          ? std::optional<double>(std::stod(c.weight->substr(6)))
                                          : (w.is_power() ? std::optional<double>(w.as_power().alpha) : std::nullopt);
  if (alpha) {
    const bool member = power_membership(*alpha, p, w.dim());
    r["power_membership"] = member;
    r["agrees"] = member == !ap.diverging;
  }
  if (!w.is_power()) {
    report::add_condition(ctx.doc, "maximal_comparability");
    const Weight mw = maximal_function(w);
    const auto& wv = w.as_grid().values;
    const auto& mv = mw.as_grid().values;
    double worst = 0.0;
    for (std::size_t i = 0; i < wv.size(); ++i)
      if (wv[i] > 0.0) worst = std::max(worst, mv[i] / wv[i]);
    r["maximal_ratio"] = report::number(worst);
    ctx.doc["samples"]["maximal_radii"] = maximal_radii(w.as_grid().grid).size();
  }
  if (ap.diverging) ctx.exit_code = kExitCheckFailed;
}

void check_conditions(Context& ctx) {
  const auto& c = ctx.config;
  const Measure mu = io::load_measure(need(c.measure, "--measure"));
  const PositiveMeasure nu = total_variation(mu);
  const Weight w = weight_or_unit(c, mu.dim());
  const double ell = c.ell.value_or(1.0);
  const double q = c.q.value_or(1.0);
  const double m = c.m.value_or(ell);
  double r_min, r_max;
  if (c.grid) {
    const Grid g = io::parse_grid(*c.grid, mu.dim());
    ctx.doc["grid"] = report::to_json(g);
    r_min = g.spacing();
    r_max = g.half_width();
  } else {
    const double R = nu.support_radius() > 0.0 ? nu.support_radius() : 1.0;
    r_min = R / 64.0;
    r_max = 4.0 * R;
  }
  const int radii = c.samples.value_or(16);
  const auto ys = log_spherical_samples(nu, r_min, r_max, radii, 64);
  const auto decay = origin_decay_samples(mu.dim(), r_min, r_max, 24);
  ctx.doc["parameters"]["weight"] = w.describe();
  ctx.doc["parameters"]["ell"] = report::number(ell);
  ctx.doc["parameters"]["q"] = report::number(q);
  ctx.doc["parameters"]["m"] = report::number(m);
  ctx.doc["parameters"]["r_min"] = report::number(r_min);
  ctx.doc["parameters"]["r_max"] = report::number(r_max);
  ctx.doc["samples"]["radii"] = radii;
  ctx.doc["samples"]["directions"] = 64;
  ctx.doc["samples"]["points"] = ys.size();
  ctx.doc["samples"]["decay_balls"] = decay.size();
  const std::vector<ConditionReport> reports{testing_condition_far(nu, w, ell, q, ys),
                                             testing_condition_near(nu, w, ell, q, ys), wolff_condition(nu, w, m, ys),
                                             decay_check(nu, w, ell, q, DecayMode::origin, decay)};
  const char* ids[] = {"testing_far", "testing_near", "wolff", "decay_origin"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    report::add_condition(ctx.doc, ids[i]);
    ctx.doc["results"][ids[i]] = report::to_json(reports[i]);
    rows.push_back({ids[i], report::csv_number(reports[i].constant), to_string(reports[i].status),
                    std::to_string(reports[i].samples), std::to_string(reports[i].skipped)});
    if (reports[i].status == ConditionStatus::diverging) ctx.exit_code = kExitCheckFailed;
  }
  add_csv(ctx, "conditions.csv", {"condition", "constant", "status", "samples", "skipped"}, rows);
}

InequalityProblem lab_problem(const RunConfig& c, InequalityTag tag) {
  const Grid g = grid_or(c, kDefaultLabGrid, 2);
  InequalityProblem problem = standard_factory(tag)(g);
  if (c.op) problem.op = io::load_operator(*c.op);
  if (c.measure) {
    const Measure mu = io::load_measure(*c.measure);
    if (problem.mu) problem.mu = mu;
    if (problem.nu || !problem.mu) problem.nu = total_variation(mu);
  }
  if (c.weight) problem.w = io::parse_weight(*c.weight, g.dim());
  if (c.p) problem.p = *c.p;
  if (c.q) problem.q = *c.q;
  if (c.ell) problem.ell = *c.ell;
  return problem;
}

void describe_problem(json& doc, const InequalityProblem& problem) {
  json d;
  d["tag"] = to_string(problem.tag);
  d["weight"] = problem.w.describe();
  d["p"] = report::number(problem.p);
  d["q"] = report::number(problem.q);
  d["ell"] = report::number(problem.ell);
  d["operator"] = problem.op ? json(io::operator_to_json(*problem.op)) : json(nullptr);
  doc["parameters"]["problem"] = std::move(d);
}

void estimate(Context& ctx) {
  const auto& c = ctx.config;
  const InequalityTag tag = inequality_tag(need(c.kind, "--kind"));
  const auto problem = lab_problem(c, tag);
  const int budget = c.budget.value_or(256);
  ctx.doc["grid"] = report::to_json(problem.grid);
  describe_problem(ctx.doc, problem);
  ctx.doc["samples"]["budget"] = budget;
  report::add_condition(ctx.doc, to_string(tag));
  const auto est = estimate_constant(problem, budget, c.seed);
  ctx.doc["results"]["estimate"] = report::to_json(est);
  std::vector<std::vector<std::string>> rows;
  double best = 0.0;
  for (std::size_t i = 0; i < est.history.size(); ++i) {
    best = std::max(best, est.history[i]);
    rows.push_back({std::to_string(i), report::csv_number(est.history[i]), report::csv_number(best)});
  }
  add_csv(ctx, "ratio_history.csv", {"evaluation", "ratio", "best"}, rows);
}

void solve(Context& ctx) {
  const auto& c = ctx.config;
  const auto op = io::load_operator(need(c.op, "--op"));
  const Measure mu = io::load_measure(need(c.measure, "--measure"));
  const Grid g = grid_or(c, kDefaultSolveGrid, op.dim());
  SolveOptions options;
  options.p = c.p.value_or(2.0);
  options.w = weight_or_unit(c, op.dim());
  options.tests = c.samples.value_or(16);
  options.seed = c.seed;
  ctx.doc["grid"] = report::to_json(g);
  ctx.doc["parameters"]["operator"] = io::operator_to_json(op);
  ctx.doc["parameters"]["weight"] = options.w.describe();
  ctx.doc["parameters"]["p"] = report::number(options.p);
  ctx.doc["samples"]["test_functions"] = options.tests;
  report::add_condition(ctx.doc, "weak_solution");
  report::add_condition(ctx.doc, "energy_identity");
  const auto sphere = SphereSample::uniform(op.dim(), op.dim() == 1 ? 2 : 2048);
  const auto ell = ellipticity_margin(op, sphere);
  const auto res = construct_solution(mu, op, g, options);
  const auto energy = energy_identity_check(res.f, mu, op, g);
  auto& r = ctx.doc["results"];
  r["solution"] = report::to_json(res);
  r["energy_identity"] = report::to_json(energy);
  r["flags"] = json{{"elliptic", ell.elliptic()},
                    {"canceling", canceling_defect(op, sphere) == 0},
                    {"residual_ok", res.residual < kResidualTolerance}};
  if (!(res.residual < kResidualTolerance)) ctx.exit_code = kExitCheckFailed;
  ctx.fields.emplace_back("solution.potf", res.f);
}

void verify_field(Context& ctx) {
  const auto& c = ctx.config;
  const Field f = io::read_field(*c.field);
  const auto op = io::load_operator(need(c.op, "--op"));
  const Measure mu = io::load_measure(need(c.measure, "--measure"));
  const int count = c.samples.value_or(16);
  ctx.doc["grid"] = report::to_json(f.grid());
  ctx.doc["samples"]["test_functions"] = count;
  report::add_condition(ctx.doc, "weak_solution");
  const auto tests = random_test_bumps(f.grid(), op.e_dim(), count, c.seed);
  const auto weak = verify_weak_solution(f, mu, op, tests);
  ctx.doc["results"]["weak_residual"] = report::to_json(weak);
  if (!(weak.max_residual < kResidualTolerance)) ctx.exit_code = kExitCheckFailed;
}

void verify_suite(Context& ctx) {
  const auto& c = ctx.config;
  const Grid g = grid_or(c, kDefaultLabGrid, 2);
  const int count = c.samples.value_or(64);
  std::vector<InequalityTag> tags;
  if (c.kind) tags.push_back(inequality_tag(*c.kind));
  else tags = all_inequality_tags();
  ctx.doc["grid"] = report::to_json(g);
  ctx.doc["samples"]["instances_per_tag"] = count;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string id = to_string(tags[i]);
    report::add_condition(ctx.doc, id);
    const auto batch = run_batch(standard_factory(tags[i]), g, count, c.seed + i);
    ctx.doc["results"][id] = report::to_json(batch);
    rows.push_back({id, std::to_string(batch.instances), report::csv_number(batch.max_ratio),
                    report::csv_number(batch.median_ratio), std::to_string(batch.candidates.size()),
                    std::to_string(batch.confirmed)});
    if (batch.confirmed > 0) ctx.exit_code = kExitCheckFailed;
  }
  add_csv(ctx, "batch.csv", {"tag", "instances", "max_ratio", "median_ratio", "candidates", "confirmed"}, rows);
}

std::string path_string(const json& j, const char* key, const fs::path& base) {
  const fs::path p(j.at(key).get<std::string>());
  return (p.is_absolute() ? p : base / p).string();
}

/// Fills unset fields from the config file.
RunConfig merge_config_file(RunConfig c) {
  if (!c.config) return c;
  const auto file = io::read_json(*c.config);
  const fs::path base = c.config->parent_path();
  try {
    if (!c.kind && file.contains("kind")) c.kind = file.at("kind").get<std::string>();
    if (!c.op && file.contains("operator_path")) c.op = path_string(file, "operator_path", base);
    if (!c.measure && file.contains("measure_path")) c.measure = path_string(file, "measure_path", base);
    if (!c.weight && file.contains("weight")) {
      const auto& w = file.at("weight");
      if (w.is_string()) {
        const std::string s = w.get<std::string>();
        c.weight = s.rfind("power:", 0) == 0 || s == "unit" ? s : path_string(file, "weight", base);
      } else if (w.is_object() && w.value("kind", "") == "power") {
        c.weight = "power:" + io::json(w.at("alpha")).dump();
      } else {
        throw InputError("config weight must be a string");
      }
    }
    if (!c.grid && file.contains("grid")) {
      const auto& g = file.at("grid");
      if (g.is_string()) {
        c.grid = g.get<std::string>();
      } else {
        const Grid grid = io::grid_from_json(g);
        c.grid = "n=" + std::to_string(grid.n()) + ",L=" + io::json(grid.half_width()).dump() +
                 ",N=" + std::to_string(grid.dim());
      }
    }
    if (!c.budget && file.contains("budget")) c.budget = file.at("budget").get<int>();
    if (!c.p && file.contains("p")) c.p = file.at("p").get<double>();
    if (!c.q && file.contains("q")) c.q = file.at("q").get<double>();
    if (!c.ell && file.contains("ell")) c.ell = file.at("ell").get<double>();
    if (c.seed == 0 && file.contains("seed")) c.seed = file.at("seed").get<std::uint64_t>();
  } catch (const io::json::exception& e) {
    throw InputError(c.config->string() + ": " + e.what());
  }
  return c;
}

void require_exists(const std::optional<fs::path>& p, const char* flag) {
  if (p && !fs::exists(*p)) throw InputError(std::string(flag) + ": no such file " + p->string());
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"check-operator", "check-weight", "check-conditions",
                                              "estimate-constant", "solve", "verify"};
  return names;
}

RunOutcome run(const RunConfig& input) {
  RunOutcome outcome;
  try {
    require_exists(input.config, "--config");
    const RunConfig config = merge_config_file(input);
    require_exists(config.op, "--op");
    require_exists(config.measure, "--measure");
    require_exists(config.field, "--field");
    if (config.weight && config.weight->rfind("power:", 0) != 0 && *config.weight != "unit" &&
        !fs::exists(*config.weight))
      throw InputError("--weight: no such file " + *config.weight);

    Context ctx{config, report::envelope(config.command, config.seed, std::nullopt), kExitOk, {}, {}};
    if (config.command == "check-operator") check_operator(ctx);
    else if (config.command == "check-weight") check_weight(ctx);
    else if (config.command == "check-conditions") check_conditions(ctx);
    else if (config.command == "estimate-constant") estimate(ctx);
    else if (config.command == "solve") solve(ctx);
    else if (config.command == "verify") config.field ? verify_field(ctx) : verify_suite(ctx);
    else throw InputError("unknown command: " + config.command);

    outcome.exit_code = ctx.exit_code;
    outcome.report = report::serialize(ctx.doc);
    if (config.out) {
      std::error_code ec;
      fs::create_directories(*config.out, ec);
      const fs::path main = *config.out / (config.command + ".json");
      report::write_text(main, outcome.report);
      outcome.files.push_back(main);
      for (const auto& [name, text] : ctx.text_files) {
        report::write_text(*config.out / name, text);
        outcome.files.push_back(*config.out / name);
      }
      for (const auto& [name, field] : ctx.fields) {
        io::write_field(*config.out / name, field);
        outcome.files.push_back(*config.out / name);
        if (field.grid().dim() <= 3) {
          const fs::path csv = fs::path(*config.out / name).replace_extension(".csv");
          io::write_field_csv(csv, field);
          outcome.files.push_back(csv);
        }
      }
    }
  } catch (const std::exception& e) {
    outcome.exit_code = kExitInputError;
    outcome.report.clear();
    outcome.diagnostic = e.what();
  }
  return outcome;
}

RunConfig parse_arguments(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Numerical lab for A*(D) f = mu in weighted Lebesgue spaces", "potentia"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  std::string op, measure, field, out, config;

  auto common = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "Random seed recorded in every output");
    s->add_option("--out", out, "Output directory for the report and extra files");
  };
  auto opt_double = [](CLI::App* s, const char* name, std::optional<double>& dst, const char* help) {
    return s->add_option_function<double>(name, [&dst](const double& v) { dst = v; }, help);
  };
  auto opt_int = [](CLI::App* s, const char* name, std::optional<int>& dst, const char* help) {
    return s->add_option_function<int>(name, [&dst](const int& v) { dst = v; }, help);
  };
  auto opt_string = [](CLI::App* s, const char* name, std::optional<std::string>& dst, const char* help) {
    return s->add_option_function<std::string>(name, [&dst](const std::string& v) { dst = v; }, help);
  };

  auto* s_op = app.add_subcommand("check-operator", "Ellipticity margin and canceling defect");
  s_op->add_option("--op", op, "Operator description file")->required();
  opt_int(s_op, "--samples", c.samples, "Sphere directions");
  common(s_op);

  auto* s_w = app.add_subcommand("check-weight", "A_p constant and maximal-function comparison");
  opt_string(s_w, "--weight", c.weight, "power:<alpha>, unit, or weight file")->required();
  opt_double(s_w, "--p", c.p, "Exponent p");
  opt_string(s_w, "--grid", c.grid, "Sample power weights on n=<int>,L=<real>[,N=<int>]");
  opt_int(s_w, "--samples", c.samples, "Radii per centre");
  common(s_w);

  auto* s_c = app.add_subcommand("check-conditions", "Testing, Wolff and decay conditions");
  s_c->add_option("--measure", measure, "Measure file")->required();
  opt_string(s_c, "--weight", c.weight, "power:<alpha>, unit, or weight file");
  opt_double(s_c, "--ell", c.ell, "Smoothing order l");
  opt_double(s_c, "--q", c.q, "Exponent q");
  opt_double(s_c, "--m", c.m, "Order m of the Wolff potential (defaults to l)");
  opt_string(s_c, "--grid", c.grid, "Sample radii from h to L of this grid");
  opt_int(s_c, "--samples", c.samples, "Sample radii");
  common(s_c);

  auto* s_e = app.add_subcommand("estimate-constant", "Lower bound for an inequality constant");
  opt_string(s_e, "--kind", c.kind, "Inequality tag");
  s_e->add_option("--config", config, "Experiment config file");
  s_e->add_option("--op", op, "Override the operator");
  s_e->add_option("--measure", measure, "Override the measure");
  opt_string(s_e, "--weight", c.weight, "Override the weight");
  opt_string(s_e, "--grid", c.grid, "Grid (default n=64,L=4)");
  opt_double(s_e, "--p", c.p, "Override p");
  opt_double(s_e, "--q", c.q, "Override q");
  opt_double(s_e, "--ell", c.ell, "Override l");
  opt_int(s_e, "--budget", c.budget, "Evaluations");
  common(s_e);

  auto* s_s = app.add_subcommand("solve", "Spectral solution of A*(D) f = mu");
  s_s->add_option("--config", config, "Solve config file");
  s_s->add_option("--op", op, "Operator description file");
  s_s->add_option("--measure", measure, "Measure file");
  opt_string(s_s, "--grid", c.grid, "Grid (default n=256,L=4)");
  opt_string(s_s, "--weight", c.weight, "Weight for the reported norms");
  opt_double(s_s, "--p", c.p, "Exponent of the reported norm");
  opt_int(s_s, "--samples", c.samples, "Test functions for the weak residual");
  common(s_s);

  auto* s_v = app.add_subcommand("verify", "Weak-solution check of a stored field, or the inequality suite");
  s_v->add_option("--field", field, "Field snapshot to verify");
  s_v->add_option("--op", op, "Operator description file");
  s_v->add_option("--measure", measure, "Measure file");
  opt_string(s_v, "--kind", c.kind, "Restrict the suite to one inequality tag");
  opt_string(s_v, "--grid", c.grid, "Suite grid (default n=64,L=4)");
  opt_int(s_v, "--samples", c.samples, "Test functions, or instances per tag");
  common(s_v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream text;
    app.exit(e, text, text);
    throw HelpRequested(text.str());
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }
  for (auto* s : app.get_subcommands()) c.command = s->get_name();
  if (!op.empty()) c.op = op;
  if (!measure.empty()) c.measure = measure;
  if (!field.empty()) c.field = field;
  if (!out.empty()) c.out = out;
  if (!config.empty()) c.config = config;
  return c;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_arguments(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "potentia: " << e.what() << '\n';
    return kExitInputError;
  }
  const auto outcome = run(config);
  if (outcome.exit_code == kExitInputError) {
    err << "potentia: " << outcome.diagnostic << '\n';
    return outcome.exit_code;
  }
  if (config.out) {
    for (const auto& f : outcome.files) out << f.string() << '\n';
  } else {
    out << outcome.report;
  }
  return outcome.exit_code;
}

}  // namespace potentia::cli
