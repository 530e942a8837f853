#include "potentia/report.hpp"

#include <cmath>
#include <fstream>

namespace potentia::report {

namespace fs = std::filesystem;

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json point(const Point& p) {
  json a = json::array();
  for (double x : p) a.push_back(number(x));
  return a;
}

json complex_value(Complex z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

json envelope(const std::string& command, std::uint64_t seed, const std::optional<Grid>& grid) {
  json r;
  r["schema_version"] = std::string(kSchemaVersion);
  r["tool"] = "potentia";
  r["tool_version"] = std::string(kToolVersion);
  r["command"] = command;
  r["seed"] = seed;
  r["grid"] = grid ? to_json(*grid) : json(nullptr);
  r["samples"] = json::object();
  r["conditions"] = json::array();
  r["parameters"] = json::object();
  r["results"] = json::object();
  return r;
}

void add_condition(json& report, const std::string& id) {
  auto& c = report["conditions"];
  for (const auto& e : c)
    if (e == id) return;
  c.push_back(id);
}

json to_json(const Grid& g) {
  return json{{"dim", g.dim()}, {"n", g.n()}, {"L", number(g.half_width())}, {"h", number(g.spacing())}};
}

json to_json(const EllipticityReport& r) {
  return json{{"elliptic", r.elliptic()},
              {"margin", number(r.margin)},
              {"structurally_non_elliptic", r.structurally_non_elliptic},
              {"samples", r.samples}};
}

json to_json(const ApEstimate& r) {
  json rm = json::array();
  for (double v : r.running_max) rm.push_back(number(v));
  return json{{"estimate", number(r.estimate)}, {"diverging", r.diverging}, {"balls", r.balls}, {"running_max", rm}};
}

json to_json(const ConditionReport& r) {
  return json{{"condition", r.condition},
              {"constant", number(r.constant)},
              {"status", to_string(r.status)},
              {"witness", point(r.witness)},
              {"samples", r.samples},
              {"skipped", r.skipped}};
}

json to_json(const ImplicationReport& r) {
  return json{{"status", to_string(r.status)},
              {"decay_origin", to_json(r.decay_origin)},
              {"decay_off_origin", to_json(r.decay_off_origin)},
              {"far", to_json(r.far)},
              {"near", to_json(r.near)},
              {"inflation_far", number(r.inflation_far)},
              {"inflation_near", number(r.inflation_near)}};
}

json to_json(const TestInput& t) {
  json amp = json::array();
  for (const auto& z : t.bump.amplitude) amp.push_back(complex_value(z));
  json b{{"center", point(t.bump.center)}, {"radius", number(t.bump.radius)}, {"amplitude", amp}};
  b["modulation"] = t.bump.modulation ? point(*t.bump.modulation) : json(nullptr);
  return json{{"bump", b}, {"shift", t.shift ? point(*t.shift) : json(nullptr)}, {"scale", complex_value(t.scale)}};
}

json to_json(const ConstantEstimate& r) {
  return json{{"tag", to_string(r.tag)},
              {"best_ratio", number(r.best_ratio)},
              {"evaluations", r.history.size()},
              {"seed", r.seed},
              {"extremizer", to_json(r.extremizer)}};
}

json to_json(const BatchReport& r) {
  json cands = json::array();
  for (const auto& c : r.candidates) {
    json e{{"coarse_lhs", number(c.coarse.lhs)},
           {"coarse_rhs", number(c.coarse.rhs)},
           {"coarse_ratio", c.coarse.ratio ? number(*c.coarse.ratio) : json(nullptr)},
           {"confirmed", c.confirmed}};
    e["fine_ratio"] = c.fine && c.fine->ratio ? number(*c.fine->ratio) : json(nullptr);
    e["input"] = to_json(c.coarse.input);
    cands.push_back(std::move(e));
  }
  return json{{"tag", to_string(r.tag)},
              {"instances", r.instances},
              {"max_ratio", number(r.max_ratio)},
              {"median_ratio", number(r.median_ratio)},
              {"confirmed_violations", r.confirmed},
              {"candidates", cands}};
}

json to_json(const WeakResidualReport& r) {
  json a = json::array();
  for (double v : r.residuals) a.push_back(number(v));
  return json{{"max_residual", number(r.max_residual)}, {"residuals", a}};
}

json to_json(const EnergyIdentityReport& r) {
  return json{{"deviation", number(r.deviation)}, {"alignment", complex_value(r.alignment)}, {"nodes", r.nodes}};
}

json to_json(const EnergyReport& r) {
  return json{{"strong", number(r.strong)}, {"weak", number(r.weak)},         {"radius", number(r.radius)},
              {"p", number(r.p)},           {"m", number(r.m)},               {"excluded_nodes", r.excluded_nodes}};
}

json to_json(const VanishingReport& r) {
  json radii = json::array();
  json cum = json::array();
  for (double v : r.radii) radii.push_back(number(v));
  for (double v : r.cumulative) cum.push_back(number(v));
  return json{{"diverges", r.diverges},
              {"consistent", r.consistent},
              {"analytic_exponent", number(r.analytic_exponent)},
              {"measured_exponent", number(r.measured_exponent)},
              {"radii", radii},
              {"cumulative", cum}};
}

json to_json(const SolveResult& r) {
  json mean = json::array();
  for (const auto& z : r.mean) mean.push_back(complex_value(z));
  return json{{"residual", number(r.residual)},
              {"norm_lp", number(r.norm_lp)},
              {"norm_linf_inverse_weight", number(r.norm_linf_inv)},
              {"p", number(r.p)},
              {"mean_subtracted", r.mean_subtracted},
              {"mean", mean},
              {"mollification", number(r.mollification)},
              {"components", r.f.components()}};
}

std::string serialize(const json& report) { return report.dump(2) + "\n"; }

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path.string());
  os << text;
  if (!os) throw InputError("write failed: " + path.string());
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  auto line = [&text](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text += ',';
      text += cells[i];
    }
    text += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  write_text(path, text);
}

}  // namespace potentia::report
