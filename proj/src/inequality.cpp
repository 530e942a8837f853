#include "potentia/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "potentia/parallel.hpp"

namespace potentia {

namespace {

const std::vector<std::pair<InequalityTag, std::string>>& tag_names() {
  static const std::vector<std::pair<InequalityTag, std::string>> names = {
      {InequalityTag::apriori_L1, "apriori_L1"},        {InequalityTag::apriori_Lp, "apriori_Lp"},
      {InequalityTag::stein_weiss, "stein_weiss"},      {InequalityTag::cocanceling_moment, "cocanceling_moment"},
      {InequalityTag::riesz_L1, "riesz_L1"},            {InequalityTag::trace, "trace"},
      {InequalityTag::fractional, "fractional"},
  };
  return names;
}

// Hermitian pairing sum conj(a) . b over nodes, times the cell volume.
Complex field_pairing(const Field& a, const Field& b) {
  Complex s{};
  for (std::size_t i = 0; i < a.nodes(); ++i)
    for (int c = 0; c < a.components(); ++c) s += std::conj(a.at(i, c)) * b.at(i, c);
  return s * a.grid().cell_volume();
}

// integral of phi against mu, pairing conj(mu) . phi.
Complex measure_pairing(const Measure& mu, const Field& phi) {
  require(mu.components() == phi.components(), "pairing: measure and field components differ");
  if (mu.is_atomic()) {
    const auto& a = mu.as_atomic();
    Complex s{};
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      const auto v = interpolate(phi, a.points[i]);
      if (!v) continue;
      for (std::size_t c = 0; c < v->size(); ++c) s += std::conj(a.values[i][c]) * (*v)[c];
    }
    return s;
  }
  const auto& d = mu.as_density().density;
  require(d.grid() == phi.grid(), "pairing: density must live on the field grid");
  return field_pairing(d, phi);
}

double weighted_lp_norm(const Field& g, const std::vector<double>& w, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes(); ++i) s += std::pow(g.magnitude(i), p) * w[i];
  return std::pow(s * g.grid().cell_volume(), 1.0 / p);
}

Field scalar_field(const Grid& g, const std::vector<double>& v) {
  std::vector<Complex> data(v.begin(), v.end());
  return Field(g, 1, std::move(data));
}

std::vector<double> conjugate_weight(const Weight& w, const Grid& g, double p) {
  if (w.is_power()) return sample_power(g, w.as_power().alpha / (1.0 - p));
  auto v = w.on_grid(g);
  for (auto& x : v) x = std::pow(x, 1.0 / (1.0 - p));
  return v;
}

Measure power_density(const Grid& g, double alpha, double cutoff = -1.0) {
  auto v = sample_power(g, alpha);
  if (cutoff > 0.0)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (euclidean_norm(g.point(i)) >= cutoff) v[i] = 0.0;
  return Measure::density(scalar_field(g, v));
}

const HomogeneousOperator& require_op(const InequalityProblem& pr) {
  require(pr.op.has_value(), "inequality: this tag needs an operator");
  return *pr.op;
}

const PositiveMeasure& require_nu(const InequalityProblem& pr) {
  require(pr.nu.has_value(), "inequality: this tag needs a measure nu");
  return *pr.nu;
}

}  // namespace

std::string to_string(InequalityTag t) {
  for (const auto& [tag, name] : tag_names())
    if (tag == t) return name;
  return "unknown";
}

InequalityTag inequality_tag(const std::string& name) {
  for (const auto& [tag, n] : tag_names())
    if (n == name) return tag;
  throw InputError("unknown inequality tag: " + name);
}

const std::vector<InequalityTag>& all_inequality_tags() {
  static const std::vector<InequalityTag> tags = [] {
    std::vector<InequalityTag> t;
    for (const auto& [tag, name] : tag_names()) t.push_back(tag);
    return t;
  }();
  return tags;
}

ProblemFactory standard_factory(InequalityTag tag) {
  return [tag](const Grid& g) {
    require(g.dim() == 2, "standard problems are set in N = 2");
    InequalityProblem pr;
    pr.tag = tag;
    pr.grid = g;
    pr.op = catalog::gradient(2);
    pr.w = Weight::unit(2);
    switch (tag) {
      case InequalityTag::apriori_L1:
      case InequalityTag::trace:
        pr.mu = power_density(g, -1.0);
        pr.nu = total_variation(*pr.mu);
        break;
      case InequalityTag::apriori_Lp:
        // |x|^{-1/2} on B(0, 1) has finite (1, 3, |x|^{1/2})-energy.
        pr.mu = power_density(g, -0.5, 1.0);
        pr.nu = total_variation(*pr.mu);
        pr.w = Weight::power(2, 0.5);
        pr.p = 3.0;
        break;
      case InequalityTag::stein_weiss:
        pr.mu = power_density(g, -0.5);
        pr.nu = total_variation(*pr.mu);
        pr.w = Weight::power(2, 0.5);
        break;
      case InequalityTag::cocanceling_moment:
        pr.annihilator = catalog::curl_rows(2);
        pr.auxiliary = BumpSpec{{0.3, -0.2}, 0.3 * g.half_width(), {Complex{1.0}}, std::nullopt};
        break;
      case InequalityTag::riesz_L1: {
        std::vector<double> ind(g.size(), 0.0);
        for (std::size_t i = 0; i < g.size(); ++i)
          if (euclidean_norm(g.point(i)) < 0.5 * g.half_width()) ind[i] = 1.0;
        pr.nu = PositiveMeasure::density(g, std::move(ind));
        pr.op.reset();
        pr.q = 2.0;  // N / (N - l)
        break;
      }
      case InequalityTag::fractional:
        pr.ell = 0.5;
        pr.mu = power_density(g, -0.5);
        pr.nu = total_variation(*pr.mu);
        break;
    }
    return pr;
  };
}

Field test_field(const TestInput& input, const Grid& g) {
  Field f = synthesize_bump(input.bump, g);
  if (input.shift) {
    BumpSpec moved = input.bump;
    for (std::size_t d = 0; d < moved.center.size(); ++d) moved.center[d] += (*input.shift)[d];
    f -= synthesize_bump(moved, g);
  }
  if (input.scale != Complex{1.0, 0.0}) f *= input.scale;
  return f;
}

InequalityInstance evaluate_inequality(const InequalityProblem& pr, const TestInput& input) {
  InequalityInstance out;
  out.tag = pr.tag;
  out.input = input;
  const Grid& g = pr.grid;
  const Field phi = test_field(input, g);
  switch (pr.tag) {
    case InequalityTag::apriori_L1:
    case InequalityTag::apriori_Lp: {
      require(pr.mu.has_value(), "apriori inequality: needs mu");
      const auto& op = require_op(pr);
      out.lhs = std::abs(measure_pairing(*pr.mu, phi));
      const Field a = apply_operator(op, phi);
      if (pr.tag == InequalityTag::apriori_L1) {
        out.rhs = weighted_l1_norm(a, pr.w);
      } else {
        require(pr.p > 1.0, "apriori_Lp: requires p > 1");
        out.rhs = weighted_lp_norm(a, conjugate_weight(pr.w, g, pr.p), pr.p / (pr.p - 1.0));
      }
      break;
    }
    case InequalityTag::stein_weiss: {
      const auto& op = require_op(pr);
      const Field a = apply_operator(op, phi);
      const Field k = apply_multiplier(multiplier::KernelH{op}, a);
      out.lhs = weighted_lq_nu_norm(k, pr.q, require_nu(pr)).value;
      out.rhs = weighted_l1_norm(a, pr.w);
      break;
    }
    case InequalityTag::cocanceling_moment: {
      const auto& op = require_op(pr);
      require(pr.annihilator.has_value() && pr.auxiliary.has_value(), "cocanceling_moment: needs L and psi");
      const Field f = apply_operator(op, synthesize_bump(*pr.auxiliary, g));
      require(phi.components() == f.components(), "cocanceling_moment: test function must take values in F");
      out.lhs = std::abs(field_pairing(phi, f));
      double rhs = 0.0;
      for (int j = 1; j <= pr.annihilator->order(); ++j) {
        const auto dj = derivative_magnitude(phi, j);
        for (std::size_t i = 0; i < g.size(); ++i)
          rhs += f.magnitude(i) * std::pow(euclidean_norm(g.point(i)), j) * dj[i];
      }
      out.rhs = rhs * g.cell_volume();
      break;
    }
    case InequalityTag::riesz_L1: {
      require(phi.components() == 1, "riesz_L1: u must be scalar");
      const Field iu = apply_multiplier(multiplier::RieszPotential{pr.ell}, phi);
      out.lhs = weighted_lq_nu_norm(iu, pr.q, require_nu(pr)).value;
      Field ru(g, g.dim());
      for (int j = 0; j < g.dim(); ++j) {
        const Field rj = apply_multiplier(multiplier::RieszTransform{j}, phi);
        for (std::size_t i = 0; i < g.size(); ++i) ru.at(i, j) = rj.at(i, 0);
      }
      out.rhs = weighted_l1_norm(ru, pr.w);
      break;
    }
    case InequalityTag::trace: {
      const auto& op = require_op(pr);
      const int m = op.order();
      if (m == 1) {
        out.lhs = weighted_lq_nu_norm(phi, 1.0, require_nu(pr)).value;
      } else {
        out.lhs = weighted_lq_nu_norm(scalar_field(g, derivative_magnitude(phi, m - 1)), 1.0, require_nu(pr)).value;
      }
      out.rhs = weighted_l1_norm(apply_operator(op, phi), pr.w);
      break;
    }
    case InequalityTag::fractional: {
      const auto& op = require_op(pr);
      require(pr.ell > 0.0 && pr.ell <= op.order(), "fractional: requires 0 < l <= m");
      const Field v = apply_multiplier(multiplier::FractionalLaplacian{op.order() - pr.ell}, phi);
      out.lhs = weighted_lq_nu_norm(v, pr.q, require_nu(pr)).value;
      out.rhs = weighted_l1_norm(apply_operator(op, phi), pr.w);
      break;
    }
  }
  if (out.rhs > 0.0) out.ratio = out.lhs / out.rhs;
  else out.violation_candidate = out.lhs > 0.0;
  return out;
}

BumpFamily BumpFamily::for_problem(const InequalityProblem& pr) {
  BumpFamily f;
  const Grid& g = pr.grid;
  f.dim = g.dim();
  f.half_width = g.half_width();
  f.shifted = pr.tag == InequalityTag::riesz_L1;
  if (pr.tag == InequalityTag::riesz_L1) f.components = 1;
  else if (pr.tag == InequalityTag::cocanceling_moment) f.components = require_op(pr).f_dim();
  else f.components = require_op(pr).e_dim();
  const double L = g.half_width();
  f.r_max = f.shifted ? 0.25 * L : 0.4 * L;
  f.r_min = std::max(0.15 * L, 6.0 * g.spacing());
  require(f.r_min < f.r_max, "bump family: grid too coarse for the box");
  f.omega_max = 8.0 / L;
  return f;
}

std::size_t BumpFamily::parameter_count() const {
  return static_cast<std::size_t>(2 * dim + 1 + (shifted ? dim : 0));
}

TestInput BumpFamily::decode(const std::vector<double>& theta, const ComplexVector& amplitude) const {
  require(theta.size() == parameter_count(), "bump family: parameter vector has the wrong length");
  const auto D = static_cast<std::size_t>(dim);
  TestInput in;
  const double rho = r_min + 0.5 * (theta[D] + 1.0) * (r_max - r_min);
  const double reach = 0.75 * half_width - rho - (shifted ? rho : 0.0);
  in.bump.radius = rho;
  in.bump.center.resize(D);
  for (std::size_t d = 0; d < D; ++d) in.bump.center[d] = theta[d] * reach;
  Point omega(D);
  for (std::size_t d = 0; d < D; ++d) omega[d] = theta[D + 1 + d] * omega_max;
  in.bump.modulation = omega;
  in.bump.amplitude = amplitude;
  if (shifted) {
    Point delta(D);
    for (std::size_t d = 0; d < D; ++d) delta[d] = theta[2 * D + 1 + d] * rho;
    in.shift = delta;
  }
  return in;
}

ConstantEstimate estimate_constant(const InequalityProblem& pr, int budget, std::uint64_t seed) {
  require(budget >= 1, "estimate_constant: budget must be >= 1");
  const BumpFamily fam = BumpFamily::for_problem(pr);
  const std::size_t k = fam.parameter_count();
  Uniform rng(seed);
  ConstantEstimate est;
  est.tag = pr.tag;
  est.seed = seed;

  const int starts = std::min(kMultiStarts, budget);
  std::vector<std::vector<double>> thetas(static_cast<std::size_t>(starts), std::vector<double>(k));
  std::vector<ComplexVector> amps(static_cast<std::size_t>(starts));
  for (int s = 0; s < starts; ++s) {
    for (auto& t : thetas[static_cast<std::size_t>(s)]) t = rng.symmetric();
    ComplexVector a(static_cast<std::size_t>(fam.components));
    double norm = 0.0;
    for (auto& z : a) {
      z = rng.symmetric();
      norm += std::norm(z);
    }
    if (norm == 0.0) a[0] = 1.0, norm = 1.0;
    for (auto& z : a) z /= std::sqrt(norm);
    amps[static_cast<std::size_t>(s)] = std::move(a);
  }
  std::vector<InequalityInstance> first(static_cast<std::size_t>(starts));
  parallel_for(first.size(), [&](std::size_t s) { first[s] = evaluate_inequality(pr, fam.decode(thetas[s], amps[s])); });

  bool any_rhs = false;
  std::size_t best = 0;
  for (std::size_t s = 0; s < first.size(); ++s) {
    const double r = first[s].ratio.value_or(0.0);
    any_rhs = any_rhs || first[s].rhs > 0.0;
    est.history.push_back(r);
    if (r > est.history[best]) best = s;
  }
  std::vector<double> theta = thetas[best];
  const ComplexVector amp = amps[best];
  est.best_ratio = est.history[best];
  est.extremizer = first[best].input;

  int remaining = budget - starts;
  auto eval = [&](const std::vector<double>& t) {
    const auto inst = evaluate_inequality(pr, fam.decode(t, amp));
    any_rhs = any_rhs || inst.rhs > 0.0;
    const double r = inst.ratio.value_or(0.0);
    est.history.push_back(r);
    --remaining;
    if (r > est.best_ratio) {
      est.best_ratio = r;
      est.extremizer = inst.input;
    }
    return r;
  };
  // Golden-section maximisation along one coordinate at a time.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  std::size_t coord = 0;
  while (remaining > 0) {
    double a = -1.0, b = 1.0;
    std::vector<double> tc = theta, td = theta;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    tc[coord] = c;
    const double fc = eval(tc);
    if (remaining == 0) break;
    td[coord] = d;
    double fd = eval(td);
    double fcur = fc;
    int used = 2;
    while (used < kLineSearchEvaluations && remaining > 0) {
      if (fcur >= fd) {
        b = d;
        d = c;
        fd = fcur;
        c = b - phi * (b - a);
        tc[coord] = c;
        fcur = eval(tc);
      } else {
        a = c;
        c = d;
        fcur = fd;
        d = a + phi * (b - a);
        td[coord] = d;
        fd = eval(td);
      }
      ++used;
    }
    // Adopt the line optimum when it improved on the incumbent.
    const double xc = fcur >= fd ? c : d;
    const double fx = std::max(fcur, fd);
    std::vector<double> cand = theta;
    cand[coord] = xc;
    if (fx >= est.best_ratio) theta = cand;
    coord = (coord + 1) % k;
  }
  if (!any_rhs) throw DomainError("estimate_constant: degenerate family (every rhs vanished)");
  return est;
}

BatchReport run_batch(const ProblemFactory& factory, const Grid& g, int count, std::uint64_t seed) {
  require(count >= 1, "run_batch: count must be >= 1");
  const InequalityProblem pr = factory(g);
  const BumpFamily fam = BumpFamily::for_problem(pr);
  Uniform rng(seed);
  std::vector<TestInput> inputs;
  for (int s = 0; s < count; ++s) {
    std::vector<double> theta(fam.parameter_count());
    for (auto& t : theta) t = rng.symmetric();
    ComplexVector a(static_cast<std::size_t>(fam.components));
    double norm = 0.0;
    for (auto& z : a) {
      z = rng.symmetric();
      norm += std::norm(z);
    }
    for (auto& z : a) z /= std::sqrt(norm);
    inputs.push_back(fam.decode(theta, a));
  }
  std::vector<InequalityInstance> res(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) { res[i] = evaluate_inequality(pr, inputs[i]); });

  BatchReport rep;
  rep.tag = pr.tag;
  rep.instances = res.size();
  std::vector<double> ratios;
  for (const auto& r : res)
    if (r.ratio) ratios.push_back(*r.ratio);
  if (!ratios.empty()) {
    rep.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    std::vector<double> sorted = ratios;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    rep.median_ratio = sorted[sorted.size() / 2];
  }
  std::optional<InequalityProblem> fine_problem;
  for (const auto& r : res) {
    const bool flagged = r.violation_candidate || (r.ratio && *r.ratio > kViolationFactor * rep.median_ratio);
    if (!flagged) continue;
    if (!fine_problem) fine_problem = factory(Grid(g.dim(), g.half_width(), 2 * g.n()));
    AuditedInstance a;
    a.coarse = r;
    a.fine = evaluate_inequality(*fine_problem, r.input);
    if (a.fine->violation_candidate) a.confirmed = true;
    else if (a.fine->ratio && r.ratio) a.confirmed = *a.fine->ratio > kAuditGrowth * *r.ratio;
    if (a.confirmed) ++rep.confirmed;
    rep.candidates.push_back(std::move(a));
  }
  return rep;
}

HardyReport hardy_check(const PositiveMeasure& nu, const Weight& u, const Weight& v, double q,
                        const std::vector<std::vector<double>>& g_family, const Grid& g) {
  require(q >= 1.0, "hardy_check: q must be >= 1");
  require(nu.dim() == g.dim(), "hardy_check: dimension mismatch");
  const auto atoms = nu.to_atomic();
  const auto& a = atoms.as_atomic();
  const auto vv = v.on_grid(g);
  std::vector<double> ux(a.points.size()), rx(a.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    ux[i] = u(a.points[i]);
    rx[i] = euclidean_norm(a.points[i]);
  }
  std::vector<bool> support(g.size(), false);
  for (const auto& gf : g_family) {
    require(gf.size() == g.size(), "hardy_check: family member does not match the grid");
    for (std::size_t j = 0; j < g.size(); ++j) {
      require(gf[j] >= 0.0, "hardy_check: g must be non-negative");
      if (gf[j] > 0.0) support[j] = true;
    }
  }
  HardyReport rep;
  rep.family = g_family.size();
  std::vector<double> cy(g.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t j) {
    if (!support[j]) return;
    const double ry = euclidean_norm(g.point(j));
    double s = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i)
      if (rx[i] >= 2.0 * ry && a.masses[i] > 0.0 && std::isfinite(ux[i])) s += ux[i] * a.masses[i];
    cy[j] = std::pow(s, 1.0 / q) / vv[j];
  });
  for (std::size_t j = 0; j < g.size(); ++j)
    if (support[j]) rep.hypothesis_constant = std::max(rep.hypothesis_constant, cy[j]);

  const double vol = g.cell_volume();
  for (const auto& gf : g_family) {
    double rhs = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) rhs += gf[j] * vv[j];
    rhs *= vol;
    if (rhs == 0.0) continue;
    double lhs = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      if (a.masses[i] == 0.0 || !std::isfinite(ux[i])) continue;
      double inner = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j)
        if (gf[j] > 0.0 && 2.0 * euclidean_norm(g.point(j)) < rx[i]) inner += gf[j];
      inner *= vol;
      if (inner > 0.0) lhs += std::pow(inner, q) * ux[i] * a.masses[i];
    }
    lhs = std::pow(lhs, 1.0 / q);
    rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
  }
  rep.pass = rep.max_ratio <= rep.hypothesis_constant * (1.0 + kHardyAllowance);
  return rep;
}

}  // namespace potentia
