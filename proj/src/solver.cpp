#include "potentia/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "potentia/inequality.hpp"
#include "potentia/parallel.hpp"

namespace potentia {

Field measure_density(const Measure& mu, const Grid& g) {
  require(mu.dim() == g.dim(), "measure_density: dimension mismatch");
  if (!mu.is_atomic()) {
    require(mu.as_density().density.grid() == g, "measure_density: density must live on the solve grid");
    return mu.as_density().density;
  }
  const auto& a = mu.as_atomic();
  const int nc = a.components;
  Field rho(g, nc);
  const double h = g.spacing();
  const int n = g.n();
  const int dim = g.dim();
  const double inv_vol = 1.0 / g.cell_volume();
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    require(g.contains(a.points[k]), "measure_density: atom outside the grid box");
    std::array<int, 3> base{0, 0, 0};
    std::array<double, 3> frac{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      const double t = (a.points[k][static_cast<std::size_t>(d)] + g.half_width()) / h;
      double fl = std::floor(t);
      double fr = t - fl;
      if (fr < 1e-12) fr = 0.0;
      if (fr > 1.0 - 1e-12) fl += 1.0, fr = 0.0;
      base[static_cast<std::size_t>(d)] = static_cast<int>(fl);
      frac[static_cast<std::size_t>(d)] = fr;
    }
    for (int corner = 0; corner < (1 << dim); ++corner) {
      double wgt = 1.0;
      std::array<int, 3> idx{0, 0, 0};
      for (int d = 0; d < dim; ++d) {
        const bool up = (corner >> d) & 1;
        const auto ud = static_cast<std::size_t>(d);
        wgt *= up ? frac[ud] : 1.0 - frac[ud];
        idx[ud] = ((base[ud] + (up ? 1 : 0)) % n + n) % n;
      }
      if (wgt == 0.0) continue;
      const auto node = g.linear_index(idx);
      for (int c = 0; c < nc; ++c) rho.at(node, c) += wgt * inv_vol * a.values[k][static_cast<std::size_t>(c)];
    }
  }
  return rho;
}

double weighted_lp_norm(const Field& f, const Weight& w, double p) {
  require(p >= 1.0, "weighted_lp_norm: p must be >= 1");
  const auto wv = w.on_grid(f.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < f.nodes(); ++i) s += std::pow(f.magnitude(i), p) * wv[i];
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double weighted_linf_inverse(const Field& f, const Weight& w) {
  const auto wv = w.on_grid(f.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < f.nodes(); ++i) s = std::max(s, f.magnitude(i) / wv[i]);
  return s;
}

std::vector<BumpSpec> random_test_bumps(const Grid& g, int components, int count, std::uint64_t seed) {
  require(components >= 1 && count >= 0, "random_test_bumps: bad counts");
  Uniform rng(seed);
  const double L = g.half_width();
  std::vector<BumpSpec> out;
  for (int k = 0; k < count; ++k) {
    BumpSpec b;
    b.radius = (0.15 + 0.15 * rng.next()) * L;
    const double reach = 0.75 * L - b.radius;
    for (int d = 0; d < g.dim(); ++d) b.center.push_back(reach * rng.symmetric());
    double norm = 0.0;
    for (int c = 0; c < components; ++c) {
      b.amplitude.emplace_back(rng.symmetric(), 0.0);
      norm += std::norm(b.amplitude.back());
    }
    for (auto& z : b.amplitude) z /= std::sqrt(norm);
    out.push_back(std::move(b));
  }
  return out;
}

WeakResidualReport verify_weak_solution(const Field& f, const Measure& mu, const HomogeneousOperator& op,
                                        const std::vector<BumpSpec>& tests) {
  const Grid& g = f.grid();
  require(f.components() == op.f_dim(), "verify_weak_solution: f must take values in F");
  require(mu.components() == op.e_dim(), "verify_weak_solution: mu must take values in E");
  WeakResidualReport rep;
  rep.residuals.resize(tests.size());
  for (std::size_t t = 0; t < tests.size(); ++t) {
    const Field phi = synthesize_bump(tests[t], g);
    const Field aphi = apply_operator(op, phi);
    Complex lhs{};
    for (std::size_t i = 0; i < g.size(); ++i)
      for (int c = 0; c < f.components(); ++c) lhs += std::conj(f.at(i, c)) * aphi.at(i, c);
    lhs *= g.cell_volume();
    Complex rhs{};
    if (mu.is_atomic()) {
      const auto& a = mu.as_atomic();
      for (std::size_t k = 0; k < a.points.size(); ++k) {
        const auto v = bump_value(tests[t], a.points[k]);
        for (std::size_t c = 0; c < v.size(); ++c) rhs += std::conj(a.values[k][c]) * v[c];
      }
    } else {
      const auto& d = mu.as_density().density;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (int c = 0; c < d.components(); ++c) rhs += std::conj(d.at(i, c)) * phi.at(i, c);
      rhs *= g.cell_volume();
    }
    const double scale = euclidean_norm(std::span<const Complex>(tests[t].amplitude));
    rep.residuals[t] = std::abs(lhs - rhs) / scale;
    rep.max_residual = std::max(rep.max_residual, rep.residuals[t]);
  }
  return rep;
}

SolveResult construct_solution(const Measure& mu, const HomogeneousOperator& op, const Grid& g,
                               const SolveOptions& options) {
  require(op.dim() == g.dim(), "solve: operator and grid dimensions differ");
  require(mu.components() == op.e_dim(), "solve: measure must take values in E");
  op.require_potential_range();
  SolveResult res{Field(g, op.f_dim()), 0.0, 0.0, 0.0, options.p, false, {}, 0.0};
  res.p = options.p;
  Field rho = measure_density(mu, g);
  if (mu.is_atomic()) res.mollification = g.spacing();
  res.mean = rho.mean();
  for (const auto& z : res.mean)
    if (std::abs(z) > 1e-12 * std::max(1.0, rho.max_norm())) res.mean_subtracted = true;
  // The zero frequency is annihilated by the multiplier, which removes the mean.
  res.f = apply_multiplier(multiplier::KernelHAdjoint{op}, rho);
  const Weight w = options.w.dim() == g.dim() ? options.w : Weight::unit(g.dim());
  res.norm_lp = weighted_lp_norm(res.f, w, options.p);
  res.norm_linf_inv = weighted_linf_inverse(res.f, w);
  if (options.tests > 0)
    res.residual = verify_weak_solution(res.f, mu, op, random_test_bumps(g, op.e_dim(), options.tests, options.seed)).max_residual;
  return res;
}

EnergyIdentityReport energy_identity_check(const Field& f, const Measure& mu, const HomogeneousOperator& op,
                                           const Grid& g) {
  require(f.grid() == g, "energy_identity_check: f must live on g");
  op.require_potential_range();
  const int m = op.order();
  const Field pot = mu.is_atomic() ? potential_on_grid(mu, m, g) : potential_on_grid(Measure::density(measure_density(mu, g)), m, g);

  Field comp(g, op.e_dim());
  for (const auto& [alpha, a] : op.terms()) {
    const Field r = apply_multiplier(multiplier::RieszComposed{alpha}, f);
    const LinearMap ah = a.adjoint();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (int e = 0; e < op.e_dim(); ++e) {
        Complex s{};
        for (int c = 0; c < op.f_dim(); ++c) s += ah(e, c) * r.at(i, c);
        comp.at(i, e) += s;
      }
  }

  std::vector<bool> keep(g.size(), true);
  if (mu.is_atomic()) {
    const double cut = 4.0 * g.spacing();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Point x = g.point(i);
      for (const auto& p : mu.as_atomic().points)
        if (distance(p, x) <= cut) keep[i] = false;
    }
  }
  EnergyIdentityReport rep;
  std::size_t dominant = 0;
  double peak = -1.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!keep[i]) continue;
    ++rep.nodes;
    const double v = pot.magnitude(i);
    if (v > peak) {
      peak = v;
      dominant = i;
    }
  }
  if (peak <= 0.0) return rep;
  // Least-squares alignment over the components at the dominant node.
  Complex num{}, den{};
  for (int e = 0; e < op.e_dim(); ++e) {
    num += std::conj(comp.at(dominant, e)) * pot.at(dominant, e);
    den += std::norm(comp.at(dominant, e));
  }
  rep.alignment = std::abs(den) > 0.0 ? num / den : Complex{1.0, 0.0};
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!keep[i]) continue;
    double d2 = 0.0;
    for (int e = 0; e < op.e_dim(); ++e) d2 += std::norm(pot.at(i, e) - rep.alignment * comp.at(i, e));
    dev = std::max(dev, std::sqrt(d2));
  }
  rep.deviation = dev / peak;
  return rep;
}

}  // namespace potentia
