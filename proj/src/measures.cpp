#include "potentia/measures.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "potentia/fft.hpp"
#include "potentia/parallel.hpp"
#include "potentia/symbolic.hpp"

namespace potentia {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_finite(std::span<const Complex> v, const char* what) {
  for (const auto& z : v) require(std::isfinite(z.real()) && std::isfinite(z.imag()), what);
}

// Index of the node within tolerance of x, if any.
std::optional<std::size_t> node_at(const Grid& g, std::span<const double> x) {
  std::array<int, 3> idx{0, 0, 0};
  const double h = g.spacing();
  for (int d = 0; d < g.dim(); ++d) {
    const double t = (x[static_cast<std::size_t>(d)] + g.half_width()) / h;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-9 || r < 0 || r > g.n() - 1) return std::nullopt;
    idx[static_cast<std::size_t>(d)] = static_cast<int>(r);
  }
  return g.linear_index(idx);
}

}  // namespace

Measure Measure::atomic(int dim, int components, std::vector<Point> points, std::vector<ComplexVector> values) {
  require(dim >= 1, "atomic measure: dim must be >= 1");
  require(components >= 1, "atomic measure: component count must be >= 1");
  require(points.size() == values.size(), "atomic measure: points and values differ in length");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(static_cast<int>(points[i].size()) == dim, "atomic measure: point dimension mismatch");
    for (double c : points[i]) require(std::isfinite(c), "atomic measure: non-finite point");
    require(static_cast<int>(values[i].size()) == components, "atomic measure: value dimension mismatch");
    require_finite(values[i], "atomic measure: non-finite value");
  }
  return Measure(AtomicMeasure{dim, components, std::move(points), std::move(values)});
}

Measure Measure::density(Field density) {
  require_finite(density.data(), "density measure: non-finite sample");
  return Measure(DensityMeasure{std::move(density)});
}

Measure Measure::zero(int dim, int components) { return atomic(dim, components, {}, {}); }

int Measure::dim() const { return is_atomic() ? as_atomic().dim : as_density().density.grid().dim(); }

int Measure::components() const { return is_atomic() ? as_atomic().components : as_density().density.components(); }

ComplexVector Measure::total() const {
  ComplexVector t(static_cast<std::size_t>(components()), Complex{});
  if (is_atomic()) {
    for (const auto& v : as_atomic().values)
      for (std::size_t c = 0; c < t.size(); ++c) t[c] += v[c];
    return t;
  }
  const auto& f = as_density().density;
  for (std::size_t i = 0; i < f.nodes(); ++i)
    for (int c = 0; c < f.components(); ++c) t[static_cast<std::size_t>(c)] += f.at(i, c);
  for (auto& z : t) z *= f.grid().cell_volume();
  return t;
}

Measure Measure::to_atomic() const {
  if (is_atomic()) return *this;
  const auto& f = as_density().density;
  const double vol = f.grid().cell_volume();
  std::vector<Point> pts;
  std::vector<ComplexVector> vals;
  for (std::size_t i = 0; i < f.nodes(); ++i) {
    const auto v = f.node_value(i);
    if (euclidean_norm(v) == 0.0) continue;
    pts.push_back(f.grid().point(i));
    ComplexVector cv(v.begin(), v.end());
    for (auto& z : cv) z *= vol;
    vals.push_back(std::move(cv));
  }
  return atomic(dim(), components(), std::move(pts), std::move(vals));
}

Measure Measure::scaled(Complex s) const {
  if (is_atomic()) {
    auto a = as_atomic();
    for (auto& v : a.values)
      for (auto& z : v) z *= s;
    return Measure(std::move(a));
  }
  return Measure(DensityMeasure{as_density().density * s});
}

Measure Measure::operator+(const Measure& other) const {
  require(dim() == other.dim() && components() == other.components(), "measure sum: dimension mismatch");
  if (is_atomic() && other.is_atomic()) {
    auto a = as_atomic();
    const auto& b = other.as_atomic();
    a.points.insert(a.points.end(), b.points.begin(), b.points.end());
    a.values.insert(a.values.end(), b.values.begin(), b.values.end());
    return Measure(std::move(a));
  }
  require(!is_atomic() && !other.is_atomic(), "measure sum: cannot mix atomic and density measures");
  return Measure(DensityMeasure{as_density().density + other.as_density().density});
}

PositiveMeasure PositiveMeasure::atomic(int dim, std::vector<Point> points, std::vector<double> masses) {
  require(dim >= 1, "positive measure: dim must be >= 1");
  require(points.size() == masses.size(), "positive measure: points and masses differ in length");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require(static_cast<int>(points[i].size()) == dim, "positive measure: point dimension mismatch");
    for (double c : points[i]) require(std::isfinite(c), "positive measure: non-finite point");
    require(std::isfinite(masses[i]) && masses[i] >= 0.0, "positive measure: masses must be finite and >= 0");
  }
  return PositiveMeasure(AtomicPositive{dim, std::move(points), std::move(masses)});
}

PositiveMeasure PositiveMeasure::density(Grid grid, std::vector<double> density) {
  require(density.size() == grid.size(), "positive density: sample count must match the grid");
  for (double v : density) require(std::isfinite(v) && v >= 0.0, "positive density: samples must be finite and >= 0");
  return PositiveMeasure(DensityPositive{grid, std::move(density)});
}

int PositiveMeasure::dim() const { return is_atomic() ? as_atomic().dim : as_density().grid.dim(); }

double PositiveMeasure::total() const {
  double t = 0.0;
  if (is_atomic()) {
    for (double m : as_atomic().masses) t += m;
    return t;
  }
  for (double v : as_density().density) t += v;
  return t * as_density().grid.cell_volume();
}

double PositiveMeasure::support_radius() const {
  double r = 0.0;
  if (is_atomic()) {
    const auto& a = as_atomic();
    for (std::size_t i = 0; i < a.points.size(); ++i)
      if (a.masses[i] > 0.0) r = std::max(r, euclidean_norm(a.points[i]));
    return r;
  }
  const auto& d = as_density();
  for (std::size_t i = 0; i < d.grid.size(); ++i)
    if (d.density[i] > 0.0) r = std::max(r, euclidean_norm(d.grid.point(i)));
  return r;
}

PositiveMeasure PositiveMeasure::to_atomic() const {
  if (is_atomic()) return *this;
  const auto& d = as_density();
  const double vol = d.grid.cell_volume();
  std::vector<Point> pts;
  std::vector<double> masses;
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    if (d.density[i] == 0.0) continue;
    pts.push_back(d.grid.point(i));
    masses.push_back(d.density[i] * vol);
  }
  return atomic(dim(), std::move(pts), std::move(masses));
}

Measure PositiveMeasure::as_measure() const {
  if (is_atomic()) {
    const auto& a = as_atomic();
    std::vector<ComplexVector> vals;
    vals.reserve(a.masses.size());
    for (double m : a.masses) vals.push_back({Complex{m, 0.0}});
    return Measure::atomic(a.dim, 1, a.points, std::move(vals));
  }
  const auto& d = as_density();
  std::vector<Complex> data(d.density.begin(), d.density.end());
  return Measure::density(Field(d.grid, 1, std::move(data)));
}

PositiveMeasure total_variation(const Measure& mu) {
  if (mu.is_atomic()) {
    const auto& a = mu.as_atomic();
    std::vector<double> masses;
    masses.reserve(a.values.size());
    for (const auto& v : a.values) masses.push_back(euclidean_norm(std::span<const Complex>(v)));
    return PositiveMeasure::atomic(a.dim, a.points, std::move(masses));
  }
  const auto& f = mu.as_density().density;
  std::vector<double> dens(f.nodes());
  for (std::size_t i = 0; i < f.nodes(); ++i) dens[i] = f.magnitude(i);
  return PositiveMeasure::density(f.grid(), std::move(dens));
}

double ball_mass(const PositiveMeasure& nu, std::span<const double> y, double r) {
  require(r >= 0.0, "ball_mass: radius must be >= 0");
  require(static_cast<int>(y.size()) == nu.dim(), "ball_mass: centre dimension mismatch");
  double total = 0.0;
  if (nu.is_atomic()) {
    const auto& a = nu.as_atomic();
    for (std::size_t i = 0; i < a.points.size(); ++i)
      if (distance(a.points[i], y) < r) total += a.masses[i];
    return total;
  }
  const auto& d = nu.as_density();
  for (std::size_t i = 0; i < d.grid.size(); ++i)
    if (d.density[i] != 0.0 && distance(d.grid.point(i), y) < r) total += d.density[i];
  return total * d.grid.cell_volume();
}

double epstein_zeta(int dim, double s) {
  require(dim >= 1 && dim <= 3, "epstein_zeta: N must be 1, 2 or 3");
  require(s > 0.0 && s < dim, "epstein_zeta: requires 0 < s < N");
  using boost::math::tgamma;
  const double pi = std::numbers::pi;
  const double a = 0.5 * s;
  const double b = 0.5 * (dim - s);
  double sum = -1.0 / a - 1.0 / b;
  constexpr int kReach = 7;  // Gamma(., pi |n|^2) is below 1e-60 beyond this.
  std::array<int, 3> n{0, 0, 0};
  for (int d = 0; d < dim; ++d) n[static_cast<std::size_t>(d)] = -kReach;
  for (;;) {
    int n2 = 0;
    for (int d = 0; d < dim; ++d) n2 += n[static_cast<std::size_t>(d)] * n[static_cast<std::size_t>(d)];
    if (n2 != 0) {
      const double x = pi * n2;
      sum += tgamma(a, x) * std::pow(x, -a) + tgamma(b, x) * std::pow(x, -b);
    }
    int d = dim - 1;
    for (; d >= 0; --d) {
      if (++n[static_cast<std::size_t>(d)] <= kReach) break;
      n[static_cast<std::size_t>(d)] = -kReach;
    }
    if (d < 0) break;
  }
  return std::pow(pi, a) / tgamma(a) * sum;
}

ComplexVector potential_of_measure(const Measure& mu, double m, std::span<const double> x) {
  const int dim = mu.dim();
  require(static_cast<int>(x.size()) == dim, "potential_of_measure: point dimension mismatch");
  const double gamma = riesz_gamma(dim, m);
  const std::size_t nc = static_cast<std::size_t>(mu.components());
  ComplexVector out(nc, Complex{});
  if (mu.is_atomic()) {
    const auto& a = mu.as_atomic();
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      const double r = distance(a.points[i], x);
      if (r == 0.0) {
        if (euclidean_norm(std::span<const Complex>(a.values[i])) == 0.0) continue;
        throw SingularityError("potential_of_measure: evaluation point coincides with an atom");
      }
      const double k = std::pow(r, m - dim);
      for (std::size_t c = 0; c < nc; ++c) out[c] += k * a.values[i][c];
    }
  } else {
    const auto& f = mu.as_density().density;
    const Grid& g = f.grid();
    const double vol = g.cell_volume();
    const auto self = node_at(g, x);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (self && *self == i) continue;
      const double r = distance(g.point(i), x);
      const double k = vol * std::pow(r, m - dim);
      for (std::size_t c = 0; c < nc; ++c) out[c] += k * f.at(i, static_cast<int>(c));
    }
    if (self) {
      const double k = -epstein_zeta(dim, dim - m) * std::pow(g.spacing(), m);
      for (std::size_t c = 0; c < nc; ++c) out[c] += k * f.at(*self, static_cast<int>(c));
    }
  }
  for (auto& z : out) z /= gamma;
  return out;
}

double potential_of_measure(const PositiveMeasure& nu, double m, std::span<const double> x) {
  return potential_of_measure(nu.as_measure(), m, x)[0].real();
}

Field potential_on_grid(const Measure& mu, double m, const Grid& g) {
  const int dim = g.dim();
  require(mu.dim() == dim, "potential_on_grid: measure and grid dimensions differ");
  const double gamma = riesz_gamma(dim, m);
  const int nc = mu.components();
  Field out(g, nc);
  if (mu.is_atomic()) {
    const auto& a = mu.as_atomic();
    const double tol = 1e-12 * g.spacing();
    parallel_for(g.size(), [&](std::size_t i) {
      const Point x = g.point(i);
      for (std::size_t k = 0; k < a.points.size(); ++k) {
        const double r = distance(a.points[k], x);
        if (r <= tol) {
          for (int c = 0; c < nc; ++c) out.at(i, c) = Complex{kNaN, kNaN};
          return;
        }
        const double w = std::pow(r, m - dim) / gamma;
        for (int c = 0; c < nc; ++c) out.at(i, c) += w * a.values[k][static_cast<std::size_t>(c)];
      }
    });
    return out;
  }
  const auto& f = mu.as_density().density;
  require(f.grid() == g, "potential_on_grid: density must live on the evaluation grid");
  // Free-space convolution on a grid doubled in every direction.
  const int n = g.n();
  const int M = 2 * n;
  std::vector<int> dims(static_cast<std::size_t>(dim), M);
  std::size_t padded = 1;
  for (int d = 0; d < dim; ++d) padded *= static_cast<std::size_t>(M);
  auto pindex = [&](const std::array<int, 3>& idx) {
    std::size_t l = 0;
    for (int d = 0; d < dim; ++d) l = l * static_cast<std::size_t>(M) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
    return l;
  };
  const double h = g.spacing();
  std::vector<Complex> kernel(padded, Complex{});
  for (std::size_t l = 0; l < padded; ++l) {
    std::size_t rem = l;
    double j2 = 0.0;
    for (int d = dim - 1; d >= 0; --d) {
      int j = static_cast<int>(rem % static_cast<std::size_t>(M));
      rem /= static_cast<std::size_t>(M);
      if (j >= n) j -= M;
      j2 += static_cast<double>(j) * j;
    }
    kernel[l] = j2 == 0.0 ? -epstein_zeta(dim, dim - m) * std::pow(h, m)
                          : g.cell_volume() * std::pow(h * std::sqrt(j2), m - dim);
  }
  fft::transform(kernel, dims, 1, false);
  std::vector<Complex> buf(padded * static_cast<std::size_t>(nc), Complex{});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto l = pindex(g.axis_indices(i));
    for (int c = 0; c < nc; ++c) buf[l * static_cast<std::size_t>(nc) + static_cast<std::size_t>(c)] = f.at(i, c);
  }
  fft::transform(buf, dims, nc, false);
  for (std::size_t l = 0; l < padded; ++l)
    for (int c = 0; c < nc; ++c) buf[l * static_cast<std::size_t>(nc) + static_cast<std::size_t>(c)] *= kernel[l];
  fft::transform(buf, dims, nc, true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto l = pindex(g.axis_indices(i));
    for (int c = 0; c < nc; ++c) out.at(i, c) = buf[l * static_cast<std::size_t>(nc) + static_cast<std::size_t>(c)] / gamma;
  }
  return out;
}

EnergyReport energy_norms(const Measure& mu, double m, double p, const Weight& w, const Grid& g, double radius) {
  require(p >= 1.0, "energy_norms: p must be >= 1");
  require(radius > 0.0, "energy_norms: truncation radius must be positive");
  EnergyReport rep;
  rep.radius = radius;
  rep.p = p;
  rep.m = m;
  const Field pot = potential_on_grid(mu, m, g);
  const auto wv = w.on_grid(g);
  const double vol = g.cell_volume();
  std::vector<double> mag;
  std::vector<double> wts;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (euclidean_norm(g.point(i)) >= radius) continue;
    const double a = pot.magnitude(i);
    if (std::isnan(a)) {
      ++rep.excluded_nodes;
      continue;
    }
    mag.push_back(a);
    wts.push_back(wv[i] * vol);
  }
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    sum += std::pow(mag[k], p) * wts[k];
    if (mag[k] > 0.0) lo = std::min(lo, mag[k]);
    hi = std::max(hi, mag[k]);
  }
  rep.strong = std::pow(sum, 1.0 / p);
  if (hi == 0.0) return rep;
  for (int level = 0; level < kWeakLevels; ++level) {
    const double lambda = lo == hi ? lo : lo * std::pow(hi / lo, static_cast<double>(level) / (kWeakLevels - 1));
    double mass = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k)
      if (mag[k] > lambda) mass += wts[k];
    rep.weak = std::max(rep.weak, lambda * mass);
  }
  return rep;
}

VanishingReport vanishing_diagnostic(const PositiveMeasure& mu, double m, double p, double alpha,
                                     const std::vector<double>& radii) {
  const int dim = mu.dim();
  require(p >= 1.0, "vanishing_diagnostic: p must be >= 1");
  require(alpha > -dim, "vanishing_diagnostic: alpha must exceed -N");
  require(radii.size() >= 3, "vanishing_diagnostic: need at least three radii");
  for (std::size_t k = 1; k < radii.size(); ++k) require(radii[k] > radii[k - 1], "vanishing_diagnostic: radii must increase");
  const PositiveMeasure atoms = mu.to_atomic();
  require(radii.front() > atoms.support_radius(), "vanishing_diagnostic: first radius must lie beyond the support");

  VanishingReport rep;
  rep.radii = radii;
  rep.analytic_exponent = (m - dim) * p + alpha + dim;
  const bool nonzero = atoms.total() > 0.0;

  const SphereSample sphere = SphereSample::uniform(dim, dim == 1 ? 2 : (dim == 2 ? 256 : 512));
  const double area = dim == 1 ? 2.0 : unit_sphere_area(dim);
  auto sphere_mean = [&](double s) {
    double acc = 0.0;
    for (const auto& th : sphere.directions) {
      Point x(th.size());
      for (std::size_t d = 0; d < th.size(); ++d) x[d] = s * th[d];
      acc += std::pow(std::abs(potential_of_measure(atoms, m, x)), p);
    }
    return acc / static_cast<double>(sphere.count());
  };
  // Shell integral in log-radius: s^{N + alpha} * mean over the sphere.
  auto shell = [&](double a, double b) {
    return boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double t) {
          const double s = std::exp(t);
          return std::pow(s, dim + alpha) * area * sphere_mean(s);
        },
        std::log(a), std::log(b));
  };
  std::vector<double> inc(radii.size(), 0.0);
  rep.cumulative.assign(radii.size(), 0.0);
  for (std::size_t k = 1; k < radii.size(); ++k) {
    inc[k] = nonzero ? shell(radii[k - 1], radii[k]) : 0.0;
    rep.cumulative[k] = rep.cumulative[k - 1] + inc[k];
  }
  const std::size_t last = radii.size() - 1;
  if (nonzero && inc[last] > 0.0 && inc[last - 1] > 0.0) {
    // Increment of s^e over [a, b] scales as b^e for a geometric schedule.
    const double ratio = std::log(radii[last] / radii[last - 1]);
    const double prev = std::log(radii[last - 1] / radii[last - 2]);
    rep.measured_exponent = std::log(inc[last] / inc[last - 1]) / (0.5 * (ratio + prev));
    rep.diverges = rep.measured_exponent > -0.1;
  } else {
    rep.measured_exponent = kNaN;
    rep.diverges = false;
  }
  const bool in_range = p > 1.0 && p <= (dim + alpha) / (dim - m) + 1e-12;
  if (!nonzero) rep.consistent = !rep.diverges;
  else if (in_range) rep.consistent = rep.diverges;
  else rep.consistent = true;
  return rep;
}

}  // namespace potentia
