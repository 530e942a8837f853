#include "potentia/weights.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "potentia/fft.hpp"
#include "potentia/parallel.hpp"

namespace potentia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Visits nodes of g inside the open ball B(c, r) (no periodic wrap).
template <class F>
void for_nodes_in_ball(const Grid& g, std::span<const double> c, double r, F&& fn) {
  const double h = g.spacing();
  std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int d = 0; d < g.dim(); ++d) {
    const auto ud = static_cast<std::size_t>(d);
    lo[ud] = std::max(0, static_cast<int>(std::ceil((c[ud] - r + g.half_width()) / h)) - 1);
    hi[ud] = std::min(g.n() - 1, static_cast<int>(std::floor((c[ud] + r + g.half_width()) / h)) + 1);
    if (lo[ud] > hi[ud]) return;
  }
  std::array<int, 3> idx = lo;
  const double r2 = r * r;
  for (;;) {
    double d2 = 0.0;
    for (int d = 0; d < g.dim(); ++d) {
      const double dx = g.coordinate(idx[static_cast<std::size_t>(d)]) - c[static_cast<std::size_t>(d)];
      d2 += dx * dx;
    }
    if (d2 < r2) fn(g.linear_index(idx));
    int d = g.dim() - 1;
    for (; d >= 0; --d) {
      auto& v = idx[static_cast<std::size_t>(d)];
      if (++v <= hi[static_cast<std::size_t>(d)]) break;
      v = lo[static_cast<std::size_t>(d)];
    }
    if (d < 0) return;
  }
}

std::size_t nearest_node(const Grid& g, std::span<const double> x) {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < g.dim(); ++d) {
    const int i = static_cast<int>(std::lround((x[static_cast<std::size_t>(d)] + g.half_width()) / g.spacing()));
    idx[static_cast<std::size_t>(d)] = std::clamp(i, 0, g.n() - 1);
  }
  return g.linear_index(idx);
}

// Integral of |x|^alpha over B(c, r) in R^N: full shells of the origin inside
// the ball in closed form plus the partial shells by tanh-sinh quadrature.
double power_ball_integral(int dim, double alpha, std::span<const double> c, double r) {
  const double dc = euclidean_norm(c);
  if (dim == 1) {
    auto F = [alpha](double x) { return std::copysign(std::pow(std::abs(x), alpha + 1.0) / (alpha + 1.0), x); };
    return F(c[0] + r) - F(c[0] - r);
  }
  if (dc == 0.0) return unit_sphere_area(dim) * std::pow(r, alpha + dim) / (alpha + dim);
  double total = 0.0;
  if (dc < r) total += unit_sphere_area(dim) * std::pow(r - dc, alpha + dim) / (alpha + dim);
  const double a = std::abs(dc - r);
  const double b = dc + r;
  auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double ct = std::clamp((s * s + dc * dc - r * r) / (2.0 * s * dc), -1.0, 1.0);
    const double theta = std::acos(ct);
    const double cap = dim == 2 ? 2.0 * theta : (dim == 3 ? 2.0 * std::numbers::pi * (1.0 - ct) : 0.0);
    return std::pow(s, alpha + dim - 1) * cap;
  };
  require(dim <= 3, "power weight quadrature supports N <= 3");
  boost::math::quadrature::tanh_sinh<double> ts;
  total += ts.integrate(integrand, a, b);
  return total;
}

double power_ess_sup_inverse(double alpha, std::span<const double> c, double r) {
  const double dc = euclidean_norm(c);
  if (alpha > 0.0) {
    if (dc <= r) return kInf;
    return std::pow(dc - r, -alpha);
  }
  if (alpha < 0.0) return std::pow(dc + r, -alpha);
  return 1.0;
}

double power_ball_average(int dim, double alpha, std::span<const double> c, double r) {
  if (alpha <= -dim) return kInf;
  if (euclidean_norm(c) == 0.0) return dim * std::pow(r, alpha) / (dim + alpha);
  return power_ball_integral(dim, alpha, c, r) / (unit_ball_volume(dim) * std::pow(r, dim));
}

struct GridBallStats {
  double mean = 0.0;
  double inv_mean = 0.0;  // mean of w^{1/(1-p)}
  double min = kInf;
};

GridBallStats grid_ball_stats(const GridWeight& gw, std::span<const double> c, double r, double conj_exp) {
  GridBallStats st;
  std::size_t count = 0;
  for_nodes_in_ball(gw.grid, c, r, [&](std::size_t node) {
    const double v = gw.values[node];
    st.mean += v;
    if (conj_exp != 0.0) st.inv_mean += std::pow(v, conj_exp);
    st.min = std::min(st.min, v);
    ++count;
  });
  if (count == 0) {
    const double v = gw.values[nearest_node(gw.grid, c)];
    return {v, conj_exp != 0.0 ? std::pow(v, conj_exp) : 0.0, v};
  }
  st.mean /= static_cast<double>(count);
  st.inv_mean /= static_cast<double>(count);
  return st;
}

}  // namespace

Weight Weight::power(int dim, double alpha) {
  require(dim >= 1, "power weight: dim must be >= 1");
  require(std::isfinite(alpha) && alpha > -dim, "power weight: alpha must exceed -N for local integrability");
  return Weight(PowerWeight{dim, alpha});
}

Weight Weight::samples(Grid grid, std::vector<double> values) {
  require(values.size() == grid.size(), "grid weight: value count must match the grid");
  for (double v : values) require(std::isfinite(v) && v > 0.0, "grid weight: values must be positive and finite");
  return Weight(GridWeight{grid, std::move(values)});
}

Weight Weight::sampled_power(const Grid& g, double alpha) {
  require(alpha > -g.dim(), "sampled power weight: alpha must exceed -N");
  return samples(g, sample_power(g, alpha));
}

int Weight::dim() const {
  return std::visit([](const auto& w) {
    if constexpr (std::is_same_v<std::decay_t<decltype(w)>, PowerWeight>) return w.dim;
    else return w.grid.dim();
  }, v_);
}

double Weight::operator()(std::span<const double> x) const {
  if (const auto* p = std::get_if<PowerWeight>(&v_)) {
    const double r = euclidean_norm(x);
    if (p->alpha == 0.0) return 1.0;
    return std::pow(r, p->alpha);
  }
  const auto& gw = std::get<GridWeight>(v_);
  if (!gw.grid.contains(x)) return std::numeric_limits<double>::quiet_NaN();
  return gw.values[nearest_node(gw.grid, x)];
}

std::vector<double> Weight::on_grid(const Grid& g) const {
  if (const auto* p = std::get_if<PowerWeight>(&v_)) {
    require(p->dim == g.dim(), "weight dimension does not match grid");
    return sample_power(g, p->alpha);
  }
  const auto& gw = std::get<GridWeight>(v_);
  if (gw.grid == g) return gw.values;
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = (*this)(g.point(i));
  return out;
}

std::string Weight::describe() const {
  std::ostringstream os;
  if (const auto* p = std::get_if<PowerWeight>(&v_)) {
    os << "power:" << p->alpha;
  } else {
    const auto& g = std::get<GridWeight>(v_).grid;
    os << "grid:N=" << g.dim() << ",n=" << g.n() << ",L=" << g.half_width();
  }
  return os.str();
}

double cell_power_average(int dim, double alpha) {
  require(alpha > -dim, "cell_power_average: alpha must exceed -N");
  using boost::math::quadrature::gauss;
  switch (dim) {
    case 1:
      return 2.0 * std::pow(0.5, alpha + 1.0) / (alpha + 1.0);
    case 2: {
      const double s = gauss<double, 40>::integrate([alpha](double t) { return std::pow(1.0 + t * t, 0.5 * alpha); }, -1.0, 1.0);
      return 4.0 * std::pow(0.5, alpha + 2.0) / (alpha + 2.0) * s;
    }
    case 3: {
      const double s = gauss<double, 40>::integrate(
          [alpha](double t) {
            return gauss<double, 40>::integrate(
                [alpha, t](double u) { return std::pow(1.0 + t * t + u * u, 0.5 * alpha); }, -1.0, 1.0);
          },
          -1.0, 1.0);
      return 6.0 * std::pow(0.5, alpha + 3.0) / (alpha + 3.0) * s;
    }
    default:
      throw InputError("cell_power_average: N must be 1, 2 or 3");
  }
}

std::vector<double> sample_power(const Grid& g, double alpha) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = euclidean_norm(g.point(i));
    v[i] = alpha == 0.0 ? 1.0 : std::pow(r, alpha);
  }
  if (alpha != 0.0) v[g.origin_index()] = std::pow(g.spacing(), alpha) * cell_power_average(g.dim(), alpha);
  return v;
}

double ball_average(const Weight& w, std::span<const double> center, double r) {
  require(r > 0.0, "ball_average: radius must be positive");
  require(static_cast<int>(center.size()) == w.dim(), "ball_average: centre dimension mismatch");
  if (w.is_power()) {
    const auto& p = w.as_power();
    if (p.alpha == 0.0) return 1.0;
    return power_ball_average(p.dim, p.alpha, center, r);
  }
  return grid_ball_stats(w.as_grid(), center, r, 0.0).mean;
}

std::vector<double> BallFamily::radii() const {
  require(r0 > 0.0 && ratio > 1.0 && count >= 1, "BallFamily: need r0 > 0, ratio > 1, count >= 1");
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) r[static_cast<std::size_t>(k)] = r0 * std::pow(ratio, k);
  return r;
}

BallFamily BallFamily::lattice(int dim, double extent, double spacing, double r0, double ratio, int count) {
  require(dim >= 1 && dim <= 3 && spacing > 0.0 && extent >= 0.0, "BallFamily::lattice: bad parameters");
  BallFamily f;
  f.r0 = r0;
  f.ratio = ratio;
  f.count = count;
  const int k = static_cast<int>(std::floor(extent / spacing + 1e-12));
  std::array<int, 3> idx{-k, -k, -k};
  for (;;) {
    Point p(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) p[static_cast<std::size_t>(d)] = idx[static_cast<std::size_t>(d)] * spacing;
    f.centers.push_back(std::move(p));
    int d = dim - 1;
    for (; d >= 0; --d) {
      if (++idx[static_cast<std::size_t>(d)] <= k) break;
      idx[static_cast<std::size_t>(d)] = -k;
    }
    if (d < 0) break;
  }
  return f;
}

ApEstimate ap_constant(const Weight& w, double p, const BallFamily& balls, double decade_growth) {
  require(p >= 1.0, "ap_constant: p must be >= 1");
  require(!balls.centers.empty(), "ap_constant: ball family has no centres");
  const auto radii = balls.radii();
  const double conj = p > 1.0 ? 1.0 / (1.0 - p) : 0.0;
  const std::size_t nc = balls.centers.size();
  std::vector<double> products(radii.size() * nc, 0.0);
  parallel_for(products.size(), [&](std::size_t job) {
    const std::size_t k = job / nc;
    const auto& c = balls.centers[job % nc];
    const double r = radii[k];
    double prod;
    if (w.is_power()) {
      const auto& pw = w.as_power();
      const double avg = pw.alpha == 0.0 ? 1.0 : power_ball_average(pw.dim, pw.alpha, c, r);
      if (p == 1.0) {
        prod = avg * power_ess_sup_inverse(pw.alpha, c, r);
      } else {
        const double e = pw.alpha * conj;
        const double inv = e == 0.0 ? 1.0 : power_ball_average(pw.dim, e, c, r);
        prod = avg * std::pow(inv, p - 1.0);
      }
    } else {
      const auto st = grid_ball_stats(w.as_grid(), c, r, conj);
      prod = p == 1.0 ? st.mean / st.min : st.mean * std::pow(st.inv_mean, p - 1.0);
    }
    products[job] = prod;
  });
  ApEstimate est;
  est.balls = products.size();
  double running = 0.0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    for (std::size_t c = 0; c < nc; ++c) running = std::max(running, products[k * nc + c]);
    est.running_max.push_back(running);
  }
  est.estimate = running;
  if (!std::isfinite(running)) {
    est.diverging = true;
    return est;
  }
  // Growth across the last radius decade (or the whole family when shorter).
  const double r_last = radii.back();
  std::size_t ref = 0;
  for (std::size_t k = 0; k < radii.size(); ++k)
    if (radii[k] <= r_last / 10.0 * (1.0 + 1e-12)) ref = k;
  const double base = est.running_max[ref];
  est.diverging = base > 0.0 && running / base > decade_growth;
  return est;
}

bool power_membership(double alpha, double p, int dim) {
  if (p == 1.0) return alpha > -dim && alpha <= 0.0;
  if (p > 1.0) return alpha > -dim && alpha < dim * (p - 1.0);
  return false;
}

std::vector<double> maximal_radii(const Grid& g) {
  std::vector<double> r;
  for (double v = g.spacing(); v <= g.half_width() * (1.0 + 1e-12); v *= std::numbers::sqrt2) r.push_back(v);
  return r;
}

Weight maximal_function(const Weight& w) {
  require(!w.is_power(), "maximal_function: requires a grid weight");
  const auto& gw = w.as_grid();
  const Grid& g = gw.grid;
  const int n = g.n();
  const int m = 2 * n;
  const int dim = g.dim();
  std::vector<int> dims(static_cast<std::size_t>(dim), m);
  std::size_t padded = 1;
  for (int d = 0; d < dim; ++d) padded *= static_cast<std::size_t>(m);

  auto padded_index = [&](const std::array<int, 3>& idx) {
    std::size_t l = 0;
    for (int d = 0; d < dim; ++d) l = l * static_cast<std::size_t>(m) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
    return l;
  };
  std::vector<Complex> values(padded, Complex{}), ones(padded, Complex{});
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto idx = g.axis_indices(i);
    const auto l = padded_index(idx);
    values[l] = gw.values[i];
    ones[l] = 1.0;
  }
  fft::transform(values, dims, 1, false);
  fft::transform(ones, dims, 1, false);

  // The radius-h ball holds only its centre, so Mw starts at w exactly.
  std::vector<double> mw = gw.values;
  const double h = g.spacing();
  const auto radii = maximal_radii(g);
  for (std::size_t k = 1; k < radii.size(); ++k) {
    const double rr = radii[k] / h;
    std::vector<Complex> kernel(padded, Complex{});
    const int reach = static_cast<int>(std::ceil(rr));
    std::array<int, 3> off{0, 0, 0};
    std::array<int, 3> lo{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      off[static_cast<std::size_t>(d)] = -reach;
      lo[static_cast<std::size_t>(d)] = -reach;
    }
    for (;;) {
      double d2 = 0.0;
      for (int d = 0; d < dim; ++d) d2 += static_cast<double>(off[static_cast<std::size_t>(d)]) * off[static_cast<std::size_t>(d)];
      if (d2 < rr * rr) {
        std::array<int, 3> wrapped{0, 0, 0};
        for (int d = 0; d < dim; ++d) wrapped[static_cast<std::size_t>(d)] = (off[static_cast<std::size_t>(d)] + m) % m;
        kernel[padded_index(wrapped)] = 1.0;
      }
      int d = dim - 1;
      for (; d >= 0; --d) {
        if (++off[static_cast<std::size_t>(d)] <= reach) break;
        off[static_cast<std::size_t>(d)] = lo[static_cast<std::size_t>(d)];
      }
      if (d < 0) break;
    }
    fft::transform(kernel, dims, 1, false);
    std::vector<Complex> sum(padded), cnt(padded);
    for (std::size_t i = 0; i < padded; ++i) {
      sum[i] = values[i] * kernel[i];
      cnt[i] = ones[i] * kernel[i];
    }
    fft::transform(sum, dims, 1, true);
    fft::transform(cnt, dims, 1, true);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto l = padded_index(g.axis_indices(i));
      const double c = std::round(cnt[l].real());
      if (c >= 1.0) mw[i] = std::max(mw[i], sum[l].real() / c);
    }
  }
  return Weight::samples(g, std::move(mw));
}

}  // namespace potentia
