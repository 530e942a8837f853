#include "potentia/spectral.hpp"

#include <cmath>
#include <numbers>

#include "potentia/fft.hpp"
#include "potentia/parallel.hpp"

namespace potentia {

namespace {

Complex ipow(int k) {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

// Multiplies every frequency node of g by symbol(xi), an out x in matrix.
template <class Symbol>
Field multiply(const Field& g, int out_dim, Symbol&& symbol) {
  Field spec = g;
  fft::forward(spec);
  const Grid& grid = g.grid();
  const int in_dim = g.components();
  Field out(grid, out_dim);
  parallel_for(grid.size(), [&](std::size_t i) {
    const Point xi = grid.frequency(i);
    const LinearMap s = symbol(std::span<const double>(xi));
    for (int r = 0; r < out_dim; ++r) {
      Complex acc{};
      for (int c = 0; c < in_dim; ++c) acc += s(r, c) * spec.at(i, c);
      out.at(i, r) = acc;
    }
  });
  fft::inverse(out);
  return out;
}

void require_grid_dim(const Field& g, int dim, const char* what) {
  require(g.grid().dim() == dim, what);
}

}  // namespace

ComplexVector bump_value(const BumpSpec& spec, std::span<const double> x) {
  ComplexVector out(spec.amplitude.size(), Complex{});
  double t2 = 0.0;
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double u = (x[d] - spec.center[d]) / spec.radius;
    t2 += u * u;
  }
  if (t2 >= 1.0) return out;
  Complex factor = std::exp(1.0 - 1.0 / (1.0 - t2));
  if (spec.modulation) {
    double phase = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) phase += (*spec.modulation)[d] * (x[d] - spec.center[d]);
    factor *= std::polar(1.0, phase);
  }
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = factor * spec.amplitude[c];
  return out;
}

Field synthesize_bump(const BumpSpec& spec, const Grid& g) {
  require(static_cast<int>(spec.center.size()) == g.dim(), "bump: centre dimension mismatch");
  require(spec.radius > 0.0, "bump: radius must be positive");
  require(!spec.amplitude.empty(), "bump: amplitude must be non-empty");
  if (spec.modulation) require(static_cast<int>(spec.modulation->size()) == g.dim(), "bump: modulation dimension mismatch");
  const double limit = g.half_width() - 2.0 * g.spacing();
  for (double c : spec.center)
    require(std::abs(c) + spec.radius <= limit, "bump: support must stay 2h inside the grid box");
  const int nc = static_cast<int>(spec.amplitude.size());
  Field f(g, nc);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto v = bump_value(spec, g.point(i));
    for (int c = 0; c < nc; ++c) f.at(i, c) = v[static_cast<std::size_t>(c)];
  }
  return f;
}

Field apply_operator(const HomogeneousOperator& op, const Field& phi) {
  require(phi.components() == op.e_dim(), "apply_operator: field components must equal e_dim");
  require_grid_dim(phi, op.dim(), "apply_operator: grid dimension must equal operator dimension");
  const Complex im = ipow(op.order());
  return multiply(phi, op.f_dim(), [&](std::span<const double> xi) -> LinearMap { return im * eval_symbol(op, xi); });
}

Field apply_multiplier(const MultiplierSpec& spec, const Field& g) {
  const int dim = g.grid().dim();
  const int nc = g.components();
  auto diagonal = [&](auto&& scalar) {
    return multiply(g, nc, [&](std::span<const double> xi) -> LinearMap {
      return LinearMap::Identity(nc, nc) * scalar(xi);
    });
  };
  return std::visit(
      [&](const auto& s) -> Field {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, multiplier::RieszTransform>) {
          require(s.axis >= 0 && s.axis < dim, "riesz_transform: axis out of range");
          return diagonal([&](std::span<const double> xi) -> Complex {
            const double r = euclidean_norm(xi);
            return r == 0.0 ? Complex{} : Complex{0.0, -xi[static_cast<std::size_t>(s.axis)] / r};
          });
        } else if constexpr (std::is_same_v<T, multiplier::RieszComposed>) {
          require(s.alpha.dim() == dim, "riesz_composed: multi-index dimension mismatch");
          return diagonal([&](std::span<const double> xi) -> Complex {
            const double r = euclidean_norm(xi);
            if (r == 0.0) return s.alpha.order() == 0 ? Complex{1.0} : Complex{};
            Complex acc{1.0};
            for (int j = 0; j < dim; ++j)
              for (int k = 0; k < s.alpha.exponents[static_cast<std::size_t>(j)]; ++k)
                acc *= Complex{0.0, -xi[static_cast<std::size_t>(j)] / r};
            return acc;
          });
        } else if constexpr (std::is_same_v<T, multiplier::RieszPotential>) {
          require(s.m > 0.0 && s.m < dim, "riesz_potential: requires 0 < m < N");
          return diagonal([&](std::span<const double> xi) -> Complex {
            const double r = euclidean_norm(xi);
            return r == 0.0 ? Complex{} : Complex{std::pow(r, -s.m)};
          });
        } else if constexpr (std::is_same_v<T, multiplier::FractionalLaplacian>) {
          require(std::isfinite(s.s), "fractional_laplacian: order must be finite");
          if (s.s == 0.0) return g;
          return diagonal([&](std::span<const double> xi) -> Complex {
            const double r = euclidean_norm(xi);
            return r == 0.0 ? Complex{} : Complex{std::pow(r, s.s)};
          });
        } else if constexpr (std::is_same_v<T, multiplier::KernelH>) {
          require(nc == s.op.f_dim(), "kernel_H: field components must equal f_dim");
          require(s.op.dim() == dim, "kernel_H: operator dimension mismatch");
          const Complex c = ipow(-s.op.order());
          return multiply(g, s.op.e_dim(), [&](std::span<const double> xi) -> LinearMap {
            if (euclidean_norm(xi) == 0.0) return LinearMap::Zero(s.op.e_dim(), s.op.f_dim());
            return c * kernel_symbol(s.op, xi);
          });
        } else if constexpr (std::is_same_v<T, multiplier::KernelHAdjoint>) {
          require(nc == s.op.e_dim(), "kernel_H_adjoint: field components must equal e_dim");
          require(s.op.dim() == dim, "kernel_H_adjoint: operator dimension mismatch");
          const Complex c = ipow(s.op.order());
          return multiply(g, s.op.f_dim(), [&](std::span<const double> xi) -> LinearMap {
            if (euclidean_norm(xi) == 0.0) return LinearMap::Zero(s.op.f_dim(), s.op.e_dim());
            return c * kernel_symbol(s.op, xi).adjoint();
          });
        } else {
          require(nc == s.in_dim, "homogeneous_custom: field components must equal in_dim");
          require(static_cast<bool>(s.angular), "homogeneous_custom: angular part missing");
          return multiply(g, s.out_dim, [&](std::span<const double> xi) -> LinearMap {
            const double r = euclidean_norm(xi);
            if (r == 0.0) return LinearMap::Zero(s.out_dim, s.in_dim);
            Point u(xi.begin(), xi.end());
            for (auto& v : u) v /= r;
            LinearMap a = s.angular(u);
            require(a.rows() == s.out_dim && a.cols() == s.in_dim, "homogeneous_custom: angular part has wrong shape");
            return a * std::pow(r, s.degree);
          });
        }
      },
      spec);
}

Field derivative(const Field& u, const MultiIndex& beta) {
  const int dim = u.grid().dim();
  require(beta.dim() == dim, "derivative: multi-index dimension mismatch");
  const int nc = u.components();
  const Complex c = ipow(beta.order());
  return multiply(u, nc, [&](std::span<const double> xi) -> LinearMap {
    return LinearMap::Identity(nc, nc) * (c * beta.monomial(xi));
  });
}

std::vector<double> derivative_magnitude(const Field& u, int j) {
  require(j >= 1, "derivative_magnitude: order must be >= 1");
  std::vector<double> acc(u.nodes(), 0.0);
  for (const auto& beta : multi_indices(u.grid().dim(), j)) {
    const Field d = derivative(u, beta);
    for (std::size_t i = 0; i < u.nodes(); ++i) {
      const double m = d.magnitude(i);
      acc[i] += m * m;
    }
  }
  for (auto& v : acc) v = std::sqrt(v);
  return acc;
}

double weighted_l1_norm(const Field& g, const Weight& w) {
  const auto wv = w.on_grid(g.grid());
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes(); ++i) s += g.magnitude(i) * wv[i];
  return s * g.grid().cell_volume();
}

NuNorm weighted_lq_nu_norm(const Field& g, double q, const PositiveMeasure& nu) {
  require(q >= 1.0, "weighted_lq_nu_norm: q must be >= 1");
  require(nu.dim() == g.grid().dim(), "weighted_lq_nu_norm: dimension mismatch");
  NuNorm out;
  double s = 0.0;
  if (nu.is_atomic()) {
    const auto& a = nu.as_atomic();
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      if (a.masses[i] == 0.0) continue;
      const auto v = interpolate(g, a.points[i]);
      if (!v) {
        ++out.excluded;
        continue;
      }
      s += std::pow(euclidean_norm(std::span<const Complex>(*v)), q) * a.masses[i];
    }
  } else {
    const auto& d = nu.as_density();
    require(d.grid == g.grid(), "weighted_lq_nu_norm: density must live on the field grid");
    for (std::size_t i = 0; i < g.nodes(); ++i)
      if (d.density[i] != 0.0) s += std::pow(g.magnitude(i), q) * d.density[i];
    s *= d.grid.cell_volume();
  }
  out.value = std::pow(s, 1.0 / q);
  return out;
}

double margin_leakage(const Field& f) {
  const Grid& g = f.grid();
  const double edge = 0.75 * g.half_width();
  double leak = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    bool outer = false;
    for (double v : x) outer = outer || std::abs(v) > edge;
    if (outer) leak = std::max(leak, f.magnitude(i));
  }
  return leak;
}

}  // namespace potentia
