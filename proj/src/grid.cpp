#include "potentia/grid.hpp"

#include <algorithm>
#include <cmath>

namespace potentia {

Grid::Grid(int dim, double half_width, int nodes_per_axis)
    : dim_(dim), half_width_(half_width), n_(nodes_per_axis), size_(1) {
  require(dim_ >= 1 && dim_ <= 3, "Grid: dimension must be 1, 2 or 3");
  require(half_width_ > 0.0 && std::isfinite(half_width_), "Grid: half width must be positive");
  require(n_ >= 32 && (n_ & (n_ - 1)) == 0, "Grid: nodes per axis must be a power of two >= 32");
  for (int d = 0; d < dim_; ++d) size_ *= static_cast<std::size_t>(n_);
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

std::array<int, 3> Grid::axis_indices(std::size_t linear) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = static_cast<int>(linear % static_cast<std::size_t>(n_));
    linear /= static_cast<std::size_t>(n_);
  }
  return idx;
}

std::size_t Grid::linear_index(const std::array<int, 3>& idx) const {
  std::size_t l = 0;
  for (int d = 0; d < dim_; ++d) l = l * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
  return l;
}

Point Grid::point(std::size_t linear) const {
  const auto idx = axis_indices(linear);
  Point p(static_cast<std::size_t>(dim_));
  for (int d = 0; d < dim_; ++d) p[static_cast<std::size_t>(d)] = coordinate(idx[static_cast<std::size_t>(d)]);
  return p;
}

double Grid::wavenumber(int i) const {
  const int half = n_ / 2;
  if (i == half) return 0.0;
  const int k = i < half ? i : i - n_;
  return std::acos(-1.0) * k / half_width_;
}

Point Grid::frequency(std::size_t linear) const {
  const auto idx = axis_indices(linear);
  Point p(static_cast<std::size_t>(dim_));
  for (int d = 0; d < dim_; ++d) p[static_cast<std::size_t>(d)] = wavenumber(idx[static_cast<std::size_t>(d)]);
  return p;
}

std::size_t Grid::origin_index() const { return linear_index({n_ / 2, n_ / 2, n_ / 2}); }

bool Grid::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  for (double v : x)
    if (!(v >= -half_width_ && v <= half_width_)) return false;
  return true;
}

Field::Field(Grid grid, int components)
    : grid_(grid), components_(components), data_(grid.size() * static_cast<std::size_t>(std::max(components, 0))) {
  require(components_ >= 1, "Field: component dimension must be >= 1");
}

Field::Field(Grid grid, int components, std::vector<Complex> data)
    : grid_(grid), components_(components), data_(std::move(data)) {
  require(components_ >= 1, "Field: component dimension must be >= 1");
  require(data_.size() == grid_.size() * static_cast<std::size_t>(components_), "Field: sample count mismatch");
  for (const auto& z : data_) require(std::isfinite(z.real()) && std::isfinite(z.imag()), "Field: samples must be finite");
}

double Field::magnitude(std::size_t node) const { return euclidean_norm(node_value(node)); }

double Field::max_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < nodes(); ++i) m = std::max(m, magnitude(i));
  return m;
}

ComplexVector Field::mean() const {
  ComplexVector m(static_cast<std::size_t>(components_), Complex{});
  for (std::size_t i = 0; i < nodes(); ++i)
    for (int c = 0; c < components_; ++c) m[static_cast<std::size_t>(c)] += at(i, c);
  for (auto& v : m) v /= static_cast<double>(nodes());
  return m;
}

void Field::require_compatible(const Field& other) const {
  require(grid_ == other.grid_ && components_ == other.components_, "Field: incompatible operands");
}

Field& Field::operator+=(const Field& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Field& Field::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

double max_deviation(const Field& a, const Field& b) {
  require(a.grid() == b.grid() && a.components() == b.components(), "max_deviation: incompatible fields");
  double m = 0.0;
  for (std::size_t i = 0; i < a.nodes(); ++i) {
    double s = 0.0;
    for (int c = 0; c < a.components(); ++c) s += std::norm(a.at(i, c) - b.at(i, c));
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

std::optional<ComplexVector> interpolate(const Field& f, std::span<const double> x) {
  const Grid& g = f.grid();
  if (!g.contains(x)) return std::nullopt;
  const int dim = g.dim();
  const double h = g.spacing();
  std::array<int, 3> base{0, 0, 0};
  std::array<double, 3> frac{0, 0, 0};
  for (int d = 0; d < dim; ++d) {
    const double t = (x[static_cast<std::size_t>(d)] + g.half_width()) / h;
    double fl = std::floor(t);
    // Snap to the node when t is within rounding of an integer.
    if (t - fl > 1.0 - 1e-12) fl += 1.0;
    base[static_cast<std::size_t>(d)] = static_cast<int>(fl);
    frac[static_cast<std::size_t>(d)] = std::max(0.0, t - fl);
  }
  ComplexVector out(static_cast<std::size_t>(f.components()), Complex{});
  const int corners = 1 << dim;
  for (int c = 0; c < corners; ++c) {
    double weight = 1.0;
    std::array<int, 3> idx{0, 0, 0};
    for (int d = 0; d < dim; ++d) {
      const bool up = (c >> d) & 1;
      const double fr = frac[static_cast<std::size_t>(d)];
      weight *= up ? fr : 1.0 - fr;
      idx[static_cast<std::size_t>(d)] = ((base[static_cast<std::size_t>(d)] + (up ? 1 : 0)) % g.n() + g.n()) % g.n();
    }
    if (weight == 0.0) continue;
    const std::size_t node = g.linear_index(idx);
    for (int k = 0; k < f.components(); ++k) out[static_cast<std::size_t>(k)] += weight * f.at(node, k);
  }
  return out;
}

std::vector<double> real_values(const Field& f, int component) {
  std::vector<double> v(f.nodes());
  for (std::size_t i = 0; i < f.nodes(); ++i) v[i] = f.at(i, component).real();
  return v;
}

}  // namespace potentia
