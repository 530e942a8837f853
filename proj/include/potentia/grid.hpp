#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "potentia/core.hpp"

namespace potentia {

/// Uniform periodic grid on [-L, L)^N with n nodes per axis; node j sits at
/// -L + j h, so the origin is always a node.
class Grid {
 public:
  Grid(int dim, double half_width, int nodes_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int n() const { return n_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double cell_volume() const;
  std::size_t size() const { return size_; }

  double coordinate(int i) const { return -half_width_ + i * spacing(); }
  /// Splits a row-major linear index (last axis fastest) into per-axis indices.
  std::array<int, 3> axis_indices(std::size_t linear) const;
  std::size_t linear_index(const std::array<int, 3>& idx) const;
  Point point(std::size_t linear) const;
  /// Angular wavenumber pi k / L of FFT index i with k in [-n/2, n/2); the
  /// Nyquist index maps to 0 so that xi(-k) = -xi(k) holds exactly.
  double wavenumber(int i) const;
  Point frequency(std::size_t linear) const;
  /// Linear index of the origin node.
  std::size_t origin_index() const;
  /// True when x lies inside the closed box [-L, L]^N.
  bool contains(std::span<const double> x) const;

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  double half_width_;
  int n_;
  std::size_t size_;
};

/// Complex vector-valued samples on a grid, node-major (components fastest).
class Field {
 public:
  Field(Grid grid, int components);
  Field(Grid grid, int components, std::vector<Complex> data);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t nodes() const { return grid_.size(); }

  Complex& at(std::size_t node, int c) { return data_[node * static_cast<std::size_t>(components_) + static_cast<std::size_t>(c)]; }
  const Complex& at(std::size_t node, int c) const {
    return data_[node * static_cast<std::size_t>(components_) + static_cast<std::size_t>(c)];
  }
  std::span<const Complex> node_value(std::size_t node) const {
    return {data_.data() + node * static_cast<std::size_t>(components_), static_cast<std::size_t>(components_)};
  }
  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  /// Euclidean norm over components at a node.
  double magnitude(std::size_t node) const;
  /// max over nodes of the Euclidean norm.
  double max_norm() const;
  /// Grid mean of each component.
  ComplexVector mean() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(Complex s);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, Complex s) { return a *= s; }

 private:
  void require_compatible(const Field& other) const;

  Grid grid_;
  int components_;
  std::vector<Complex> data_;
};

/// max over nodes of |a - b| (Euclidean over components).
double max_deviation(const Field& a, const Field& b);

/// Multilinear interpolation on the periodic grid. Empty when x is outside
/// the grid box.
std::optional<ComplexVector> interpolate(const Field& f, std::span<const double> x);

/// Real part of a scalar field as plain doubles.
std::vector<double> real_values(const Field& f, int component = 0);

}  // namespace potentia
