#include "potentia/core.hpp"

#include <cmath>
#include <numbers>

namespace potentia {

double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double euclidean_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double unit_ball_volume(int dim) {
  const double half = 0.5 * dim;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double unit_sphere_area(int dim) { return dim * unit_ball_volume(dim); }

double riesz_gamma(int dim, double m) {
  if (!(m > 0.0 && m < dim)) throw InputError("riesz_gamma: requires 0 < m < N");
  return std::pow(std::numbers::pi, 0.5 * dim) * std::pow(2.0, m) * std::tgamma(0.5 * m) /
         std::tgamma(0.5 * (dim - m));
}

void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace potentia
