#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace potentia {

using Complex = std::complex<double>;
using Point = std::vector<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr std::string_view kToolVersion = "0.3.1";
inline constexpr std::string_view kSchemaVersion = "1.0";

/// Malformed or out-of-contract input (bad dimensions, invalid parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (e.g. xi = 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation hit a genuine singularity (kernel at an atom, singular A*A).
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double euclidean_norm(std::span<const double> x);
double distance(std::span<const double> a, std::span<const double> b);
double euclidean_norm(std::span<const Complex> v);

/// Volume of the unit ball in R^N.
double unit_ball_volume(int dim);
/// Surface measure |S^{N-1}| of the unit sphere in R^N.
double unit_sphere_area(int dim);

/// Normalisation of the Riesz potential kernel |x|^{m-N} / gamma(m);
/// with the angular Fourier convention the potential has symbol |xi|^{-m}.
double riesz_gamma(int dim, double m);

void require(bool condition, const std::string& message);

}  // namespace potentia
