#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>

#include "potentia/grid.hpp"
#include "potentia/measures.hpp"
#include "potentia/symbolic.hpp"
#include "potentia/weights.hpp"

namespace potentia {

/// amplitude * exp(1 - 1/(1 - |(x - c)/rho|^2)) on B(c, rho), optionally
/// times exp(i omega . (x - c)).
struct BumpSpec {
  Point center;
  double radius = 1.0;
  ComplexVector amplitude;
  std::optional<Point> modulation;
};

ComplexVector bump_value(const BumpSpec& spec, std::span<const double> x);
/// Throws InputError unless the support stays 2h inside the open box.
Field synthesize_bump(const BumpSpec& spec, const Grid& g);

/// A(D) phi via the symbol i^m A(xi).
Field apply_operator(const HomogeneousOperator& op, const Field& phi);

namespace multiplier {

/// R_j, symbol -i xi_j / |xi| (axis j counted from 0).
struct RieszTransform {
  int axis = 0;
};
/// R^alpha = prod_j R_j^{alpha_j}.
struct RieszComposed {
  MultiIndex alpha;
};
/// I_m, symbol |xi|^{-m}, 0 < m < N.
struct RieszPotential {
  double m = 1.0;
};
/// (-Delta)^{s/2}, symbol |xi|^s.
struct FractionalLaplacian {
  double s = 1.0;
};
/// Convolution with the kernel that inverts A(D): symbol i^{-m} H(xi), F -> E.
struct KernelH {
  HomogeneousOperator op;
};
/// Its adjoint i^m H(xi)^*, E -> F.
struct KernelHAdjoint {
  HomogeneousOperator op;
};
/// |xi|^degree * angular(xi / |xi|), an out x in matrix.
struct HomogeneousCustom {
  double degree = 0.0;
  int in_dim = 1;
  int out_dim = 1;
  std::function<LinearMap(std::span<const double>)> angular;
};

}  // namespace multiplier

using MultiplierSpec = std::variant<multiplier::RieszTransform, multiplier::RieszComposed, multiplier::RieszPotential,
                                    multiplier::FractionalLaplacian, multiplier::KernelH, multiplier::KernelHAdjoint,
                                    multiplier::HomogeneousCustom>;

/// Frequency-domain multiplication by the declared symbol. Symbols of
/// non-positive degree send the zero frequency to 0; FractionalLaplacian(0)
/// is the identity.
Field apply_multiplier(const MultiplierSpec& spec, const Field& g);

/// d^beta u, symbol (i xi)^beta.
Field derivative(const Field& u, const MultiIndex& beta);
/// Pointwise Euclidean norm of (d^beta u)_{|beta| = j} over multi-indices and components.
std::vector<double> derivative_magnitude(const Field& u, int j);

/// Integral of |g| w by cell quadrature.
double weighted_l1_norm(const Field& g, const Weight& w);

struct NuNorm {
  double value = 0.0;
  /// Atoms outside the grid box, dropped from the sum.
  std::size_t excluded = 0;
};

/// (integral |g|^q dnu)^{1/q}; atoms use multilinear interpolation, densities
/// must live on the grid of g.
NuNorm weighted_lq_nu_norm(const Field& g, double q, const PositiveMeasure& nu);

/// Largest field magnitude in the outer quarter of the box (some |x_d| > 3L/4),
/// a proxy for wrap-around contamination.
double margin_leakage(const Field& f);

}  // namespace potentia
