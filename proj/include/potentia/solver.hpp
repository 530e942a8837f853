#pragma once

#include <cstdint>
#include <vector>

#include "potentia/measures.hpp"
#include "potentia/spectral.hpp"
#include "potentia/symbolic.hpp"
#include "potentia/weights.hpp"

namespace potentia {

struct SolveOptions {
  double p = 2.0;
  Weight w = Weight::unit(2);
  int tests = 16;
  std::uint64_t seed = 0;
};

struct SolveResult {
  Field f;
  /// max over the test bumps of |<f, A(D) phi> - int phi dmu| / ||phi||_inf.
  double residual = 0.0;
  double norm_lp = 0.0;
  /// ||f / w||_inf.
  double norm_linf_inv = 0.0;
  double p = 2.0;
  bool mean_subtracted = false;
  /// Mean density removed (mu(T) / |T| per component).
  ComplexVector mean;
  /// Cell width used to spread atoms onto the grid (0 for densities).
  double mollification = 0.0;
};

/// Atoms spread by multilinear (cloud-in-cell) weights, mass preserving;
/// densities must already live on g.
Field measure_density(const Measure& mu, const Grid& g);

/// f with f^(xi) = i^m H(xi)^* mu^(xi), so A*(D) f = mu - mean exactly in
/// frequency, where A*(D) = sum (-1)^m a_alpha^* d^alpha.
SolveResult construct_solution(const Measure& mu, const HomogeneousOperator& op, const Grid& g,
                               const SolveOptions& options = {});

/// Random E-valued bumps with support inside 3/4 of the box.
std::vector<BumpSpec> random_test_bumps(const Grid& g, int components, int count, std::uint64_t seed);

struct WeakResidualReport {
  std::vector<double> residuals;
  double max_residual = 0.0;
};

/// <f, A(D) phi> by grid quadrature against int phi dmu, exact for atoms.
WeakResidualReport verify_weak_solution(const Field& f, const Measure& mu, const HomogeneousOperator& op,
                                        const std::vector<BumpSpec>& tests);

struct EnergyIdentityReport {
  double deviation = 0.0;
  /// Factor aligning the two sides at the node where |I_m mu| is largest.
  Complex alignment{1.0, 0.0};
  std::size_t nodes = 0;
};

/// Relative max deviation between I_m mu (free-space lattice sum) and
/// sum a_alpha^* R^alpha f, over nodes further than 4h from every atom.
EnergyIdentityReport energy_identity_check(const Field& f, const Measure& mu, const HomogeneousOperator& op,
                                           const Grid& g);

double weighted_lp_norm(const Field& f, const Weight& w, double p);
double weighted_linf_inverse(const Field& f, const Weight& w);

}  // namespace potentia
