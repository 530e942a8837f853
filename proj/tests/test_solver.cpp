#include <doctest.h>

#include <cmath>

#include "potentia/solver.hpp"

using namespace potentia;

namespace {

// Bi-Laplacian of a Gaussian: smooth, with vanishing moments up to order 3.
Measure smooth_mean_zero(const Grid& g) {
  Field d(g, 1);
  const double s = 0.5;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    const double r2 = x[0] * x[0] + x[1] * x[1];
    const double t = r2 / (s * s);
    // Delta^2 exp(-r^2 / s^2) in 2-D
    d.at(i, 0) = std::exp(-t) * (16.0 / std::pow(s, 4)) * (t * t - 4.0 * t + 2.0);
  }
  return Measure::density(d);
}

}  // namespace

TEST_CASE("cloud-in-cell spreading preserves mass") {
  const Grid g(2, 2.0, 32);
  const auto mu = Measure::atomic(2, 1, {{0.11, -0.37}, {1.0, 1.0}}, {{Complex{1.5}}, {Complex{-0.5}}});
  const Field d = measure_density(mu, g);
  Complex total = 0.0;
  for (const auto& z : d.data()) total += z * g.cell_volume();
  CHECK(std::abs(total - Complex{1.0}) < 1e-12);
}

TEST_CASE("spectral solution of the divergence equation for a smooth density") {
  const Grid g(2, 4.0, 128);
  const auto mu = smooth_mean_zero(g);
  const auto op = catalog::gradient(2);
  const auto res = construct_solution(mu, op, g);
  CHECK(res.f.components() == 2);
  CHECK(res.residual < 1e-8);
  CHECK(res.norm_lp > 0.0);
  const auto tests = random_test_bumps(g, 1, 6, 3);
  CHECK(verify_weak_solution(res.f, mu, op, tests).max_residual < 1e-8);
  CHECK(energy_identity_check(res.f, mu, op, g).deviation < 1e-3);
}

TEST_CASE("dipole solution has a small weak residual") {
  const Grid g(2, 4.0, 256);
  const auto mu = Measure::atomic(2, 1, {{0.3, 0.0}, {-0.3, 0.0}}, {{Complex{1.0}}, {Complex{-1.0}}});
  const auto res = construct_solution(mu, catalog::gradient(2), g);
  CHECK(res.residual < 1e-3);
  CHECK_FALSE(res.mean_subtracted);
  CHECK(res.mollification > 0.0);
}

TEST_CASE("non-zero total mass is reported as mean subtraction") {
  const Grid g(2, 4.0, 64);
  const auto mu = Measure::atomic(2, 1, {{0.0, 0.0}}, {{Complex{1.0}}});
  const auto res = construct_solution(mu, catalog::gradient(2), g);
  CHECK(res.mean_subtracted);
  CHECK(std::abs(res.mean[0] - Complex{1.0 / 64.0}) < 1e-12);
}

TEST_CASE("non-elliptic operators and wrong value spaces are rejected") {
  const Grid g(2, 4.0, 32);
  const auto mu = Measure::atomic(2, 1, {{0.0, 0.0}}, {{Complex{1.0}}});
  CHECK_THROWS(construct_solution(mu, catalog::divergence(2), g));
  const auto mu2 = Measure::atomic(2, 2, {{0.0, 0.0}}, {{Complex{1.0}, Complex{0.0}}});
  CHECK_THROWS_AS(construct_solution(mu2, catalog::gradient(2), g), InputError);
}

TEST_CASE("weighted norms of a constant field") {
  const Grid g(2, 1.0, 32);
  Field f(g, 2);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.at(i, 0) = 3.0;
    f.at(i, 1) = 4.0;
  }
  CHECK(std::abs(weighted_lp_norm(f, Weight::unit(2), 2.0) - 5.0 * 2.0) < 1e-12);
  CHECK(std::abs(weighted_linf_inverse(f, Weight::unit(2)) - 5.0) < 1e-12);
}
