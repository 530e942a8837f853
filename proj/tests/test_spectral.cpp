#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "potentia/spectral.hpp"

using namespace potentia;

namespace {

Field random_trig(const Grid& g, int modes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k(-6, 6);
  std::normal_distribution<double> nd;
  Field f(g, 1);
  for (int t = 0; t < modes; ++t) {
    const int kx = k(rng), ky = k(rng);
    const Complex c{nd(rng), nd(rng)};
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto x = g.point(i);
      f.at(i, 0) += c * std::polar(1.0, oracle::kPi * (kx * x[0] + ky * x[1]) / g.half_width());
    }
  }
  return f;
}

Field minus_mean(Field f) {
  const auto m = f.mean();
  for (std::size_t i = 0; i < f.nodes(); ++i)
    for (int c = 0; c < f.components(); ++c) f.at(i, c) -= m[static_cast<std::size_t>(c)];
  return f;
}

}  // namespace

TEST_CASE("sum of squared Riesz transforms is minus the identity on mean-zero data") {
  const Grid g(2, 3.0, 64);
  const Field f = minus_mean(random_trig(g, 5, 11));
  Field acc(g, 1);
  for (int j = 0; j < 2; ++j) {
    const multiplier::RieszTransform r{j};
    acc += apply_multiplier(r, apply_multiplier(r, f));
  }
  CHECK(max_deviation(acc, f * Complex{-1.0}) < 1e-10 * f.max_norm());
}

TEST_CASE("fractional Laplacian of order 0 is the identity and order 2 is -Delta") {
  const Grid g(2, 2.0, 32);
  const Field f = random_trig(g, 3, 5);
  CHECK(max_deviation(apply_multiplier(multiplier::FractionalLaplacian{0.0}, f), f) < 1e-12 * f.max_norm());
  // e^{i pi (x + 2 y) / L} has -Delta eigenvalue (pi / L)^2 * 5
  Field e(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    e.at(i, 0) = std::polar(1.0, oracle::kPi * (x[0] + 2.0 * x[1]) / 2.0);
  }
  const double lam = 5.0 * std::pow(oracle::kPi / 2.0, 2);
  CHECK(max_deviation(apply_multiplier(multiplier::FractionalLaplacian{2.0}, e), e * Complex{lam}) < 1e-10 * lam);
}

TEST_CASE("Riesz potential inverts the fractional Laplacian on mean-zero data") {
  const Grid g(2, 2.0, 32);
  const Field f = minus_mean(random_trig(g, 4, 8));
  const Field back = apply_multiplier(multiplier::RieszPotential{1.0}, apply_multiplier(multiplier::FractionalLaplacian{1.0}, f));
  CHECK(max_deviation(back, f) < 1e-10 * f.max_norm());
}

TEST_CASE("derivatives are exact on trigonometric fields") {
  const Grid g(2, 1.0, 32);
  Field e(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) e.at(i, 0) = std::sin(2.0 * oracle::kPi * g.point(i)[0]);
  const Field d = derivative(e, MultiIndex({1, 0}));
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(d.at(i, 0) - 2.0 * oracle::kPi * std::cos(2.0 * oracle::kPi * g.point(i)[0])));
  CHECK(err < 1e-10);
}

TEST_CASE("kernel H reproduces a bump from its gradient") {
  const Grid g(2, 4.0, 128);
  const BumpSpec b{{0.4, -0.3}, 1.2, {Complex{1.0}}, std::nullopt};
  const Field phi = synthesize_bump(b, g);
  const auto op = catalog::gradient(2);
  const Field back = apply_multiplier(multiplier::KernelH{op}, apply_operator(op, phi));
  CHECK(max_deviation(back, minus_mean(phi)) < 1e-5 * phi.max_norm());
}

TEST_CASE("bump synthesis and norms") {
  const Grid g(2, 2.0, 64);
  const BumpSpec b{{0.0, 0.0}, 1.0, {Complex{2.0}}, std::nullopt};
  const Field f = synthesize_bump(b, g);
  CHECK(std::abs(f.at(g.origin_index(), 0).real() - 2.0) < 1e-14);
  CHECK_THROWS_AS(synthesize_bump(BumpSpec{{1.5, 0.0}, 1.0, {Complex{1.0}}, std::nullopt}, g), InputError);
  Field one(g, 1);
  for (auto& z : one.data()) z = 1.0;
  CHECK(std::abs(weighted_l1_norm(one, Weight::unit(2)) - 16.0) < 1e-12);
  CHECK(margin_leakage(f) == 0.0);
}
