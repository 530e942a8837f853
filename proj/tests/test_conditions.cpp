#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "potentia/conditions.hpp"

using namespace potentia;

namespace {

struct Instance {
  std::vector<Point> atoms;
  std::vector<double> masses;
  std::vector<Point> ys;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0), mass(0.1, 1.0);
  std::uniform_int_distribution<int> count(1, 12);
  Instance in;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    in.atoms.push_back({pos(rng), pos(rng)});
    in.masses.push_back(mass(rng));
  }
  for (int i = 0; i < 30; ++i) in.ys.push_back({pos(rng), pos(rng)});
  return in;
}

}  // namespace

TEST_CASE("testing conditions and Wolff potential agree with sorted-prefix oracles") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const auto in = random_instance(rng);
    const auto nu = PositiveMeasure::atomic(2, in.atoms, in.masses);
    const double ell = 0.5 + 0.5 * (t % 3);
    const double q = 1.0 + (t % 2);
    const double alpha = -0.5 + 0.1 * (t % 7);
    const Weight w = Weight::power(2, alpha);
    const auto far = testing_condition_far(nu, w, ell, q, in.ys);
    const auto near = testing_condition_near(nu, w, ell, q, in.ys);
    const double far_o = oracle::far_constant(in.atoms, in.masses, in.ys, ell, q, alpha);
    const double near_o = oracle::near_constant(in.atoms, in.masses, in.ys, ell, q, alpha);
    CHECK(std::abs(far.constant - far_o) <= 1e-12 * std::max(1.0, far_o));
    CHECK(std::abs(near.constant - near_o) <= 1e-12 * near_o);
    for (const auto& y : in.ys) {
      const auto v = wolff_potential(nu, y, 1.0);
      const double o = oracle::wolff(in.atoms, in.masses, y, 1.0);
      CHECK(std::abs(v.value - o) <= 1e-12 * std::max(1.0, o));
    }
  }
}

TEST_CASE("near condition is infinite at an atom and the witness is reported") {
  const auto nu = PositiveMeasure::atomic(2, {{1.0, 0.0}}, {1.0});
  const std::vector<Point> ys{{0.5, 0.0}, {1.0, 0.0}};
  const auto rep = testing_condition_near(nu, Weight::unit(2), 1.0, 1.0, ys);
  CHECK(std::isinf(rep.constant));
  CHECK(rep.status == ConditionStatus::diverging);
  CHECK(rep.witness == Point{1.0, 0.0});
  CHECK(wolff_potential(nu, std::vector<double>{1.0, 0.0}, 1.0).infinite);
}

TEST_CASE("samples avoid atoms and skip vanishing weights") {
  const auto nu = PositiveMeasure::atomic(2, {{1.0, 0.0}}, {1.0});
  const auto ys = log_spherical_samples(nu, 0.5, 2.0, 3, 16);
  for (const auto& y : ys) CHECK(oracle::dist(y, {1.0, 0.0}) > 1e-12);
  CHECK(ys.size() <= 48);
}

TEST_CASE("origin decay of a power-law measure holds; an origin atom diverges") {
  const double alpha = 0.5;
  // rings carrying nu(B(0, r)) = r^{N - l + alpha} with l = 1
  std::vector<Point> pts;
  std::vector<double> m;
  double prev = 0.0;
  for (int k = -20; k <= 6; ++k) {
    const double r = std::pow(2.0, k / 2.0);
    const double mass = std::pow(r, 1.5) - prev;
    prev = std::pow(r, 1.5);
    for (int j = 0; j < 16; ++j) {
      const double th = 2.0 * oracle::kPi * (j + 0.5 * (k & 1)) / 16.0;
      pts.push_back({r * std::cos(th), r * std::sin(th)});
      m.push_back(mass / 16.0);
    }
  }
  const auto nu = PositiveMeasure::atomic(2, pts, m);
  const auto s = origin_decay_samples(2, 1e-2, 4.0);
  const auto rep = decay_check(nu, Weight::power(2, alpha), 1.0, 1.0, DecayMode::origin, s);
  CHECK(rep.status == ConditionStatus::holds_with_constant);
  const auto atom = PositiveMeasure::atomic(2, {{0.0, 0.0}}, {1.0});
  const auto bad = decay_check(atom, Weight::power(2, alpha), 1.0, 1.0, DecayMode::origin, s);
  CHECK(bad.status == ConditionStatus::diverging);
}

TEST_CASE("decay implication is not applicable when a hypothesis fails") {
  const auto atom = PositiveMeasure::atomic(2, {{0.0, 0.0}}, {1.0});
  const Grid g(2, 2.0, 32);
  const auto ys = log_spherical_samples(atom, 0.1, 1.0, 4, 16);
  const auto rep = decay_implication(atom, Weight::sampled_power(g, 0.5), 1.0, 1.0, ys, origin_decay_samples(2, 0.1, 1.5),
                                     off_origin_decay_samples(ys, 0.05));
  CHECK(rep.status == ConditionStatus::not_applicable);
}

TEST_CASE("dyadic bounds for the power example") {
  const auto b = dyadic_testing_bounds(2, 1.0, 0.5, 1.0, 1.0);
  CHECK(std::abs(b.far - (4.0 + 2.0 * std::sqrt(2.0))) < 1e-9);
  CHECK(b.near > 0.0);
}

TEST_CASE("status strings") {
  CHECK(to_string(ConditionStatus::holds_with_constant) == "holds-with-constant");
  CHECK(to_string(ConditionStatus::diverging) == "diverging");
  CHECK(to_string(ConditionStatus::not_applicable) == "not-applicable");
}
