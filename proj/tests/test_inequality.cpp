#include <doctest.h>

#include <cmath>

#include "potentia/inequality.hpp"

using namespace potentia;

TEST_CASE("tag names round-trip") {
  for (auto t : all_inequality_tags()) CHECK(inequality_tag(to_string(t)) == t);
  CHECK(all_inequality_tags().size() == 7);
  CHECK_THROWS_AS(inequality_tag("nonsense"), InputError);
}

TEST_CASE("uniform generator is reproducible and in range") {
  Uniform a(9), b(9);
  for (int i = 0; i < 100; ++i) {
    const double x = a.next();
    CHECK(x == b.next());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("every standard problem evaluates with finite positive ratios") {
  const Grid g(2, 4.0, 64);
  for (auto tag : all_inequality_tags()) {
    const auto pr = standard_factory(tag)(g);
    const auto fam = BumpFamily::for_problem(pr);
    std::vector<double> theta(fam.parameter_count(), 0.1);
    const auto in = fam.decode(theta, ComplexVector(static_cast<std::size_t>(fam.components), Complex{1.0}));
    const auto inst = evaluate_inequality(pr, in);
    CAPTURE(to_string(tag));
    CHECK(inst.rhs > 0.0);
    REQUIRE(inst.ratio.has_value());
    CHECK(std::isfinite(*inst.ratio));
    CHECK(*inst.ratio >= 0.0);
  }
}

TEST_CASE("ratios are invariant under phi -> c phi") {
  const Grid g(2, 4.0, 64);
  for (auto tag : all_inequality_tags()) {
    const auto pr = standard_factory(tag)(g);
    const auto fam = BumpFamily::for_problem(pr);
    std::vector<double> theta(fam.parameter_count(), -0.2);
    auto in = fam.decode(theta, ComplexVector(static_cast<std::size_t>(fam.components), Complex{1.0}));
    const auto base = evaluate_inequality(pr, in);
    in.scale = Complex{-3.7, 2.1};
    const auto scaled = evaluate_inequality(pr, in);
    CAPTURE(to_string(tag));
    CHECK(std::abs(*scaled.ratio - *base.ratio) < 1e-10 * *base.ratio);
  }
}

TEST_CASE("constant estimates are prefix consistent and monotone in the budget") {
  const auto pr = standard_factory(InequalityTag::apriori_L1)(Grid(2, 4.0, 64));
  const auto small = estimate_constant(pr, 40, 5);
  const auto large = estimate_constant(pr, 80, 5);
  CHECK(small.history.size() == 40);
  CHECK(large.history.size() == 80);
  for (std::size_t i = 0; i < small.history.size(); ++i) CHECK(small.history[i] == large.history[i]);
  CHECK(large.best_ratio >= small.best_ratio);
  CHECK(small.best_ratio > 0.0);
}

TEST_CASE("a small batch finds no confirmed violations") {
  const auto rep = run_batch(standard_factory(InequalityTag::stein_weiss), Grid(2, 4.0, 64), 24, 1);
  CHECK(rep.instances == 24);
  CHECK(rep.confirmed == 0);
  CHECK(rep.max_ratio >= rep.median_ratio);
}

TEST_CASE("Hardy inequality holds with the measured hypothesis constant") {
  const Grid g(2, 2.0, 32);
  const auto nu = PositiveMeasure::atomic(2, {{1.0, 0.5}, {-1.2, 0.3}, {0.1, -1.5}}, {0.5, 1.0, 0.25});
  std::vector<std::vector<double>> family;
  for (int k = 0; k < 4; ++k) {
    std::vector<double> v(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto x = g.point(i);
      const double r = std::hypot(x[0] - 0.1 * k, x[1]);
      if (r < 0.4 + 0.1 * k) v[i] = 1.0 - r / (0.4 + 0.1 * k);
    }
    family.push_back(std::move(v));
  }
  const auto rep = hardy_check(nu, Weight::power(2, -0.5), Weight::power(2, 0.5), 1.0, family, g);
  CHECK(rep.family == 4);
  CHECK(rep.pass);
  CHECK(rep.max_ratio <= rep.hypothesis_constant * (1.0 + kHardyAllowance));
}
