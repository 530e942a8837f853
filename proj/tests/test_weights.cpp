#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "potentia/weights.hpp"

using namespace potentia;

TEST_CASE("cell average of |x|^-1 over the unit square is 4 log(1 + sqrt 2)") {
  CHECK(std::abs(cell_power_average(2, -1.0) - 4.0 * std::log(1.0 + std::sqrt(2.0))) < 1e-9);
  CHECK(cell_power_average(2, 0.0) == doctest::Approx(1.0));
  // mean of x^2 + y^2 over the square is 1/6
  CHECK(std::abs(cell_power_average(2, 2.0) - 1.0 / 6.0) < 1e-10);
  CHECK(std::abs(cell_power_average(1, -0.5) - 2.0 * std::sqrt(2.0)) < 1e-10);
}

TEST_CASE("power membership follows -N < alpha < N(p-1)") {
  CHECK(power_membership(0.0, 1.0, 2));
  CHECK(power_membership(-1.5, 1.0, 2));
  CHECK_FALSE(power_membership(0.5, 1.0, 2));
  CHECK(power_membership(1.0, 2.0, 2));
  CHECK_FALSE(power_membership(2.0, 2.0, 2));
  CHECK_FALSE(power_membership(-2.0, 2.0, 2));
}

TEST_CASE("ap constant on origin balls matches the closed form") {
  BallFamily fam;
  fam.centers = {Point{0.0, 0.0}};
  fam.r0 = 0.1;
  fam.ratio = 2.0;
  fam.count = 8;
  for (double alpha : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0}) {
    const auto est = ap_constant(Weight::power(2, alpha), 2.0, fam);
    CHECK(std::abs(est.estimate - oracle::power_ap_origin(2, alpha, 2.0)) < 1e-8 * est.estimate);
    CHECK_FALSE(est.diverging);
  }
  const auto neg = ap_constant(Weight::power(2, -1.0), 1.0, fam);
  CHECK(std::abs(neg.estimate - oracle::power_ap_origin(2, -1.0, 1.0)) < 1e-8);
}

TEST_CASE("A_1 fails for positive powers and stays bounded off the origin") {
  const auto fam = BallFamily::lattice(2, 1.0, 0.5, 1e-3, 2.0, 20);
  CHECK(ap_constant(Weight::power(2, 0.5), 1.0, fam).diverging);
  CHECK_FALSE(ap_constant(Weight::power(2, -0.5), 1.0, fam).diverging);
  CHECK_FALSE(ap_constant(Weight::power(2, 0.5), 2.0, fam).diverging);
}

TEST_CASE("ball averages of power weights") {
  const Point c{0.0, 0.0};
  CHECK(std::abs(ball_average(Weight::power(2, 1.0), c, 2.0) - 2.0 * 2.0 / 3.0) < 1e-10);
  const Point off{1.0, 0.5};
  // |x|^2 average over B(c, r) is |c|^2 + r^2 N / (N + 2)
  CHECK(std::abs(ball_average(Weight::power(2, 2.0), off, 0.3) - (1.25 + 0.09 * 0.5)) < 1e-8);
}

TEST_CASE("maximal function dominates the weight and fixes constants") {
  const Grid g(2, 2.0, 32);
  const auto one = maximal_function(Weight::samples(g, std::vector<double>(g.size(), 3.0)));
  for (double v : one.as_grid().values) CHECK(std::abs(v - 3.0) < 1e-12);
  const auto w = Weight::sampled_power(g, -1.0);
  const auto mw = maximal_function(w);
  const auto& a = w.as_grid().values;
  const auto& b = mw.as_grid().values;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] >= a[i] * (1.0 - 1e-12));
}

TEST_CASE("weight validation") {
  const Grid g(2, 1.0, 32);
  CHECK_THROWS_AS(Weight::samples(g, std::vector<double>(3, 1.0)), InputError);
  CHECK_THROWS_AS(Weight::samples(g, std::vector<double>(1024, -1.0)), InputError);
  CHECK(Weight::power(2, -0.5).describe() == "power:-0.5");
}
