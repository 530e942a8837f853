#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "potentia/fft.hpp"
#include "potentia/grid.hpp"

using namespace potentia;

TEST_CASE("origin is a node and indices round-trip") {
  const Grid g(2, 4.0, 32);
  CHECK(g.spacing() == doctest::Approx(0.25));
  const auto o = g.origin_index();
  const auto p = g.point(o);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 0.0);
  for (std::size_t i = 0; i < g.size(); i += 7) CHECK(g.linear_index(g.axis_indices(i)) == i);
}

TEST_CASE("wavenumbers are antisymmetric with Nyquist sent to zero") {
  const Grid g(1, 3.0, 32);
  CHECK(g.wavenumber(0) == 0.0);
  CHECK(g.wavenumber(16) == 0.0);
  CHECK(g.wavenumber(1) == doctest::Approx(oracle::kPi / 3.0));
  CHECK(g.wavenumber(31) == doctest::Approx(-oracle::kPi / 3.0));
}

TEST_CASE("grid rejects bad parameters") {
  CHECK_THROWS_AS(Grid(0, 1.0, 8), InputError);
  CHECK_THROWS_AS(Grid(2, -1.0, 8), InputError);
  CHECK_THROWS_AS(Grid(2, 1.0, 1), InputError);
  CHECK_THROWS_AS(Grid(2, 1.0, 48), InputError);
}

TEST_CASE("FFT matches a naive DFT") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int dim : {1, 2, 3}) {
    const int n = 6;
    const std::size_t size = static_cast<std::size_t>(std::pow(n, dim));
    std::vector<Complex> data(size);
    for (auto& z : data) z = {nd(rng), nd(rng)};
    std::vector<int> dims(static_cast<std::size_t>(dim), n);
    for (bool inv : {false, true}) {
      auto got = data;
      fft::transform(got, dims, 1, inv);
      const auto want = oracle::naive_dft(data, dim, n, inv);
      double err = 0.0;
      const double norm = inv ? 1.0 / static_cast<double>(size) : 1.0;
      for (std::size_t i = 0; i < size; ++i) err = std::max(err, std::abs(got[i] - norm * want[i]));
      CHECK(err < 1e-10);
    }
  }
}

TEST_CASE("field arithmetic and interpolation") {
  const Grid g(2, 1.0, 32);
  Field f(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    f.at(i, 0) = 2.0 * x[0] - x[1] + 0.5;
  }
  const std::vector<double> x{0.13, -0.41};
  const auto v = interpolate(f, x);
  REQUIRE(v.has_value());
  CHECK(std::abs((*v)[0] - (2.0 * 0.13 + 0.41 + 0.5)) < 1e-12);
  CHECK_FALSE(interpolate(f, std::vector<double>{1.5, 0.0}).has_value());
  const Field z = f - f;
  CHECK(z.max_norm() == 0.0);
  CHECK(max_deviation(f * Complex{2.0}, f + f) < 1e-14);
}
