#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "potentia/grid.hpp"

namespace potentia {

struct PowerWeight {
  int dim;
  double alpha;
};

struct GridWeight {
  Grid grid;
  std::vector<double> values;
};

/// Positive locally integrable weight: a power |x|^alpha or grid samples.
class Weight {
 public:
  static Weight power(int dim, double alpha);
  static Weight unit(int dim) { return power(dim, 0.0); }
  static Weight samples(Grid grid, std::vector<double> values);
  /// |x|^alpha sampled at the nodes of g, with the origin node replaced by the
  /// mean of |x|^alpha over its cell.
  static Weight sampled_power(const Grid& g, double alpha);

  int dim() const;
  bool is_power() const { return std::holds_alternative<PowerWeight>(v_); }
  const PowerWeight& as_power() const { return std::get<PowerWeight>(v_); }
  const GridWeight& as_grid() const { return std::get<GridWeight>(v_); }

  /// Point value; grid weights use the nearest node and return NaN outside the box.
  double operator()(std::span<const double> x) const;
  /// Nodal values used for cell quadrature on g.
  std::vector<double> on_grid(const Grid& g) const;
  std::string describe() const;

 private:
  explicit Weight(std::variant<PowerWeight, GridWeight> v) : v_(std::move(v)) {}
  std::variant<PowerWeight, GridWeight> v_;
};

/// Mean of |u|^alpha over the unit cube [-1/2, 1/2]^N (alpha > -N).
double cell_power_average(int dim, double alpha);
/// |x|^alpha at every node of g, origin node replaced by h^alpha * cell_power_average.
std::vector<double> sample_power(const Grid& g, double alpha);

/// Mean of w over the open ball B(center, r).
double ball_average(const Weight& w, std::span<const double> center, double r);

/// Lattice of centres crossed with radii r0 * ratio^k, k = 0..count-1.
struct BallFamily {
  std::vector<Point> centers;
  double r0 = 1.0;
  double ratio = 2.0;
  int count = 1;

  std::vector<double> radii() const;
  /// Centres on a cubic lattice of the given spacing within [-extent, extent]^N.
  static BallFamily lattice(int dim, double extent, double spacing, double r0, double ratio, int count);
};

struct ApEstimate {
  double estimate = 1.0;
  bool diverging = false;
  /// Running maximum after each radius (ascending).
  std::vector<double> running_max;
  std::size_t balls = 0;
};

/// Growth of the running maximum across the last radius decade above which
/// ap_constant reports divergence.
inline constexpr double kApDecadeGrowth = 1.7782794100389228;  // 10^(1/4)

/// Running maximum of the A_p product over the family (p = 1 uses the
/// essential supremum of 1/w; grid weights use the sample maximum).
ApEstimate ap_constant(const Weight& w, double p, const BallFamily& balls, double decade_growth = kApDecadeGrowth);

/// Analytic membership of |x|^alpha in A_p(R^N).
bool power_membership(double alpha, double p, int dim);

/// Discrete Hardy-Littlewood maximal function: sup over radii h * sqrt(2)^k
/// (up to the half width) of centred ball averages, cell-centre rule, balls
/// clipped to the grid box.
Weight maximal_function(const Weight& w);
std::vector<double> maximal_radii(const Grid& g);

}  // namespace potentia
