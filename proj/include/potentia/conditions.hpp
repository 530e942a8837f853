#pragma once

#include <string>
#include <vector>

#include "potentia/measures.hpp"
#include "potentia/weights.hpp"

namespace potentia {

enum class ConditionStatus { holds_with_constant, diverging, not_applicable };

std::string to_string(ConditionStatus s);

/// Sup over sampled points of LHS/RHS for one compatibility condition. A
/// finite constant is evidence over the sample set, not a proof.
struct ConditionReport {
  std::string condition;
  double constant = 0.0;
  Point witness;
  std::size_t samples = 0;
  /// Samples dropped because the weight vanished or was undefined there.
  std::size_t skipped = 0;
  ConditionStatus status = ConditionStatus::holds_with_constant;
};

/// Geometric radii in [r_min, r_max] times sphere directions, minus points
/// within 1e-12 of an atom of nu (all nodes for densities).
std::vector<Point> log_spherical_samples(const PositiveMeasure& nu, double r_min, double r_max, int radii = 16,
                                         int directions = 64);

/// sup_y (int_{|x| >= 2|y|} |x|^{-(N-l+1)q} dnu)^{1/q} |y| / w(y).
ConditionReport testing_condition_far(const PositiveMeasure& nu, const Weight& w, double ell, double q,
                                      const std::vector<Point>& y_samples);
/// sup_y (int_{|x| < 4|y|} |x-y|^{-(N-l)q} dnu)^{1/q} / w(y).
ConditionReport testing_condition_near(const PositiveMeasure& nu, const Weight& w, double ell, double q,
                                       const std::vector<Point>& y_samples);

struct WolffValue {
  double value = 0.0;
  bool infinite = false;
};

/// int_0^{|y|/2} nu(B(y, r)) r^{m-N-1} dr, exact for atoms.
WolffValue wolff_potential(const PositiveMeasure& nu, std::span<const double> y, double m);
/// sup_y wolff_potential(y) / w(y).
ConditionReport wolff_condition(const PositiveMeasure& nu, const Weight& w, double m,
                                const std::vector<Point>& y_samples);

enum class DecayMode { origin, off_origin };

struct DecaySample {
  Point center;
  double radius = 0.0;
};

/// Ratio growth per radius decade at either end of a shrinking or growing
/// family above which a decay condition is reported as diverging.
inline constexpr double kDecayDecadeGrowth = 3.1622776601683795;  // 10^(1/2)

/// sup nu(B) / (scale * int_B w)^q with scale r^{-l} (origin) or |x|^{-l} (off origin, r < |x|/2).
ConditionReport decay_check(const PositiveMeasure& nu, const Weight& w, double ell, double q, DecayMode mode,
                            const std::vector<DecaySample>& samples);

/// Origin balls with radii geometric in [r_min, r_max].
std::vector<DecaySample> origin_decay_samples(int dim, double r_min, double r_max, int count = 24);
/// For every centre x != 0: radii geometric in (r_min, |x|/2).
std::vector<DecaySample> off_origin_decay_samples(const std::vector<Point>& centers, double r_min, int count = 12);

struct ImplicationReport {
  ConditionReport decay_origin;
  ConditionReport decay_off_origin;
  ConditionReport far;
  ConditionReport near;
  /// Testing-condition constants relative to the decay constants raised to 1/q.
  double inflation_far = 0.0;
  double inflation_near = 0.0;
  ConditionStatus status = ConditionStatus::not_applicable;
};

/// Checks both decay hypotheses, then the testing conditions with w replaced
/// by its maximal function.
ImplicationReport decay_implication(const PositiveMeasure& nu, const Weight& w, double ell, double q,
                                    const std::vector<Point>& y_samples,
                                    const std::vector<DecaySample>& origin_samples,
                                    const std::vector<DecaySample>& off_samples);

struct DyadicConstants {
  double far = 0.0;
  double near = 0.0;
};

/// Dyadic-series bounds of the far and near testing constants for
/// w = |x|^alpha and nu(B(y, r)) <= c' r^{(N-l+alpha)q}. The near bound needs
/// this decay on balls around every centre, not only the origin.
DyadicConstants dyadic_testing_bounds(int dim, double ell, double alpha, double q, double cprime);

}  // namespace potentia
