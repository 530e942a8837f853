#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "potentia/measures.hpp"
#include "potentia/spectral.hpp"
#include "potentia/symbolic.hpp"
#include "potentia/weights.hpp"

namespace potentia {

enum class InequalityTag { apriori_L1, apriori_Lp, stein_weiss, cocanceling_moment, riesz_L1, trace, fractional };

std::string to_string(InequalityTag t);
InequalityTag inequality_tag(const std::string& name);
const std::vector<InequalityTag>& all_inequality_tags();

/// One concrete inequality: the tag plus every parameter it binds.
///   apriori_L1          |int phi dmu| <= C ||A(D) phi||_{L^1_w}
///   apriori_Lp          |int phi dmu| <= C ||A(D) phi||_{L^{p'}_{w'}},  w' = w^{1/(1-p)}
///   stein_weiss         ||K * A(D) phi||_{L^q_nu} <= C ||A(D) phi||_{L^1_w}, K from kernel_H
///   cocanceling_moment  |int phi . f| <= C sum_j int |f| |y|^j |D^j phi|, f = A(D) psi, L(D) f = 0
///   riesz_L1            ||I_l u||_{L^q_nu} <= C ||R u||_{L^1_w}
///   trace               int |D^{m-1} u| dnu <= C ||A(D) u||_{L^1_w}
///   fractional          ||(-Delta)^{(m-l)/2} u||_{L^q_nu} <= C ||A(D) u||_{L^1_w}
struct InequalityProblem {
  InequalityTag tag = InequalityTag::apriori_L1;
  Grid grid{2, 4.0, 64};
  std::optional<HomogeneousOperator> op;
  /// Annihilator L for cocanceling_moment.
  std::optional<HomogeneousOperator> annihilator;
  std::optional<Measure> mu;
  std::optional<PositiveMeasure> nu;
  Weight w = Weight::unit(2);
  double p = 1.0;
  double q = 1.0;
  double ell = 1.0;
  /// psi for cocanceling_moment.
  std::optional<BumpSpec> auxiliary;
};

/// Builds the problem at a given resolution (used by the refinement audit).
using ProblemFactory = std::function<InequalityProblem(const Grid&)>;

/// Hypothesis-satisfying N = 2 instance for each tag (gradient, curl rows,
/// power-law measures compatible with the testing conditions).
ProblemFactory standard_factory(InequalityTag tag);

/// Test function: a bump, or the difference b(x) - b(x - shift) when a shift is set.
struct TestInput {
  BumpSpec bump;
  std::optional<Point> shift;
  /// Overall factor applied to the field (homogeneity checks).
  Complex scale{1.0, 0.0};
};

struct InequalityInstance {
  InequalityTag tag = InequalityTag::apriori_L1;
  TestInput input;
  double lhs = 0.0;
  double rhs = 0.0;
  /// lhs / rhs; empty when rhs = 0.
  std::optional<double> ratio;
  /// rhs = 0 with lhs > 0.
  bool violation_candidate = false;
};

Field test_field(const TestInput& input, const Grid& g);
InequalityInstance evaluate_inequality(const InequalityProblem& problem, const TestInput& input);

/// Random bump family for a problem: radius in [r_min, r_max], support inside
/// 3/4 of the box, modulation |omega_d| <= omega_max.
struct BumpFamily {
  int dim = 2;
  int components = 1;
  double half_width = 4.0;
  double r_min = 0.6;
  double r_max = 1.6;
  double omega_max = 2.0;
  bool shifted = false;

  static BumpFamily for_problem(const InequalityProblem& problem);
  /// Parameter vector in [-1, 1]^k: centre, radius, modulation[, shift].
  std::size_t parameter_count() const;
  TestInput decode(const std::vector<double>& theta, const ComplexVector& amplitude) const;
};

/// Uniform numbers built from mt19937_64 raw bits; the engine output is fixed
/// by the standard, unlike std::uniform_real_distribution.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  /// In [0, 1).
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * next() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

struct ConstantEstimate {
  InequalityTag tag = InequalityTag::apriori_L1;
  double best_ratio = 0.0;
  TestInput extremizer;
  /// Ratio of every evaluation in order (0 when rhs = 0).
  std::vector<double> history;
  std::uint64_t seed = 0;
};

inline constexpr int kMultiStarts = 32;
inline constexpr int kLineSearchEvaluations = 6;

/// Multi-start random search plus golden-section coordinate refinement. The
/// evaluation sequence for a budget is a prefix of the one for any larger
/// budget, so the best ratio is monotone in the budget.
ConstantEstimate estimate_constant(const InequalityProblem& problem, int budget, std::uint64_t seed);

struct AuditedInstance {
  InequalityInstance coarse;
  std::optional<InequalityInstance> fine;
  bool confirmed = false;
};

struct BatchReport {
  InequalityTag tag = InequalityTag::apriori_L1;
  std::size_t instances = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::vector<AuditedInstance> candidates;
  std::size_t confirmed = 0;
};

/// Ratio above this multiple of the batch median marks an instance for audit.
inline constexpr double kViolationFactor = 10.0;
/// Growth of the ratio under n -> 2n above which a candidate is confirmed.
inline constexpr double kAuditGrowth = 1.1;

/// Evaluates `count` random family members at g; candidates (rhs = 0 with
/// lhs > 0, or ratio above kViolationFactor x median) are re-run at 2n.
BatchReport run_batch(const ProblemFactory& factory, const Grid& g, int count, std::uint64_t seed);

struct HardyReport {
  double hypothesis_constant = 0.0;
  double max_ratio = 0.0;
  std::size_t family = 0;
  bool pass = true;
};

/// Two-weight Hardy inequality for g >= 0:
/// (int (int_{B(0,|x|/2)} g)^q u dnu)^{1/q} <= C int g v, with C the measured
/// sup_y (int_{|x| >= 2|y|} u dnu)^{1/q} / v(y) over nodes where some g > 0.
HardyReport hardy_check(const PositiveMeasure& nu, const Weight& u, const Weight& v, double q,
                        const std::vector<std::vector<double>>& g_family, const Grid& g);

inline constexpr double kHardyAllowance = 0.05;

}  // namespace potentia
