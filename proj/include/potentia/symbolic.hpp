#pragma once

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "potentia/core.hpp"

namespace potentia {

/// Complex matrix mapping an e_dim-dimensional space into an f_dim-dimensional one.
using LinearMap = Eigen::MatrixXcd;

struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e);

  int dim() const { return static_cast<int>(exponents.size()); }
  int order() const;
  /// xi^alpha for a real vector of matching length.
  double monomial(std::span<const double> xi) const;
  /// Unit multi-index e_k in dimension dim.
  static MultiIndex unit(int dim, int k);

  auto operator<=>(const MultiIndex&) const = default;
};

/// All multi-indices of the given order in dimension dim, in lexicographically
/// decreasing exponent order (e.g. (2,0), (1,1), (0,2)).
std::vector<MultiIndex> multi_indices(int dim, int order);

/// Constant-coefficient homogeneous operator A(D) = sum_{|alpha| = m} a_alpha d^alpha
/// from C^infty(R^N, E) to C^infty(R^N, F).
class HomogeneousOperator {
 public:
  HomogeneousOperator(int dim, int order, int e_dim, int f_dim, std::map<MultiIndex, LinearMap> terms);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int e_dim() const { return e_dim_; }
  int f_dim() const { return f_dim_; }
  const std::map<MultiIndex, LinearMap>& terms() const { return terms_; }

  /// Throws InputError unless 1 <= m < N (needed by potentials and kernels).
  void require_potential_range() const;

  bool operator==(const HomogeneousOperator&) const;

 private:
  int dim_;
  int order_;
  int e_dim_;
  int f_dim_;
  std::map<MultiIndex, LinearMap> terms_;
};

/// A(xi) = sum a_alpha xi^alpha.
LinearMap eval_symbol(const HomogeneousOperator& op, std::span<const double> xi);

/// Finite set of unit directions standing in for R^N \ {0}.
struct SphereSample {
  int dim = 0;
  std::vector<Point> directions;

  std::size_t count() const { return directions.size(); }
  /// N = 1: the two points of S^0. N = 2: equispaced angles. N = 3: Fibonacci
  /// lattice. N >= 4: normalised Gaussian draws from a fixed seed.
  static SphereSample uniform(int dim, std::size_t count = 2048);
  SphereSample prefix(std::size_t k) const;
};

/// Relative singular-value cut-off used for every rank/range/kernel decision.
inline constexpr double kRankTolerance = 1e-10;

int numerical_rank(const LinearMap& m, double rel_tol = kRankTolerance);
/// Orthonormal basis of the column space (rank-truncated).
LinearMap range_basis(const LinearMap& m, double rel_tol = kRankTolerance);
/// Orthonormal basis of the kernel; `scale` is the reference singular value
/// for the cut-off (defaults to the largest singular value of m).
LinearMap kernel_basis(const LinearMap& m, double rel_tol = kRankTolerance, double scale = -1.0);

struct EllipticityReport {
  double margin = 0.0;
  bool structurally_non_elliptic = false;
  std::size_t samples = 0;
  bool elliptic(double tol = kRankTolerance) const { return !structurally_non_elliptic && margin > tol; }
};

/// min over the sample of the smallest singular value of A(xi).
EllipticityReport ellipticity_margin(const HomogeneousOperator& op, const SphereSample& sphere);

/// dim of the intersection of A(xi)[E] over the sample; 0 means canceling.
int canceling_defect(const HomogeneousOperator& op, const SphereSample& sphere);

/// dim of the intersection of ker L(xi) over the sample; 0 means cocanceling.
int cocanceling_defect(const HomogeneousOperator& L, const SphereSample& sphere);

struct AnnihilatorReport {
  double composition_residual = 0.0;
  int kernel_match_defect = 0;
  std::size_t samples = 0;
  bool valid(double tol = kRankTolerance) const {
    return composition_residual <= tol && kernel_match_defect == 0;
  }
};

/// Checks ker L(xi) = A(xi)[E] on the sample.
AnnihilatorReport annihilator_pair_check(const HomogeneousOperator& A, const HomogeneousOperator& L,
                                         const SphereSample& sphere);

/// H(xi) = (A^* A)^{-1}(xi) A^*(xi), the left inverse of A(xi); homogeneous of degree -m.
LinearMap kernel_symbol(const HomogeneousOperator& op, std::span<const double> xi);

namespace catalog {

HomogeneousOperator gradient(int dim);
HomogeneousOperator laplacian(int dim);
HomogeneousOperator divergence(int dim);
/// Rows xi_i e_j^T - xi_j e_i^T for i < j; annihilates gradients and the vector
/// Riesz field, cocanceling for N >= 2.
HomogeneousOperator curl_rows(int dim);
/// Operator whose only coefficient is the zero f_dim x e_dim matrix.
HomogeneousOperator zero(int dim, int order, int e_dim, int f_dim);

HomogeneousOperator by_name(const std::string& name, int dim);

}  // namespace catalog

}  // namespace potentia
