#include "potentia/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace potentia {

MultiIndex::MultiIndex(std::vector<int> e) : exponents(std::move(e)) {
  for (int v : exponents) require(v >= 0, "MultiIndex: exponents must be non-negative");
}

int MultiIndex::order() const {
  int s = 0;
  for (int v : exponents) s += v;
  return s;
}

double MultiIndex::monomial(std::span<const double> xi) const {
  if (xi.size() != exponents.size()) throw InputError("MultiIndex::monomial: dimension mismatch");
  double r = 1.0;
  for (std::size_t j = 0; j < xi.size(); ++j)
    for (int k = 0; k < exponents[j]; ++k) r *= xi[j];
  return r;
}

MultiIndex MultiIndex::unit(int dim, int k) {
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e.at(static_cast<std::size_t>(k)) = 1;
  return MultiIndex(std::move(e));
}

namespace {

void enumerate(int dim, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  const auto pos = cur.size();
  if (static_cast<int>(pos) == dim - 1) {
    cur.push_back(remaining);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur.push_back(v);
    enumerate(dim, remaining - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(int dim, int order) {
  require(dim >= 1 && order >= 0, "multi_indices: need dim >= 1, order >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur;
  enumerate(dim, order, cur, out);
  return out;
}

HomogeneousOperator::HomogeneousOperator(int dim, int order, int e_dim, int f_dim,
                                         std::map<MultiIndex, LinearMap> terms)
    : dim_(dim), order_(order), e_dim_(e_dim), f_dim_(f_dim), terms_(std::move(terms)) {
  require(dim_ >= 1, "HomogeneousOperator: dim must be >= 1");
  require(order_ >= 1, "HomogeneousOperator: order must be >= 1");
  require(e_dim_ >= 1 && f_dim_ >= 1, "HomogeneousOperator: e_dim and f_dim must be >= 1");
  require(!terms_.empty(), "HomogeneousOperator: at least one term required");
  for (const auto& [alpha, a] : terms_) {
    require(alpha.dim() == dim_, "HomogeneousOperator: multi-index length must equal dim");
    require(alpha.order() == order_, "HomogeneousOperator: every term must have |alpha| = order");
    require(a.rows() == f_dim_ && a.cols() == e_dim_,
            "HomogeneousOperator: coefficient must be f_dim x e_dim");
    require(a.allFinite(), "HomogeneousOperator: coefficients must be finite");
  }
}

void HomogeneousOperator::require_potential_range() const {
  require(order_ >= 1 && order_ < dim_, "operator order must satisfy 1 <= m < N");
}

bool HomogeneousOperator::operator==(const HomogeneousOperator& o) const {
  if (dim_ != o.dim_ || order_ != o.order_ || e_dim_ != o.e_dim_ || f_dim_ != o.f_dim_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [alpha, a] : terms_) {
    if (!(alpha == it->first) || a != it->second) return false;
    ++it;
  }
  return true;
}

LinearMap eval_symbol(const HomogeneousOperator& op, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != op.dim()) throw InputError("eval_symbol: xi has wrong length");
  LinearMap s = LinearMap::Zero(op.f_dim(), op.e_dim());
  for (const auto& [alpha, a] : op.terms()) s += alpha.monomial(xi) * a;
  return s;
}

SphereSample SphereSample::uniform(int dim, std::size_t count) {
  require(dim >= 1, "SphereSample: dim must be >= 1");
  SphereSample s;
  s.dim = dim;
  if (dim == 1) {
    s.directions = {{1.0}, {-1.0}};
    return s;
  }
  require(count >= 16, "SphereSample: count must be >= 16");
  s.directions.reserve(count);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      s.directions.push_back({std::cos(t), std::sin(t)});
    }
  } else if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double t = golden * static_cast<double>(k);
      s.directions.push_back({r * std::cos(t), r * std::sin(t), z});
    }
  } else {
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    auto next = [&state] {
      std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
      z ^= z >> 31;
      return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    };
    for (std::size_t k = 0; k < count; ++k) {
      Point p(static_cast<std::size_t>(dim));
      for (int j = 0; j < dim; ++j)
        p[static_cast<std::size_t>(j)] = std::sqrt(-2.0 * std::log(next())) * std::cos(2.0 * std::numbers::pi * next());
      const double n = euclidean_norm(p);
      for (double& v : p) v /= n;
      s.directions.push_back(std::move(p));
    }
  }
  return s;
}

SphereSample SphereSample::prefix(std::size_t k) const {
  SphereSample s;
  s.dim = dim;
  s.directions.assign(directions.begin(), directions.begin() + static_cast<std::ptrdiff_t>(std::min(k, count())));
  return s;
}

namespace {

void require_sphere(const SphereSample& sphere, int dim) {
  require(sphere.dim == dim, "sphere sample dimension does not match operator");
  require(sphere.count() > 0, "sphere sample is empty");
}

LinearMap orthonormalize(const LinearMap& m) {
  if (m.cols() == 0) return m;
  Eigen::HouseholderQR<LinearMap> qr(m);
  return qr.householderQ() * LinearMap::Identity(m.rows(), m.cols());
}

}  // namespace

int numerical_rank(const LinearMap& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<LinearMap> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

LinearMap range_basis(const LinearMap& m, double rel_tol) {
  Eigen::JacobiSVD<LinearMap> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

LinearMap kernel_basis(const LinearMap& m, double rel_tol, double scale) {
  Eigen::JacobiSVD<LinearMap> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double ref = scale >= 0.0 ? scale : (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index r = 0;
  if (ref > 0.0)
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * ref) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

EllipticityReport ellipticity_margin(const HomogeneousOperator& op, const SphereSample& sphere) {
  require_sphere(sphere, op.dim());
  EllipticityReport rep;
  rep.samples = sphere.count();
  if (op.e_dim() > op.f_dim()) {
    rep.structurally_non_elliptic = true;
    rep.margin = 0.0;
    return rep;
  }
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& xi : sphere.directions) {
    Eigen::JacobiSVD<LinearMap> svd(eval_symbol(op, xi));
    const auto& s = svd.singularValues();
    margin = std::min(margin, s(s.size() - 1));
  }
  rep.margin = margin;
  return rep;
}

int canceling_defect(const HomogeneousOperator& op, const SphereSample& sphere) {
  require_sphere(sphere, op.dim());
  // Basis of the running intersection; starts as all of F.
  LinearMap basis = LinearMap::Identity(op.f_dim(), op.f_dim());
  for (const auto& xi : sphere.directions) {
    const LinearMap q = range_basis(eval_symbol(op, xi));
    // Components of span(basis) orthogonal to range A(xi); the singular values
    // are sines of principal angles, so the cut-off is absolute.
    const LinearMap residual = basis - q * (q.adjoint() * basis);
    const LinearMap keep = kernel_basis(residual, kRankTolerance, 1.0);
    basis = orthonormalize(basis * keep);
    if (basis.cols() == 0) return 0;
  }
  return static_cast<int>(basis.cols());
}

int cocanceling_defect(const HomogeneousOperator& L, const SphereSample& sphere) {
  require_sphere(sphere, L.dim());
  LinearMap basis = LinearMap::Identity(L.e_dim(), L.e_dim());
  for (const auto& xi : sphere.directions) {
    const LinearMap sym = eval_symbol(L, xi);
    Eigen::JacobiSVD<LinearMap> svd(sym);
    const double norm = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    if (norm == 0.0) continue;
    const LinearMap keep = kernel_basis(sym * basis, kRankTolerance, norm);
    basis = orthonormalize(basis * keep);
    if (basis.cols() == 0) return 0;
  }
  return static_cast<int>(basis.cols());
}

AnnihilatorReport annihilator_pair_check(const HomogeneousOperator& A, const HomogeneousOperator& L,
                                         const SphereSample& sphere) {
  require(A.dim() == L.dim(), "annihilator_pair_check: operators live in different dimensions");
  require(L.e_dim() == A.f_dim(), "annihilator_pair_check: L must act on the target space of A");
  require_sphere(sphere, A.dim());
  AnnihilatorReport rep;
  rep.samples = sphere.count();
  for (const auto& xi : sphere.directions) {
    const LinearMap a = eval_symbol(A, xi);
    const LinearMap l = eval_symbol(L, xi);
    const LinearMap comp = l * a;
    double res = 0.0;
    if (comp.size() > 0) {
      Eigen::JacobiSVD<LinearMap> svd(comp);
      res = svd.singularValues()(0);
    }
    rep.composition_residual = std::max(rep.composition_residual, res);
    const int ker_l = L.e_dim() - numerical_rank(l);
    const int defect = std::abs(ker_l - numerical_rank(a));
    rep.kernel_match_defect = std::max(rep.kernel_match_defect, defect);
  }
  return rep;
}

LinearMap kernel_symbol(const HomogeneousOperator& op, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != op.dim()) throw InputError("kernel_symbol: xi has wrong length");
  if (euclidean_norm(xi) == 0.0) throw DomainError("kernel_symbol: xi = 0 is outside the domain");
  if (op.e_dim() > op.f_dim()) throw SingularityError("kernel_symbol: A(xi) cannot be injective (e_dim > f_dim)");
  const LinearMap a = eval_symbol(op, xi);
  Eigen::JacobiSVD<LinearMap> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(s.size() - 1) <= kRankTolerance * s(0))
    throw SingularityError("kernel_symbol: A*(xi)A(xi) is numerically singular (operator not elliptic)");
  const LinearMap gram = a.adjoint() * a;
  return gram.llt().solve(a.adjoint());
}

namespace catalog {

HomogeneousOperator gradient(int dim) {
  std::map<MultiIndex, LinearMap> terms;
  for (int k = 0; k < dim; ++k) {
    LinearMap a = LinearMap::Zero(dim, 1);
    a(k, 0) = 1.0;
    terms.emplace(MultiIndex::unit(dim, k), a);
  }
  return {dim, 1, 1, dim, std::move(terms)};
}

HomogeneousOperator laplacian(int dim) {
  std::map<MultiIndex, LinearMap> terms;
  for (int k = 0; k < dim; ++k) {
    std::vector<int> e(static_cast<std::size_t>(dim), 0);
    e[static_cast<std::size_t>(k)] = 2;
    terms.emplace(MultiIndex(e), LinearMap::Ones(1, 1));
  }
  return {dim, 2, 1, 1, std::move(terms)};
}

HomogeneousOperator divergence(int dim) {
  std::map<MultiIndex, LinearMap> terms;
  for (int k = 0; k < dim; ++k) {
    LinearMap a = LinearMap::Zero(1, dim);
    a(0, k) = 1.0;
    terms.emplace(MultiIndex::unit(dim, k), a);
  }
  return {dim, 1, dim, 1, std::move(terms)};
}

HomogeneousOperator curl_rows(int dim) {
  require(dim >= 2, "curl_rows: requires N >= 2");
  const int rows = dim * (dim - 1) / 2;
  std::map<MultiIndex, LinearMap> terms;
  for (int k = 0; k < dim; ++k) terms.emplace(MultiIndex::unit(dim, k), LinearMap::Zero(rows, dim));
  int r = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j, ++r) {
      // row r: xi_i f_j - xi_j f_i
      terms.at(MultiIndex::unit(dim, i))(r, j) = 1.0;
      terms.at(MultiIndex::unit(dim, j))(r, i) = -1.0;
    }
  return {dim, 1, dim, rows, std::move(terms)};
}

HomogeneousOperator zero(int dim, int order, int e_dim, int f_dim) {
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[0] = order;
  std::map<MultiIndex, LinearMap> terms;
  terms.emplace(MultiIndex(e), LinearMap::Zero(f_dim, e_dim));
  return {dim, order, e_dim, f_dim, std::move(terms)};
}

HomogeneousOperator by_name(const std::string& name, int dim) {
  if (name == "gradient") return gradient(dim);
  if (name == "laplacian") return laplacian(dim);
  if (name == "divergence") return divergence(dim);
  if (name == "curl_rows") return curl_rows(dim);
  throw InputError("unknown catalog operator: " + name);
}

}  // namespace catalog

}  // namespace potentia
