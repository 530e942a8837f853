#pragma once

// Independent reference implementations used by the tests. They share no code
// with the library beyond plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

using Pt = std::vector<double>;

inline double norm(const Pt& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double dist(const Pt& a, const Pt& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

constexpr double kPi = 3.14159265358979323846;

/// Far testing value at y for atoms sorted by |x| descending, using prefix
/// sums of m |x|^{-s} and a binary search for the cut |x| >= 2|y|.
class FarPrefix {
 public:
  FarPrefix(const std::vector<Pt>& pts, const std::vector<double>& mass, double s) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return norm(pts[a]) > norm(pts[b]); });
    prefix_.push_back(0.0);
    for (auto i : order) {
      radius_.push_back(norm(pts[i]));
      const double term = radius_.back() > 0.0 ? mass[i] * std::pow(radius_.back(), -s) : 0.0;
      prefix_.push_back(prefix_.back() + term);
    }
  }
  double integral(double y_norm) const {
    // count of radii >= 2|y| in a descending array
    const auto it = std::partition_point(radius_.begin(), radius_.end(), [&](double r) { return r >= 2.0 * y_norm; });
    return prefix_[static_cast<std::size_t>(it - radius_.begin())];
  }

 private:
  std::vector<double> radius_;
  std::vector<double> prefix_;
};

inline double far_constant(const std::vector<Pt>& pts, const std::vector<double>& mass, const std::vector<Pt>& ys,
                           double ell, double q, double alpha) {
  const double N = static_cast<double>(pts.empty() ? ys[0].size() : pts[0].size());
  const FarPrefix fp(pts, mass, (N - ell + 1.0) * q);
  double best = 0.0;
  for (const auto& y : ys) {
    const double r = norm(y);
    best = std::max(best, std::pow(fp.integral(r), 1.0 / q) * r / std::pow(r, alpha));
  }
  return best;
}

/// Near testing value: atoms sorted by |x| ascending; the ones with
/// |x| < 4|y| form a prefix summed directly.
inline double near_constant(const std::vector<Pt>& pts, const std::vector<double>& mass, const std::vector<Pt>& ys,
                            double ell, double q, double alpha) {
  const double N = static_cast<double>(pts[0].size());
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return norm(pts[a]) < norm(pts[b]); });
  double best = 0.0;
  for (const auto& y : ys) {
    const double r = norm(y);
    double sum = 0.0;
    for (auto i : order) {
      if (!(norm(pts[i]) < 4.0 * r)) break;
      const double d = dist(pts[i], y);
      if (d == 0.0) return std::numeric_limits<double>::infinity();
      sum += mass[i] * std::pow(d, -(N - ell) * q);
    }
    best = std::max(best, std::pow(sum, 1.0 / q) / std::pow(r, alpha));
  }
  return best;
}

/// int_0^{|y|/2} nu(B(y,r)) r^{m-N-1} dr: each atom at distance d < R
/// contributes m (R^e - d^e) / e with e = m - N (log(R/d) when e = 0).
inline double wolff(const std::vector<Pt>& pts, const std::vector<double>& mass, const Pt& y, double m) {
  const double N = static_cast<double>(y.size());
  const double R = 0.5 * norm(y);
  const double e = m - N;
  std::vector<std::pair<double, double>> dm;
  for (std::size_t i = 0; i < pts.size(); ++i) dm.emplace_back(dist(pts[i], y), mass[i]);
  std::sort(dm.begin(), dm.end());
  double total = 0.0;
  for (const auto& [d, w] : dm) {
    if (!(d < R)) break;
    if (d == 0.0 && e <= 0.0) return std::numeric_limits<double>::infinity();
    total += e == 0.0 ? w * std::log(R / d) : w * (std::pow(R, e) - std::pow(d, e)) / e;
  }
  return total;
}

/// gamma(m) = pi^{N/2} 2^m Gamma(m/2) / Gamma((N-m)/2).
inline double riesz_gamma(int N, double m) {
  return std::pow(kPi, N / 2.0) * std::pow(2.0, m) * std::tgamma(m / 2.0) / std::tgamma((N - m) / 2.0);
}

/// Exponent of the shell energy of a point mass: (m - N) p + alpha + N.
inline double radial_exponent(int N, double m, double p, double alpha) { return (m - N) * p + alpha + N; }

/// Naive multidimensional DFT with the FFTW sign convention (forward: e^{-2 pi i k j / n}).
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& in, int dim, int n,
                                                   bool inverse) {
  const std::size_t size = static_cast<std::size_t>(std::pow(n, dim));
  std::vector<std::complex<double>> out(size);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < size; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      double phase = 0.0;
      std::size_t kk = k, jj = j;
      for (int d = 0; d < dim; ++d) {
        phase += static_cast<double>((kk % n) * (jj % n));
        kk /= n;
        jj /= n;
      }
      acc += in[j] * std::polar(1.0, sign * 2.0 * kPi * phase / n);
    }
    out[k] = acc;
  }
  return out;
}

/// A_p product of |x|^alpha on balls centred at 0 (scale free).
inline double power_ap_origin(int N, double alpha, double p) {
  const double a = N / (N + alpha);
  if (p == 1.0) return a;
  const double beta = -alpha / (p - 1.0);
  return a * std::pow(N / (N + beta), p - 1.0);
}

}  // namespace oracle

namespace oracle {

/// Alternating series sum_k (-1)^k a_k with the Cohen-Villegas-Zagier
/// acceleration (a_k decreasing, completely monotone).
template <class F>
double alternating_sum(F a, int n = 60) {
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0, c = -d, s = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    s += c * a(k);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  return s / d;
}

/// Riemann zeta for 0 < s, s != 1, through the Dirichlet eta function.
inline double riemann_zeta(double s) {
  const double eta = alternating_sum([s](int k) { return std::pow(k + 1.0, -s); });
  return eta / (1.0 - std::pow(2.0, 1.0 - s));
}

/// Dirichlet beta sum_k (-1)^k (2k + 1)^{-s}.
inline double dirichlet_beta(double s) {
  return alternating_sum([s](int k) { return std::pow(2.0 * k + 1.0, -s); });
}

/// Epstein zeta of Z^2 at exponent s: 4 zeta(s/2) beta(s/2).
inline double epstein_square(double s) { return 4.0 * riemann_zeta(s / 2.0) * dirichlet_beta(s / 2.0); }

}  // namespace oracle
