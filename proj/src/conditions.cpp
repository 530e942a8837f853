#include "potentia/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "potentia/parallel.hpp"
#include "potentia/symbolic.hpp"

namespace potentia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SampleValue {
  double value = 0.0;
  bool skipped = false;
};

// Sequential reduction in sample order keeps the witness thread-independent.
ConditionReport reduce(std::string name, const std::vector<Point>& ys, const std::vector<SampleValue>& vals) {
  ConditionReport rep;
  rep.condition = std::move(name);
  rep.samples = ys.size();
  bool have = false;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (vals[i].skipped) {
      ++rep.skipped;
      continue;
    }
    if (!have || vals[i].value > rep.constant) {
      rep.constant = vals[i].value;
      rep.witness = ys[i];
      have = true;
    }
  }
  if (!have) rep.status = ConditionStatus::not_applicable;
  else if (!std::isfinite(rep.constant)) rep.status = ConditionStatus::diverging;
  return rep;
}

void check_testing_args(const PositiveMeasure& nu, const Weight& w, double ell, double q) {
  const int dim = nu.dim();
  require(w.dim() == dim, "testing condition: weight and measure dimensions differ");
  require(ell > 0.0 && ell < dim, "testing condition: requires 0 < ell < N");
  require(q >= 1.0, "testing condition: requires q >= 1");
}

std::optional<double> weight_at(const Weight& w, std::span<const double> y) {
  const double v = w(y);
  if (!std::isfinite(v) || v <= 0.0) return std::nullopt;
  return v;
}

}  // namespace

std::string to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::holds_with_constant: return "holds-with-constant";
    case ConditionStatus::diverging: return "diverging";
    case ConditionStatus::not_applicable: return "not-applicable";
  }
  return "unknown";
}

std::vector<Point> log_spherical_samples(const PositiveMeasure& nu, double r_min, double r_max, int radii,
                                         int directions) {
  require(r_min > 0.0 && r_max >= r_min, "log_spherical_samples: need 0 < r_min <= r_max");
  require(radii >= 1 && directions >= 1, "log_spherical_samples: counts must be positive");
  const int dim = nu.dim();
  const auto atoms = nu.to_atomic();
  const auto& pts = atoms.as_atomic().points;
  const SphereSample sphere = SphereSample::uniform(dim, static_cast<std::size_t>(directions));
  std::vector<Point> out;
  for (int k = 0; k < radii; ++k) {
    const double r = radii == 1 ? r_min : r_min * std::pow(r_max / r_min, static_cast<double>(k) / (radii - 1));
    for (const auto& th : sphere.directions) {
      Point y(th.size());
      for (std::size_t d = 0; d < th.size(); ++d) y[d] = r * th[d];
      const bool hits = std::any_of(pts.begin(), pts.end(), [&](const Point& x) { return distance(x, y) <= 1e-12; });
      if (!hits) out.push_back(std::move(y));
    }
  }
  return out;
}

ConditionReport testing_condition_far(const PositiveMeasure& nu, const Weight& w, double ell, double q,
                                      const std::vector<Point>& y_samples) {
  check_testing_args(nu, w, ell, q);
  const int dim = nu.dim();
  const auto atoms = nu.to_atomic();
  const auto& a = atoms.as_atomic();
  const double s = (dim - ell + 1.0) * q;
  std::vector<SampleValue> vals(y_samples.size());
  parallel_for(y_samples.size(), [&](std::size_t k) {
    const auto& y = y_samples[k];
    require(static_cast<int>(y.size()) == dim, "testing condition: sample dimension mismatch");
    const double ny = euclidean_norm(y);
    const auto wy = weight_at(w, y);
    if (!wy || ny == 0.0) {
      vals[k].skipped = true;
      return;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      const double r = euclidean_norm(a.points[i]);
      if (r >= 2.0 * ny && a.masses[i] > 0.0) sum += a.masses[i] * std::pow(r, -s);
    }
    vals[k].value = std::pow(sum, 1.0 / q) * ny / *wy;
  });
  return reduce("testing_far", y_samples, vals);
}

ConditionReport testing_condition_near(const PositiveMeasure& nu, const Weight& w, double ell, double q,
                                       const std::vector<Point>& y_samples) {
  check_testing_args(nu, w, ell, q);
  const int dim = nu.dim();
  const auto atoms = nu.to_atomic();
  const auto& a = atoms.as_atomic();
  const double s = (dim - ell) * q;
  std::vector<SampleValue> vals(y_samples.size());
  parallel_for(y_samples.size(), [&](std::size_t k) {
    const auto& y = y_samples[k];
    require(static_cast<int>(y.size()) == dim, "testing condition: sample dimension mismatch");
    const double ny = euclidean_norm(y);
    const auto wy = weight_at(w, y);
    if (!wy || ny == 0.0) {
      vals[k].skipped = true;
      return;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      if (a.masses[i] == 0.0 || euclidean_norm(a.points[i]) >= 4.0 * ny) continue;
      const double r = distance(a.points[i], y);
      if (r == 0.0) {
        sum = kInf;
        break;
      }
      sum += a.masses[i] * std::pow(r, -s);
    }
    vals[k].value = std::pow(sum, 1.0 / q) / *wy;
  });
  return reduce("testing_near", y_samples, vals);
}

WolffValue wolff_potential(const PositiveMeasure& nu, std::span<const double> y, double m) {
  const int dim = nu.dim();
  require(static_cast<int>(y.size()) == dim, "wolff_potential: point dimension mismatch");
  require(m > 0.0 && m < dim, "wolff_potential: requires 0 < m < N");
  const auto atoms = nu.to_atomic();
  const auto& a = atoms.as_atomic();
  const double R = 0.5 * euclidean_norm(y);
  const double e = m - dim;
  WolffValue out;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.masses[i] == 0.0) continue;
    const double r = distance(a.points[i], y);
    if (r >= R) continue;
    if (r == 0.0) {
      out.infinite = true;
      out.value = kInf;
      return out;
    }
    out.value += a.masses[i] * (std::pow(r, e) - std::pow(R, e)) / (dim - m);
  }
  return out;
}

ConditionReport wolff_condition(const PositiveMeasure& nu, const Weight& w, double m,
                                const std::vector<Point>& y_samples) {
  require(w.dim() == nu.dim(), "wolff condition: weight and measure dimensions differ");
  std::vector<SampleValue> vals(y_samples.size());
  parallel_for(y_samples.size(), [&](std::size_t k) {
    const auto wy = weight_at(w, y_samples[k]);
    if (!wy) {
      vals[k].skipped = true;
      return;
    }
    vals[k].value = wolff_potential(nu, y_samples[k], m).value / *wy;
  });
  return reduce("wolff", y_samples, vals);
}

ConditionReport decay_check(const PositiveMeasure& nu, const Weight& w, double ell, double q, DecayMode mode,
                            const std::vector<DecaySample>& samples) {
  const int dim = nu.dim();
  require(w.dim() == dim, "decay_check: weight and measure dimensions differ");
  require(ell > 0.0 && q >= 1.0, "decay_check: requires ell > 0 and q >= 1");
  std::vector<SampleValue> vals(samples.size());
  for (const auto& s : samples) {
    require(static_cast<int>(s.center.size()) == dim, "decay_check: centre dimension mismatch");
    require(s.radius > 0.0, "decay_check: radii must be positive");
    if (mode == DecayMode::origin)
      require(euclidean_norm(s.center) == 0.0, "decay_check: origin mode needs centres at 0");
    else
      require(s.radius < 0.5 * euclidean_norm(s.center), "decay_check: off-origin mode needs r < |x|/2");
  }
  parallel_for(samples.size(), [&](std::size_t k) {
    const auto& s = samples[k];
    const double integral = ball_average(w, s.center, s.radius) * unit_ball_volume(dim) * std::pow(s.radius, dim);
    const double scale = mode == DecayMode::origin ? std::pow(s.radius, -ell) : std::pow(euclidean_norm(s.center), -ell);
    const double rhs = std::pow(scale * integral, q);
    if (!(rhs > 0.0) || !std::isfinite(rhs)) {
      vals[k].skipped = true;
      return;
    }
    vals[k].value = ball_mass(nu, s.center, s.radius) / rhs;
  });
  std::vector<Point> centers;
  centers.reserve(samples.size());
  for (const auto& s : samples) centers.push_back(s.center);
  ConditionReport rep = reduce(mode == DecayMode::origin ? "decay_origin" : "decay_off_origin", centers, vals);
  if (rep.status != ConditionStatus::holds_with_constant) return rep;

  // Growth of the ratio over the outermost decade at either end of each centre's radii.
  std::map<Point, std::vector<std::pair<double, double>>> groups;
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (!vals[k].skipped) groups[samples[k].center].emplace_back(samples[k].radius, vals[k].value);
  for (auto& [c, rv] : groups) {
    std::sort(rv.begin(), rv.end());
    const double r_lo = rv.front().first;
    const double r_hi = rv.back().first;
    if (r_hi < 10.0 * r_lo * (1.0 - 1e-12)) continue;
    const auto ref_lo = std::find_if(rv.begin(), rv.end(), [&](const auto& p) { return p.first >= 10.0 * r_lo * (1.0 - 1e-12); });
    auto ref_hi = rv.rbegin();
    while (ref_hi != rv.rend() && ref_hi->first > r_hi / 10.0 * (1.0 + 1e-12)) ++ref_hi;
    // A reference of zero means no mass has been reached yet, which is not growth.
    const bool grows_small = ref_lo->second > 0.0 && rv.front().second > kDecayDecadeGrowth * ref_lo->second;
    const bool grows_large = ref_hi != rv.rend() && ref_hi->second > 0.0 &&
                             rv.back().second > kDecayDecadeGrowth * ref_hi->second;
    if (grows_small || grows_large) {
      rep.status = ConditionStatus::diverging;
      rep.witness = c;
      break;
    }
  }
  return rep;
}

std::vector<DecaySample> origin_decay_samples(int dim, double r_min, double r_max, int count) {
  require(r_min > 0.0 && r_max > r_min && count >= 2, "origin_decay_samples: bad range");
  std::vector<DecaySample> out;
  for (int k = 0; k < count; ++k)
    out.push_back({Point(static_cast<std::size_t>(dim), 0.0), r_min * std::pow(r_max / r_min, static_cast<double>(k) / (count - 1))});
  return out;
}

std::vector<DecaySample> off_origin_decay_samples(const std::vector<Point>& centers, double r_min, int count) {
  require(r_min > 0.0 && count >= 2, "off_origin_decay_samples: bad range");
  std::vector<DecaySample> out;
  for (const auto& c : centers) {
    const double r_max = 0.49 * euclidean_norm(c);
    if (r_max <= r_min) continue;
    for (int k = 0; k < count; ++k)
      out.push_back({c, r_min * std::pow(r_max / r_min, static_cast<double>(k) / (count - 1))});
  }
  return out;
}

ImplicationReport decay_implication(const PositiveMeasure& nu, const Weight& w, double ell, double q,
                                    const std::vector<Point>& y_samples,
                                    const std::vector<DecaySample>& origin_samples,
                                    const std::vector<DecaySample>& off_samples) {
  require(!w.is_power(), "decay_implication: requires a sampled grid weight");
  ImplicationReport rep;
  rep.decay_origin = decay_check(nu, w, ell, q, DecayMode::origin, origin_samples);
  rep.decay_off_origin = decay_check(nu, w, ell, q, DecayMode::off_origin, off_samples);
  rep.far.condition = "testing_far_maximal";
  rep.near.condition = "testing_near_maximal";
  rep.far.status = rep.near.status = ConditionStatus::not_applicable;
  if (rep.decay_origin.status == ConditionStatus::diverging || rep.decay_off_origin.status == ConditionStatus::diverging) {
    rep.status = ConditionStatus::not_applicable;
    return rep;
  }
  const Weight mw = maximal_function(w);
  rep.far = testing_condition_far(nu, mw, ell, q, y_samples);
  rep.near = testing_condition_near(nu, mw, ell, q, y_samples);
  rep.far.condition = "testing_far_maximal";
  rep.near.condition = "testing_near_maximal";
  const double c0 = std::pow(rep.decay_origin.constant, 1.0 / q);
  const double c1 = std::pow(std::max(rep.decay_origin.constant, rep.decay_off_origin.constant), 1.0 / q);
  rep.inflation_far = c0 > 0.0 ? rep.far.constant / c0 : 0.0;
  rep.inflation_near = c1 > 0.0 ? rep.near.constant / c1 : 0.0;
  const bool finite = std::isfinite(rep.far.constant) && std::isfinite(rep.near.constant) &&
                      rep.far.status != ConditionStatus::diverging && rep.near.status != ConditionStatus::diverging;
  rep.status = finite ? ConditionStatus::holds_with_constant : ConditionStatus::diverging;
  return rep;
}

DyadicConstants dyadic_testing_bounds(int dim, double ell, double alpha, double q, double cprime) {
  require(alpha > 0.0 && alpha < 1.0, "dyadic bounds: requires 0 < alpha < 1");
  require(ell > 0.0 && ell < dim, "dyadic bounds: requires 0 < ell < N");
  require(q >= 1.0 && cprime > 0.0, "dyadic bounds: requires q >= 1 and c' > 0");
  auto G = [](double s) { return std::pow(2.0, s) / (1.0 - std::pow(2.0, s)); };
  const double a = (dim - ell + alpha) * q;
  const double b = (dim - ell) * q;
  DyadicConstants c;
  c.far = std::pow(cprime * std::pow(2.0, a) * G((alpha - 1.0) * q), 1.0 / q);
  c.near = std::pow(cprime * std::pow(2.0, b) * (std::pow(4.0, a) + G(-alpha * q)), 1.0 / q);
  return c;
}

}  // namespace potentia
