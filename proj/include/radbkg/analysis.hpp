#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "radbkg/deposition.hpp"
#include "radbkg/rate_model.hpp"

namespace radbkg {

struct RateSummary {
  RateTriple rates;
  // P is computed from bin centers; the quantization bound is
  // (half of the widest occupied bin) x R
  double p_quantization_kev_per_s = 0.0;
};

// Reduce a deposited-energy spectrum to the R/M/P triple. A bin counts
// toward M when its lower edge is at or above the threshold.
inline RateSummary spectrum_to_rates(const DepositSpectrum& spec,
                                     double threshold_kev = 1000.0) {
  if (!(spec.live_time_s > 0.0)) throw std::invalid_argument("live time must be > 0");
  RateSummary out;
  double events = 0.0, mev_events = spec.overflow, power = 0.0, max_width = 0.0;
  for (std::size_t i = 0; i < spec.counts.size(); ++i) {
    double lo = spec.binning.edges_kev[i];
    double hi = spec.binning.edges_kev[i + 1];
    double c = spec.counts[i];
    events += c;
    if (lo >= threshold_kev) mev_events += c;
    power += c * 0.5 * (lo + hi);
    if (c > 0.0) max_width = std::max(max_width, hi - lo);
  }
  events += spec.overflow;
  power += spec.overflow * spec.binning.edges_kev.back();  // lower bound
  out.rates.r_per_s = events / spec.live_time_s;
  out.rates.m_per_s = mev_events / spec.live_time_s;
  out.rates.p_kev_per_s = power / spec.live_time_s;
  out.p_quantization_kev_per_s = 0.5 * max_width * out.rates.r_per_s;
  return out;
}

struct PowerLawFit {
  double amplitude = 0.0;
  double exponent = 0.0;
  double residual_rms = 0.0;  // RMS misfit in log space
  std::size_t n_points = 0;
};

struct ExponentialFit {
  double rate_at_zero = 0.0;
  double scale_height = 0.0;
  double residual_rms = 0.0;
  std::size_t n_points = 0;
  bool diverged = false;  // constant series: no finite scale height
};

namespace detail {

struct LineFit {
  double intercept, slope, rms;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                             const std::vector<double>& w) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  double det = sw * sxx - sx * sx;
  if (std::abs(det) < 1e-30 * sw * sxx + 1e-300)
    throw std::invalid_argument("fit: degenerate abscissae");
  LineFit f{};
  f.slope = (sw * sxy - sx * sy) / det;
  f.intercept = (sxx * sy - sx * sxy) / det;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(x.size()));
  return f;
}

}  // namespace detail

// Least squares of log y on log x. Optional weights (e.g. event counts for
// Poisson weighting); unweighted by default.
inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points,
                                 const std::vector<double>& weights = {}) {
  if (points.size() < 3) throw std::invalid_argument("fit_power_law: need >= 3 points");
  std::vector<double> lx, ly, w;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0 && y > 0.0))
      throw std::invalid_argument("fit_power_law: nonpositive point");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  w = weights.empty() ? std::vector<double>(points.size(), 1.0) : weights;
  auto f = detail::least_squares(lx, ly, w);
  return {std::exp(f.intercept), f.slope, f.rms, points.size()};
}

// Least squares of log rate on elevation: rate = r0 exp(H / lambda).
inline ExponentialFit fit_exponential(const std::vector<std::pair<double, double>>& points,
                                      const std::vector<double>& weights = {}) {
  if (points.size() < 3) throw std::invalid_argument("fit_exponential: need >= 3 points");
  std::vector<double> x, ly, w;
  for (const auto& [h, rate] : points) {
    if (!(rate > 0.0)) throw std::invalid_argument("fit_exponential: nonpositive rate");
    x.push_back(h);
    ly.push_back(std::log(rate));
  }
  w = weights.empty() ? std::vector<double>(points.size(), 1.0) : weights;
  auto f = detail::least_squares(x, ly, w);
  ExponentialFit out;
  out.rate_at_zero = std::exp(f.intercept);
  out.residual_rms = f.rms;
  out.n_points = points.size();
  double span = *std::max_element(x.begin(), x.end()) -
                *std::min_element(x.begin(), x.end());
  if (std::abs(f.slope) * span < 1e-12) {
    out.diverged = true;
    out.scale_height = std::numeric_limits<double>::infinity();
  } else {
    out.scale_height = 1.0 / f.slope;
  }
  return out;
}

}  // namespace radbkg
