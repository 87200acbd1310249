#pragma once

#include <cmath>
#include <mutex>
#include <vector>

#include "radbkg/constants.hpp"
#include "radbkg/rng.hpp"

namespace radbkg {

// Standard Landau density via its Fourier representation
//   p(x) = (1/pi) int_0^inf exp(-pi w / 2) cos(x w + w ln w) dw,
// which converges absolutely for every x. Mode at x = -0.2228.
inline double landau_pdf(double x) {
  // exp(-pi w/2) < 1e-28 beyond w = 41
  const double w_max = 41.0;
  const int n = 8200;  // Simpson with dw = 0.005
  const double h = w_max / n;
  auto f = [x](double w) {
    if (w == 0.0) return 1.0;  // cos(0) with zero log-weight limit
    return std::exp(-0.5 * constants::pi * w) * std::cos(x * w + w * std::log(w));
  };
  double sum = f(0.0) + f(w_max);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0 / constants::pi;
}

// Quantile table for sampling. Built once by integrating the density over
// [-4, 60]; the far tail (~1/x^2 density) is mapped analytically.
class LandauSampler {
 public:
  static const LandauSampler& instance() {
    static LandauSampler s;
    return s;
  }

  double quantile(double u) const {
    if (u <= cdf_.front()) return x_.front();
    if (u >= cdf_.back()) {
      // survival ~ tail_c / x beyond the table
      double s = 1.0 - u;
      return tail_c_ / std::max(s, 1e-300);
    }
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t hi = it - cdf_.begin();
    std::size_t lo = hi - 1;
    double t = (u - cdf_[lo]) / (cdf_[hi] - cdf_[lo]);
    return x_[lo] + t * (x_[hi] - x_[lo]);
  }

  double sample(RandomStream& rng) const { return quantile(rng.uniform()); }

 private:
  LandauSampler() {
    const double x_lo = -4.0, x_hi = 60.0;
    const int n = 1280;
    const double h = (x_hi - x_lo) / n;
    std::vector<double> pdf(n + 1);
    for (int i = 0; i <= n; ++i) pdf[i] = std::max(landau_pdf(x_lo + i * h), 0.0);
    x_.resize(n + 1);
    cdf_.resize(n + 1);
    x_[0] = x_lo;
    cdf_[0] = 0.0;
    for (int i = 1; i <= n; ++i) {
      x_[i] = x_lo + i * h;
      cdf_[i] = cdf_[i - 1] + 0.5 * h * (pdf[i] + pdf[i - 1]);
    }
    // tail mass beyond x_hi: survival(x) ~ c/x with c from the density at x_hi
    tail_c_ = pdf.back() * x_hi * x_hi;
    double tail_mass = tail_c_ / x_hi;
    double scale = (1.0 - tail_mass) / cdf_.back();
    for (auto& c : cdf_) c *= scale;
  }

  std::vector<double> x_, cdf_;
  double tail_c_ = 0.0;
};

// Sternheimer-Peierls density-effect correction from the material's mean
// excitation energy and plasma energy, x = log10(beta gamma).
inline double density_effect_delta(double x, double i_ev, double plasma_ev) {
  double cbar = 2.0 * std::log(i_ev / plasma_ev) + 1.0;
  double x0, x1;
  if (i_ev < 100.0) {
    x1 = 2.0;
    x0 = cbar < 3.681 ? 0.2 : 0.326 * cbar - 1.0;
  } else {
    x1 = 3.0;
    x0 = cbar < 5.215 ? 0.2 : 0.326 * cbar - 1.5;
  }
  if (x < x0) return 0.0;
  double d = 4.606 * x - cbar;
  if (x < x1) {
    double a = (cbar - 4.606 * x0) / ((x1 - x0) * (x1 - x0) * (x1 - x0));
    d += a * (x1 - x) * (x1 - x) * (x1 - x);
  }
  return d > 0.0 ? d : 0.0;
}

// Most probable energy loss (keV) of a charged particle crossing path_cm of
// material, after Landau-Vavilov-Bichsel.
struct LandauParams {
  double xi_kev;   // width parameter
  double mpv_kev;  // most probable loss
};

inline LandauParams landau_params(double beta2, double gamma2, double z_over_a,
                                  double density_g_cm3, double i_ev,
                                  double plasma_ev, double path_cm) {
  double xi_mev =
      0.5 * constants::k_bethe_mev_cm2 * z_over_a * density_g_cm3 * path_cm / beta2;
  double i_mev = i_ev * 1e-6;
  double bg2 = beta2 * gamma2;
  double delta = density_effect_delta(0.5 * std::log10(bg2), i_ev, plasma_ev);
  double mpv = xi_mev * (std::log(2.0 * constants::electron_mass_mev * bg2 / i_mev) +
                         std::log(xi_mev / i_mev) + 0.200 - beta2 - delta);
  return {xi_mev * 1e3, mpv * 1e3};
}

}  // namespace radbkg
