#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace radbkg {

// Bin edges in keV, ascending.
struct Binning {
  std::vector<double> edges_kev;

  static Binning log(double lo_kev, double hi_kev, std::size_t n_bins) {
    if (lo_kev <= 0.0 || hi_kev <= lo_kev || n_bins == 0)
      throw std::invalid_argument("bad log binning");
    Binning b;
    b.edges_kev.reserve(n_bins + 1);
    double step = std::log(hi_kev / lo_kev) / static_cast<double>(n_bins);
    for (std::size_t i = 0; i <= n_bins; ++i)
      b.edges_kev.push_back(lo_kev * std::exp(step * static_cast<double>(i)));
    return b;
  }

  static Binning linear(double lo_kev, double hi_kev, std::size_t n_bins) {
    if (hi_kev <= lo_kev || n_bins == 0) throw std::invalid_argument("bad linear binning");
    Binning b;
    for (std::size_t i = 0; i <= n_bins; ++i)
      b.edges_kev.push_back(lo_kev + (hi_kev - lo_kev) * static_cast<double>(i) /
                                         static_cast<double>(n_bins));
    return b;
  }

  std::size_t n_bins() const { return edges_kev.size() - 1; }

  // index of the bin containing e, or npos if outside
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(double e_kev) const {
    if (e_kev < edges_kev.front() || e_kev >= edges_kev.back()) return npos;
    auto it = std::upper_bound(edges_kev.begin(), edges_kev.end(), e_kev);
    return static_cast<std::size_t>(it - edges_kev.begin()) - 1;
  }

  bool operator==(const Binning& other) const { return edges_kev == other.edges_kev; }
};

// Weighted histogram over a Binning; underflow is folded into bin 0 only when
// requested by the caller, overflow is tallied separately.
struct Histogram {
  Binning binning;
  std::vector<double> counts;
  double overflow = 0.0;
  double underflow = 0.0;

  explicit Histogram(Binning b) : binning(std::move(b)), counts(binning.n_bins(), 0.0) {}

  void fill(double e_kev, double weight = 1.0) {
    auto i = binning.find(e_kev);
    if (i == Binning::npos) {
      (e_kev < binning.edges_kev.front() ? underflow : overflow) += weight;
      return;
    }
    counts[i] += weight;
  }

  double total() const {
    double s = underflow + overflow;
    for (double c : counts) s += c;
    return s;
  }
};

}  // namespace radbkg
