#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace radbkg {

// Log-log interpolation over a strictly increasing grid of positive values.
// Queries outside the grid throw; physics tables must not be extrapolated.
class LogLogTable {
 public:
  LogLogTable() = default;

  LogLogTable(std::vector<double> x, std::vector<double> y, std::string label = {})
      : x_(std::move(x)), y_(std::move(y)), label_(std::move(label)) {
    if (x_.size() != y_.size() || x_.size() < 2)
      throw std::invalid_argument("table '" + label_ + "': need >= 2 points");
    log_x_.reserve(x_.size());
    log_y_.reserve(y_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (x_[i] <= 0.0 || y_[i] <= 0.0)
        throw std::invalid_argument("table '" + label_ + "': nonpositive entry");
      if (i > 0 && x_[i] <= x_[i - 1])
        throw std::invalid_argument("table '" + label_ + "': grid not increasing");
      log_x_.push_back(std::log(x_[i]));
      log_y_.push_back(std::log(y_[i]));
    }
  }

  double operator()(double x) const {
    if (!(x >= x_.front() && x <= x_.back()))
      throw std::domain_error("table '" + label_ + "': " + std::to_string(x) +
                              " outside [" + std::to_string(x_.front()) + ", " +
                              std::to_string(x_.back()) + "]");
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t hi = std::min<std::size_t>(it - x_.begin(), x_.size() - 1);
    if (hi == 0) hi = 1;
    std::size_t lo = hi - 1;
    double t = (std::log(x) - log_x_[lo]) / (log_x_[hi] - log_x_[lo]);
    return std::exp(log_y_[lo] + t * (log_y_[hi] - log_y_[lo]));
  }

  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }
  const std::vector<double>& grid() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, log_x_, log_y_;
  std::string label_;
};

// Several columns sharing one energy grid (one attenuation or stopping file).
class TableSet {
 public:
  TableSet() = default;

  TableSet(std::vector<double> grid, std::vector<std::vector<double>> columns,
           std::vector<std::string> names, const std::string& label) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      tables_.emplace_back(grid, std::move(columns[c]), label + ":" + names[c]);
    names_ = std::move(names);
  }

  const LogLogTable& column(std::size_t i) const { return tables_.at(i); }
  std::size_t n_columns() const { return tables_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& grid() const { return tables_.front().grid(); }
  double min_x() const { return tables_.front().min_x(); }
  double max_x() const { return tables_.front().max_x(); }

 private:
  std::vector<LogLogTable> tables_;
  std::vector<std::string> names_;
};

}  // namespace radbkg
