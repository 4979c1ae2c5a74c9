#pragma once

#include <cmath>
#include <cstddef>

#include "roughburgers/errors.hpp"

namespace rough {

/// Uniform grid 0 = t_0 < t_1 < ... < t_{n_steps} = horizon.
class TimeGrid {
 public:
  TimeGrid() = default;
  TimeGrid(double horizon, std::size_t n_steps) : horizon_(horizon), n_steps_(n_steps) {
    if (horizon <= 0.0) throw InvalidInput("TimeGrid: horizon must be positive");
    if (n_steps < 1) throw InvalidInput("TimeGrid: need at least one step");
  }

  double horizon() const { return horizon_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t n_points() const { return n_steps_ + 1; }
  double dt() const { return horizon_ / static_cast<double>(n_steps_); }
  double point(std::size_t i) const { return horizon_ * static_cast<double>(i) / static_cast<double>(n_steps_); }

  /// Index of a grid time; off-grid times are rejected, not interpolated.
  std::size_t index_of(double t) const {
    const double x = t / dt();
    const double r = std::round(x);
    if (r < 0.0 || r > static_cast<double>(n_steps_) || std::abs(x - r) > 1e-9 * (1.0 + std::abs(x)))
      throw InvalidInput("TimeGrid: time is not a grid point");
    return static_cast<std::size_t>(r);
  }

  bool operator==(const TimeGrid& o) const {
    return n_steps_ == o.n_steps_ && horizon_ == o.horizon_;
  }

 private:
  double horizon_ = 1.0;
  std::size_t n_steps_ = 1;
};

}  // namespace rough
