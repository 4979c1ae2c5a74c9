#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "roughburgers/errors.hpp"
#include "roughburgers/time_grid.hpp"

namespace rough {

/// Two-parameter quantity g_{t_i t_j} stored for all grid pairs i <= j.
/// The diagonal is identically zero by construction.
template <class T>
class TwoParamField {
 public:
  TwoParamField(TimeGrid grid, T zero)
      : grid_(grid), zero_(zero),
        values_(grid.n_points() * (grid.n_points() + 1) / 2, zero) {}

  const TimeGrid& grid() const { return grid_; }

  const T& value(std::size_t i, std::size_t j) const { return values_[index(i, j)]; }

  void set(std::size_t i, std::size_t j, T v) {
    if (i == j) throw InvalidInput("TwoParamField: diagonal is fixed to zero");
    values_[index(i, j)] = std::move(v);
  }

  /// delta g_{s theta t} = g_{st} - g_{theta t} - g_{s theta}.
  T second_increment(std::size_t i, std::size_t m, std::size_t j) const {
    if (!(i <= m && m <= j)) throw InvalidInput("second_increment: need s <= theta <= t");
    return value(i, j) - value(m, j) - value(i, m);
  }

  /// Populate from an evaluator over grid index pairs.
  static TwoParamField from_evaluator(const TimeGrid& grid, T zero,
                                      const std::function<T(std::size_t, std::size_t)>& eval) {
    TwoParamField g(grid, zero);
    for (std::size_t j = 0; j < grid.n_points(); ++j)
      for (std::size_t i = 0; i < j; ++i) g.set(i, j, eval(i, j));
    return g;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j || j >= grid_.n_points()) throw InvalidInput("TwoParamField: index out of range");
    return j * (j + 1) / 2 + i;
  }

  TimeGrid grid_;
  T zero_;
  std::vector<T> values_;
};

/// Hoelder seminorm sup_{0 < t-s <= window} |g_{st}| / (t-s)^a of a
/// two-parameter field, with |.| supplied by the caller.
template <class T, class Norm>
double hoelder_seminorm(const TwoParamField<T>& g, double exponent, double window, Norm&& norm) {
  if (exponent <= 0.0) throw InvalidInput("hoelder_seminorm: exponent must be positive");
  if (window <= 0.0 || window > g.grid().horizon() * (1.0 + 1e-12))
    throw InvalidInput("hoelder_seminorm: window must lie in (0, horizon]");
  const std::size_t n = g.grid().n_points();
  double best = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double gap = g.grid().point(j) - g.grid().point(i);
      if (gap > window * (1.0 + 1e-12)) continue;
      best = std::max(best, norm(g.value(i, j)) / std::pow(gap, exponent));
    }
  }
  return best;
}

/// Hoelder seminorm of a one-parameter path, applied to its increments.
inline double hoelder_seminorm(const std::vector<double>& path, const TimeGrid& grid,
                               double exponent, double window) {
  if (path.size() != grid.n_points()) throw InvalidInput("hoelder_seminorm: path/grid size mismatch");
  if (exponent <= 0.0) throw InvalidInput("hoelder_seminorm: exponent must be positive");
  if (window <= 0.0 || window > grid.horizon() * (1.0 + 1e-12))
    throw InvalidInput("hoelder_seminorm: window must lie in (0, horizon]");
  double best = 0.0;
  for (std::size_t j = 1; j < path.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double gap = grid.point(j) - grid.point(i);
      if (gap > window * (1.0 + 1e-12)) continue;
      best = std::max(best, std::abs(path[j] - path[i]) / std::pow(gap, exponent));
    }
  }
  return best;
}

}  // namespace rough
