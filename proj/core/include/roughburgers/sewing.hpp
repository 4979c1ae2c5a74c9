#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "roughburgers/errors.hpp"
#include "roughburgers/rough_path.hpp"
#include "roughburgers/time_grid.hpp"
#include "roughburgers/vector_field.hpp"

namespace rough {

namespace detail {
inline double norm_of(double x) { return std::abs(x); }
inline double norm_of(const Vec& v) { return v.norm(); }
inline double zero_like(double) { return 0.0; }
inline Vec zero_like(const Vec& v) { return Vec::Zero(v.size()); }
}  // namespace detail

/// Two-parameter germ G(s,t) with G(t,t) = 0 and a claimed local order a > 1
/// for the second increment of G. Germs built from grid data (trajectories,
/// rough paths) set grid_only; their evaluator is defined on grid pairs only
/// and refinement stops at the grid mesh.
template <class T>
struct Germ {
  std::function<T(double, double)> eval;
  double order_delta = 0.0;
  std::optional<double> order_g;
  bool grid_only = false;
};

enum class SplitStrategy { Midpoint, Thirds };

template <class T>
struct SewResult {
  std::vector<T> path;        // I at grid points, I_0 = 0
  double remainder_seminorm;  // estimate of [I-natural]_a over dyadic grid pairs
  int levels_used;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  // value ~ intercept * h^slope
  bool exact = false;      // remainder at noise floor on all scales
  int n_scales = 0;
};

namespace detail {

template <class T>
T refine_sum(const std::function<T(double, double)>& g, double s, double t, int depth,
             SplitStrategy strategy) {
  if (depth == 0) return g(s, t);
  const double frac = strategy == SplitStrategy::Midpoint ? 0.5 : 1.0 / 3.0;
  const double mid = s + (t - s) * frac;
  return refine_sum(g, s, mid, depth - 1, strategy) + refine_sum(g, mid, t, depth - 1, strategy);
}

template <class T>
std::vector<T> level_path(const Germ<T>& germ, const TimeGrid& grid, int level,
                          SplitStrategy strategy) {
  const std::size_t n = grid.n_steps();
  std::vector<T> path;
  path.reserve(n + 1);
  T acc = zero_like(germ.eval(grid.point(0), grid.point(1)));
  path.push_back(acc);
  for (std::size_t m = 0; m < n; ++m) {
    acc = acc + refine_sum(germ.eval, grid.point(m), grid.point(m + 1), level, strategy);
    path.push_back(acc);
  }
  return path;
}

/// Dyadic strides of the grid, coarse to fine, h = stride * dt.
inline std::vector<std::size_t> dyadic_strides(std::size_t n_steps) {
  std::vector<std::size_t> strides;
  for (std::size_t s = n_steps / 2; s >= 1; s /= 2) {
    if (n_steps % s == 0) strides.push_back(s);
    if (s == 1) break;
  }
  return strides;
}

template <class T>
double remainder_seminorm(const std::vector<T>& path, const Germ<T>& germ, const TimeGrid& grid,
                          double exponent) {
  double best = 0.0;
  for (std::size_t stride : dyadic_strides(grid.n_steps())) {
    const double h = grid.dt() * static_cast<double>(stride);
    for (std::size_t i = 0; i + stride <= grid.n_steps(); ++i) {
      const T defect =
          path[i + stride] - path[i] - germ.eval(grid.point(i), grid.point(i + stride));
      best = std::max(best, norm_of(defect) / std::pow(h, exponent));
    }
  }
  return best;
}

}  // namespace detail

/// Constructs I from the germ as the limit of compensated Riemann sums.
/// Each grid step is refined independently (level L splits a step into 2^L
/// pieces) and I is the running sum of the per-step limits; additivity makes
/// this an admissible partition sequence. Stops once consecutive levels agree
/// to tol in sup norm, relative to max(1, sup |I|).
template <class T>
SewResult<T> sew(const Germ<T>& germ, const TimeGrid& grid, int max_levels = 12,
                 double tol = 1e-10, SplitStrategy strategy = SplitStrategy::Midpoint) {
  if (!(germ.order_delta > 1.0)) throw InvalidInput("sew: claimed order must exceed 1");
  if (max_levels < 2) throw InvalidInput("sew: max_levels must be at least 2");
  const std::size_t n = grid.n_steps();

  std::vector<T> path = detail::level_path(germ, grid, 0, strategy);
  int levels_used = 0;
  if (!germ.grid_only) {
    double gap_prev = std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int level = 1; level <= max_levels; ++level) {
      std::vector<T> next = detail::level_path(germ, grid, level, strategy);
      double scale = 1.0;
      double diff = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        scale = std::max(scale, detail::norm_of(next[i]));
        diff = std::max(diff, detail::norm_of(next[i] - path[i]));
      }
      path = std::move(next);
      levels_used = level;
      gap_prev = gap;
      gap = diff;
      if (diff <= tol * scale) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw ConvergenceError("sew: compensated sums did not converge", gap_prev, gap);
  }

  SewResult<T> out{std::move(path), 0.0, levels_used};
  out.remainder_seminorm = detail::remainder_seminorm(out.path, germ, grid, germ.order_delta);
  return out;
}

/// Log-log fit of max_s |I_natural_{s,s+h}| against dyadic h. A slope within
/// 0.15 of the claimed order certifies the sewing rate. Remainders at the
/// noise floor on all scales report as an exact germ (slope = +infinity); the
/// two finest scales are dropped when they sit below 1e3 machine epsilons.
///
/// I is taken at a fixed refinement depth chosen from eval_budget rather than
/// from sew's stopping rule: slowly decaying germs (rate 2^{1-a} per level)
/// cannot reach tight tolerances in feasible work, while the fitted slope only
/// needs the per-step limits to be resolved below the coarsest sampled scale.
template <class T>
RateFit verify_sewing_rate(const Germ<T>& germ, const TimeGrid& grid,
                           std::size_t eval_budget = std::size_t{1} << 22) {
  if (!(germ.order_delta > 1.0))
    throw InvalidInput("verify_sewing_rate: claimed order must exceed 1");
  int depth = 0;
  if (!germ.grid_only) {
    while (depth < 26 && (grid.n_steps() << (depth + 1)) <= eval_budget) ++depth;
  }
  const std::vector<T> path = detail::level_path(germ, grid, depth, SplitStrategy::Midpoint);

  double path_scale = 1.0;
  for (const T& v : path) path_scale = std::max(path_scale, detail::norm_of(v));

  std::vector<double> hs, rs;
  for (std::size_t stride : detail::dyadic_strides(grid.n_steps())) {
    const double h = grid.dt() * static_cast<double>(stride);
    double worst = 0.0;
    for (std::size_t i = 0; i + stride <= grid.n_steps(); ++i) {
      const T defect =
          path[i + stride] - path[i] - germ.eval(grid.point(i), grid.point(i + stride));
      worst = std::max(worst, detail::norm_of(defect));
    }
    hs.push_back(h);
    rs.push_back(worst);
  }

  const double eps = std::numeric_limits<double>::epsilon();
  RateFit fit;
  bool any_live = false;
  for (double r : rs)
    if (r > 10.0 * eps * path_scale) any_live = true;
  if (!any_live) {
    fit.exact = true;
    fit.slope = std::numeric_limits<double>::infinity();
    return fit;
  }

  // hs runs coarse-to-fine; drop trailing (finest) scales stuck at the floor.
  std::size_t last = rs.size();
  while (last > 2 && rs[last - 1] < 1e3 * eps * path_scale) --last;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < last; ++i) {
    if (rs[i] <= 0.0) continue;
    const double x = std::log(hs[i]);
    const double y = std::log(rs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) throw InvalidInput("verify_sewing_rate: not enough usable scales");
  const double denom = used * sxx - sx * sx;
  fit.slope = (used * sxy - sx * sy) / denom;
  fit.intercept = std::exp((sy - fit.slope * sx) / used);
  fit.n_scales = static_cast<int>(used);
  return fit;
}

/// max |G(s, s+h)| / h^b over dyadic grid pairs.
template <class T>
double germ_seminorm(const Germ<T>& germ, const TimeGrid& grid, double exponent) {
  double best = 0.0;
  for (std::size_t stride : detail::dyadic_strides(grid.n_steps())) {
    const double h = grid.dt() * static_cast<double>(stride);
    for (std::size_t i = 0; i + stride <= grid.n_steps(); ++i)
      best = std::max(best, detail::norm_of(germ.eval(grid.point(i), grid.point(i + stride))) /
                                std::pow(h, exponent));
  }
  return best;
}

/// max |dG_{s theta t}| / (t-s)^a over dyadic grid pairs split at midpoints.
template <class T>
double germ_delta_seminorm(const Germ<T>& germ, const TimeGrid& grid, double exponent) {
  double best = 0.0;
  for (std::size_t stride : detail::dyadic_strides(grid.n_steps())) {
    if (stride < 2) continue;
    const double h = grid.dt() * static_cast<double>(stride);
    for (std::size_t i = 0; i + stride <= grid.n_steps(); ++i) {
      const double s = grid.point(i);
      const double t = grid.point(i + stride);
      const double mid = grid.point(i + stride / 2);
      const T d = germ.eval(s, t) - germ.eval(mid, t) - germ.eval(s, mid);
      best = std::max(best, detail::norm_of(d) / std::pow(h, exponent));
    }
  }
  return best;
}

/// Germ of the rough integral of V along X against the driver:
/// G_{st} = V_j(X_s) dZ^j_{st} + (d_i V_j V_i)(X_s) Z2^{i,j}_{st}.
/// X rows are states on the driver grid; the rough path must outlive the germ.
inline Germ<Vec> controlled_integral_germ(const VectorFieldSet& fields, const Mat& states,
                                          const RoughPath& rp) {
  if (fields.count != rp.dimension())
    throw InvalidInput("controlled_integral_germ: field count must match driver dimension");
  if (static_cast<std::size_t>(states.rows()) != rp.grid().n_points())
    throw InvalidInput("controlled_integral_germ: trajectory/grid size mismatch");
  const RoughPath* path = &rp;
  const VectorFieldSet v = fields;
  const Mat x = states;
  Germ<Vec> germ;
  germ.order_delta = std::min(3.0 * rp.alpha(), 2.0);
  germ.grid_only = true;
  germ.eval = [path, v, x](double s, double t) -> Vec {
    const std::size_t i = path->grid().index_of(s);
    const std::size_t k = path->grid().index_of(t);
    const Vec xs = x.row(i);
    const Vec dz = path->increment(i, k);
    const Mat z2 = path->query(i, k);
    Vec out = Vec::Zero(v.dim);
    std::vector<Vec> vals(v.count);
    for (int j = 0; j < v.count; ++j) {
      vals[j] = v.value(j, xs);
      out += vals[j] * dz(j);
    }
    for (int j = 0; j < v.count; ++j) {
      const Mat jac = v.jacobian(j, xs);
      for (int i2 = 0; i2 < v.count; ++i2) out += jac * vals[i2] * z2(i2, j);
    }
    return out;
  };
  return germ;
}

/// Scalar analogue for integrands g_j with gradients dg_j, e.g. div beta_j:
/// G_{st} = g_j(X_s) dZ^j_{st} + (dg_j . V_i)(X_s) Z2^{i,j}_{st}.
inline Germ<double> controlled_scalar_germ(const std::function<double(int, const Vec&)>& g,
                                           const std::function<Vec(int, const Vec&)>& grad_g,
                                           const VectorFieldSet& fields, const Mat& states,
                                           const RoughPath& rp) {
  if (fields.count != rp.dimension())
    throw InvalidInput("controlled_scalar_germ: field count must match driver dimension");
  const RoughPath* path = &rp;
  const VectorFieldSet v = fields;
  const Mat x = states;
  Germ<double> germ;
  germ.order_delta = std::min(3.0 * rp.alpha(), 2.0);
  germ.grid_only = true;
  germ.eval = [path, v, x, g, grad_g](double s, double t) -> double {
    const std::size_t i = path->grid().index_of(s);
    const std::size_t k = path->grid().index_of(t);
    const Vec xs = x.row(i);
    const Vec dz = path->increment(i, k);
    const Mat z2 = path->query(i, k);
    double out = 0.0;
    for (int j = 0; j < v.count; ++j) out += g(j, xs) * dz(j);
    for (int j = 0; j < v.count; ++j) {
      const Vec gr = grad_g(j, xs);
      for (int i2 = 0; i2 < v.count; ++i2) out += gr.dot(v.value(i2, xs)) * z2(i2, j);
    }
    return out;
  };
  return germ;
}

}  // namespace rough
