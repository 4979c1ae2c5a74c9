#include "roughburgers/rough_path.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "roughburgers/errors.hpp"
#include "roughburgers/rng.hpp"

namespace rough {

RoughPath::RoughPath(double alpha, TimeGrid grid, Mat first_level, std::vector<Mat> step_second,
                     bool geometric)
    : alpha_(alpha), grid_(grid), first_level_(std::move(first_level)),
      step_second_(std::move(step_second)), geometric_(geometric) {
  if (!(alpha > 1.0 / 3.0 && alpha <= 0.5))
    throw InvalidInput("RoughPath: alpha must lie in (1/3, 1/2]");
  if (static_cast<std::size_t>(first_level_.rows()) != grid_.n_points())
    throw InvalidInput("RoughPath: first level size does not match grid");
  if (step_second_.size() != grid_.n_steps())
    throw InvalidInput("RoughPath: one step block per grid step required");
  const int j = dimension();
  for (const Mat& m : step_second_)
    if (m.rows() != j || m.cols() != j)
      throw InvalidInput("RoughPath: step block dimension mismatch");
}

Vec RoughPath::increment(std::size_t i, std::size_t k) const {
  if (i > k || k >= grid_.n_points()) throw InvalidInput("RoughPath: bad increment indices");
  return first_level_.row(k) - first_level_.row(i);
}

Mat RoughPath::query(std::size_t i, std::size_t k) const {
  if (i > k || k >= grid_.n_points()) throw InvalidInput("RoughPath: bad query indices");
  const int j = dimension();
  Mat acc = Mat::Zero(j, j);
  Vec run = Vec::Zero(j);  // dZ_{t_i, t_m}
  for (std::size_t m = i; m < k; ++m) {
    const Vec step = first_level_.row(m + 1) - first_level_.row(m);
    acc += step_second_[m] + run * step.transpose();
    run += step;
  }
  return acc;
}

Mat RoughPath::query_times(double s, double t) const {
  return query(grid_.index_of(s), grid_.index_of(t));
}

Mat RoughPath::chen_defect(std::size_t i, std::size_t m, std::size_t k) const {
  if (!(i <= m && m <= k)) throw InvalidInput("chen_defect: need s <= theta <= t");
  const Vec left = increment(i, m);
  const Vec right = increment(m, k);
  return query(i, k) - query(m, k) - query(i, m) - left * right.transpose();
}

Mat RoughPath::chen_defect_times(double s, double theta, double t) const {
  return chen_defect(grid_.index_of(s), grid_.index_of(theta), grid_.index_of(t));
}

double RoughPath::first_level_seminorm(double exponent, double window) const {
  if (exponent <= 0.0 || window <= 0.0) throw InvalidInput("seminorm: bad exponent or window");
  const std::size_t n = grid_.n_points();
  double best = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      const double gap = grid_.point(k) - grid_.point(i);
      if (gap > window * (1.0 + 1e-12)) continue;
      best = std::max(best, increment(i, k).norm() / std::pow(gap, exponent));
    }
  }
  return best;
}

double RoughPath::second_level_seminorm(double exponent, double window) const {
  if (exponent <= 0.0 || window <= 0.0) throw InvalidInput("seminorm: bad exponent or window");
  const std::size_t n = grid_.n_points();
  const int j = dimension();
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Mat acc = Mat::Zero(j, j);
    Vec run = Vec::Zero(j);
    for (std::size_t k = i + 1; k < n; ++k) {
      const Vec step = first_level_.row(k) - first_level_.row(k - 1);
      acc += step_second_[k - 1] + run * step.transpose();
      run += step;
      const double gap = grid_.point(k) - grid_.point(i);
      if (gap > window * (1.0 + 1e-12)) break;
      best = std::max(best, acc.norm() / std::pow(gap, exponent));
    }
  }
  return best;
}

namespace {

void put17(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

bool geometric_from_data(const Mat& first, const std::vector<Mat>& steps) {
  for (std::size_t m = 0; m < steps.size(); ++m) {
    const Vec d = first.row(m + 1) - first.row(m);
    const Mat sym = 0.5 * (steps[m] + steps[m].transpose());
    const Mat target = 0.5 * d * d.transpose();
    const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
    if ((sym - target).cwiseAbs().maxCoeff() > 1e-10 * scale) return false;
  }
  return true;
}

}  // namespace

void RoughPath::write_text(std::ostream& os) const {
  const int j = dimension();
  os << j << ' ' << grid_.n_steps() << ' ';
  put17(os, grid_.horizon());
  os << ' ';
  put17(os, alpha_);
  os << '\n';
  for (std::size_t i = 0; i < grid_.n_points(); ++i) {
    put17(os, grid_.point(i));
    for (int c = 0; c < j; ++c) {
      os << ' ';
      put17(os, first_level_(i, c));
    }
    for (int r = 0; r < j; ++r)
      for (int c = 0; c < j; ++c) {
        os << ' ';
        put17(os, i < grid_.n_steps() ? step_second_[i](r, c) : 0.0);
      }
    os << '\n';
  }
}

RoughPath RoughPath::read_text(std::istream& is) {
  int j = 0;
  std::size_t n_steps = 0;
  double horizon = 0.0, alpha = 0.0;
  if (!(is >> j >> n_steps >> horizon >> alpha))
    throw InvalidInput("RoughPath::read_text: bad header");
  TimeGrid grid(horizon, n_steps);
  Mat first(n_steps + 1, j);
  std::vector<Mat> steps(n_steps, Mat::Zero(j, j));
  for (std::size_t i = 0; i <= n_steps; ++i) {
    double t;
    if (!(is >> t)) throw InvalidInput("RoughPath::read_text: truncated row");
    for (int c = 0; c < j; ++c)
      if (!(is >> first(i, c))) throw InvalidInput("RoughPath::read_text: truncated row");
    for (int r = 0; r < j; ++r)
      for (int c = 0; c < j; ++c) {
        double v;
        if (!(is >> v)) throw InvalidInput("RoughPath::read_text: truncated row");
        if (i < n_steps) steps[i](r, c) = v;
      }
  }
  const bool geo = geometric_from_data(first, steps);
  return RoughPath(alpha, grid, std::move(first), std::move(steps), geo);
}

RoughPath lift_piecewise_linear(const Mat& samples, const TimeGrid& grid, double alpha) {
  if (samples.rows() < 2) throw InvalidInput("lift_piecewise_linear: need at least 2 samples");
  if (static_cast<std::size_t>(samples.rows()) != grid.n_points())
    throw InvalidInput("lift_piecewise_linear: samples/grid size mismatch");
  const std::size_t n = grid.n_steps();
  std::vector<Mat> steps(n);
  for (std::size_t m = 0; m < n; ++m) {
    const Vec d = samples.row(m + 1) - samples.row(m);
    steps[m] = 0.5 * d * d.transpose();
  }
  return RoughPath(alpha, grid, samples, std::move(steps), /*geometric=*/true);
}

RoughPath lift_brownian(std::uint64_t seed, std::size_t n_steps, double horizon, int dimension,
                        LiftConvention convention, double alpha) {
  if (n_steps < 2) throw InvalidInput("lift_brownian: need n_steps >= 2");
  if (dimension < 1) throw InvalidInput("lift_brownian: dimension must be positive");
  TimeGrid grid(horizon, n_steps);
  const double sd = std::sqrt(grid.dt());
  Rng rng(seed);
  Mat samples(n_steps + 1, dimension);
  samples.row(0).setZero();
  for (std::size_t i = 0; i < n_steps; ++i)
    for (int c = 0; c < dimension; ++c)
      samples(i + 1, c) = samples(i, c) + sd * rng.normal();
  RoughPath strat = lift_piecewise_linear(samples, grid, alpha);
  if (convention == LiftConvention::Stratonovich) return strat;
  std::vector<Mat> steps(n_steps);
  const Mat corr = 0.5 * grid.dt() * Mat::Identity(dimension, dimension);
  for (std::size_t m = 0; m < n_steps; ++m) steps[m] = strat.step_second(m) - corr;
  return RoughPath(alpha, grid, samples, std::move(steps), /*geometric=*/false);
}

RoughPath joint_lift(const RoughPath& brownian, const RoughPath& z, std::uint64_t /*cross_seed*/) {
  if (!(brownian.grid() == z.grid()))
    throw InvalidInput("joint_lift: inputs must share the same time grid");
  const int bi = brownian.dimension();
  const int zj = z.dimension();
  const std::size_t n = z.grid().n_steps();
  Mat first(n + 1, bi + zj);
  for (std::size_t i = 0; i <= n; ++i) {
    first.row(i).head(bi) = brownian.value(i);
    first.row(i).tail(zj) = z.value(i);
  }
  std::vector<Mat> steps(n, Mat::Zero(bi + zj, bi + zj));
  for (std::size_t m = 0; m < n; ++m) {
    const Vec db = brownian.increment(m, m + 1);
    const Vec dz = z.increment(m, m + 1);
    steps[m].topLeftCorner(bi, bi) = brownian.step_second(m);
    steps[m].bottomRightCorner(zj, zj) = z.step_second(m);
    steps[m].topRightCorner(bi, zj) = 0.5 * db * dz.transpose();
    steps[m].bottomLeftCorner(zj, bi) = 0.5 * dz * db.transpose();
  }
  return RoughPath(z.alpha(), z.grid(), std::move(first), std::move(steps),
                   brownian.geometric() && z.geometric());
}

RoughPath subsample(const RoughPath& rp, std::size_t stride) {
  if (stride < 1 || rp.grid().n_steps() % stride != 0)
    throw InvalidInput("subsample: stride must divide n_steps");
  const std::size_t n = rp.grid().n_steps() / stride;
  TimeGrid grid(rp.grid().horizon(), n);
  Mat first(n + 1, rp.dimension());
  for (std::size_t i = 0; i <= n; ++i) first.row(i) = rp.value(i * stride);
  std::vector<Mat> steps(n);
  for (std::size_t m = 0; m < n; ++m) steps[m] = rp.query(m * stride, (m + 1) * stride);
  return RoughPath(rp.alpha(), grid, std::move(first), std::move(steps), rp.geometric());
}

RoughPath sub_path(const RoughPath& rp, std::size_t i0, std::size_t i1) {
  if (!(i0 < i1) || i1 >= rp.grid().n_points()) throw InvalidInput("sub_path: bad index range");
  const std::size_t n = i1 - i0;
  TimeGrid grid(rp.grid().point(i1) - rp.grid().point(i0), n);
  Mat first(n + 1, rp.dimension());
  std::vector<Mat> steps(n);
  for (std::size_t i = 0; i <= n; ++i) first.row(i) = rp.value(i0 + i);
  for (std::size_t m = 0; m < n; ++m) steps[m] = rp.step_second(i0 + m);
  return RoughPath(rp.alpha(), grid, std::move(first), std::move(steps), rp.geometric());
}

}  // namespace rough
