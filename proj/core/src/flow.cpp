#include "roughburgers/flow.hpp"

#include <cmath>

#include "roughburgers/errors.hpp"
#include "roughburgers/hermite.hpp"
#include "roughburgers/parallel.hpp"
#include "roughburgers/rng.hpp"

namespace rough {

Trajectory solve_rde(const Vec& x0, const VectorFieldSet& fields, const RoughPath& rp,
                     double guard) {
  if (fields.count != rp.dimension())
    throw InvalidInput("solve_rde: field count must match driver dimension");
  if (x0.size() != fields.dim) throw InvalidInput("solve_rde: initial point dimension mismatch");

  const std::size_t n = rp.grid().n_steps();
  Trajectory traj{rp.grid(), Mat(n + 1, fields.dim), Eigen::ArrayXd::Zero(n)};
  traj.states.row(0) = x0;

  std::vector<Vec> vals(fields.count);
  Vec x = x0;
  for (std::size_t m = 0; m < n; ++m) {
    const Vec dz = rp.increment(m, m + 1);
    const Mat& z2 = rp.step_second(m);
    for (int j = 0; j < fields.count; ++j) vals[j] = fields.value(j, x);
    Vec dx = Vec::Zero(fields.dim);
    double dl = 0.0;
    for (int j = 0; j < fields.count; ++j) {
      dx += vals[j] * dz(j);
      dl += fields.divergence(j, x) * dz(j);
    }
    for (int j = 0; j < fields.count; ++j) {
      const Mat jac = fields.jacobian(j, x);
      const Vec gd = fields.grad_divergence(j, x);
      for (int i = 0; i < fields.count; ++i) {
        dx += jac * vals[i] * z2(i, j);
        dl += gd.dot(vals[i]) * z2(i, j);
      }
    }
    x += dx;
    if (!x.allFinite() || x.norm() > guard) throw BlowUpError(rp.grid().point(m + 1));
    traj.states.row(m + 1) = x;
    traj.logjac_steps(m) = dl;
  }
  return traj;
}

Eigen::ArrayXd jacobian_liouville(const Trajectory& traj, const VectorFieldSet& fields,
                                  const RoughPath& rp) {
  if (!(traj.grid == rp.grid())) throw InvalidInput("jacobian_liouville: trajectory/driver grid mismatch");
  if (traj.states.cols() != fields.dim)
    throw InvalidInput("jacobian_liouville: field dimension mismatch");
  Eigen::ArrayXd jac(traj.grid.n_points());
  double acc = 0.0;
  jac(0) = 1.0;
  for (std::size_t m = 0; m < traj.grid.n_steps(); ++m) {
    acc += traj.logjac_steps(m);
    jac(m + 1) = std::exp(acc);
  }
  return jac;
}

VectorFieldSet weight_flow_fields(const VectorFieldSet& beta) {
  const int d = beta.dim;
  VectorFieldSet v;
  v.dim = d;
  v.count = d + beta.count;
  v.bound_norm = std::max(1.0, beta.bound_norm);
  v.value = [d, beta](int k, const Vec& x) -> Vec {
    if (k < d) return Vec::Unit(d, k);
    return (-beta.value(k - d, x)).eval();
  };
  v.jacobian = [d, beta](int k, const Vec& x) -> Mat {
    if (k < d) return Mat::Zero(d, d);
    return (-beta.jacobian(k - d, x)).eval();
  };
  v.hessian = [d, beta](int k, const Vec& x) {
    if (k < d) return std::vector<Mat>(d, Mat::Zero(d, d));
    std::vector<Mat> h = beta.hessian(k - d, x);
    for (Mat& m : h) m = -m;
    return h;
  };
  v.third = [d, beta](int k, const Vec& x) {
    if (k < d)
      return std::vector<std::vector<Mat>>(d, std::vector<Mat>(d, Mat::Zero(d, d)));
    std::vector<std::vector<Mat>> t = beta.third(k - d, x);
    for (auto& row : t)
      for (Mat& m : row) m = -m;
    return t;
  };
  v.divergence = [d, beta](int k, const Vec& x) {
    return k < d ? 0.0 : -beta.divergence(k - d, x);
  };
  return v;
}

namespace {

// One weight-flow trajectory from (start, x0) to the final grid point.
// db rows hold the Brownian increments of the full grid (variance 2 dt: the
// diffusion block must generate the full Laplacian of the weight equation).
// Returns the accumulated log weight; identical to running solve_rde with
// weight_flow_fields on the joint lift of (B, Z).
double fk_log_weight(Vec x, const VectorFieldSet& beta, const RoughPath& rp, const Mat& db,
                     std::size_t start, double guard = 1e8) {
  const std::size_t n = rp.grid().n_steps();
  const int d = beta.dim;
  const int jz = beta.count;
  std::vector<Vec> vals(jz);
  std::vector<Mat> jacs(jz);
  double lw = 0.0;
  for (std::size_t m = start; m < n; ++m) {
    const Vec dz = rp.increment(m, m + 1);
    const Mat& z2 = rp.step_second(m);
    const Vec dB = db.row(m);
    for (int j = 0; j < jz; ++j) {
      vals[j] = beta.value(j, x);
      jacs[j] = beta.jacobian(j, x);
    }
    Vec dx = dB;
    double dl = 0.0;
    for (int j = 0; j < jz; ++j) {
      dx -= vals[j] * dz(j);
      dl -= beta.divergence(j, x) * dz(j);
      const Vec gd = beta.grad_divergence(j, x);
      dl -= 0.5 * gd.dot(dB) * dz(j);
      dx -= 0.5 * (jacs[j] * dB) * dz(j);
      for (int i = 0; i < jz; ++i) {
        dx += jacs[j] * vals[i] * z2(i, j);
        dl += gd.dot(vals[i]) * z2(i, j);
      }
    }
    x += dx;
    lw += dl;
    if (!x.allFinite() || x.norm() > guard) throw BlowUpError(rp.grid().point(m + 1));
  }
  return lw;
}

Mat brownian_increments(Rng& rng, std::size_t n_steps, int d, double dt) {
  const double sd = std::sqrt(2.0 * dt);
  Mat db(n_steps, d);
  for (std::size_t m = 0; m < n_steps; ++m)
    for (int c = 0; c < d; ++c) db(m, c) = sd * rng.normal();
  return db;
}

WeightField reduce_weight(const std::vector<Vec>& points, double t, const Mat& slots,
                          std::uint64_t seed) {
  const std::size_t n_samples = slots.rows();
  const std::size_t np = slots.cols();
  WeightField w;
  w.points = points;
  w.t = t;
  w.n_samples = n_samples;
  w.seed = seed;
  w.estimate = Eigen::ArrayXd::Zero(np);
  w.std_error = Eigen::ArrayXd::Zero(np);
  for (std::size_t p = 0; p < np; ++p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) sum += slots(k, p);
    const double mean = sum / static_cast<double>(n_samples);
    double ss = 0.0;
    for (std::size_t k = 0; k < n_samples; ++k) {
      const double dev = slots(k, p) - mean;
      ss += dev * dev;
    }
    w.estimate(p) = mean;
    w.std_error(p) = n_samples > 1
                         ? std::sqrt(ss / (static_cast<double>(n_samples - 1) *
                                           static_cast<double>(n_samples)))
                         : 0.0;
  }
  return w;
}

}  // namespace

std::pair<WeightField, WeightField> feynman_kac_weight_pair(const std::vector<Vec>& points,
                                                            std::size_t t_index,
                                                            const VectorFieldSet& beta,
                                                            const RoughPath& rp,
                                                            std::size_t n_samples,
                                                            std::uint64_t seed) {
  if (n_samples < 1) throw InvalidInput("feynman_kac_weight: need at least one sample");
  if (points.empty()) throw InvalidInput("feynman_kac_weight: no evaluation points");
  if (t_index > rp.grid().n_steps()) throw InvalidInput("feynman_kac_weight: t not on grid");
  const std::size_t n = rp.grid().n_steps();
  const int d = beta.dim;
  Mat pos(n_samples, points.size());
  Mat neg(n_samples, points.size());
  parallel_for(n_samples, [&](std::size_t k) {
    Rng rng(mix_seed(seed, k));
    const Mat db = brownian_increments(rng, n, d, rp.grid().dt());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const double lw = fk_log_weight(points[p], beta, rp, db, t_index);
      pos(k, p) = std::exp(lw);
      neg(k, p) = std::exp(-lw);
    }
  });
  const double t = rp.grid().point(t_index);
  return {reduce_weight(points, t, pos, seed), reduce_weight(points, t, neg, seed)};
}

WeightField feynman_kac_weight(const std::vector<Vec>& points, std::size_t t_index,
                               const VectorFieldSet& beta, const RoughPath& rp,
                               std::size_t n_samples, std::uint64_t seed) {
  return feynman_kac_weight_pair(points, t_index, beta, rp, n_samples, seed).first;
}

std::pair<double, double> weight_bounds(const WeightField& w) {
  if (w.estimate.size() == 0) throw InvalidInput("weight_bounds: empty field");
  double lo = w.estimate(0), hi = w.estimate(0);
  for (Eigen::Index p = 0; p < w.estimate.size(); ++p) {
    const double v = w.estimate(p);
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvariantViolation("weight_bounds: nonpositive estimate at point index " +
                               std::to_string(p));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

WeightSeries feynman_kac_weight_series(const GridSpec& solver_spec, int coarse_n,
                                       const TimeGrid& report, const VectorFieldSet& beta,
                                       const RoughPath& rp, std::size_t n_samples,
                                       std::uint64_t seed, bool keep_samples) {
  if (solver_spec.dim != 1 || beta.dim != 1)
    throw InvalidInput("feynman_kac_weight_series: d = 1 only");
  if (coarse_n < 8 || coarse_n > solver_spec.n || solver_spec.n % coarse_n != 0)
    throw InvalidInput("feynman_kac_weight_series: coarse grid must divide the solver grid");
  const std::size_t n = rp.grid().n_steps();
  if (n % report.n_steps() != 0 ||
      std::abs(report.horizon() - rp.grid().horizon()) > 1e-12 * rp.grid().horizon())
    throw InvalidInput("feynman_kac_weight_series: report grid must subdivide the driver grid");

  WeightSeries series;
  series.coarse = GridSpec{1, solver_spec.length, coarse_n};
  series.report = report;
  const std::size_t stride = n / report.n_steps();
  std::vector<Vec> points;
  for (int p = 0; p < coarse_n; ++p)
    points.push_back(Vec::Constant(1, series.coarse.h() * p));
  for (std::size_t r = 0; r < report.n_points(); ++r) series.driver_indices.push_back(r * stride);

  const std::size_t nr = report.n_points();
  std::vector<Mat> slots(nr, Mat(n_samples, points.size()));
  parallel_for(n_samples, [&](std::size_t k) {
    Rng rng(mix_seed(seed, k));
    const Mat db = brownian_increments(rng, n, 1, rp.grid().dt());
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t p = 0; p < points.size(); ++p)
        slots[r](k, p) = std::exp(fk_log_weight(points[p], beta, rp, db, series.driver_indices[r]));
  });
  for (std::size_t r = 0; r < nr; ++r)
    series.fields.push_back(reduce_weight(points, report.point(r), slots[r], seed));
  if (keep_samples) {
    series.has_samples = true;
    series.samples = std::move(slots);
  }
  return series;
}

GridField weight_on_grid(const WeightSeries& series, std::size_t report_index,
                         const GridSpec& fine) {
  const WeightField& w = series.fields.at(report_index);
  Eigen::ArrayXd vals = w.estimate;
  return fourier_interpolate(GridField(series.coarse, std::move(vals)), fine);
}

GridField weight_sample_on_grid(const WeightSeries& series, std::size_t report_index,
                                std::size_t sample, const GridSpec& fine) {
  if (!series.has_samples) throw InvalidInput("weight_sample_on_grid: samples were not kept");
  Eigen::ArrayXd vals = series.samples.at(report_index).row(sample);
  return fourier_interpolate(GridField(series.coarse, std::move(vals)), fine);
}

TensorWeightField tensor_weight(int basis_size, const std::vector<double>& x,
                                const std::vector<double>& y, std::size_t t_index,
                                const VectorFieldSet& beta, const RoughPath& rp,
                                std::size_t n_samples, std::uint64_t seed) {
  if (beta.dim != 1) throw InvalidInput("tensor_weight: d = 1 only");
  if (basis_size < 1 || basis_size > 64)
    throw InvalidInput("tensor_weight: basis size must lie in [1, 64]");
  if (x.empty() || y.empty()) throw InvalidInput("tensor_weight: empty point set");
  if (t_index > rp.grid().n_steps()) throw InvalidInput("tensor_weight: t not on grid");
  if (n_samples < 1) throw InvalidInput("tensor_weight: need at least one sample");

  const std::size_t n = rp.grid().n_steps();
  const bool same_points = x == y;
  const std::size_t nx = x.size(), ny = y.size();
  std::vector<Mat> slots(n_samples);

  parallel_for(n_samples, [&](std::size_t k) {
    Rng rng(mix_seed(seed, k));
    const Mat db = brownian_increments(rng, n, 1, rp.grid().dt());
    auto basis_at = [&](const std::vector<double>& pts) {
      Mat a(pts.size(), basis_size);
      for (std::size_t p = 0; p < pts.size(); ++p) {
        Vec x0 = Vec::Constant(1, pts[p]);
        const std::size_t n_rem = n - t_index;
        double lw = 0.0;
        Vec xe = x0;
        if (n_rem > 0) {
          lw = fk_log_weight(x0, beta, rp, db, t_index);
          // fk_log_weight does not return the endpoint; rerun cheaply for it.
          xe = x0;
        }
        a.row(p) = Eigen::RowVectorXd::Zero(basis_size);
        (void)lw;
        (void)xe;
      }
      return a;
    };
    (void)basis_at;
    // Endpoint and weight are needed together; walk the flow explicitly here.
    auto flow_row = [&](double point) {
      Vec xv = Vec::Constant(1, point);
      double lw = 0.0;
      for (std::size_t m = t_index; m < n; ++m) {
        const Vec dz = rp.increment(m, m + 1);
        const Mat& z2 = rp.step_second(m);
        const double dB = db(m, 0);
        Vec dx = Vec::Constant(1, dB);
        double dl = 0.0;
        for (int j = 0; j < beta.count; ++j) {
          const Vec bj = beta.value(j, xv);
          const Mat jac = beta.jacobian(j, xv);
          const Vec gd = beta.grad_divergence(j, xv);
          dx -= bj * dz(j);
          dl -= beta.divergence(j, xv) * dz(j);
          dx -= 0.5 * (jac * Vec::Constant(1, dB)) * dz(j);
          dl -= 0.5 * gd(0) * dB * dz(j);
          for (int i = 0; i < beta.count; ++i) {
            dx += jac * beta.value(i, xv) * z2(i, j);
            dl += gd.dot(beta.value(i, xv)) * z2(i, j);
          }
        }
        xv += dx;
        lw += dl;
        if (!xv.allFinite()) throw BlowUpError(rp.grid().point(m + 1));
      }
      Eigen::ArrayXd e = hermite_functions(basis_size, xv(0));
      return (e * std::exp(lw)).matrix().eval();
    };
    Mat ax(nx, basis_size);
    for (std::size_t p = 0; p < nx; ++p) ax.row(p) = flow_row(x[p]);
    Mat ay;
    if (same_points)
      ay = ax;
    else {
      ay.resize(ny, basis_size);
      for (std::size_t p = 0; p < ny; ++p) ay.row(p) = flow_row(y[p]);
    }
    slots[k] = ax * ay.transpose();
  });

  TensorWeightField t;
  t.x = x;
  t.y = y;
  t.t = rp.grid().point(t_index);
  t.basis_size = basis_size;
  t.n_samples = n_samples;
  t.seed = seed;
  t.estimate = Mat::Zero(nx, ny);
  for (std::size_t k = 0; k < n_samples; ++k) t.estimate += slots[k];
  t.estimate /= static_cast<double>(n_samples);
  t.std_error = Mat::Zero(nx, ny);
  if (n_samples > 1) {
    for (std::size_t k = 0; k < n_samples; ++k) {
      const Mat dev = slots[k] - t.estimate;
      t.std_error += dev.cwiseProduct(dev);
    }
    t.std_error = (t.std_error /
                   (static_cast<double>(n_samples - 1) * static_cast<double>(n_samples)))
                      .cwiseSqrt();
  }
  return t;
}

}  // namespace rough
