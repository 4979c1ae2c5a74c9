#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "roughburgers/grid.hpp"
#include "roughburgers/rough_path.hpp"
#include "roughburgers/time_grid.hpp"
#include "roughburgers/vector_field.hpp"

namespace rough {

/// Flow of the rough differential equation on the driver grid, one
/// second-order Davie step per grid interval, with the per-step log-Jacobian
/// increments of the rough Liouville formula accumulated alongside.
struct Trajectory {
  TimeGrid grid;
  Mat states;                    // (n_steps+1) x d
  Eigen::ArrayXd logjac_steps;   // n_steps entries
};

/// X_{m+1} = X_m + V_j(X_m) dZ^j + (d_i V_j V_i)(X_m) Z2^{i,j} per grid step.
/// Throws BlowUpError with the first offending time when |X| exceeds guard.
Trajectory solve_rde(const Vec& x0, const VectorFieldSet& fields, const RoughPath& rp,
                     double guard = 1e8);

/// |grad phi_{t,0}| = exp of the sewn integral of div V_j along the
/// trajectory; strictly positive by construction.
Eigen::ArrayXd jacobian_liouville(const Trajectory& traj, const VectorFieldSet& fields,
                                  const RoughPath& rp);

/// Monte Carlo estimate of the Feynman-Kac weight at fixed time, one entry per
/// evaluation point, with per-point standard errors.
struct WeightField {
  std::vector<Vec> points;
  double t = 0.0;
  Eigen::ArrayXd estimate;
  Eigen::ArrayXd std_error;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Combined transport fields of the weight sampler over the joint driver
/// (B, Z): components k < d are the constant unit diffusion directions (the
/// Brownian block enters with generator Laplacian, i.e. variance 2 dt), and
/// components k >= d are -beta_j. The integrand divergences follow the same
/// layout, so the weight exponent is the log-Jacobian of this flow. Exposed
/// so oracle tests can drive the generic solver down the same path.
VectorFieldSet weight_flow_fields(const VectorFieldSet& beta);

/// m_t(x): average over fresh Brownian enhancements of exp of the rough
/// divergence integral along the flow started at (t, x). Deterministic for a
/// fixed seed; reduction order is independent of worker count.
WeightField feynman_kac_weight(const std::vector<Vec>& points, std::size_t t_index,
                               const VectorFieldSet& beta, const RoughPath& rp,
                               std::size_t n_samples, std::uint64_t seed);

/// The weight together with its negated-exponent twin on shared samples
/// (the Cauchy-Schwarz lower-bound pair).
std::pair<WeightField, WeightField> feynman_kac_weight_pair(const std::vector<Vec>& points,
                                                            std::size_t t_index,
                                                            const VectorFieldSet& beta,
                                                            const RoughPath& rp,
                                                            std::size_t n_samples,
                                                            std::uint64_t seed);

/// (inf, sup) of the estimates; throws InvariantViolation naming the first
/// nonpositive entry.
std::pair<double, double> weight_bounds(const WeightField& w);

/// Weight fields at the report times, estimated on a periodic subgrid of the
/// solver torus so one Fourier interpolation serves the full grid. Common
/// random numbers: every (time, point) pair reuses the same per-sample
/// Brownian increments. Optionally keeps per-sample weights for propagating
/// Monte Carlo errors through linear functionals.
struct WeightSeries {
  GridSpec coarse;
  TimeGrid report;
  std::vector<std::size_t> driver_indices;  // report point -> rp grid index
  std::vector<WeightField> fields;
  bool has_samples = false;
  std::vector<Mat> samples;  // per report time: n_samples x n_points
};

WeightSeries feynman_kac_weight_series(const GridSpec& solver_spec, int coarse_n,
                                       const TimeGrid& report, const VectorFieldSet& beta,
                                       const RoughPath& rp, std::size_t n_samples,
                                       std::uint64_t seed, bool keep_samples = false);

/// Weight at report index r interpolated to the requested grid.
GridField weight_on_grid(const WeightSeries& series, std::size_t report_index,
                         const GridSpec& fine);
GridField weight_sample_on_grid(const WeightSeries& series, std::size_t report_index,
                                std::size_t sample, const GridSpec& fine);

/// Monte Carlo estimate of the tensor weight
/// M^N_t(x,y) = E[ sum_{n<N} e_n(phi(x)) e_n(phi(y)) exp{...x...+...y...} ]
/// with Hermite basis functions and flow samples shared across (x, y) pairs.
/// Verification scale: d = 1 and N <= 64 only.
struct TensorWeightField {
  std::vector<double> x;
  std::vector<double> y;
  double t = 0.0;
  int basis_size = 0;
  Mat estimate;
  Mat std_error;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

TensorWeightField tensor_weight(int basis_size, const std::vector<double>& x,
                                const std::vector<double>& y, std::size_t t_index,
                                const VectorFieldSet& beta, const RoughPath& rp,
                                std::size_t n_samples, std::uint64_t seed);

}  // namespace rough
