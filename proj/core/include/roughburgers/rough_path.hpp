#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "roughburgers/time_grid.hpp"

namespace rough {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class LiftConvention { Stratonovich, Ito };

/// A path Z together with its level-2 enhancement on a uniform time grid.
///
/// The second level is stored per elementary step only; arbitrary grid pairs
/// are assembled through Chen's relation, so composed queries satisfy it
/// exactly (up to roundoff) and memory stays O(n_steps). Off-grid times are
/// rejected rather than interpolated.
class RoughPath {
 public:
  /// first_level is (n_steps+1) x J; step_second holds n_steps J x J blocks,
  /// block m representing the enhancement over [t_m, t_{m+1}].
  RoughPath(double alpha, TimeGrid grid, Mat first_level, std::vector<Mat> step_second,
            bool geometric);

  double alpha() const { return alpha_; }
  int dimension() const { return static_cast<int>(first_level_.cols()); }
  const TimeGrid& grid() const { return grid_; }
  bool geometric() const { return geometric_; }

  Vec value(std::size_t i) const { return first_level_.row(i); }
  Vec increment(std::size_t i, std::size_t k) const;
  const Mat& step_second(std::size_t m) const { return step_second_[m]; }

  /// Level-2 value over [t_i, t_k] assembled by Chen composition.
  Mat query(std::size_t i, std::size_t k) const;
  Mat query_times(double s, double t) const;

  /// delta Z2_{s theta t} - dZ_{s theta} (x) dZ_{theta t}; zero (to roundoff)
  /// for every lift produced by this module.
  Mat chen_defect(std::size_t i, std::size_t m, std::size_t k) const;
  Mat chen_defect_times(double s, double theta, double t) const;

  /// sup |dZ_{st}| / (t-s)^a over grid pairs with t-s <= window.
  double first_level_seminorm(double exponent, double window) const;
  /// sup |Z2_{st}| / (t-s)^a over grid pairs with t-s <= window.
  double second_level_seminorm(double exponent, double window) const;

  /// Columnar text format: header "J n_steps T alpha", one row per grid point
  /// "t_i Z^1..Z^J z^{11}..z^{JJ}" with 17 significant digits; the z block of
  /// row i is the step enhancement over [t_i, t_{i+1}] (zeros on the last row).
  void write_text(std::ostream& os) const;
  static RoughPath read_text(std::istream& is);

 private:
  double alpha_;
  TimeGrid grid_;
  Mat first_level_;
  std::vector<Mat> step_second_;
  bool geometric_;
};

/// Canonical lift of the piecewise-linear interpolant of the samples:
/// per-step enhancement is the exact iterated integral (1/2) dZ (x) dZ.
RoughPath lift_piecewise_linear(const Mat& samples, const TimeGrid& grid, double alpha = 0.45);

/// Brownian enhancement with Gaussian increments of variance dt per component.
/// Stratonovich is the piecewise-linear lift of the samples; Ito subtracts
/// (dt/2) I from each step block. Bit-identical output for a fixed seed.
RoughPath lift_brownian(std::uint64_t seed, std::size_t n_steps, double horizon, int dimension,
                        LiftConvention convention, double alpha = 0.45);

/// Enhancement of the pair (B, Z) on a shared grid. Per-step cross blocks are
/// the canonical piecewise-linear ones, (1/2) dB (x) dZ; Chen composition then
/// reproduces trapezoid sums of the cross integrals on coarser pairs.
/// cross_seed is recorded nowhere and exists so scenario manifests can pin a
/// cross-enhancement convention; the canonical construction ignores it.
RoughPath joint_lift(const RoughPath& brownian, const RoughPath& z, std::uint64_t cross_seed);

/// Coarse view with every stride-th sample; step blocks are exact fine-grid
/// queries, so coarse Chen queries agree with fine ones to roundoff.
RoughPath subsample(const RoughPath& rp, std::size_t stride);

/// Restriction to [t_{i0}, t_{i1}], time shifted to start at zero.
RoughPath sub_path(const RoughPath& rp, std::size_t i0, std::size_t i1);

}  // namespace rough
