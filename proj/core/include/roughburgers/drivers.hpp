#pragma once

#include <cstdint>
#include <vector>

#include "roughburgers/grid.hpp"
#include "roughburgers/nonlinearity.hpp"
#include "roughburgers/rough_path.hpp"
#include "roughburgers/two_param.hpp"
#include "roughburgers/vector_field.hpp"

namespace rough {

struct DriverNormReport {
  std::vector<double> dt;       //  dyadic |t-s|
  std::vector<double> a1_norm;  //  max |A^1_{st} f|_0 / |f|_1 at that gap
  std::vector<double> a2_norm;  //  max |A^2_{st} f|_0 / |f|_2 at that gap
  double a_alpha = 0.0;         //  measured [A]_alpha over the probe set
};

/// Grid realizations of the unbounded rough drivers
///   A^1_{st} f = beta_j . grad f  dZ^j_{st},
///   A^2_{st} f = beta_j . grad(beta_i . grad f)  Z2^{i,j}_{st},
/// with spectral derivatives and 2/3-dealiased coefficient products. A^2 is
/// applied as the literal composition of two transport sweeps, so the operator
/// Chen relation dA^2_{s theta t} = A^1_{theta t} A^1_{s theta} holds to
/// roundoff on grid triples.
class DriverPair {
 public:
  DriverPair(const VectorFieldSet& beta, const RoughPath& rp, const GridSpec& spec);

  GridField apply1(const GridField& f, std::size_t i, std::size_t k) const;
  GridField apply2(const GridField& f, std::size_t i, std::size_t k) const;
  /// beta_j . grad f, the building block shared by both drivers.
  GridField transport(const GridField& f, int j) const;

  const RoughPath& path() const { return *rp_; }
  const GridSpec& grid_spec() const { return spec_; }
  int field_count() const { return static_cast<int>(beta_grid_.size()); }

 private:
  GridSpec spec_;
  const RoughPath* rp_;
  std::vector<std::vector<GridField>> beta_grid_;  // [j][component], dealiased
};

/// Builds the pair and measures the Hoelder operator-norm scaling
/// |A^i_{st}| <= [A]_alpha |t-s|^{i alpha} on a fixed random probe set.
DriverPair build_drivers(const VectorFieldSet& beta, const RoughPath& rp, const GridSpec& spec);

DriverNormReport measure_driver_norms(const DriverPair& drivers, int n_probes = 5,
                                      std::uint64_t probe_seed = 1234);

struct RemainderFields {
  TwoParamField<GridField> natural;  // u_nat = du - dmu - A^1 u_s - A^2 u_s
  TwoParamField<GridField> flat;     // u_flat = du - A^1 u_s
};

/// Remainders of the expansion on the report grid. u and mu are sampled on
/// `report`, whose steps must subdivide the driver grid evenly.
RemainderFields extract_remainder(const std::vector<GridField>& u, const std::vector<GridField>& mu,
                                  const TimeGrid& report, const DriverPair& drivers);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;  // value ~ intercept * h^slope
  bool exact = false;      // field vanishes at all sampled scales
  int n_scales = 0;
  std::vector<double> h;      // sampled gaps, coarse to fine
  std::vector<double> value;  // max norm at each gap
};

/// Log-log fit of max_s |g_{s,s+h}|_{norm_order} against dyadic h <= window.
ExponentFit fit_exponent(const TwoParamField<GridField>& g, double norm_order, double window);
ExponentFit fit_exponent(const TwoParamField<double>& g, double window);

struct NemytskiiReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

/// Checks the Nemytskii estimate on the pair (u, v):
/// |div F(u) - div F(v)|_{-1} <= |grad F|_inf |u - v|_0 for Lipschitz F, or
/// |d_x(F(u) - F(v))|_{-2} <= |u - v|_0 (|u|_0 + |v|_0) for the Burgers flux.
NemytskiiReport nemytskii_check(const Nonlinearity& F, const GridField& u, const GridField& v);

/// Pointwise composition F_c(u) as grid fields, dealiased.
std::vector<GridField> nemytskii_apply(const Nonlinearity& F, const GridField& u);

/// div F(u) assembled spectrally from nemytskii_apply.
GridField divergence_flux(const Nonlinearity& F, const GridField& u);

}  // namespace rough
