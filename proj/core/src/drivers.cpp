#include "roughburgers/drivers.hpp"

#include <cmath>
#include <limits>

namespace rough {

DriverPair::DriverPair(const VectorFieldSet& beta, const RoughPath& rp, const GridSpec& spec)
    : spec_(spec), rp_(&rp) {
  spec.validate();
  if (beta.dim != spec.dim) throw InvalidInput("DriverPair: field/grid dimension mismatch");
  if (beta.count != rp.dimension())
    throw InvalidInput("DriverPair: field count must match driver dimension");
  beta_grid_.resize(beta.count);
  for (int j = 0; j < beta.count; ++j) {
    for (int c = 0; c < spec.dim; ++c) {
      Eigen::ArrayXd vals(spec.size());
      for (std::size_t i = 0; i < spec.size(); ++i) {
        Vec x(spec.dim);
        for (int a = 0; a < spec.dim; ++a) x(a) = grid_coordinate(spec, i, a);
        vals(i) = beta.value(j, x)(c);
      }
      beta_grid_[j].push_back(dealias(GridField(spec, std::move(vals))));
    }
  }
}

GridField DriverPair::transport(const GridField& f, int j) const {
  GridField out = GridField::zero(spec_);
  for (int c = 0; c < spec_.dim; ++c) out += beta_grid_[j][c] * derivative(f, c);
  return dealias(out);
}

GridField DriverPair::apply1(const GridField& f, std::size_t i, std::size_t k) const {
  const Vec dz = rp_->increment(i, k);
  GridField out = GridField::zero(spec_);
  for (int j = 0; j < field_count(); ++j) out += dz(j) * transport(f, j);
  return out;
}

GridField DriverPair::apply2(const GridField& f, std::size_t i, std::size_t k) const {
  const Mat z2 = rp_->query(i, k);
  GridField out = GridField::zero(spec_);
  std::vector<GridField> inner;
  inner.reserve(field_count());
  for (int i2 = 0; i2 < field_count(); ++i2) inner.push_back(transport(f, i2));
  for (int j = 0; j < field_count(); ++j)
    for (int i2 = 0; i2 < field_count(); ++i2) out += z2(i2, j) * transport(inner[i2], j);
  return out;
}

DriverPair build_drivers(const VectorFieldSet& beta, const RoughPath& rp, const GridSpec& spec) {
  return DriverPair(beta, rp, spec);
}

DriverNormReport measure_driver_norms(const DriverPair& drivers, int n_probes,
                                      std::uint64_t probe_seed) {
  const RoughPath& rp = drivers.path();
  const GridSpec& spec = drivers.grid_spec();
  std::vector<GridField> probes;
  for (int p = 0; p < n_probes; ++p)
    probes.push_back(random_band_limited(spec, probe_seed + p, spec.n / 6, 1.5));

  DriverNormReport report;
  const std::size_t n = rp.grid().n_steps();
  for (std::size_t stride = n; stride >= 1; stride /= 2) {
    if (n % stride != 0) break;
    const double h = rp.grid().dt() * static_cast<double>(stride);
    double r1 = 0.0, r2 = 0.0;
    for (std::size_t i = 0; i + stride <= n; i += stride) {
      for (const GridField& f : probes) {
        r1 = std::max(r1, sobolev_norm(drivers.apply1(f, i, i + stride), 0.0) / sobolev_norm(f, 1.0));
        r2 = std::max(r2, sobolev_norm(drivers.apply2(f, i, i + stride), 0.0) / sobolev_norm(f, 2.0));
      }
    }
    report.dt.push_back(h);
    report.a1_norm.push_back(r1);
    report.a2_norm.push_back(r2);
    const double alpha = rp.alpha();
    report.a_alpha = std::max({report.a_alpha, r1 / std::pow(h, alpha), r2 / std::pow(h, 2.0 * alpha)});
    if (stride == 1) break;
  }
  return report;
}

RemainderFields extract_remainder(const std::vector<GridField>& u, const std::vector<GridField>& mu,
                                  const TimeGrid& report, const DriverPair& drivers) {
  if (u.size() != report.n_points() || mu.size() != report.n_points())
    throw InvalidInput("extract_remainder: series/grid size mismatch");
  const TimeGrid& fine = drivers.path().grid();
  if (fine.n_steps() % report.n_steps() != 0 ||
      std::abs(fine.horizon() - report.horizon()) > 1e-12 * fine.horizon())
    throw InvalidInput("extract_remainder: report grid must subdivide the driver grid");
  const std::size_t stride = fine.n_steps() / report.n_steps();
  const GridSpec& spec = drivers.grid_spec();
  for (const GridField& f : u)
    if (!(f.spec() == spec)) throw InvalidInput("extract_remainder: field/driver grid mismatch");

  RemainderFields out{TwoParamField<GridField>(report, GridField::zero(spec)),
                      TwoParamField<GridField>(report, GridField::zero(spec))};
  const std::size_t np = report.n_points();
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t k = i + 1; k < np; ++k) {
      GridField du = u[k] - u[i];
      GridField a1 = drivers.apply1(u[i], i * stride, k * stride);
      out.flat.set(i, k, du - a1);
      out.natural.set(i, k,
                      du - (mu[k] - mu[i]) - a1 - drivers.apply2(u[i], i * stride, k * stride));
    }
  }
  return out;
}

namespace {

ExponentFit fit_from_samples(std::vector<double> hs, std::vector<double> vals) {
  ExponentFit fit;
  fit.h = hs;
  fit.value = vals;
  double top = 0.0;
  for (double v : vals) top = std::max(top, v);
  const double eps = std::numeric_limits<double>::epsilon();
  if (top <= 10.0 * eps) {
    fit.exact = true;
    fit.slope = std::numeric_limits<double>::infinity();
    return fit;
  }
  // Drop trailing (finest) scales at the numerical noise floor.
  std::size_t last = vals.size();
  while (last > 2 && vals[last - 1] < 1e3 * eps * top) --last;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (std::size_t i = 0; i < last; ++i) {
    if (vals[i] <= 0.0) continue;
    const double x = std::log(hs[i]);
    const double y = std::log(vals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (used < 2) throw InvalidInput("fit_exponent: not enough usable scales");
  const double denom = used * sxx - sx * sx;
  fit.slope = (used * sxy - sx * sy) / denom;
  fit.intercept = std::exp((sy - fit.slope * sx) / used);
  fit.n_scales = used;
  return fit;
}

template <class T, class Norm>
ExponentFit fit_impl(const TwoParamField<T>& g, double window, Norm&& norm) {
  const TimeGrid& grid = g.grid();
  std::vector<double> hs, vals;
  for (std::size_t stride = grid.n_steps() / 2; stride >= 1; stride /= 2) {
    if (grid.n_steps() % stride != 0) break;
    const double h = grid.dt() * static_cast<double>(stride);
    if (h > window * (1.0 + 1e-12)) continue;
    double worst = 0.0;
    for (std::size_t i = 0; i + stride <= grid.n_steps(); ++i)
      worst = std::max(worst, norm(g.value(i, i + stride)));
    hs.push_back(h);
    vals.push_back(worst);
    if (stride == 1) break;
  }
  if (hs.empty()) throw InvalidInput("fit_exponent: window admits no dyadic scales");
  return fit_from_samples(std::move(hs), std::move(vals));
}

}  // namespace

ExponentFit fit_exponent(const TwoParamField<GridField>& g, double norm_order, double window) {
  return fit_impl(g, window, [norm_order](const GridField& f) { return sobolev_norm(f, norm_order); });
}

ExponentFit fit_exponent(const TwoParamField<double>& g, double window) {
  return fit_impl(g, window, [](double v) { return std::abs(v); });
}

std::vector<GridField> nemytskii_apply(const Nonlinearity& F, const GridField& u) {
  const GridSpec& spec = u.spec();
  if (F.kind == Nonlinearity::Kind::BurgersClassical && spec.dim != 1)
    throw InvalidInput("nemytskii_apply: Burgers flux requires d = 1");
  std::vector<GridField> out;
  for (int c = 0; c < F.dim; ++c) {
    Eigen::ArrayXd vals(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) vals(i) = F.eval(u.values()(i))(c);
    out.push_back(dealias(GridField(spec, std::move(vals))));
  }
  return out;
}

GridField divergence_flux(const Nonlinearity& F, const GridField& u) {
  const std::vector<GridField> flux = nemytskii_apply(F, u);
  GridField out = GridField::zero(u.spec());
  for (int c = 0; c < F.dim; ++c) out += derivative(flux[c], c);
  return out;
}

NemytskiiReport nemytskii_check(const Nonlinearity& F, const GridField& u, const GridField& v) {
  if (!(u.spec() == v.spec())) throw InvalidInput("nemytskii_check: grid mismatch");
  NemytskiiReport report;
  const GridField diff = u - v;
  if (F.kind == Nonlinearity::Kind::BurgersClassical) {
    if (u.spec().dim != 1) throw InvalidInput("nemytskii_check: Burgers case requires d = 1");
    report.lhs = sobolev_norm(divergence_flux(F, u) - divergence_flux(F, v), -2.0);
    report.rhs = sobolev_norm(diff, 0.0) * (sobolev_norm(u, 0.0) + sobolev_norm(v, 0.0));
  } else {
    report.lhs = sobolev_norm(divergence_flux(F, u) - divergence_flux(F, v), -1.0);
    report.rhs = F.lipschitz * sobolev_norm(diff, 0.0);
  }
  report.ratio = report.rhs > 0.0 ? report.lhs / report.rhs : (report.lhs > 0.0 ? 1e30 : 0.0);
  report.pass = report.lhs <= report.rhs * (1.0 + 1e-9) || report.rhs == 0.0;
  return report;
}

}  // namespace rough
