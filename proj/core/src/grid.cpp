#include "roughburgers/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>

#include "roughburgers/rng.hpp"

namespace rough {

namespace {

// One cached plan per (dim, n, sign), executed under a lock on its own
// buffers. FFT work stays on the solver thread; Monte Carlo threads never
// transform, so the serialization is harmless.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  void transform(const GridSpec& spec, int sign, const std::complex<double>* in,
                 std::complex<double>* out) {
    Entry& e = entry(spec, sign);
    std::lock_guard<std::mutex> lock(e.mutex);
    const std::size_t size = spec.size();
    for (std::size_t i = 0; i < size; ++i)
      reinterpret_cast<std::complex<double>*>(e.in)[i] = in[i];
    fftw_execute(e.plan);
    for (std::size_t i = 0; i < size; ++i)
      out[i] = reinterpret_cast<std::complex<double>*>(e.out)[i];
  }

 private:
  struct Entry {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;
    std::mutex mutex;
  };

  Entry& entry(const GridSpec& spec, int sign) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(spec.dim) << 40) | (static_cast<std::uint64_t>(spec.n) << 8) |
        static_cast<std::uint64_t>(sign == FFTW_FORWARD ? 0 : 1);
    std::lock_guard<std::mutex> lock(map_mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end()) return *it->second;
    auto e = std::make_unique<Entry>();
    const std::size_t size = spec.size();
    e->in = fftw_alloc_complex(size);
    e->out = fftw_alloc_complex(size);
    e->plan = spec.dim == 1
                  ? fftw_plan_dft_1d(spec.n, e->in, e->out, sign, FFTW_ESTIMATE)
                  : fftw_plan_dft_2d(spec.n, spec.n, e->in, e->out, sign, FFTW_ESTIMATE);
    auto [pos, ok] = entries_.emplace(key, std::move(e));
    (void)ok;
    return *pos->second;
  }

  ~PlanCache() {
    for (auto& [k, e] : entries_) {
      fftw_destroy_plan(e->plan);
      fftw_free(e->in);
      fftw_free(e->out);
    }
  }

  std::mutex map_mutex_;
  std::map<std::uint64_t, std::unique_ptr<Entry>> entries_;
};

/// Signed integer frequency of mode index m on an n-point axis.
inline int freq_of(int m, int n) { return m <= n / 2 ? m : m - n; }

/// |k|^2 of the flattened mode index, with wavenumbers 2 pi f / length.
inline double ksq_of(const GridSpec& spec, std::size_t idx) {
  const double base = 2.0 * M_PI / spec.length;
  if (spec.dim == 1) {
    const double k = base * freq_of(static_cast<int>(idx), spec.n);
    return k * k;
  }
  const int mx = static_cast<int>(idx) / spec.n;
  const int my = static_cast<int>(idx) % spec.n;
  const double kx = base * freq_of(mx, spec.n);
  const double ky = base * freq_of(my, spec.n);
  return kx * kx + ky * ky;
}

}  // namespace

double grid_coordinate(const GridSpec& spec, std::size_t index, int axis) {
  if (axis < 0 || axis >= spec.dim) throw InvalidInput("grid_coordinate: bad axis");
  if (spec.dim == 1) return spec.h() * static_cast<double>(index);
  const std::size_t m = axis == 0 ? index / spec.n : index % spec.n;
  return spec.h() * static_cast<double>(m);
}

Eigen::ArrayXcd fft_forward(const GridField& f) {
  const std::size_t size = f.spec().size();
  Eigen::ArrayXcd in(size), out(size);
  for (std::size_t i = 0; i < size; ++i) in(i) = f.values()(i);
  PlanCache::instance().transform(f.spec(), FFTW_FORWARD, in.data(), out.data());
  return out;
}

GridField fft_inverse(const GridSpec& spec, const Eigen::ArrayXcd& spectrum) {
  const std::size_t size = spec.size();
  if (static_cast<std::size_t>(spectrum.size()) != size)
    throw InvalidInput("fft_inverse: spectrum size mismatch");
  Eigen::ArrayXcd out(size);
  PlanCache::instance().transform(spec, FFTW_BACKWARD, spectrum.data(), out.data());
  Eigen::ArrayXd vals(size);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) vals(i) = out(i).real() * scale;
  return GridField(spec, std::move(vals));
}

GridField derivative(const GridField& f, int axis) {
  const GridSpec& spec = f.spec();
  if (axis < 0 || axis >= spec.dim) throw InvalidInput("derivative: bad axis");
  Eigen::ArrayXcd hat = fft_forward(f);
  const double base = 2.0 * M_PI / spec.length;
  const std::complex<double> iu(0.0, 1.0);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(hat.size()); ++idx) {
    int m;
    if (spec.dim == 1)
      m = static_cast<int>(idx);
    else
      m = axis == 0 ? static_cast<int>(idx) / spec.n : static_cast<int>(idx) % spec.n;
    // Nyquist mode carries no usable odd derivative; zero it for a real result.
    const int fq = (m == spec.n / 2) ? 0 : freq_of(m, spec.n);
    hat(idx) *= iu * (base * fq);
  }
  return fft_inverse(spec, hat);
}

GridField laplacian(const GridField& f) {
  const GridSpec& spec = f.spec();
  Eigen::ArrayXcd hat = fft_forward(f);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(hat.size()); ++idx)
    hat(idx) *= -ksq_of(spec, idx);
  return fft_inverse(spec, hat);
}

std::vector<GridField> gradient(const GridField& f) {
  std::vector<GridField> g;
  for (int axis = 0; axis < f.spec().dim; ++axis) g.push_back(derivative(f, axis));
  return g;
}

double sobolev_norm(const GridField& f, double order) {
  const GridSpec& spec = f.spec();
  const Eigen::ArrayXcd hat = fft_forward(f);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(hat.size()); ++idx)
    acc += std::pow(1.0 + ksq_of(spec, idx), order) * std::norm(hat(idx));
  double vol = 1.0;
  for (int d = 0; d < spec.dim; ++d) vol *= spec.length;
  const double n_total = static_cast<double>(spec.size());
  return std::sqrt(acc * vol / (n_total * n_total));
}

double l2_inner(const GridField& f, const GridField& g) {
  if (!(f.spec() == g.spec())) throw InvalidInput("l2_inner: grid mismatch");
  return f.spec().cell_volume() * (f.values() * g.values()).sum();
}

double mass(const GridField& f) { return f.spec().cell_volume() * f.values().sum(); }

double mean(const GridField& f) { return f.values().mean(); }

double linf_norm(const GridField& f) {
  return f.values().size() == 0 ? 0.0 : f.values().abs().maxCoeff();
}

GridField dealias(const GridField& f) {
  const GridSpec& spec = f.spec();
  Eigen::ArrayXcd hat = fft_forward(f);
  const int cut = spec.n / 3;
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(hat.size()); ++idx) {
    bool kill = false;
    if (spec.dim == 1) {
      kill = std::abs(freq_of(static_cast<int>(idx), spec.n)) > cut;
    } else {
      const int mx = static_cast<int>(idx) / spec.n;
      const int my = static_cast<int>(idx) % spec.n;
      kill = std::abs(freq_of(mx, spec.n)) > cut || std::abs(freq_of(my, spec.n)) > cut;
    }
    if (kill) hat(idx) = 0.0;
  }
  return fft_inverse(spec, hat);
}

std::pair<GridField, SmoothingReport> smoothing_apply(const GridField& f, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidInput("smoothing_apply: eta must lie in (0, 1]");
  const GridSpec& spec = f.spec();
  Eigen::ArrayXcd hat = fft_forward(f);
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(hat.size()); ++idx)
    hat(idx) *= std::exp(-0.5 * eta * eta * ksq_of(spec, idx));
  GridField smooth = fft_inverse(spec, hat);

  SmoothingReport report;
  report.eta = eta;
  GridField residual = f - smooth;
  const double f0 = sobolev_norm(f, 0.0);
  report.pass = true;
  for (int k = 0; k <= 2; ++k) {
    const double etak = std::pow(eta, k);
    const double fk = sobolev_norm(f, static_cast<double>(k));
    report.ratio_smooth[k] = f0 > 0.0 ? etak * sobolev_norm(smooth, static_cast<double>(k)) / f0 : 0.0;
    report.ratio_residual[k] = fk > 0.0 ? sobolev_norm(residual, 0.0) / (etak * fk) : 0.0;
    if (report.ratio_smooth[k] > report.constant || report.ratio_residual[k] > report.constant)
      report.pass = false;
  }
  return {std::move(smooth), report};
}

GridField fourier_interpolate(const GridField& coarse, const GridSpec& fine) {
  const GridSpec& cs = coarse.spec();
  fine.validate();
  if (cs.dim != fine.dim || cs.length != fine.length || fine.n < cs.n)
    throw InvalidInput("fourier_interpolate: incompatible grids");
  if (fine.n == cs.n) return coarse;
  const Eigen::ArrayXcd chat = fft_forward(coarse);
  Eigen::ArrayXcd fhat = Eigen::ArrayXcd::Zero(fine.size());
  const double scale = static_cast<double>(fine.size()) / static_cast<double>(cs.size());

  auto place = [&](int fx, int fy, std::complex<double> v) {
    const int mx = fx >= 0 ? fx : fx + fine.n;
    if (fine.dim == 1) {
      fhat(mx) += v * scale;
    } else {
      const int my = fy >= 0 ? fy : fy + fine.n;
      fhat(static_cast<std::size_t>(mx) * fine.n + my) += v * scale;
    }
  };

  auto spread = [&](int f, std::complex<double> v, auto&& emit) {
    // Coarse Nyquist coefficients represent both +n/2 and -n/2; split them to
    // keep the interpolant real.
    if (std::abs(f) == cs.n / 2) {
      emit(cs.n / 2, 0.5 * v);
      emit(-cs.n / 2, 0.5 * v);
    } else {
      emit(f, v);
    }
  };

  if (cs.dim == 1) {
    for (int m = 0; m < cs.n; ++m)
      spread(freq_of(m, cs.n), chat(m), [&](int f, std::complex<double> v) { place(f, 0, v); });
  } else {
    for (int mx = 0; mx < cs.n; ++mx)
      for (int my = 0; my < cs.n; ++my) {
        const std::complex<double> v = chat(static_cast<std::size_t>(mx) * cs.n + my);
        spread(freq_of(mx, cs.n), v, [&](int fx, std::complex<double> vx) {
          spread(freq_of(my, cs.n), vx,
                 [&](int fy, std::complex<double> vxy) { place(fx, fy, vxy); });
        });
      }
  }
  return fft_inverse(fine, fhat);
}

GridField random_band_limited(const GridSpec& spec, std::uint64_t seed, int k_max, double decay) {
  spec.validate();
  if (k_max < 1 || k_max >= spec.n / 2) throw InvalidInput("random_band_limited: bad k_max");
  Rng rng(seed);
  Eigen::ArrayXcd hat = Eigen::ArrayXcd::Zero(spec.size());
  const double base = 2.0 * M_PI / spec.length;

  auto amp = [&](double ksq) { return std::pow(1.0 + ksq, -0.5 * decay); };

  if (spec.dim == 1) {
    for (int f = 1; f <= k_max; ++f) {
      const double k = base * f;
      const std::complex<double> c(rng.normal(), rng.normal());
      hat(f) = amp(k * k) * c;
      hat(spec.n - f) = std::conj(hat(f));
    }
  } else {
    // Half-space fx > 0, plus the fx = 0, fy > 0 line; conjugate mirrors.
    auto slot = [&](int fx, int fy) {
      const int mx = fx >= 0 ? fx : fx + spec.n;
      const int my = fy >= 0 ? fy : fy + spec.n;
      return static_cast<std::size_t>(mx) * spec.n + my;
    };
    for (int fx = 0; fx <= k_max; ++fx)
      for (int fy = -k_max; fy <= k_max; ++fy) {
        if (fx == 0 && fy <= 0) continue;
        const double kx = base * fx, ky = base * fy;
        const std::complex<double> c(rng.normal(), rng.normal());
        hat(slot(fx, fy)) = amp(kx * kx + ky * ky) * c;
        hat(slot(-fx, -fy)) = std::conj(hat(slot(fx, fy)));
      }
  }
  hat *= static_cast<double>(spec.size());
  return fft_inverse(spec, hat);
}

GridField bump(const GridSpec& spec, double amplitude, double width, double center_frac) {
  spec.validate();
  if (width <= 0.0) throw InvalidInput("bump: width must be positive");
  Eigen::ArrayXd vals(spec.size());
  const double c = center_frac * spec.length;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double e = 0.0;
    for (int axis = 0; axis < spec.dim; ++axis) {
      const double d = grid_coordinate(spec, i, axis) - c;
      e += d * d;
    }
    vals(i) = amplitude * std::exp(-e / (2.0 * width * width));
  }
  return GridField(spec, std::move(vals));
}

double seam_mass_fraction(const GridField& f) {
  const GridSpec& spec = f.spec();
  const double lo = spec.length / 8.0;
  const double hi = spec.length - lo;
  double outer = 0.0, total = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double v = std::abs(f.values()(i));
    total += v;
    bool near_seam = false;
    for (int axis = 0; axis < spec.dim; ++axis) {
      const double x = grid_coordinate(spec, i, axis);
      if (x < lo || x > hi) near_seam = true;
    }
    if (near_seam) outer += v;
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace rough
