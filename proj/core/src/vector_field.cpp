#include "roughburgers/vector_field.hpp"

#include <cmath>

namespace rough::fields {

VectorFieldSet constant(int dim, const Mat& amplitudes) {
  if (amplitudes.cols() != dim) throw InvalidInput("constant fields: amplitude shape mismatch");
  VectorFieldSet v;
  v.dim = dim;
  v.count = static_cast<int>(amplitudes.rows());
  v.bound_norm = amplitudes.size() == 0 ? 0.0 : amplitudes.cwiseAbs().maxCoeff();
  v.value = [amplitudes](int j, const Vec&) -> Vec { return amplitudes.row(j); };
  v.jacobian = [dim](int, const Vec&) { return Mat::Zero(dim, dim).eval(); };
  v.hessian = [dim](int, const Vec&) { return std::vector<Mat>(dim, Mat::Zero(dim, dim)); };
  v.third = [dim](int, const Vec&) {
    return std::vector<std::vector<Mat>>(dim, std::vector<Mat>(dim, Mat::Zero(dim, dim)));
  };
  v.divergence = [](int, const Vec&) { return 0.0; };
  return v;
}

VectorFieldSet sine(int dim, const std::vector<double>& amplitudes,
                    const std::vector<double>& phases, double length) {
  if (dim != 1 && dim != 2) throw InvalidInput("sine fields: dim must be 1 or 2");
  if (amplitudes.size() != phases.size()) throw InvalidInput("sine fields: one phase per amplitude");
  const double w = 2.0 * M_PI / length;
  VectorFieldSet v;
  v.dim = dim;
  v.count = static_cast<int>(amplitudes.size());
  double amax = 0.0;
  for (double a : amplitudes) amax = std::max(amax, std::abs(a));
  v.bound_norm = amax * std::max(1.0, w * w * w);
  v.value = [=](int j, const Vec& x) -> Vec {
    Vec out(dim);
    for (int c = 0; c < dim; ++c) out(c) = amplitudes[j] * std::sin(w * x(c) + phases[j]);
    return out;
  };
  v.jacobian = [=](int j, const Vec& x) -> Mat {
    Mat m = Mat::Zero(dim, dim);
    for (int c = 0; c < dim; ++c) m(c, c) = amplitudes[j] * w * std::cos(w * x(c) + phases[j]);
    return m;
  };
  v.hessian = [=](int j, const Vec& x) {
    std::vector<Mat> h(dim, Mat::Zero(dim, dim));
    for (int c = 0; c < dim; ++c)
      h[c](c, c) = -amplitudes[j] * w * w * std::sin(w * x(c) + phases[j]);
    return h;
  };
  v.third = [=](int j, const Vec& x) {
    std::vector<std::vector<Mat>> t(dim, std::vector<Mat>(dim, Mat::Zero(dim, dim)));
    for (int c = 0; c < dim; ++c)
      t[c][c](c, c) = -amplitudes[j] * w * w * w * std::cos(w * x(c) + phases[j]);
    return t;
  };
  v.divergence = [=](int j, const Vec& x) {
    double d = 0.0;
    for (int c = 0; c < dim; ++c) d += amplitudes[j] * w * std::cos(w * x(c) + phases[j]);
    return d;
  };
  return v;
}

VectorFieldSet solenoidal(const std::vector<double>& amplitudes,
                          const std::vector<double>& phases, double length) {
  if (amplitudes.size() != phases.size())
    throw InvalidInput("solenoidal fields: one phase per amplitude");
  const double w = 2.0 * M_PI / length;
  VectorFieldSet v;
  v.dim = 2;
  v.count = static_cast<int>(amplitudes.size());
  double amax = 0.0;
  for (double a : amplitudes) amax = std::max(amax, std::abs(a));
  v.bound_norm = amax * std::max(1.0, w * w);
  // beta = (d_2 psi, -d_1 psi) with psi = (a/w) sin(w x1 + p) sin(w x2 + p).
  v.value = [=](int j, const Vec& x) -> Vec {
    const double a = amplitudes[j], p = phases[j];
    Vec out(2);
    out(0) = a * std::sin(w * x(0) + p) * std::cos(w * x(1) + p);
    out(1) = -a * std::cos(w * x(0) + p) * std::sin(w * x(1) + p);
    return out;
  };
  v.jacobian = [=](int j, const Vec& x) -> Mat {
    const double a = amplitudes[j], p = phases[j];
    const double s1 = std::sin(w * x(0) + p), c1 = std::cos(w * x(0) + p);
    const double s2 = std::sin(w * x(1) + p), c2 = std::cos(w * x(1) + p);
    Mat m(2, 2);
    m(0, 0) = a * w * c1 * c2;
    m(0, 1) = -a * w * s1 * s2;
    m(1, 0) = a * w * s1 * s2;
    m(1, 1) = -a * w * c1 * c2;
    return m;
  };
  v.hessian = [=](int j, const Vec& x) {
    const double a = amplitudes[j], p = phases[j];
    const double s1 = std::sin(w * x(0) + p), c1 = std::cos(w * x(0) + p);
    const double s2 = std::sin(w * x(1) + p), c2 = std::cos(w * x(1) + p);
    std::vector<Mat> h(2, Mat::Zero(2, 2));
    h[0](0, 0) = -a * w * w * s1 * c2;
    h[0](0, 1) = -a * w * w * c1 * s2;
    h[0](1, 0) = -a * w * w * c1 * s2;
    h[0](1, 1) = -a * w * w * s1 * c2;
    h[1](0, 0) = a * w * w * c1 * s2;
    h[1](0, 1) = a * w * w * s1 * c2;
    h[1](1, 0) = a * w * w * s1 * c2;
    h[1](1, 1) = a * w * w * c1 * s2;
    return h;
  };
  v.third = [=](int j, const Vec& x) {
    const double a = amplitudes[j], p = phases[j];
    const double s1 = std::sin(w * x(0) + p), c1 = std::cos(w * x(0) + p);
    const double s2 = std::sin(w * x(1) + p), c2 = std::cos(w * x(1) + p);
    const double w3 = w * w * w;
    std::vector<std::vector<Mat>> t(2, std::vector<Mat>(2, Mat::Zero(2, 2)));
    // component 0: a s1 c2, component 1: -a c1 s2; differentiate three times.
    auto d0 = [&](int k, int l, int m) {
      int n1 = (k == 0) + (l == 0) + (m == 0);
      int n2 = 3 - n1;
      const double f1[4] = {s1, c1, -s1, -c1};
      const double f2[4] = {c2, -s2, -c2, s2};
      return a * w3 * f1[n1 % 4] * f2[n2 % 4];
    };
    auto d1 = [&](int k, int l, int m) {
      int n1 = (k == 0) + (l == 0) + (m == 0);
      int n2 = 3 - n1;
      const double g1[4] = {c1, -s1, -c1, s1};
      const double g2[4] = {s2, c2, -s2, -c2};
      return -a * w3 * g1[n1 % 4] * g2[n2 % 4];
    };
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int m = 0; m < 2; ++m) {
          t[0][k](l, m) = d0(k, l, m);
          t[1][k](l, m) = d1(k, l, m);
        }
    return t;
  };
  v.divergence = [](int, const Vec&) { return 0.0; };
  return v;
}

VectorFieldSet single_1d(std::function<double(double)> f, std::function<double(double)> f1,
                         std::function<double(double)> f2, std::function<double(double)> f3,
                         double bound_norm) {
  VectorFieldSet v;
  v.dim = 1;
  v.count = 1;
  v.bound_norm = bound_norm;
  v.value = [f](int, const Vec& x) -> Vec { return Vec::Constant(1, f(x(0))); };
  v.jacobian = [f1](int, const Vec& x) -> Mat { return Mat::Constant(1, 1, f1(x(0))); };
  v.hessian = [f2](int, const Vec& x) { return std::vector<Mat>{Mat::Constant(1, 1, f2(x(0)))}; };
  v.third = [f3](int, const Vec& x) {
    return std::vector<std::vector<Mat>>{{Mat::Constant(1, 1, f3(x(0)))}};
  };
  v.divergence = [f1](int, const Vec& x) { return f1(x(0)); };
  return v;
}

}  // namespace rough::fields
