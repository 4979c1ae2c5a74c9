#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "roughburgers/errors.hpp"

namespace rough {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Transport coefficients beta_j with analytic derivatives up to third order
/// and the divergence. jacobian(j,x)(i,k) = d_k beta_j^i,
/// hessian(j,x)[i](k,l) = d_k d_l beta_j^i, third(j,x)[i][k](l,m) adds one
/// more derivative. All families shipped here are smooth and bounded with all
/// derivatives, and bound_norm declares the sup of every stored magnitude.
struct VectorFieldSet {
  int dim = 1;
  int count = 1;
  double bound_norm = 0.0;
  std::function<Vec(int, const Vec&)> value;
  std::function<Mat(int, const Vec&)> jacobian;
  std::function<std::vector<Mat>(int, const Vec&)> hessian;
  std::function<std::vector<std::vector<Mat>>(int, const Vec&)> third;
  std::function<double(int, const Vec&)> divergence;

  /// Gradient of div beta_j, assembled from the Hessian.
  Vec grad_divergence(int j, const Vec& x) const {
    const std::vector<Mat> h = hessian(j, x);
    Vec g = Vec::Zero(dim);
    for (int k = 0; k < dim; ++k)
      for (int i = 0; i < dim; ++i) g(k) += h[i](k, i);
    return g;
  }
};

namespace fields {

/// beta_j(x) = amplitudes.row(j), constant in space (divergence-free).
VectorFieldSet constant(int dim, const Mat& amplitudes);

/// d = 1: beta_j(x) = a_j sin(2 pi x / length + phase_j).
/// d = 2: beta_j(x) = a_j (sin(2 pi x_1 / length + phase_j),
///                         sin(2 pi x_2 / length + phase_j)).
/// Nonzero divergence in both cases.
VectorFieldSet sine(int dim, const std::vector<double>& amplitudes,
                    const std::vector<double>& phases, double length);

/// d = 2 divergence-free fields from the stream function
/// psi_j = a_j (length / 2 pi) sin(2 pi x_1 / length + phase_j) sin(2 pi x_2 / length + phase_j).
VectorFieldSet solenoidal(const std::vector<double>& amplitudes,
                          const std::vector<double>& phases, double length);

/// Single scalar field (d = J = 1) from closed-form derivatives; handy for
/// oracle problems like beta(x) = x or beta(x) = sin(x).
VectorFieldSet single_1d(std::function<double(double)> f, std::function<double(double)> f1,
                         std::function<double(double)> f2, std::function<double(double)> f3,
                         double bound_norm);

}  // namespace fields

}  // namespace rough
