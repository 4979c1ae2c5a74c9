#pragma once

#include <Eigen/Dense>
#include <functional>

#include "roughburgers/errors.hpp"

namespace rough {

/// Flux nonlinearity F entering div F(u): either a Lipschitz F with declared
/// sup of |F'|, or the classical Burgers flux F(u) = -u^2/2 in one dimension.
struct Nonlinearity {
  enum class Kind { Zero, LipschitzF, BurgersClassical };

  Kind kind = Kind::Zero;
  int dim = 1;             // components of F (matches the spatial dimension)
  double lipschitz = 0.0;  // declared |grad F|_inf for the Lipschitz case
  std::function<Eigen::VectorXd(double)> f;

  Eigen::VectorXd eval(double u) const {
    switch (kind) {
      case Kind::Zero:
        return Eigen::VectorXd::Zero(dim);
      case Kind::BurgersClassical:
        return Eigen::VectorXd::Constant(1, -0.5 * u * u);
      case Kind::LipschitzF:
        return f(u);
    }
    throw InvalidInput("Nonlinearity: bad kind");
  }

  static Nonlinearity zero(int dim = 1) {
    Nonlinearity n;
    n.kind = Kind::Zero;
    n.dim = dim;
    return n;
  }

  static Nonlinearity burgers() {
    Nonlinearity n;
    n.kind = Kind::BurgersClassical;
    n.dim = 1;
    return n;
  }

  static Nonlinearity lipschitz(int dim, double lip, std::function<Eigen::VectorXd(double)> f) {
    if (lip < 0.0) throw InvalidInput("Nonlinearity: negative Lipschitz constant");
    Nonlinearity n;
    n.kind = Kind::LipschitzF;
    n.dim = dim;
    n.lipschitz = lip;
    n.f = std::move(f);
    return n;
  }
};

}  // namespace rough
