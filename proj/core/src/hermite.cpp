#include "roughburgers/hermite.hpp"

#include <cmath>

#include "roughburgers/errors.hpp"

namespace rough {

Eigen::ArrayXd hermite_functions(int count, double x) {
  if (count < 1 || count > 64) throw InvalidInput("hermite_functions: count must lie in [1, 64]");
  Eigen::ArrayXd e(count);
  const double pi_quarter = std::pow(M_PI, -0.25);
  e(0) = pi_quarter * std::exp(-0.5 * x * x);
  if (count > 1) e(1) = std::sqrt(2.0) * x * e(0);
  for (int n = 2; n < count; ++n)
    e(n) = std::sqrt(2.0 / n) * x * e(n - 1) - std::sqrt((n - 1.0) / n) * e(n - 2);
  return e;
}

}  // namespace rough
