#pragma once

#include <Eigen/Dense>

namespace rough {

/// First `count` orthonormal Hermite functions evaluated at x. Uses the
/// normalized three-term recurrence e_n = sqrt(2/n) x e_{n-1}
/// - sqrt((n-1)/n) e_{n-2}, which keeps every normalization factor inside the
/// recursion coefficients and stays stable through n = 64.
Eigen::ArrayXd hermite_functions(int count, double x);

}  // namespace rough
