#pragma once

#include <functional>
#include <vector>

namespace rg2 {

/// Residual of an algebraic system F(x) = 0, F: R^n -> R^n.
using ResidualFunction = std::function<std::vector<double>(const std::vector<double>&)>;

/// Jacobian dF/dx as a row-major n*n matrix. May be empty (nullptr target);
/// a central finite-difference Jacobian with step 1e-6*max(1, |x_j|) is used
/// instead.
using JacobianFunction = std::function<std::vector<double>(const std::vector<double>&)>;

/// Newton iteration from every seed; converged roots (|F|_inf <= tol) are
/// deduplicated by relative Euclidean distance 1e-6. Seeds that fail to
/// converge are dropped; the result may be empty. The returned set does not
/// depend on seed order beyond its internal sorting.
std::vector<std::vector<double>> newton_multistart(const ResidualFunction& residual,
                                                   const JacobianFunction& jacobian,
                                                   const std::vector<std::vector<double>>& seeds,
                                                   double tol);

} // namespace rg2
