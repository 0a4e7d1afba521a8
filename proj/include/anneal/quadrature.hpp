#ifndef ANNEAL_QUADRATURE_HPP
#define ANNEAL_QUADRATURE_HPP

#include <functional>
#include <stdexcept>

namespace anneal {

struct QuadratureFailure : std::runtime_error {
  double best_estimate;
  double error_estimate;
  QuadratureFailure(double estimate, double error);
};

/// Adaptive Gauss-Kronrod 15(7) integration of f over [a, b]. Subdivides
/// until the Kronrod-vs-Gauss discrepancy of every panel is below the
/// requested absolute tolerance; throws QuadratureFailure past max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-13, int max_depth = 48);

}  // namespace anneal

#endif
