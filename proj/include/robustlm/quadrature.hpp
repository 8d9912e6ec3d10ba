#pragma once

#include <functional>

namespace robustlm::quadrature {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;  // achieved absolute-error estimate
    bool converged = false;
    int evaluations = 0;
};

// Globally adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
// Subdivides the interval with the largest local error until the summed
// error estimate drops below abs_tol or the evaluation budget runs out.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_intervals = 4000);

}  // namespace robustlm::quadrature
