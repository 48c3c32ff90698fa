// quadrature.hpp
// Adaptive 1D quadrature on a Gauss-Kronrod 7-15 pair with interval
// bisection, plus fixed composite rules for smooth multi-dimensional
// integrands.
#pragma once

#include <functional>
#include <vector>

namespace hyperlab {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Integrate fn over [a,b]; subdivides until the local GK error estimate is
// below max(abs_tol, rel_tol * |integral|) distributed over subintervals.
QuadratureResult integrate_adaptive(const std::function<double(double)>& fn, double a,
                                    double b, double rel_tol = 1e-6,
                                    double abs_tol = 1e-14, int max_depth = 40);

// Same, with forced subdivision at the given interior breakpoints.
QuadratureResult integrate_adaptive_split(const std::function<double(double)>& fn,
                                          double a, double b,
                                          std::vector<double> breakpoints,
                                          double rel_tol = 1e-6, double abs_tol = 1e-14,
                                          int max_depth = 40);

// Composite Simpson rule with n panels (n rounded up to even).
double integrate_simpson(const std::function<double(double)>& fn, double a, double b,
                         int n);

// Periodic trapezoid rule over one period [0, 2*pi).
double integrate_periodic(const std::function<double(double)>& fn, int n);

} // namespace hyperlab
