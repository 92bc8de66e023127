#pragma once

#include <functional>

namespace ifsim {

// Regularized lower incomplete gamma P(s, x), absolute accuracy ~1e-12.
// Series for x < s + 1, Lentz continued fraction otherwise.
double regularized_gamma_p(double s, double x);

// Regularized incomplete beta I_x(a, b), same accuracy; continued fraction
// with the symmetry switch at x = (a + 1) / (a + b + 2).
double regularized_beta(double x, double a, double b);

// Adaptive Simpson quadrature on [lo, hi] to the given absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double abs_tol);

}  // namespace ifsim
