#pragma once

#include <functional>
#include <vector>

#include "ifsim/receivers.hpp"

namespace ifsim {

struct GammaLaw {
    double shape;
    double scale;
};

// CDF of Gamma(shape, scale): regularized lower incomplete gamma P(shape, x/scale).
double gamma_cdf(double x, const GammaLaw& law);

// Law of LB(H, a): shape (mr - mt + 1)/2, scale 2p / ||a||^2.
GammaLaw lb_gamma_params(int mt, int mr, double p, const IntVector& a);

// CDF of the F(d1, d2) distribution.
double f_cdf(double x, int d1, int d2);

// rho(eps): the analytic floor on Pr{LB(H, e1 - e2) > (1+eps) LB(H, e1)},
// by adaptive quadrature over [0, pi/4] with phi ~ F(K, K). Domain closed:
// [0, 1/sqrt(2)], both endpoints appear in the worked K=2 example.
double rho(double eps, int k);

// K = 2 closed form:
// 1/2 - [4(1+2e) / (pi sqrt(5+4e(3+2e)))] * arctan((1+2e)/sqrt(5+4e(3+2e)))
double rho_closed_form_k2(double eps);

class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> samples);

    // right-continuous step function: fraction of samples <= x
    double operator()(double x) const;
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted_samples() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

// min{ F_mmse(t), F_x(t) - rho_val * [F_{X|a_eps}(t) - F_{X|a_eps}(t/(1+eps))] },
// clamped to [0, 1].
double nbif_cdf_upper_bound(double t, double eps, const EmpiricalCdf& f_mmse,
                            const EmpiricalCdf& f_x,
                            const EmpiricalCdf& f_x_given_aeps, double rho_val);

struct WishartLaw {
    Matrix scale_matrix;  // p * (A^T A)^{-1}
    int df;               // mr - mt + rank(A)
    int dim;              // rank(A)
};

// Law of the joint lower bound for the coefficient columns in `cols`.
WishartLaw wishart_params(const std::vector<IntVector>& cols, int mt, int mr, double p);

// Two-sided Kolmogorov-Smirnov distance between the empirical CDF and an
// analytic CDF, evaluated at the sample points.
double ks_statistic(const EmpiricalCdf& emp, const std::function<double(double)>& analytic);

}  // namespace ifsim
