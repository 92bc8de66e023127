#include "ifsim/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "ifsim/errors.hpp"
#include "ifsim/special_functions.hpp"

namespace ifsim {

double gamma_cdf(double x, const GammaLaw& law) {
    if (law.shape <= 0.0 || law.scale <= 0.0)
        throw DomainError("gamma_cdf: shape and scale must be positive");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(law.shape, x / law.scale);
}

GammaLaw lb_gamma_params(int mt, int mr, double p, const IntVector& a) {
    if (mt > mr) throw ConfigError("lb_gamma_params: require mt <= mr");
    if (a.isZero()) throw DomainError("lb_gamma_params: zero coefficient vector");
    if (p <= 0.0) throw DomainError("lb_gamma_params: power must be positive");
    return {(mr - mt + 1) / 2.0, 2.0 * p / to_real(a).squaredNorm()};
}

double f_cdf(double x, int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw DomainError("f_cdf: degrees of freedom must be >= 1");
    if (x <= 0.0) return 0.0;
    const double z = d1 * x / (d1 * x + d2);
    return regularized_beta(z, d1 / 2.0, d2 / 2.0);
}

double rho(double eps, int k) {
    constexpr double kEpsMax = 0.70710678118654752440;  // 1/sqrt(2)
    if (eps < 0.0 || eps > kEpsMax + 1e-12)
        throw DomainError("rho: eps must lie in [0, 1/sqrt(2)]");
    if (k < 1) throw DomainError("rho: K must be >= 1");
    const double scale = (eps + 1.0) / (2.0 * eps + 1.0);
    const double scale_sq = scale * scale;
    const double f_at_one = f_cdf(1.0, k, k);
    auto integrand = [&](double t) {
        return f_cdf(2.0 * (1.0 + std::cos(2.0 * t)) * scale_sq, k, k) - f_at_one;
    };
    return 4.0 / M_PI * adaptive_simpson(integrand, 0.0, M_PI / 4.0, 1e-8);
}

double rho_closed_form_k2(double eps) {
    constexpr double kEpsMax = 0.70710678118654752440;
    if (eps < 0.0 || eps > kEpsMax + 1e-12)
        throw DomainError("rho_closed_form_k2: eps must lie in [0, 1/sqrt(2)]");
    const double u = 1.0 + 2.0 * eps;
    const double root = std::sqrt(5.0 + 4.0 * eps * (3.0 + 2.0 * eps));
    return 0.5 - 4.0 * u / (M_PI * root) * std::atan(u / root);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw DomainError("EmpiricalCdf: empty sample set");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double nbif_cdf_upper_bound(double t, double eps, const EmpiricalCdf& f_mmse,
                            const EmpiricalCdf& f_x,
                            const EmpiricalCdf& f_x_given_aeps, double rho_val) {
    if (t <= 0.0) return 0.0;
    const double corrected =
        f_x(t) - rho_val * (f_x_given_aeps(t) - f_x_given_aeps(t / (1.0 + eps)));
    const double bound = std::min(f_mmse(t), corrected);
    return std::clamp(bound, 0.0, 1.0);
}

WishartLaw wishart_params(const std::vector<IntVector>& cols, int mt, int mr, double p) {
    if (cols.empty()) throw DomainError("wishart_params: no columns");
    if (p <= 0.0) throw DomainError("wishart_params: power must be positive");
    CoefficientMatrix as_rows;
    as_rows.rows = cols;
    if (!integer_full_rank(as_rows))
        throw DomainError("wishart_params: columns must be linearly independent");
    const int rank = static_cast<int>(cols.size());
    Matrix a(mt, rank);
    for (int j = 0; j < rank; ++j) a.col(j) = to_real(cols[static_cast<std::size_t>(j)]);
    const Matrix gram_a = a.transpose() * a;
    return {p * invert_spd(0.5 * (gram_a + gram_a.transpose())), mr - mt + rank, rank};
}

double ks_statistic(const EmpiricalCdf& emp,
                    const std::function<double(double)>& analytic) {
    const auto& xs = emp.sorted_samples();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = analytic(xs[i]);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(i / n - f));
    }
    return d;
}

}  // namespace ifsim
