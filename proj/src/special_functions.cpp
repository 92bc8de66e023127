#include "ifsim/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "ifsim/errors.hpp"

namespace ifsim {

namespace {

constexpr double kTol = 1e-14;
constexpr int kMaxIter = 500;

double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kTol) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_cf(double s, double x) {
    // modified Lentz for the continued fraction of Q(s, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kTol) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double beta_cf(double x, double a, double b) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kTol) break;
    }
    return h;
}

double simpson_leaf(const std::function<double(double)>& f, double lo, double hi,
                    double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
}

double simpson_rec(const std::function<double(double)>& f, double lo, double hi,
                   double flo, double fmid, double fhi, double whole, double tol,
                   int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    const double flm = f(lmid), frm = f(rmid);
    const double left = simpson_leaf(f, lo, mid, flo, flm, fmid);
    const double right = simpson_leaf(f, mid, hi, fmid, frm, fhi);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) < 15.0 * tol)
        return left + right + err / 15.0;
    return simpson_rec(f, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
           simpson_rec(f, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

}  // namespace

double regularized_gamma_p(double s, double x) {
    if (s <= 0.0) throw DomainError("regularized_gamma_p: shape must be positive");
    if (x <= 0.0) return 0.0;
    if (x < s + 1.0) return gamma_p_series(s, x);
    return 1.0 - gamma_q_cf(s, x);
}

double regularized_beta(double x, double a, double b) {
    if (a <= 0.0 || b <= 0.0)
        throw DomainError("regularized_beta: parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double adaptive_simpson(const std::function<double(double)>& f, double lo,
                        double hi, double abs_tol) {
    if (hi <= lo) return 0.0;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = simpson_leaf(f, lo, hi, flo, fmid, fhi);
    return simpson_rec(f, lo, hi, flo, fmid, fhi, whole, abs_tol, 40);
}

}  // namespace ifsim
