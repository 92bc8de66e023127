#include "ifsim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifsim/coeff_search.hpp"
#include "ifsim/errors.hpp"

namespace ifsim {

namespace {

double quad_form_sym(const Matrix& m, const Vector& a) { return a.dot(m * a); }

}  // namespace

double lb(const ChannelSample& ch, const IntVector& a, double p) {
    if (a.isZero()) throw DomainError("lb: zero coefficient vector");
    if (p <= 0.0) throw DomainError("lb: power must be positive");
    const Matrix s_inv = invert_spd(ch.s);
    return p / quadratic_form(s_inv, a);
}

std::optional<double> c_factor(const ChannelSample& ch, double p) {
    if (p <= 0.0) throw DomainError("c_factor: power must be positive");
    const double tr = invert_spd(ch.s).trace();
    if (tr >= p) return std::nullopt;
    return 1.0 / (1.0 - tr / p);
}

std::optional<double> ub(const ChannelSample& ch, const IntVector& a, double p) {
    const auto c = c_factor(ch, p);
    if (!c) return std::nullopt;
    return lb(ch, a, p) * *c;
}

BoundPair bound_pair(const ChannelSample& ch, const IntVector& a, double p) {
    BoundPair out;
    const Matrix s_inv = invert_spd(ch.s);
    out.trace_s_inv = s_inv.trace();
    if (a.isZero()) throw DomainError("bound_pair: zero coefficient vector");
    out.lower = p / quadratic_form(s_inv, a);
    if (out.trace_s_inv < p) {
        out.c_factor = 1.0 / (1.0 - out.trace_s_inv / p);
        out.upper = out.lower * *out.c_factor;
    }
    return out;
}

double ordentlich_ub(const ChannelSample& ch, double p, long budget) {
    const int mt = ch.mt();
    const Matrix q = Matrix::Identity(mt, mt) + p * ch.s;
    const double cap = budget_reduced_cap(mt, candidate_norm_cap(ch, p), budget);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < mt; ++i) best = std::min(best, q(i, i));  // unit-vector floor
    for (const auto& a : integer_ball(mt, cap))
        best = std::min(best, quadratic_form(q, a));
    return best;
}

BlockOrdentlichResult block_ordentlich_ub(const ChannelSample& ch, double p,
                                          int block_size, long budget) {
    if (block_size < 2 || block_size > 3)
        throw ConfigError("block_ordentlich_ub: block_size must be 2 or 3");
    const int mt = ch.mt();
    const Matrix q_full = Matrix::Identity(mt, mt) + p * ch.s;
    BlockOrdentlichResult out;
    out.embedded_min = std::numeric_limits<double>::infinity();
    for (int start = 0; start < mt; start += block_size) {
        const int size = std::min(block_size, mt - start);
        const Matrix q_blk = Matrix::Identity(size, size) +
                             p * ch.s.block(start, start, size, size);
        const double cap =
            budget_reduced_cap(size, candidate_norm_cap(ch, p), budget);
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < size; ++i) best = std::min(best, q_blk(i, i));
        for (const auto& a : integer_ball(size, cap)) {
            best = std::min(best, quadratic_form(q_blk, a));
            IntVector full = IntVector::Zero(mt);
            full.segment(start, size) = a;
            out.embedded_min = std::min(out.embedded_min, quadratic_form(q_full, full));
        }
        out.block_snr_bounds.push_back(best);
        out.rate_bound += size * log2_plus(best);
    }
    return out;
}

double prob_c_le_t_lower_bound(double t, double p, int mt,
                               const std::function<double(double)>& f_dmin) {
    if (t <= 0.0) throw DomainError("prob_c_le_t_lower_bound: t must be positive");
    if (t <= 1.0) return 0.0;  // u(t-1) with u(0) = 0
    const double arg = mt / (p * (1.0 - 1.0 / t));
    return 1.0 - f_dmin(arg);
}

double identity_difference(const Matrix& m, const Vector& a, double eps) {
    if (eps <= 0.0) throw DomainError("identity_difference: eps must be positive");
    if (a.isZero()) throw DomainError("identity_difference: zero vector");
    const auto n = m.rows();
    const Matrix m_inv = invert_spd(m);
    const Matrix shifted_inv = invert_spd(m + eps * Matrix::Identity(n, n));
    const double lhs = quad_form_sym(shifted_inv, a);
    const double rhs = quad_form_sym(m_inv, a) -
                       eps * a.dot(m_inv * (shifted_inv * a));
    return std::abs(lhs - rhs) / std::abs(lhs);
}

TraceRatio trace_ratio_bound(const Matrix& m, const Vector& a) {
    if (a.isZero()) throw DomainError("trace_ratio_bound: zero vector");
    const Matrix m_inv = invert_spd(m);
    const Vector w = m_inv * a;
    return {w.squaredNorm() / a.dot(w), m_inv.trace()};
}

GeometricSeriesCheck ratio_geometric_series(const Matrix& m, const Vector& a,
                                            double eps, int k_max) {
    if (a.isZero()) throw DomainError("ratio_geometric_series: zero vector");
    const auto n = m.rows();
    const Matrix m_inv = invert_spd(m);
    const Matrix shifted_inv = invert_spd(m + eps * Matrix::Identity(n, n));
    const double base = quad_form_sym(m_inv, a);
    GeometricSeriesCheck out;
    out.delta = eps * a.dot(m_inv * (shifted_inv * a)) / base;
    if (out.delta <= 0.0 || out.delta >= 1.0)
        throw DomainError("ratio_geometric_series: delta outside (0,1); input not SPD?");
    out.exact_ratio = base / quad_form_sym(shifted_inv, a);
    out.truncated_series = 1.0;
    double term = 1.0;
    for (int k = 1; k <= k_max; ++k) {
        term *= out.delta;
        out.truncated_series += term;
    }
    return out;
}

double bif_advantage_power(const ChannelSample& ch) {
    const double lm = ch.lambda_max();
    return 1.0 / (lm * lm);
}

}  // namespace ifsim
