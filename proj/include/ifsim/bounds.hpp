#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ifsim/receivers.hpp"

namespace ifsim {

// Lower/upper sandwich for one coefficient vector. upper and c_factor are
// empty when the series diverges (tr(S^{-1}) >= p); divergent draws are
// reported separately, never folded into rate math as float infinity.
struct BoundPair {
    double lower = 0.0;
    std::optional<double> upper;
    std::optional<double> c_factor;
    double trace_s_inv = 0.0;
};

// LB(H, a) = p / (a^T S^{-1} a)
double lb(const ChannelSample& ch, const IntVector& a, double p);

// C(H, p) = 1 / (1 - tr(S^{-1})/p) when tr(S^{-1}) < p, else divergent.
std::optional<double> c_factor(const ChannelSample& ch, double p);

// UB = LB * C when C is finite.
std::optional<double> ub(const ChannelSample& ch, const IntVector& a, double p);

BoundPair bound_pair(const ChannelSample& ch, const IntVector& a, double p);

// min over nonzero integer a (norm-ball enumeration, unit vectors as a floor)
// of a^T (I + p S) a; upper-bounds the optimal IF effective SNR.
double ordentlich_ub(const ChannelSample& ch, double p, long budget = 200000);

struct BlockOrdentlichResult {
    std::vector<double> block_snr_bounds;  // per block, using the sub-Gram S_i
    double rate_bound = 0.0;               // sum of size * log2+ of block bound
    double embedded_min = 0.0;             // min of a^T(I+pS)a over embedded block vectors
};

BlockOrdentlichResult block_ordentlich_ub(const ChannelSample& ch, double p,
                                          int block_size = 2, long budget = 200000);

// u(t-1) * [1 - F_dmin(mt / (p (1 - 1/t)))], u(0) = 0.
double prob_c_le_t_lower_bound(double t, double p, int mt,
                               const std::function<double(double)>& f_dmin);

// Relative residual of a^T(eps I + m)^{-1} a
//   = a^T m^{-1} a - eps * a^T m^{-1} (m + eps I)^{-1} a.
double identity_difference(const Matrix& m, const Vector& a, double eps);

struct TraceRatio {
    double ratio;  // a^T m^{-2} a / a^T m^{-1} a
    double trace;  // tr(m^{-1}); ratio <= trace
};
TraceRatio trace_ratio_bound(const Matrix& m, const Vector& a);

struct GeometricSeriesCheck {
    double exact_ratio;       // a^T m^{-1} a / a^T (eps I + m)^{-1} a
    double truncated_series;  // 1 + sum_{k=1}^{k_max} delta^k
    double delta;             // eps * a^T m^{-1}(m+eps I)^{-1} a / a^T m^{-1} a
};
GeometricSeriesCheck ratio_geometric_series(const Matrix& m, const Vector& a,
                                            double eps, int k_max = 64);

// lambda_max(H)^{-2}: at or below this power the block scheme's rate matches
// or beats unconstrained IF.
double bif_advantage_power(const ChannelSample& ch);

}  // namespace ifsim
