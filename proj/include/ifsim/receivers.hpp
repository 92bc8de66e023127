#pragma once

#include <optional>
#include <vector>

#include "ifsim/matrix_core.hpp"

namespace ifsim {

// Integer coefficient matrix whose rows define the decoded combinations.
// Optional block structure (start, size) pairs constrain each row's support.
struct CoefficientMatrix {
    std::vector<IntVector> rows;
    std::vector<std::pair<int, int>> block_structure;  // empty = unstructured

    int mt() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
    Matrix as_real() const;
    static CoefficientMatrix identity(int mt);
};

// Exact full-rank test over the rationals (fraction-free integer elimination).
bool integer_full_rank(const CoefficientMatrix& a);

struct ReceiverOutput {
    std::vector<double> snr_per_row;   // linear
    std::vector<double> rate_per_row;  // bits per real channel use, log2+ clamped
    double sum_rate = 0.0;
    std::optional<CoefficientMatrix> a_matrix;  // none for ZF/MMSE (identity implied)
};

inline double log2_plus(double snr) {
    return snr > 1.0 ? 0.5 * std::log2(snr) : 0.0;
}

// SNR_eff(H, a) = (a^T (I + P S)^{-1} a)^{-1}
double effective_snr(const ChannelSample& ch, const IntVector& a, double p);

// P / (||b||^2 + P ||H^T b - a||^2)
double effective_snr_with_b(const ChannelSample& ch, const IntVector& a,
                            const Vector& b, double p);

// Signal-power-weighted ratio from the worked introduction:
// P ||a||^2 / (||b||^2 + P ||H^T b - a||^2)
double combination_snr(const ChannelSample& ch, const IntVector& a,
                       const Vector& b, double p);

// B_opt = A H^T ((1/P) I + H H^T)^{-1}; row m is the optimal b for row m of A.
Matrix b_opt(const ChannelSample& ch, const CoefficientMatrix& a_mat, double p);

// sigma_opt^2 = P a^T (I - P H^T (I + P H H^T)^{-1} H) a = P / SNR_eff
double effective_noise_variance(const ChannelSample& ch, const IntVector& a, double p);

std::vector<double> computation_rate_vector(const ChannelSample& ch,
                                            const CoefficientMatrix& a_mat,
                                            const Matrix& b_mat, double p);

// Per-stream SNR of the channel-inverting receiver, p / ||row k of pinv||^2.
std::vector<double> zf_snr(const ChannelSample& ch, double p);

// Per-stream SNR with A = I, element k = effective_snr(ch, e_k, p).
std::vector<double> mmse_snr(const ChannelSample& ch, double p);

// Equal-rate scheme for a given full-rank A: sum rate = M_T * min-row rate.
ReceiverOutput if_scheme(const ChannelSample& ch, const CoefficientMatrix& a_mat, double p);

// (I + P S)^{-1}, the kernel of every effective-SNR evaluation. Exposed so
// searches can precompute it once per (channel, power).
Matrix snr_kernel(const ChannelSample& ch, double p);

double effective_snr_from_kernel(const Matrix& kernel, const IntVector& a);

}  // namespace ifsim
