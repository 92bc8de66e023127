#include "ifsim/receivers.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "ifsim/errors.hpp"

namespace ifsim {

Matrix CoefficientMatrix::as_real() const {
    Matrix m(static_cast<Eigen::Index>(rows.size()), mt());
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i].cast<double>();
    return m;
}

CoefficientMatrix CoefficientMatrix::identity(int mt) {
    CoefficientMatrix a;
    for (int i = 0; i < mt; ++i) {
        IntVector e = IntVector::Zero(mt);
        e(i) = 1;
        a.rows.push_back(e);
    }
    return a;
}

bool integer_full_rank(const CoefficientMatrix& a) {
    const int n = static_cast<int>(a.rows.size());
    if (n == 0 || a.mt() < n) return false;
    const int m = a.mt();
    // Bareiss fraction-free elimination on int64; dimensions here are <= 8 so
    // intermediate growth stays far below overflow.
    std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) w[i][j] = a.rows[i](j);
    std::int64_t prev = 1;
    int rank = 0;
    for (int col = 0; col < m && rank < n; ++col) {
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (w[r][col] != 0) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(w[rank], w[pivot]);
        for (int r = rank + 1; r < n; ++r) {
            for (int c = col + 1; c < m; ++c)
                w[r][c] = (w[rank][col] * w[r][c] - w[r][col] * w[rank][c]) / prev;
            w[r][col] = 0;
        }
        prev = w[rank][col];
        ++rank;
    }
    return rank == n;
}

Matrix snr_kernel(const ChannelSample& ch, double p) {
    if (p <= 0.0) throw DomainError("snr_kernel: power must be positive");
    const int mt = ch.mt();
    return invert_spd(Matrix::Identity(mt, mt) + p * ch.s);
}

double effective_snr_from_kernel(const Matrix& kernel, const IntVector& a) {
    if (a.isZero()) throw DomainError("effective_snr: zero coefficient vector");
    return 1.0 / quadratic_form(kernel, a);
}

double effective_snr(const ChannelSample& ch, const IntVector& a, double p) {
    return effective_snr_from_kernel(snr_kernel(ch, p), a);
}

static double effective_noise_denominator(const ChannelSample& ch, const IntVector& a,
                                          const Vector& b, double p) {
    if (a.isZero()) throw DomainError("effective_snr_with_b: zero coefficient vector");
    if (b.size() != ch.mr()) throw DomainError("effective_snr_with_b: b length != M_R");
    const Vector resid = ch.h.transpose() * b - to_real(a);
    const double denom = b.squaredNorm() + p * resid.squaredNorm();
    if (denom <= 0.0) throw DomainError("effective_snr_with_b: zero effective noise");
    return denom;
}

double effective_snr_with_b(const ChannelSample& ch, const IntVector& a,
                            const Vector& b, double p) {
    return p / effective_noise_denominator(ch, a, b, p);
}

double combination_snr(const ChannelSample& ch, const IntVector& a,
                       const Vector& b, double p) {
    return p * to_real(a).squaredNorm() / effective_noise_denominator(ch, a, b, p);
}

Matrix b_opt(const ChannelSample& ch, const CoefficientMatrix& a_mat, double p) {
    if (p <= 0.0) throw DomainError("b_opt: power must be positive");
    const int mr = ch.mr();
    const Matrix inner =
        invert_spd(Matrix::Identity(mr, mr) / p + ch.h * ch.h.transpose());
    return a_mat.as_real() * ch.h.transpose() * inner;
}

double effective_noise_variance(const ChannelSample& ch, const IntVector& a, double p) {
    if (a.isZero()) throw DomainError("effective_noise_variance: zero coefficient vector");
    const int mr = ch.mr();
    const Matrix inner = invert_spd(Matrix::Identity(mr, mr) + p * ch.h * ch.h.transpose());
    const Matrix core = Matrix::Identity(ch.mt(), ch.mt()) -
                        p * ch.h.transpose() * inner * ch.h;
    return p * quadratic_form(core, a);
}

std::vector<double> computation_rate_vector(const ChannelSample& ch,
                                            const CoefficientMatrix& a_mat,
                                            const Matrix& b_mat, double p) {
    if (static_cast<std::size_t>(b_mat.rows()) != a_mat.rows.size() ||
        b_mat.cols() != ch.mr())
        throw DomainError("computation_rate_vector: shape mismatch");
    std::vector<double> rates;
    rates.reserve(a_mat.rows.size());
    for (std::size_t m = 0; m < a_mat.rows.size(); ++m) {
        const Vector b = b_mat.row(static_cast<Eigen::Index>(m)).transpose();
        rates.push_back(log2_plus(effective_snr_with_b(ch, a_mat.rows[m], b, p)));
    }
    return rates;
}

std::vector<double> zf_snr(const ChannelSample& ch, double p) {
    Matrix pinv;
    try {
        pinv = invert_spd(ch.s) * ch.h.transpose();  // (H^T H)^{-1} H^T
    } catch (const SingularityError&) {
        throw SingularityError("zf_snr: channel not full column rank");
    }
    std::vector<double> snr(ch.mt());
    for (int k = 0; k < ch.mt(); ++k) snr[k] = p / pinv.row(k).squaredNorm();
    return snr;
}

std::vector<double> mmse_snr(const ChannelSample& ch, double p) {
    const Matrix kernel = snr_kernel(ch, p);
    std::vector<double> snr(ch.mt());
    for (int k = 0; k < ch.mt(); ++k) snr[k] = 1.0 / kernel(k, k);
    return snr;
}

ReceiverOutput if_scheme(const ChannelSample& ch, const CoefficientMatrix& a_mat, double p) {
    if (static_cast<int>(a_mat.rows.size()) != ch.mt() || !integer_full_rank(a_mat))
        throw DomainError("if_scheme: coefficient matrix must be square and full rank");
    const Matrix kernel = snr_kernel(ch, p);
    ReceiverOutput out;
    double min_rate = std::numeric_limits<double>::infinity();
    for (const auto& a : a_mat.rows) {
        const double snr = effective_snr_from_kernel(kernel, a);
        const double rate = log2_plus(snr);
        out.snr_per_row.push_back(snr);
        out.rate_per_row.push_back(rate);
        min_rate = std::min(min_rate, rate);
    }
    out.sum_rate = ch.mt() * min_rate;
    out.a_matrix = a_mat;
    return out;
}

}  // namespace ifsim
