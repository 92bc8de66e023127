#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ifsim/numeric_policy.hpp"
#include "ifsim/rng.hpp"

namespace ifsim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;

// One channel draw: H with i.i.d. N(0,1) entries, its Gram S = H^T H and the
// eigenvalues of S (squared singular values of H) sorted descending.
struct ChannelSample {
    Matrix h;                   // M_R x M_T
    Matrix s;                   // M_T x M_T
    Vector singular_values_sq;  // descending, last entry is d_min
    std::uint64_t seed_tag = 0;
    int resamples = 0;  // degenerate draws discarded before this sample

    int mt() const { return static_cast<int>(h.cols()); }
    int mr() const { return static_cast<int>(h.rows()); }
    double d_min() const { return singular_values_sq(singular_values_sq.size() - 1); }
    double d_max() const { return singular_values_sq(0); }
    // largest singular value of H, sqrt of the top eigenvalue of S
    double lambda_max() const;
};

// Draws H entrywise from the stream. Draws with d_min <= policy.dmin_reject
// are discarded and redrawn; the discard count is recorded on the sample.
ChannelSample sample_channel(int mt, int mr, RngStream& rng,
                             const NumericPolicy& policy = default_policy());

// Builds a ChannelSample around a fixed H (no randomness), e.g. for the
// paper's worked examples.
ChannelSample make_channel(const Matrix& h,
                           const NumericPolicy& policy = default_policy());

Matrix gram(const Matrix& h);

// Inverse of a symmetric positive definite matrix via Cholesky.
// Throws SingularityError when a pivot falls at or below the policy minimum.
Matrix invert_spd(const Matrix& m, const NumericPolicy& policy = default_policy());

// Lower-triangular L with L L^T = m. Same pivot rule as invert_spd.
Matrix cholesky_lower(const Matrix& m, const NumericPolicy& policy = default_policy());

struct EigenDecomposition {
    Vector eigenvalues;  // descending
    Matrix eigenvectors; // column i pairs with eigenvalues(i)
};

EigenDecomposition eigen_spd(const Matrix& m);

double quadratic_form(const Matrix& m, const Vector& a);
double quadratic_form(const Matrix& m, const IntVector& a);

inline Vector to_real(const IntVector& a) { return a.cast<double>(); }

}  // namespace ifsim
