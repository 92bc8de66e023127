#include "ifsim/matrix_core.hpp"

#include <cmath>

#include "ifsim/errors.hpp"

namespace ifsim {

double ChannelSample::lambda_max() const { return std::sqrt(d_max()); }

Matrix gram(const Matrix& h) {
    Matrix s = h.transpose() * h;
    // enforce exact symmetry; the product is symmetric only up to rounding
    return 0.5 * (s + s.transpose());
}

Matrix cholesky_lower(const Matrix& m, const NumericPolicy& policy) {
    const auto n = m.rows();
    if (n != m.cols()) throw DomainError("cholesky_lower: matrix not square");
    Matrix l = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = m(j, j) - l.row(j).head(j).squaredNorm();
        if (d <= policy.cholesky_pivot_min)
            throw SingularityError("cholesky_lower: non-SPD input (pivot " +
                                   std::to_string(d) + ")");
        l(j, j) = std::sqrt(d);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double s = m(i, j) - l.row(i).head(j).dot(l.row(j).head(j));
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

Matrix invert_spd(const Matrix& m, const NumericPolicy& policy) {
    const Matrix l = cholesky_lower(m, policy);
    const auto n = m.rows();
    // solve L L^T X = I by forward/back substitution
    Matrix inv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
    inv = l.transpose().triangularView<Eigen::Upper>().solve(inv);
    return 0.5 * (inv + inv.transpose());
}

EigenDecomposition eigen_spd(const Matrix& m) {
    if (m.rows() != m.cols()) throw DomainError("eigen_spd: matrix not square");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const auto n = m.rows();
    EigenDecomposition out;
    out.eigenvalues = Vector(n);
    out.eigenvectors = Matrix(n, n);
    // Eigen returns ascending order; flip to descending
    for (Eigen::Index i = 0; i < n; ++i) {
        out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return out;
}

double quadratic_form(const Matrix& m, const Vector& a) {
    if (m.rows() != m.cols() || m.cols() != a.size())
        throw DomainError("quadratic_form: dimension mismatch");
    return a.dot(m * a);
}

double quadratic_form(const Matrix& m, const IntVector& a) {
    return quadratic_form(m, to_real(a));
}

ChannelSample make_channel(const Matrix& h, const NumericPolicy& policy) {
    (void)policy;
    ChannelSample ch;
    ch.h = h;
    ch.s = gram(h);
    ch.singular_values_sq = eigen_spd(ch.s).eigenvalues;
    return ch;
}

ChannelSample sample_channel(int mt, int mr, RngStream& rng, const NumericPolicy& policy) {
    if (mt < 2 || mt > mr)
        throw ConfigError("sample_channel: require 2 <= mt <= mr");
    int resamples = 0;
    for (;;) {
        Matrix h(mr, mt);
        for (int i = 0; i < mr; ++i)
            for (int j = 0; j < mt; ++j) h(i, j) = rng.next_normal();
        ChannelSample ch = make_channel(h, policy);
        if (ch.d_min() > policy.dmin_reject) {
            ch.resamples = resamples;
            return ch;
        }
        ++resamples;
    }
}

}  // namespace ifsim
