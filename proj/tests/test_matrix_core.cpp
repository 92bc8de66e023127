#include <doctest.h>

#include "ifsim/errors.hpp"
#include "ifsim/matrix_core.hpp"
#include "test_helpers.hpp"

using namespace ifsim;
using namespace ifsim::test;

TEST_CASE("gram basics") {
    CHECK(gram(Matrix::Identity(2, 2)).isApprox(Matrix::Identity(2, 2)));
    const Matrix s = gram(mat2(2, 1, 1, 1));
    CHECK(s(0, 0) == doctest::Approx(5).epsilon(1e-14));
    CHECK(s(0, 1) == doctest::Approx(3).epsilon(1e-14));
    CHECK(s(1, 0) == doctest::Approx(3).epsilon(1e-14));
    CHECK(s(1, 1) == doctest::Approx(2).epsilon(1e-14));

    RngStream rng(99, 0);
    for (int i = 0; i < 20; ++i) {
        Matrix h(5, 3);
        for (int r = 0; r < 5; ++r)
            for (int c = 0; c < 3; ++c) h(r, c) = rng.next_normal();
        const Matrix g = gram(h);
        CHECK((g - g.transpose()).norm() < 1e-12);
    }
}

TEST_CASE("invert_spd examples and errors") {
    CHECK(invert_spd(2.0 * Matrix::Identity(3, 3))
              .isApprox(0.5 * Matrix::Identity(3, 3), 1e-12));
    // det([[5,3],[3,2]]) = 1, cofactor inverse
    const Matrix inv = invert_spd(mat2(5, 3, 3, 2));
    CHECK(inv(0, 0) == doctest::Approx(2).epsilon(1e-10));
    CHECK(inv(0, 1) == doctest::Approx(-3).epsilon(1e-10));
    CHECK(inv(1, 1) == doctest::Approx(5).epsilon(1e-10));

    CHECK_THROWS_AS((void)invert_spd(mat2(1, 1, 1, 1 + 1e-16)), SingularityError);

    RngStream rng(7, 0);
    for (int i = 0; i < 50; ++i) {
        const Matrix m = random_spd(4, rng);
        CHECK((m * invert_spd(m) - Matrix::Identity(4, 4)).norm() /
                  Matrix::Identity(4, 4).norm() < 1e-8);
    }
}

TEST_CASE("cholesky_lower") {
    CHECK(cholesky_lower(Matrix::Identity(3, 3)).isApprox(Matrix::Identity(3, 3)));
    const Matrix l = cholesky_lower(mat2(4, 0, 0, 9));
    CHECK(l(0, 0) == doctest::Approx(2));
    CHECK(l(1, 1) == doctest::Approx(3));
    CHECK(l(0, 1) == 0.0);

    RngStream rng(11, 0);
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 7.0);
        const Matrix m = random_spd(n, rng);
        const Matrix ll = cholesky_lower(m);
        CHECK((ll * ll.transpose() - m).norm() < 1e-10 * std::max(1.0, m.norm()));
    }
    CHECK_THROWS_AS((void)cholesky_lower(mat2(1, 2, 2, 1)), SingularityError);
}

TEST_CASE("eigen_spd") {
    const auto d = eigen_spd(mat2(3, 0, 0, 1));
    CHECK(d.eigenvalues(0) == doctest::Approx(3));
    CHECK(d.eigenvalues(1) == doctest::Approx(1));

    const auto e = eigen_spd(mat2(5, 3, 3, 2));
    CHECK(e.eigenvalues(0) == doctest::Approx((7 + std::sqrt(45.0)) / 2).epsilon(1e-12));
    CHECK(e.eigenvalues(1) == doctest::Approx((7 - std::sqrt(45.0)) / 2).epsilon(1e-12));

    RngStream rng(13, 0);
    for (int i = 0; i < 50; ++i) {
        const Matrix m = random_spd(5, rng);
        const auto dec = eigen_spd(m);
        CHECK(dec.eigenvalues.sum() == doctest::Approx(m.trace()).epsilon(1e-10));
        for (int k = 0; k < 5; ++k) {
            CHECK((m * dec.eigenvectors.col(k) -
                   dec.eigenvalues(k) * dec.eigenvectors.col(k))
                      .norm() < 1e-8);
        }
    }
}

TEST_CASE("quadratic_form") {
    CHECK(quadratic_form(Matrix::Identity(2, 2), rvec({1, 1})) == doctest::Approx(2));
    CHECK(quadratic_form(mat2(5, 3, 3, 2), ivec({1, -1})) == doctest::Approx(1));
    CHECK_THROWS_AS((void)quadratic_form(Matrix::Identity(2, 2), rvec({1, 1, 1})),
                    DomainError);

    RngStream rng(17, 0);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 6.0);
        const Matrix m = random_spd(n, rng);
        Vector a(n);
        for (int k = 0; k < n; ++k) a(k) = rng.next_normal();
        double expect = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) expect += a(r) * m(r, c) * a(c);
        CHECK(quadratic_form(m, a) ==
              doctest::Approx(expect).epsilon(1e-12));
        CHECK(quadratic_form(m, a) > 0.0);
    }
}

TEST_CASE("sample_channel contract") {
    RngStream r1(5, 0), r2(5, 0);
    const ChannelSample a = sample_channel(2, 2, r1);
    const ChannelSample b = sample_channel(2, 2, r2);
    CHECK(a.h == b.h);  // determinism under fixed (seed, stream)

    RngStream r3(5, 1);
    const ChannelSample c = sample_channel(2, 4, r3);
    CHECK(c.h.rows() == 4);
    CHECK(c.h.cols() == 2);
    CHECK(c.s.rows() == 2);
    CHECK(c.d_min() > 0.0);
    CHECK(c.singular_values_sq.sum() ==
          doctest::Approx(c.s.trace()).epsilon(1e-8));

    CHECK_THROWS_AS([] {
        RngStream r(1, 0);
        (void)sample_channel(4, 2, r);
    }(), ConfigError);
    CHECK_THROWS_AS([] {
        RngStream r(1, 0);
        (void)sample_channel(1, 2, r);
    }(), ConfigError);
}

TEST_CASE("sample_channel entries follow the standard normal law") {
    double sum = 0.0, sum_sq = 0.0;
    long count = 0;
    for (int i = 0; i < 100000 / 16; ++i) {
        RngStream rng(123, static_cast<std::uint64_t>(i));
        const ChannelSample ch = sample_channel(4, 4, rng);
        sum += ch.h.sum();
        sum_sq += ch.h.squaredNorm();
        count += 16;
    }
    const double mean = sum / count;
    const double var = sum_sq / count - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.05);
}
