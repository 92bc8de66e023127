#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ifsim/bounds.hpp"
#include "ifsim/coeff_search.hpp"
#include "ifsim/errors.hpp"
#include "test_helpers.hpp"

using namespace ifsim;
using namespace ifsim::test;

TEST_CASE("lb closed forms") {
    const ChannelSample id = make_channel(Matrix::Identity(2, 2));
    CHECK(lb(id, ivec({1, 0}), 6.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(lb(id, ivec({1, 1}), 6.0) == doctest::Approx(3.0).epsilon(1e-12));

    // worked channel: S = [[5,3],[3,2]], S^{-1} = [[2,-3],[-3,5]]
    const ChannelSample ch = worked_channel();
    CHECK(lb(ch, ivec({1, 0}), 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(lb(ch, ivec({1, 1}), 4.0) == doctest::Approx(4.0).epsilon(1e-12));

    // linear in p
    CHECK(lb(ch, ivec({2, 1}), 10.0) == doctest::Approx(10.0 * lb(ch, ivec({2, 1}), 1.0)));

    CHECK_THROWS_AS((void)lb(ch, ivec({0, 0}), 1.0), DomainError);
    CHECK_THROWS_AS((void)lb(ch, ivec({1, 0}), 0.0), DomainError);
}

TEST_CASE("c_factor and ub") {
    const ChannelSample id = make_channel(Matrix::Identity(2, 2));
    // tr(S^{-1}) = 2: divergent at p = 2, C = 2 at p = 4
    CHECK_FALSE(c_factor(id, 2.0).has_value());
    CHECK_FALSE(c_factor(id, 1.0).has_value());
    REQUIRE(c_factor(id, 4.0).has_value());
    CHECK(*c_factor(id, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(*ub(id, ivec({1, 0}), 4.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK_FALSE(ub(id, ivec({1, 0}), 2.0).has_value());

    // worked channel: tr(S^{-1}) = 7
    const ChannelSample ch = worked_channel();
    const BoundPair bp = bound_pair(ch, ivec({1, 0}), 14.0);
    CHECK(bp.trace_s_inv == doctest::Approx(7.0).epsilon(1e-12));
    REQUIRE(bp.c_factor.has_value());
    CHECK(*bp.c_factor == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(bp.lower == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(*bp.upper == doctest::Approx(14.0).epsilon(1e-12));
    CHECK_FALSE(bound_pair(ch, ivec({1, 0}), 7.0).upper.has_value());
}

TEST_CASE("sandwich holds on random draws") {
    RngStream rng(101, 0);
    for (int i = 0; i < 2000; ++i) {
        const int mt = 2 + static_cast<int>(rng.next_uniform() * 3.0);
        const int mr = mt + static_cast<int>(rng.next_uniform() * 3.0);
        const ChannelSample ch = sample_channel(mt, mr, rng);
        IntVector a = IntVector::Zero(mt);
        for (int k = 0; k < mt; ++k)
            a(k) = static_cast<int>(rng.next_u64() % 5) - 2;
        if (a.isZero()) a(0) = 1;
        const double p = 0.1 + rng.next_uniform() * 50.0;
        const BoundPair bp = bound_pair(ch, a, p);
        const double snr = effective_snr(ch, a, p);
        CHECK(snr >= bp.lower * (1.0 - 1e-9));
        if (bp.upper) CHECK(snr <= *bp.upper * (1.0 + 1e-9));
    }
}

TEST_CASE("ub approaches lb at large power") {
    RngStream rng(103, 0);
    const double p = 1e6;
    for (int i = 0; i < 200; ++i) {
        const ChannelSample ch = sample_channel(3, 3, rng);
        const BoundPair bp = bound_pair(ch, ivec({1, -1, 1}), p);
        if (!bp.upper) continue;  // near-singular draw, divergent series
        const double rel = *bp.upper / bp.lower - 1.0;
        CHECK(rel > 0.0);
        CHECK(rel <= 10.0 * bp.trace_s_inv / p);
    }
}

TEST_CASE("ordentlich_ub") {
    const ChannelSample id = make_channel(Matrix::Identity(2, 2));
    CHECK(ordentlich_ub(id, 9.0) == doctest::Approx(10.0).epsilon(1e-12));

    // dominates the optimal IF min-row SNR
    RngStream rng(107, 0);
    for (int i = 0; i < 300; ++i) {
        const ChannelSample ch = sample_channel(2, 2, rng);
        const double p = 0.2 + rng.next_uniform() * 40.0;
        const SchemeResult opt = exhaustive_if(ch, p, 50000);
        const double worst =
            *std::min_element(opt.snr_per_row.begin(), opt.snr_per_row.end());
        CHECK(ordentlich_ub(ch, p, 50000) >= worst * (1.0 - 1e-9));
    }
}

TEST_CASE("block_ordentlich_ub") {
    // block-diagonal channel decouples: block bounds match the sub-channels
    Matrix h = Matrix::Zero(4, 4);
    h.block(0, 0, 2, 2) = mat2(2, 1, 1, 1);
    h.block(2, 2, 2, 2) = mat2(1, 0, 0, 3);
    const ChannelSample ch = make_channel(h);
    const double p = 5.0;
    const BlockOrdentlichResult res = block_ordentlich_ub(ch, p, 2);
    REQUIRE(res.block_snr_bounds.size() == 2);
    CHECK(res.block_snr_bounds[0] ==
          doctest::Approx(ordentlich_ub(make_channel(mat2(2, 1, 1, 1)), p)).epsilon(1e-12));
    CHECK(res.block_snr_bounds[1] ==
          doctest::Approx(ordentlich_ub(make_channel(mat2(1, 0, 0, 3)), p)).epsilon(1e-12));
    CHECK(res.rate_bound ==
          doctest::Approx(2.0 * log2_plus(res.block_snr_bounds[0]) +
                          2.0 * log2_plus(res.block_snr_bounds[1])).epsilon(1e-12));
    // embedded vectors are a subset of the full-space candidates
    CHECK(res.embedded_min >= ordentlich_ub(ch, p) * (1.0 - 1e-9));

    RngStream rng(109, 0);
    for (int i = 0; i < 100; ++i) {
        const ChannelSample c = sample_channel(4, 4, rng);
        const double pw = 0.5 + rng.next_uniform() * 30.0;
        const auto r = block_ordentlich_ub(c, pw, 2);
        CHECK(r.embedded_min >= ordentlich_ub(c, pw) * (1.0 - 1e-9));
        // block scheme rate never beats the per-block SNR bound
        const SchemeResult blk = block_if(c, pw, 2, 20000);
        for (int b = 0; b < 2; ++b)
            CHECK(blk.block_rates[static_cast<std::size_t>(b)] <=
                  2.0 * log2_plus(r.block_snr_bounds[static_cast<std::size_t>(b)]) + 1e-9);
    }

    CHECK_THROWS_AS((void)block_ordentlich_ub(ch, p, 4), ConfigError);
}

TEST_CASE("prob_c_le_t_lower_bound") {
    const auto f = [](double x) { return x / (1.0 + x); };  // any CDF-like map
    CHECK(prob_c_le_t_lower_bound(0.5, 4.0, 2, f) == 0.0);
    CHECK(prob_c_le_t_lower_bound(1.0, 4.0, 2, f) == 0.0);
    // t = 2, p = 4, mt = 2: arg = 2/(4*(1/2)) = 1, bound = 1 - F(1) = 1/2
    CHECK(prob_c_le_t_lower_bound(2.0, 4.0, 2, f) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)prob_c_le_t_lower_bound(-1.0, 4.0, 2, f), DomainError);

    // monotone nondecreasing in t for a fixed CDF
    double prev = 0.0;
    for (double t = 1.01; t < 10.0; t += 0.25) {
        const double v = prob_c_le_t_lower_bound(t, 4.0, 2, f);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("identity_difference") {
    // scalar: 1/(1+2) = 1/2 - 1*(1/2)*(1/3)
    Matrix m1(1, 1);
    m1 << 2.0;
    CHECK(identity_difference(m1, rvec({1}), 1.0) < 1e-12);

    RngStream rng(113, 0);
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 7.0);
        const Matrix m = random_spd(n, rng);
        Vector a(n);
        for (int k = 0; k < n; ++k) a(k) = rng.next_normal();
        const double eps = 0.01 + rng.next_uniform() * 5.0;
        CHECK(identity_difference(m, a, eps) < 1e-9);
    }
    CHECK_THROWS_AS((void)identity_difference(m1, rvec({1}), 0.0), DomainError);
}

TEST_CASE("trace_ratio_bound") {
    // diagonal plug-in: a = e_k gives ratio = 1/d_k <= sum_i 1/d_i
    const Matrix d = mat2(2, 0, 0, 5);
    const TraceRatio t1 = trace_ratio_bound(d, rvec({1, 0}));
    CHECK(t1.ratio == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t1.trace == doctest::Approx(0.7).epsilon(1e-12));
    const TraceRatio t2 = trace_ratio_bound(d, rvec({0, 1}));
    CHECK(t2.ratio == doctest::Approx(0.2).epsilon(1e-12));

    RngStream rng(127, 0);
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 7.0);
        const Matrix m = random_spd(n, rng);
        Vector a(n);
        for (int k = 0; k < n; ++k) a(k) = rng.next_normal();
        const TraceRatio t = trace_ratio_bound(m, a);
        CHECK(t.ratio > 0.0);
        CHECK(t.ratio <= t.trace * (1.0 + 1e-12));
    }
}

TEST_CASE("ratio_geometric_series") {
    // scalar m = 1, eps = 1/2: exact ratio 3/2, delta 1/3
    Matrix m1(1, 1);
    m1 << 1.0;
    const GeometricSeriesCheck g = ratio_geometric_series(m1, rvec({1}), 0.5);
    CHECK(g.exact_ratio == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(g.delta == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(std::abs(g.exact_ratio - g.truncated_series) <
          std::pow(g.delta, 65) / (1.0 - g.delta) + 1e-10);

    RngStream rng(131, 0);
    for (int i = 0; i < 500; ++i) {
        const int n = 2 + static_cast<int>(rng.next_uniform() * 7.0);
        const Matrix m = random_spd(n, rng);
        Vector a(n);
        for (int k = 0; k < n; ++k) a(k) = rng.next_normal();
        const double eps = 0.01 + rng.next_uniform() * 2.0;
        const GeometricSeriesCheck c = ratio_geometric_series(m, a, eps);
        CHECK(c.delta > 0.0);
        CHECK(c.delta < 1.0);
        CHECK(std::abs(c.exact_ratio - c.truncated_series) <
              std::pow(c.delta, 65) / (1.0 - c.delta) + 1e-10);
    }
}

TEST_CASE("bif_advantage_power") {
    const ChannelSample id = make_channel(Matrix::Identity(2, 2));
    CHECK(bif_advantage_power(id) == doctest::Approx(1.0).epsilon(1e-12));

    // scaling c * H moves the threshold by 1/c^2
    RngStream rng(137, 0);
    const ChannelSample ch = sample_channel(3, 3, rng);
    const ChannelSample scaled = make_channel(3.0 * ch.h);
    CHECK(bif_advantage_power(scaled) ==
          doctest::Approx(bif_advantage_power(ch) / 9.0).epsilon(1e-10));

    // below the threshold the blocked search matches the unconstrained one
    for (int i = 0; i < 100; ++i) {
        const ChannelSample c = sample_channel(4, 4, rng);
        const double p = 0.5 * bif_advantage_power(c);
        const double full = exhaustive_if(c, p, 50000).sum_rate;
        const double blocked = block_if(c, p, 2, 50000).sum_rate;
        CHECK(blocked >= full - 1e-9);
    }
}
