#include <algorithm>
#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "ifsim/bounds.hpp"
#include "ifsim/coeff_search.hpp"
#include "ifsim/distributions.hpp"
#include "ifsim/errors.hpp"
#include "ifsim/experiments.hpp"
#include "ifsim/receivers.hpp"
#include "ifsim/rng.hpp"

namespace ifsim {

namespace {

// fixed stream offsets keep the checks independent of each other and of the
// experiment draws
constexpr std::uint64_t kValBase = 1u << 30;

void add_row(ResultTable& table, const std::string& name, double statistic,
             double threshold, bool pass) {
    table.row_labels.push_back(name);
    table.rows.push_back({statistic, threshold, pass ? 1.0 : 0.0});
}

Matrix random_spd(int n, RngStream& rng) {
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = rng.next_normal();
    Matrix m = b * b.transpose() + 0.1 * Matrix::Identity(n, n);
    return 0.5 * (m + m.transpose());
}

Vector random_vector(int n, RngStream& rng) {
    Vector a(n);
    for (int i = 0; i < n; ++i) a(i) = rng.next_normal();
    return a;
}

}  // namespace

ResultTable run_validation_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    const NumericPolicy policy = default_policy();
    ResultTable table;
    table.schema = {"statistic", "threshold", "pass"};
    const double p0 = db_to_linear(cfg.power_db_grid.front());
    long resamples = 0;

    {  // sandwich: LB <= SNR_eff <= UB on finite-C draws
        const long n = std::min<long>(cfg.samples, 2000);
        long violations = 0;
        IntVector e1 = IntVector::Zero(cfg.mt);
        e1(0) = 1;
        for (long i = 0; i < n; ++i) {
            RngStream rng(cfg.seed, kValBase + static_cast<std::uint64_t>(i));
            const ChannelSample ch = sample_channel(cfg.mt, cfg.mr, rng, policy);
            resamples += ch.resamples;
            const BoundPair bp = bound_pair(ch, e1, p0);
            const double snr = effective_snr(ch, e1, p0);
            if (bp.lower > snr * (1.0 + 1e-9)) ++violations;
            if (bp.upper && snr > *bp.upper * (1.0 + 1e-9)) ++violations;
        }
        add_row(table, "sandwich", static_cast<double>(violations), 0.0,
                violations == 0);
    }

    {  // difference identity, dims 2..8
        double max_resid = 0.0;
        for (int dim = 2; dim <= 8; ++dim) {
            for (int i = 0; i < 30; ++i) {
                RngStream rng(cfg.seed,
                              2 * kValBase + static_cast<std::uint64_t>(dim * 100 + i));
                const Matrix m = random_spd(dim, rng);
                const Vector a = random_vector(dim, rng);
                const double eps = 0.1 + rng.next_uniform() * 2.0;
                max_resid = std::max(max_resid, identity_difference(m, a, eps));
            }
        }
        add_row(table, "identity_difference", max_resid, 1e-9, max_resid < 1e-9);
    }

    {  // trace-ratio inequality, dims 2..8
        long violations = 0;
        for (int dim = 2; dim <= 8; ++dim) {
            for (int i = 0; i < 30; ++i) {
                RngStream rng(cfg.seed,
                              3 * kValBase + static_cast<std::uint64_t>(dim * 100 + i));
                const Matrix m = random_spd(dim, rng);
                const Vector a = random_vector(dim, rng);
                const TraceRatio tr = trace_ratio_bound(m, a);
                if (tr.ratio > tr.trace * (1.0 + 1e-12)) ++violations;
            }
        }
        add_row(table, "trace_ratio", static_cast<double>(violations), 0.0,
                violations == 0);
    }

    {  // geometric-series truncation remainder
        double max_excess = 0.0;
        for (int i = 0; i < 200; ++i) {
            RngStream rng(cfg.seed, 4 * kValBase + static_cast<std::uint64_t>(i));
            const int dim = 2 + static_cast<int>(rng.next_uniform() * 5.0);
            const Matrix m = random_spd(dim, rng);
            const Vector a = random_vector(dim, rng);
            const double eps = 0.05 + rng.next_uniform();
            const int k_max = policy.series_k_max;
            const auto gs = ratio_geometric_series(m, a, eps, k_max);
            const double allowed =
                std::pow(gs.delta, k_max + 1) / (1.0 - gs.delta) + 1e-10;
            max_excess = std::max(
                max_excess,
                std::abs(gs.exact_ratio - gs.truncated_series) - allowed);
        }
        add_row(table, "geometric_series", max_excess, 0.0, max_excess <= 0.0);
    }

    {  // Gamma law of the lower bound at (2, 2), a = e1
        const long n = std::max<long>(cfg.samples, 10000);
        IntVector e1 = IntVector::Zero(2);
        e1(0) = 1;
        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) {
            RngStream rng(cfg.seed, 5 * kValBase + static_cast<std::uint64_t>(i));
            const ChannelSample ch = sample_channel(2, 2, rng, policy);
            resamples += ch.resamples;
            samples.push_back(lb(ch, e1, p0));
        }
        const GammaLaw law = lb_gamma_params(2, 2, p0, e1);
        const EmpiricalCdf emp(std::move(samples));
        const double ks =
            ks_statistic(emp, [&](double x) { return gamma_cdf(x, law); });
        const double threshold = 1.95 / std::sqrt(static_cast<double>(n));
        add_row(table, "gamma_law_ks", ks, threshold, ks < threshold);
    }

    {  // quadrature vs closed form for rho, K = 2
        double max_diff = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double eps = 0.70710678118654752440 * i / 19.0;
            max_diff = std::max(max_diff,
                                std::abs(rho(eps, 2) - rho_closed_form_k2(eps)));
        }
        add_row(table, "rho_cross_check", max_diff, 1e-6, max_diff < 1e-6);
    }

    {  // transference: lambda_k(G) * lambda_{3-k}(dual) in (1, 2)
        long violations = 0;
        for (int i = 0; i < 100; ++i) {
            RngStream rng(cfg.seed, 6 * kValBase + static_cast<std::uint64_t>(i));
            Matrix g(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) g(r, c) = rng.next_normal();
            if (std::abs(g.determinant()) < 1e-3) continue;
            const Matrix dual = g.transpose().inverse();
            const double r_g = g.colwise().norm().maxCoeff() * (1.0 + 1e-9);
            const double r_d = dual.colwise().norm().maxCoeff() * (1.0 + 1e-9);
            for (int k = 1; k <= 2; ++k) {
                const double prod = successive_minima(g, k, r_g) *
                                    successive_minima(dual, 3 - k, r_d);
                if (prod <= 1.0 || prod >= 2.0) ++violations;
            }
        }
        add_row(table, "transference", static_cast<double>(violations), 0.0,
                violations == 0);
    }

    {  // low-power region where the block scheme matches or beats IF
        long violations = 0;
        for (int i = 0; i < 100; ++i) {
            RngStream rng(cfg.seed, 7 * kValBase + static_cast<std::uint64_t>(i));
            const ChannelSample ch = sample_channel(4, 4, rng, policy);
            resamples += ch.resamples;
            const double p = 0.5 * bif_advantage_power(ch);
            const auto blk = block_if_lower(ch, p);
            const auto full = exhaustive_if(ch, p, cfg.budget);
            if (blk.sum_rate < full.sum_rate - 1e-9) ++violations;
        }
        add_row(table, "bif_region", static_cast<double>(violations), 0.0,
                violations == 0);
    }

    {  // NB-IF min-row SNR never below MMSE's
        long violations = 0;
        for (int i = 0; i < 500; ++i) {
            RngStream rng(cfg.seed, 8 * kValBase + static_cast<std::uint64_t>(i));
            const ChannelSample ch = sample_channel(cfg.mt, cfg.mr, rng, policy);
            resamples += ch.resamples;
            const auto nb = nb_if(ch, p0);
            const auto mmse = mmse_snr(ch, p0);
            const double nb_min =
                *std::min_element(nb.snr_per_row.begin(), nb.snr_per_row.end());
            const double mmse_min = *std::min_element(mmse.begin(), mmse.end());
            if (nb_min < mmse_min * (1.0 - 1e-9)) ++violations;
        }
        add_row(table, "nbif_vs_mmse", static_cast<double>(violations), 0.0,
                violations == 0);
    }

    {  // Pr{C <= t} lower bound vs Monte-Carlo frequency, mt = mr = 2, p = 1
        const long n = std::min<long>(cfg.samples, 10000);
        const double p = 1.0;
        std::vector<double> dmins, traces;
        dmins.reserve(static_cast<std::size_t>(n));
        traces.reserve(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) {
            RngStream rng(cfg.seed, 9 * kValBase + static_cast<std::uint64_t>(i));
            const ChannelSample ch = sample_channel(2, 2, rng, policy);
            resamples += ch.resamples;
            dmins.push_back(ch.d_min());
            traces.push_back(invert_spd(ch.s).trace());
        }
        const EmpiricalCdf f_dmin(std::move(dmins));
        double max_excess = -1.0;
        for (double t : {1.5, 2.0, 5.0, 10.0, 100.0}) {
            const double bound =
                prob_c_le_t_lower_bound(t, p, 2, [&](double x) { return f_dmin(x); });
            long hits = 0;
            for (double tr : traces)
                if (tr < p && 1.0 / (1.0 - tr / p) <= t) ++hits;
            const double freq = static_cast<double>(hits) / static_cast<double>(n);
            const double se = std::sqrt(freq * (1.0 - freq) / static_cast<double>(n));
            max_excess = std::max(max_excess, bound - freq - 3.0 * se);
        }
        add_row(table, "prob_c_bound", max_excess, 0.0, max_excess <= 0.0);
    }

    {  // block upper bound evaluated on embedded vectors dominates the full min
        long violations = 0;
        for (int i = 0; i < 200; ++i) {
            RngStream rng(cfg.seed, 10 * kValBase + static_cast<std::uint64_t>(i));
            const ChannelSample ch = sample_channel(4, 4, rng, policy);
            resamples += ch.resamples;
            const auto blk = block_ordentlich_ub(ch, p0, 2, cfg.budget);
            const double full = ordentlich_ub(ch, p0, cfg.budget);
            if (blk.embedded_min < full * (1.0 - 1e-9)) ++violations;
        }
        add_row(table, "block_ord_embedded", static_cast<double>(violations), 0.0,
                violations == 0);
    }

    nlohmann::json meta;
    meta["experiment"] = "validate";
    meta["mt"] = cfg.mt;
    meta["mr"] = cfg.mr;
    meta["samples"] = cfg.samples;
    meta["seed"] = cfg.seed;
    meta["power_db_grid"] = cfg.power_db_grid;
    meta["resamples"] = resamples;
    meta["truncations"] = 0;
    meta["provenance"] = "ifsim 0.1.0";
    table.metadata_json = meta.dump();
    return table;
}

}  // namespace ifsim
