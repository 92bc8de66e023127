#include "ifsim/experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "ifsim/bounds.hpp"
#include "ifsim/coeff_search.hpp"
#include "ifsim/distributions.hpp"
#include "ifsim/errors.hpp"
#include "ifsim/receivers.hpp"
#include "ifsim/rng.hpp"

namespace ifsim {

namespace {

using nlohmann::json;

constexpr const char* kProvenance = "ifsim 0.1.0";

std::string fmt_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double min_of(const std::vector<double>& v) {
    return *std::min_element(v.begin(), v.end());
}

double sum_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

json config_json(const ExperimentConfig& cfg) {
    json schemes = json::array();
    for (Scheme s : cfg.schemes) schemes.push_back(scheme_name(s));
    return json{{"mt", cfg.mt},
                {"mr", cfg.mr},
                {"power_db_grid", cfg.power_db_grid},
                {"samples", cfg.samples},
                {"seed", cfg.seed},
                {"schemes", schemes},
                {"block_size", cfg.block_size},
                {"budget", cfg.budget},
                // worker count deliberately omitted: output must be identical
                // for any partitioning
                {"provenance", kProvenance}};
}

// Run fn(index, worker) for every index in [0, total), strided across the
// workers so expensive high-power draws spread evenly. Callers write results
// into per-index slots, making the partition invisible in the output.
void parallel_ranges(long total, int workers,
                     const std::function<void(long, int)>& fn) {
    const int n = static_cast<int>(std::clamp<long>(workers, 1, std::max<long>(total, 1)));
    if (n == 1) {
        for (long i = 0; i < total; ++i) fn(i, 0);
        return;
    }
    std::vector<std::thread> threads;
    std::exception_ptr first_error;
    std::mutex error_mu;
    for (int w = 0; w < n; ++w) {
        threads.emplace_back([&, w] {
            try {
                for (long i = w; i < total; i += n) fn(i, w);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct DrawStats {
    long resamples = 0;
    long truncations = 0;
};

// Per-draw evaluation shared by the CDF experiment (min-row SNR) and the
// rate sweep (average per-stream rate).
struct SchemeEval {
    Cell snr;   // scheme's min-row effective SNR (or bound value)
    Cell rate;  // sum rate / mt
};

SchemeEval eval_scheme(Scheme s, const ChannelSample& ch, double p,
                       const ExperimentConfig& cfg, DrawStats& stats) {
    const int mt = ch.mt();
    IntVector e1 = IntVector::Zero(mt);
    e1(0) = 1;
    switch (s) {
        case Scheme::ZF: {
            const auto snr = zf_snr(ch, p);
            double rate = 0.0;
            for (double x : snr) rate += log2_plus(x);
            return {min_of(snr), rate / mt};
        }
        case Scheme::MMSE: {
            const auto snr = mmse_snr(ch, p);
            double rate = 0.0;
            for (double x : snr) rate += log2_plus(x);
            return {min_of(snr), rate / mt};
        }
        case Scheme::IF: {
            const auto res = exhaustive_if(ch, p, cfg.budget);
            if (res.truncated) ++stats.truncations;
            return {min_of(res.snr_per_row), res.sum_rate / mt};
        }
        case Scheme::BIF: {
            const auto res = block_if(ch, p, cfg.block_size, cfg.budget);
            if (res.truncated) ++stats.truncations;
            return {min_of(res.snr_per_row), res.sum_rate / mt};
        }
        case Scheme::NBIF: {
            // per-row rates: the blocks are decoded independently, so rows of
            // a block need not share a rate
            const auto res = nb_if(ch, p, BlockRateMode::PerRow);
            return {min_of(res.snr_per_row), res.sum_rate / mt};
        }
        case Scheme::DSV: {
            const auto res = dsv(ch, p);
            return {min_of(res.snr_per_row), res.sum_rate / mt};
        }
        case Scheme::LB: {
            const double v = lb(ch, e1, p);
            return {v, log2_plus(v)};
        }
        case Scheme::UB: {
            const auto v = ub(ch, e1, p);
            if (!v) return {std::nullopt, std::nullopt};
            return {*v, log2_plus(*v)};
        }
        case Scheme::ORD_UB: {
            const double v = ordentlich_ub(ch, p, cfg.budget);
            return {v, log2_plus(v)};
        }
    }
    throw ConfigError("eval_scheme: unknown scheme");
}

void finish_metadata(ResultTable& table, json meta, const DrawStats& stats) {
    meta["resamples"] = stats.resamples;
    meta["truncations"] = stats.truncations;
    table.metadata_json = meta.dump();
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
    std::string u;
    for (char c : name) u.push_back(static_cast<char>(std::toupper(c)));
    if (u == "ZF") return Scheme::ZF;
    if (u == "MMSE") return Scheme::MMSE;
    if (u == "IF") return Scheme::IF;
    if (u == "B-IF" || u == "BIF") return Scheme::BIF;
    if (u == "NB-IF" || u == "NBIF") return Scheme::NBIF;
    if (u == "DSV") return Scheme::DSV;
    if (u == "LB") return Scheme::LB;
    if (u == "UB") return Scheme::UB;
    if (u == "ORD-UB" || u == "ORDUB") return Scheme::ORD_UB;
    throw ConfigError("unknown scheme: " + name);
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::ZF: return "ZF";
        case Scheme::MMSE: return "MMSE";
        case Scheme::IF: return "IF";
        case Scheme::BIF: return "B-IF";
        case Scheme::NBIF: return "NB-IF";
        case Scheme::DSV: return "DSV";
        case Scheme::LB: return "LB";
        case Scheme::UB: return "UB";
        case Scheme::ORD_UB: return "ORD-UB";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (mt < 2 || mt > mr) throw ConfigError("config: require 2 <= mt <= mr");
    if (mt > 8) throw ConfigError("config: mt > 8 not supported by the search");
    if (samples < 100) throw ConfigError("config: samples must be >= 100");
    if (power_db_grid.empty()) throw ConfigError("config: empty power grid");
    if (!std::is_sorted(power_db_grid.begin(), power_db_grid.end()))
        throw ConfigError("config: power grid must be sorted");
    if (block_size < 2 || block_size > 3)
        throw ConfigError("config: block_size must be 2 or 3");
    if (budget < 2L * mt) throw ConfigError("config: budget too small");
    if (workers < 1 || workers > 64) throw ConfigError("config: workers in [1,64]");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::string ResultTable::to_csv() const {
    std::string out = "# " + metadata_json + "\n";
    bool first = true;
    if (!row_labels.empty()) {
        out += "check";
        first = false;
    }
    for (const auto& col : schema) {
        if (!first) out += ",";
        out += col;
        first = false;
    }
    out += "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        first = true;
        if (!row_labels.empty()) {
            out += row_labels[i];
            first = false;
        }
        for (const auto& cell : rows[i]) {
            if (!first) out += ",";
            if (cell) out += fmt_number(*cell);
            first = false;
        }
        out += "\n";
    }
    return out;
}

std::string ResultTable::to_json() const {
    json j;
    j["metadata"] = json::parse(metadata_json);
    j["schema"] = schema;
    if (!row_labels.empty()) j["labels"] = row_labels;
    json rows_j = json::array();
    for (const auto& row : rows) {
        json r = json::array();
        for (const auto& cell : row) {
            if (cell)
                r.push_back(*cell);
            else
                r.push_back(nullptr);
        }
        rows_j.push_back(std::move(r));
    }
    j["rows"] = std::move(rows_j);
    return j.dump(2) + "\n";
}

ResultTable run_cdf_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultTable table;
    table.schema = {"sample", "power_db"};
    for (Scheme s : cfg.schemes) table.schema.push_back(scheme_name(s));

    const long per_power = cfg.samples;
    const long total = per_power * static_cast<long>(cfg.power_db_grid.size());
    table.rows.resize(static_cast<std::size_t>(total));
    std::vector<DrawStats> worker_stats(static_cast<std::size_t>(cfg.workers) + 1);

    parallel_ranges(total, cfg.workers, [&](long idx, int w) {
        const NumericPolicy policy = default_policy();
        DrawStats& stats = worker_stats[static_cast<std::size_t>(w)];
        const long power_idx = idx / per_power;
        const long draw = idx % per_power;
        const double p =
            db_to_linear(cfg.power_db_grid[static_cast<std::size_t>(power_idx)]);
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(idx));
        const ChannelSample ch = sample_channel(cfg.mt, cfg.mr, rng, policy);
        stats.resamples += ch.resamples;
        std::vector<Cell> row;
        row.reserve(table.schema.size());
        row.push_back(static_cast<double>(draw));
        row.push_back(cfg.power_db_grid[static_cast<std::size_t>(power_idx)]);
        for (Scheme s : cfg.schemes) {
            try {
                row.push_back(eval_scheme(s, ch, p, cfg, stats).snr);
            } catch (const SearchExhaustedError& e) {
                throw SearchExhaustedError("draw " + std::to_string(idx) + ": " +
                                           e.what());
            }
        }
        table.rows[static_cast<std::size_t>(idx)] = std::move(row);
    });

    DrawStats total_stats;
    for (const auto& s : worker_stats) {
        total_stats.resamples += s.resamples;
        total_stats.truncations += s.truncations;
    }
    json meta = config_json(cfg);
    meta["experiment"] = "cdf";
    finish_metadata(table, meta, total_stats);
    return table;
}

ResultTable run_rate_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultTable table;
    table.schema = {"power_db"};
    for (Scheme s : cfg.schemes) table.schema.push_back(scheme_name(s));

    const long per_power = cfg.samples;
    const std::size_t n_schemes = cfg.schemes.size();
    const std::size_t n_powers = cfg.power_db_grid.size();
    const long total = per_power * static_cast<long>(n_powers);
    // per-draw rates kept so the reduction order is independent of the
    // worker partition
    std::vector<std::vector<Cell>> draw_rates(static_cast<std::size_t>(total));
    std::vector<DrawStats> worker_stats(static_cast<std::size_t>(cfg.workers) + 1);

    parallel_ranges(total, cfg.workers, [&](long idx, int w) {
        const NumericPolicy policy = default_policy();
        DrawStats& stats = worker_stats[static_cast<std::size_t>(w)];
        const long power_idx = idx / per_power;
        const double p =
            db_to_linear(cfg.power_db_grid[static_cast<std::size_t>(power_idx)]);
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(idx));
        const ChannelSample ch = sample_channel(cfg.mt, cfg.mr, rng, policy);
        stats.resamples += ch.resamples;
        std::vector<Cell> rates;
        rates.reserve(n_schemes);
        for (Scheme s : cfg.schemes) {
            try {
                rates.push_back(eval_scheme(s, ch, p, cfg, stats).rate);
            } catch (const SearchExhaustedError& e) {
                throw SearchExhaustedError("draw " + std::to_string(idx) + ": " +
                                           e.what());
            }
        }
        draw_rates[static_cast<std::size_t>(idx)] = std::move(rates);
    });

    for (std::size_t pi = 0; pi < n_powers; ++pi) {
        std::vector<Cell> row;
        row.push_back(cfg.power_db_grid[pi]);
        for (std::size_t si = 0; si < n_schemes; ++si) {
            double sum = 0.0;
            long count = 0;
            for (long d = 0; d < per_power; ++d) {
                const auto& cell =
                    draw_rates[pi * static_cast<std::size_t>(per_power) +
                               static_cast<std::size_t>(d)][si];
                if (cell) {
                    sum += *cell;
                    ++count;
                }
            }
            row.push_back(count > 0 ? Cell(sum / count) : std::nullopt);
        }
        table.rows.push_back(std::move(row));
    }

    DrawStats total_stats;
    for (const auto& s : worker_stats) {
        total_stats.resamples += s.resamples;
        total_stats.truncations += s.truncations;
    }
    json meta = config_json(cfg);
    meta["experiment"] = "rate-sweep";
    finish_metadata(table, meta, total_stats);
    return table;
}

ResultTable run_rho_table(const std::vector<double>& eps_grid, int k) {
    constexpr double kEpsMax = 0.70710678118654752440;
    ResultTable table;
    table.schema = {"eps", "rho_quadrature", "rho_closed_form", "abs_diff"};
    for (double eps : eps_grid) {
        if (eps < 0.0 || eps > kEpsMax)
            throw ConfigError("rho table: eps outside [0, 1/sqrt(2)]");
        std::vector<Cell> row;
        row.push_back(eps);
        const double q = rho(eps, k);
        row.push_back(q);
        if (k == 2) {
            const double c = rho_closed_form_k2(eps);
            row.push_back(c);
            row.push_back(std::abs(q - c));
        } else {
            row.push_back(std::nullopt);
            row.push_back(std::nullopt);
        }
        table.rows.push_back(std::move(row));
    }
    json meta;
    meta["experiment"] = "rho";
    meta["k"] = k;
    meta["provenance"] = kProvenance;
    table.metadata_json = meta.dump();
    return table;
}

bool validation_all_pass(const ResultTable& table) {
    const auto it = std::find(table.schema.begin(), table.schema.end(), "pass");
    if (it == table.schema.end()) return false;
    const std::size_t col = static_cast<std::size_t>(it - table.schema.begin());
    for (const auto& row : table.rows) {
        if (!row[col] || *row[col] != 1.0) return false;
    }
    return true;
}

}  // namespace ifsim
