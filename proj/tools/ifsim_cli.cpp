#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ifsim/errors.hpp"
#include "ifsim/experiments.hpp"
#include "ifsim/toy_lattice.hpp"

namespace {

// "a:b:step" inclusive grid, or a single value
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        grid.push_back(std::stod(text));
        return grid;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ifsim::ConfigError("grid must be VALUE or START:END:STEP: " + text);
    const double start = std::stod(text.substr(0, c1));
    const double end = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (step <= 0.0) throw ifsim::ConfigError("grid step must be positive");
    for (double v = start; v <= end + step * 1e-9; v += step) grid.push_back(v);
    if (grid.empty()) throw ifsim::ConfigError("empty grid: " + text);
    return grid;
}

std::vector<ifsim::Scheme> parse_schemes(const std::string& text) {
    std::vector<ifsim::Scheme> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(ifsim::parse_scheme(item));
    }
    if (out.empty()) throw ifsim::ConfigError("no schemes given");
    return out;
}

void write_output(const ifsim::ResultTable& table, const std::string& out_path,
                  const std::string& format) {
    const std::string text =
        (format == "json") ? table.to_json() : table.to_csv();
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ifsim::IoError("cannot open output file: " + out_path);
    f << text;
    if (!f) throw ifsim::IoError("write failed: " + out_path);
}

struct CommonOpts {
    ifsim::ExperimentConfig cfg;
    std::string power_db = "10";
    std::string schemes;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--mt", opts.cfg.mt, "transmit antennas (2..8)");
    cmd->add_option("--mr", opts.cfg.mr, "receive antennas (>= mt)");
    cmd->add_option("--power-db", opts.power_db,
                    "power in dB: single value or START:END:STEP");
    cmd->add_option("--samples", opts.cfg.samples, "channel draws per power point");
    cmd->add_option("--seed", opts.cfg.seed, "RNG seed");
    cmd->add_option("--schemes", opts.schemes,
                    "comma list of ZF,MMSE,IF,B-IF,NB-IF,DSV,LB,UB,ORD-UB");
    cmd->add_option("--block-size", opts.cfg.block_size, "B-IF block size (2 or 3)");
    cmd->add_option("--budget", opts.cfg.budget, "candidate enumeration budget");
    cmd->add_option("--out", opts.cfg.out_path, "output file (default stdout)");
    cmd->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", opts.cfg.workers, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integer-forcing MIMO receiver simulation lab"};
    app.require_subcommand(1);

    CommonOpts cdf_opts, sweep_opts, val_opts;
    sweep_opts.cfg.samples = 2000;

    auto* cdf = app.add_subcommand(
        "cdf", "Per-draw effective SNR samples; columns: sample, power_db, one "
               "column per scheme (min-row SNR; LB/UB use a = e1, UB blank "
               "when divergent)");
    add_common(cdf, cdf_opts);

    auto* sweep = app.add_subcommand(
        "rate-sweep", "Average per-stream rate vs power; columns: power_db, one "
                      "mean-rate column per scheme");
    add_common(sweep, sweep_opts);

    auto* validate = app.add_subcommand(
        "validate", "Invariant suite; columns: check, statistic, threshold, "
                    "pass (1/0); exit code 2 on any failure");
    add_common(validate, val_opts);

    std::string eps_grid_text = "0:0.7:0.035";
    int rho_k = 2;
    std::string rho_out, rho_format = "csv";
    auto* rho_cmd = app.add_subcommand(
        "rho", "rho(eps) table; columns: eps, rho_quadrature, rho_closed_form "
               "(K=2 only), abs_diff");
    rho_cmd->add_option("--eps-grid", eps_grid_text, "eps grid START:END:STEP");
    rho_cmd->add_option("--k", rho_k, "F-distribution degrees K = mr - mt + 2");
    rho_cmd->add_option("--out", rho_out, "output file (default stdout)");
    rho_cmd->add_option("--format", rho_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::int64_t> toy_h;
    std::vector<double> toy_y;
    auto* toy = app.add_subcommand(
        "solve-toy", "Noiseless 2x2 integer-channel decode via Cramer's rule");
    toy->add_option("--channel", toy_h, "channel entries h11 h12 h21 h22")
        ->expected(4)
        ->required();
    toy->add_option("--y", toy_y, "received values y1 y2")->expected(2)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cdf->parsed()) {
            cdf_opts.cfg.power_db_grid = parse_grid(cdf_opts.power_db);
            cdf_opts.cfg.schemes = parse_schemes(
                cdf_opts.schemes.empty() ? "ZF,MMSE,IF,B-IF,NB-IF,DSV,LB,UB"
                                         : cdf_opts.schemes);
            write_output(ifsim::run_cdf_experiment(cdf_opts.cfg),
                         cdf_opts.cfg.out_path, cdf_opts.format);
        } else if (sweep->parsed()) {
            sweep_opts.cfg.power_db_grid = parse_grid(sweep_opts.power_db);
            sweep_opts.cfg.schemes = parse_schemes(
                sweep_opts.schemes.empty() ? "ZF,MMSE,IF,B-IF,NB-IF,DSV,ORD-UB"
                                           : sweep_opts.schemes);
            write_output(ifsim::run_rate_sweep(sweep_opts.cfg),
                         sweep_opts.cfg.out_path, sweep_opts.format);
        } else if (validate->parsed()) {
            val_opts.cfg.power_db_grid = parse_grid(val_opts.power_db);
            val_opts.cfg.schemes = parse_schemes("IF");  // suite picks its own
            const ifsim::ResultTable table = ifsim::run_validation_suite(val_opts.cfg);
            write_output(table, val_opts.cfg.out_path, val_opts.format);
            if (!ifsim::validation_all_pass(table)) return 2;
        } else if (rho_cmd->parsed()) {
            write_output(ifsim::run_rho_table(parse_grid(eps_grid_text), rho_k),
                         rho_out, rho_format);
        } else if (toy->parsed()) {
            ifsim::IntegerChannel2x2 ic{{{{toy_h[0], toy_h[1]}, {toy_h[2], toy_h[3]}}}};
            const auto x = ifsim::solve_integer_channel(
                ic, std::array<double, 2>{toy_y[0], toy_y[1]});
            std::printf("x1,x2\n%.12g,%.12g\n", x[0], x[1]);
        }
    } catch (const ifsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ifsim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
