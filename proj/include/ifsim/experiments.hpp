#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifsim/matrix_core.hpp"

namespace ifsim {

enum class Scheme { ZF, MMSE, IF, BIF, NBIF, DSV, LB, UB, ORD_UB };

// Parse the CLI spelling (ZF, MMSE, IF, B-IF, NB-IF, DSV, LB, UB, ORD-UB).
Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);

struct ExperimentConfig {
    int mt = 2;
    int mr = 2;
    std::vector<double> power_db_grid;
    long samples = 10000;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes;
    int block_size = 2;
    long budget = 200000;
    std::string out_path;  // empty = stdout
    int workers = 1;

    void validate() const;  // throws ConfigError
};

// One table cell: a number or empty (divergent upper bound etc.).
using Cell = std::optional<double>;

struct ResultTable {
    std::vector<std::string> schema;
    std::vector<std::vector<Cell>> rows;
    // pass/fail labels for the validation suite, parallel to rows (else empty)
    std::vector<std::string> row_labels;
    std::string metadata_json;  // config echo, provenance, counters

    std::string to_csv() const;
    std::string to_json() const;
};

double db_to_linear(double db);

ResultTable run_cdf_experiment(const ExperimentConfig& cfg);
ResultTable run_rate_sweep(const ExperimentConfig& cfg);
ResultTable run_validation_suite(const ExperimentConfig& cfg);
ResultTable run_rho_table(const std::vector<double>& eps_grid, int k);

// True when every validation row passed.
bool validation_all_pass(const ResultTable& table);

}  // namespace ifsim
