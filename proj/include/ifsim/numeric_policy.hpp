#pragma once

namespace ifsim {

// Single record of the numeric constants used by the matrix and bound
// routines. Only override for experiments; the defaults are the contract.
struct NumericPolicy {
    double symmetry_rel_tol = 1e-10;       // Gram symmetry, relative to Frobenius norm
    double eigen_sum_rel_tol = 1e-8;       // eigenvalue sum vs trace
    double dmin_reject = 1e-12;            // channel draws with d_min below this are resampled
    double cholesky_pivot_min = 1e-14;     // pivot at or below this -> singularity error
    double inverse_rel_tol = 1e-8;
    double cholesky_recon_tol = 1e-10;
    double special_fn_abs_tol = 1e-12;     // incomplete gamma/beta target accuracy
    double rho_quadrature_tol = 1e-8;      // adaptive Simpson absolute tolerance
    int series_k_max = 64;                 // geometric-series truncation default
};

inline const NumericPolicy& default_policy() {
    static const NumericPolicy p{};
    return p;
}

}  // namespace ifsim
