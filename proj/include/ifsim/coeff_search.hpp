#pragma once

#include <vector>

#include "ifsim/receivers.hpp"

namespace ifsim {

// Integer vectors inside the norm ball, deduplicated up to global sign
// (lexicographically positive representative kept) and sorted by effective
// SNR descending, ties broken toward the lexicographically smallest vector.
struct CandidateSet {
    std::vector<IntVector> vectors;
    std::vector<double> snrs;  // parallel to vectors
    double norm_cap = 0.0;     // the cap actually enumerated
    bool truncated = false;    // enumeration budget forced a reduced cap or cut
};

struct SchemeResult {
    CoefficientMatrix a;
    std::vector<double> snr_per_row;
    std::vector<double> rate_per_row;   // log2+ per row
    std::vector<double> block_rates;    // one entry per block for block schemes
    double sum_rate = 0.0;
    bool truncated = false;
};

// How a block scheme turns its selected rows into a block rate.
enum class BlockRateMode {
    EqualPerBlock,  // block rate = size * min-row rate
    PerRow,         // block rate = sum of per-row rates
};

// Norm cap from the search constraint: ||a|| < 1 + sqrt(P) * lambda_max(H),
// lambda_max being the largest singular value of H.
double candidate_norm_cap(const ChannelSample& ch, double p);

// Sign-reduced nonzero integer vectors with ||a|| < cap.
std::vector<IntVector> integer_ball(int dim, double cap);

// Cap shrunk so the ball's estimated point count fits the budget; never drops
// below the unit vectors and never exceeds the input cap.
double budget_reduced_cap(int dim, double cap, long budget);

CandidateSet enumerate_candidates(const ChannelSample& ch, double p, long budget);

// Candidates restricted to a coordinate window [start, start+size), enumerated
// in the window but embedded in Z^{M_T}. Shares the cap/budget rules above.
CandidateSet enumerate_candidates_block(const ChannelSample& ch, double p, long budget,
                                        int start, int size);

// Greedy max-min IF: scan the sorted candidate list, keep each vector that is
// linearly independent of those kept, stop at M_T rows.
SchemeResult exhaustive_if(const ChannelSample& ch, double p, long budget);

SchemeResult block_if(const ChannelSample& ch, double p, int block_size, long budget);

// Fixed four-vector family {e1, e2, e1+e2, e1-e2} per 2-block; keeps the two
// best (any two distinct members are independent).
SchemeResult block_if_lower(const ChannelSample& ch, double p);

// Per block, the n-th best candidate ignoring independence; an upper bound on
// the block_if sum rate.
double block_if_upper(const ChannelSample& ch, double p, int block_size, long budget);

SchemeResult nb_if(const ChannelSample& ch, double p,
                   BlockRateMode mode = BlockRateMode::EqualPerBlock);

SchemeResult dsv(const ChannelSample& ch, double p);

// k-th successive minimum of the lattice spanned by g, by enumeration of all
// integer coefficient vectors with ||G c|| <= radius_budget.
double successive_minima(const Matrix& g, int k, double radius_budget);

}  // namespace ifsim
