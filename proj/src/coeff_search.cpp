#include "ifsim/coeff_search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ifsim/errors.hpp"

namespace ifsim {

namespace {

bool lex_less(const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(),
                                        b.data(), b.data() + b.size());
}

// Keep the sign representative whose first nonzero entry is positive.
bool lex_positive(const IntVector& a) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != 0) return a(i) > 0;
    }
    return false;  // zero vector is not a candidate
}

}  // namespace

// All sign-reduced nonzero integer vectors of dimension dim with ||a|| < cap.
std::vector<IntVector> integer_ball(int dim, double cap) {
    std::vector<IntVector> out;
    const double cap_sq = cap * cap;
    const int r = static_cast<int>(std::floor(cap));
    IntVector cur = IntVector::Zero(dim);
    std::vector<int> v(dim, 0);
    std::function<void(int, long)> rec = [&](int idx, long partial) {
        if (idx == dim) {
            if (partial == 0) return;
            for (int i = 0; i < dim; ++i) cur(i) = v[i];
            if (lex_positive(cur)) out.push_back(cur);
            return;
        }
        for (int x = -r; x <= r; ++x) {
            const long p = partial + static_cast<long>(x) * x;
            if (static_cast<double>(p) >= cap_sq) continue;
            v[idx] = x;
            rec(idx + 1, p);
        }
        v[idx] = 0;
    };
    rec(0, 0);
    return out;
}

namespace {

// Volume of the unit d-ball, for estimating lattice-point counts.
// V_d = V_{d-2} * 2*pi / d with V_0 = 1, V_1 = 2.
double unit_ball_volume(int d) {
    double v = (d % 2 == 0) ? 1.0 : 2.0;
    for (int k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) v *= 2.0 * M_PI / k;
    return v;
}

}  // namespace

double budget_reduced_cap(int dim, double cap, long budget) {
    // Estimated sign-reduced point count is half the ball volume; allow 50%
    // slack before shrinking, the hard cut happens after sorting.
    const double est = unit_ball_volume(dim) * std::pow(cap, dim) / 2.0;
    const double allowance = static_cast<double>(budget) * 1.5;
    if (est <= allowance) return cap;
    double reduced = std::pow(2.0 * allowance / unit_ball_volume(dim), 1.0 / dim);
    reduced = std::max(reduced, 1.5);  // keep the unit vectors
    return std::min(reduced, cap);
}

namespace {

struct Scored {
    double snr;
    IntVector vec;
};

void sort_by_snr(std::vector<Scored>& scored) {
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.snr != b.snr) return a.snr > b.snr;
        return lex_less(a.vec, b.vec);
    });
}

CandidateSet build_candidates(const Matrix& kernel, int enum_dim, int embed_offset,
                              int full_dim, double cap, long budget) {
    const double enum_cap = budget_reduced_cap(enum_dim, cap, budget);
    bool truncated = enum_cap < cap;

    const std::vector<IntVector> raw = integer_ball(enum_dim, enum_cap);

    std::vector<Scored> scored;
    scored.reserve(raw.size());
    for (const auto& v : raw) {
        IntVector a = IntVector::Zero(full_dim);
        a.segment(embed_offset, enum_dim) = v;
        scored.push_back({effective_snr_from_kernel(kernel, a), std::move(a)});
    }
    sort_by_snr(scored);
    if (static_cast<long>(scored.size()) > budget) {
        scored.resize(static_cast<std::size_t>(budget));
        truncated = true;
    }

    CandidateSet set;
    set.norm_cap = cap;
    set.truncated = truncated;
    set.vectors.reserve(scored.size());
    set.snrs.reserve(scored.size());
    for (auto& s : scored) {
        set.vectors.push_back(std::move(s.vec));
        set.snrs.push_back(s.snr);
    }
    return set;
}

// Greedy independent selection from a sorted candidate list. Exact for the
// max-min objective (matroid exchange argument); cross-checked against the
// brute-force oracle in tests.
std::vector<int> greedy_independent(const CandidateSet& set, int want) {
    std::vector<int> kept;
    CoefficientMatrix partial;
    for (int i = 0; i < static_cast<int>(set.vectors.size()) &&
                    static_cast<int>(kept.size()) < want; ++i) {
        partial.rows.push_back(set.vectors[i]);
        if (integer_full_rank(partial)) {
            kept.push_back(i);
        } else {
            partial.rows.pop_back();
        }
    }
    return kept;
}

struct Block {
    int start;
    int size;
};

std::vector<Block> make_blocks(int mt, int block_size) {
    std::vector<Block> blocks;
    for (int start = 0; start < mt; start += block_size) {
        blocks.push_back({start, std::min(block_size, mt - start)});
    }
    return blocks;
}

IntVector unit_vec(int dim, int i) {
    IntVector e = IntVector::Zero(dim);
    e(i) = 1;
    return e;
}

}  // namespace

double candidate_norm_cap(const ChannelSample& ch, double p) {
    return 1.0 + std::sqrt(p) * ch.lambda_max();
}

CandidateSet enumerate_candidates(const ChannelSample& ch, double p, long budget) {
    if (budget < 2 * ch.mt())
        throw ConfigError("enumerate_candidates: budget must be at least 2*M_T");
    const Matrix kernel = snr_kernel(ch, p);
    return build_candidates(kernel, ch.mt(), 0, ch.mt(), candidate_norm_cap(ch, p), budget);
}

CandidateSet enumerate_candidates_block(const ChannelSample& ch, double p, long budget,
                                        int start, int size) {
    if (start < 0 || size < 1 || start + size > ch.mt())
        throw ConfigError("enumerate_candidates_block: bad block window");
    const Matrix kernel = snr_kernel(ch, p);
    return build_candidates(kernel, size, start, ch.mt(), candidate_norm_cap(ch, p), budget);
}

SchemeResult exhaustive_if(const ChannelSample& ch, double p, long budget) {
    const CandidateSet set = enumerate_candidates(ch, p, budget);
    const int mt = ch.mt();
    const std::vector<int> kept = greedy_independent(set, mt);
    if (static_cast<int>(kept.size()) < mt)
        throw SearchExhaustedError("exhaustive_if: fewer than M_T independent candidates");
    SchemeResult res;
    res.truncated = set.truncated;
    double min_rate = std::numeric_limits<double>::infinity();
    for (int idx : kept) {
        res.a.rows.push_back(set.vectors[idx]);
        res.snr_per_row.push_back(set.snrs[idx]);
        const double rate = log2_plus(set.snrs[idx]);
        res.rate_per_row.push_back(rate);
        min_rate = std::min(min_rate, rate);
    }
    res.sum_rate = mt * min_rate;
    return res;
}

SchemeResult block_if(const ChannelSample& ch, double p, int block_size, long budget) {
    if (block_size < 2 || block_size > 3)
        throw ConfigError("block_if: block_size must be 2 or 3");
    const auto blocks = make_blocks(ch.mt(), block_size);
    SchemeResult res;
    for (const auto& blk : blocks) {
        CandidateSet set = enumerate_candidates_block(ch, p, budget, blk.start, blk.size);
        res.truncated = res.truncated || set.truncated;
        const std::vector<int> kept = greedy_independent(set, blk.size);
        if (static_cast<int>(kept.size()) < blk.size)
            throw SearchExhaustedError("block_if: block search exhausted");
        double min_rate = std::numeric_limits<double>::infinity();
        for (int idx : kept) {
            res.a.rows.push_back(set.vectors[idx]);
            res.snr_per_row.push_back(set.snrs[idx]);
            const double rate = log2_plus(set.snrs[idx]);
            res.rate_per_row.push_back(rate);
            min_rate = std::min(min_rate, rate);
        }
        res.block_rates.push_back(blk.size * min_rate);
        res.a.block_structure.push_back({blk.start, blk.size});
    }
    for (double r : res.block_rates) res.sum_rate += r;
    return res;
}

SchemeResult block_if_lower(const ChannelSample& ch, double p) {
    const Matrix kernel = snr_kernel(ch, p);
    const int mt = ch.mt();
    SchemeResult res;
    for (const auto& blk : make_blocks(mt, 2)) {
        if (blk.size == 1) {
            // trailing singleton for odd M_T: only the unit vector applies
            const IntVector e = unit_vec(mt, blk.start);
            const double snr = effective_snr_from_kernel(kernel, e);
            res.a.rows.push_back(e);
            res.snr_per_row.push_back(snr);
            res.rate_per_row.push_back(log2_plus(snr));
            res.block_rates.push_back(log2_plus(snr));
            res.a.block_structure.push_back({blk.start, 1});
            continue;
        }
        const IntVector e1 = unit_vec(mt, blk.start);
        const IntVector e2 = unit_vec(mt, blk.start + 1);
        std::vector<IntVector> family = {e1, e2, e1 + e2, e1 - e2};
        std::vector<Scored> scored;
        for (auto& v : family)
            scored.push_back({effective_snr_from_kernel(kernel, v), std::move(v)});
        sort_by_snr(scored);
        // any two distinct members of the family are independent
        for (int i = 0; i < 2; ++i) {
            res.a.rows.push_back(scored[i].vec);
            res.snr_per_row.push_back(scored[i].snr);
            res.rate_per_row.push_back(log2_plus(scored[i].snr));
        }
        res.block_rates.push_back(2.0 * log2_plus(scored[1].snr));
        res.a.block_structure.push_back({blk.start, 2});
    }
    for (double r : res.block_rates) res.sum_rate += r;
    return res;
}

double block_if_upper(const ChannelSample& ch, double p, int block_size, long budget) {
    if (block_size < 2 || block_size > 3)
        throw ConfigError("block_if_upper: block_size must be 2 or 3");
    double total = 0.0;
    for (const auto& blk : make_blocks(ch.mt(), block_size)) {
        CandidateSet set = enumerate_candidates_block(ch, p, budget, blk.start, blk.size);
        if (static_cast<int>(set.vectors.size()) < blk.size)
            throw SearchExhaustedError("block_if_upper: fewer candidates than block size");
        total += blk.size * log2_plus(set.snrs[blk.size - 1]);
    }
    return total;
}

SchemeResult nb_if(const ChannelSample& ch, double p, BlockRateMode mode) {
    const int mt = ch.mt();
    if (mt < 2) throw ConfigError("nb_if: M_T must be at least 2");
    const Matrix kernel = snr_kernel(ch, p);
    SchemeResult res;

    const int two_blocks = (mt % 2 == 0) ? mt / 2 : (mt - 3) / 2;
    for (int b = 0; b < two_blocks; ++b) {
        const int start = 2 * b;
        const IntVector ea = unit_vec(mt, start);
        const IntVector eb = unit_vec(mt, start + 1);
        const IntVector family[4] = {ea, eb, ea + eb, ea - eb};
        double snrs[4];
        for (int i = 0; i < 4; ++i) snrs[i] = effective_snr_from_kernel(kernel, family[i]);
        // argmax then second-best distinct, ties to the lowest index
        int best = 0, second = -1;
        for (int i = 1; i < 4; ++i)
            if (snrs[i] > snrs[best]) best = i;
        for (int i = 0; i < 4; ++i) {
            if (i == best) continue;
            if (second < 0 || snrs[i] > snrs[second]) second = i;
        }
        const double pair_snr[2] = {snrs[best], snrs[second]};
        const int pick[2] = {best, second};
        double block_rate = 0.0;
        for (int i = 0; i < 2; ++i) {
            res.a.rows.push_back(family[pick[i]]);
            res.snr_per_row.push_back(pair_snr[i]);
            res.rate_per_row.push_back(log2_plus(pair_snr[i]));
        }
        if (mode == BlockRateMode::EqualPerBlock) {
            block_rate = 2.0 * log2_plus(std::min(pair_snr[0], pair_snr[1]));
        } else {
            block_rate = log2_plus(pair_snr[0]) + log2_plus(pair_snr[1]);
        }
        res.block_rates.push_back(block_rate);
        res.a.block_structure.push_back({start, 2});
    }

    if (mt % 2 != 0) {
        // odd tail: a 3-block over the last three coordinates, candidates with
        // squared norm 1 or 2 in that window
        const int start = mt - 3;
        std::vector<IntVector> family;
        for (int i = 0; i < 3; ++i) family.push_back(unit_vec(mt, start + i));
        for (int i = 0; i < 3; ++i) {
            for (int j = i + 1; j < 3; ++j) {
                family.push_back(unit_vec(mt, start + i) + unit_vec(mt, start + j));
                family.push_back(unit_vec(mt, start + i) - unit_vec(mt, start + j));
            }
        }
        std::vector<Scored> scored;
        for (auto& v : family)
            scored.push_back({effective_snr_from_kernel(kernel, v), std::move(v)});
        sort_by_snr(scored);
        CoefficientMatrix partial;
        std::vector<Scored> picked;
        for (const auto& s : scored) {
            partial.rows.push_back(s.vec);
            if (integer_full_rank(partial)) {
                picked.push_back(s);
                if (picked.size() == 3) break;
            } else {
                partial.rows.pop_back();
            }
        }
        double min_snr = std::numeric_limits<double>::infinity();
        double rate_sum = 0.0;
        for (const auto& s : picked) {
            res.a.rows.push_back(s.vec);
            res.snr_per_row.push_back(s.snr);
            res.rate_per_row.push_back(log2_plus(s.snr));
            min_snr = std::min(min_snr, s.snr);
            rate_sum += log2_plus(s.snr);
        }
        res.block_rates.push_back(mode == BlockRateMode::EqualPerBlock
                                      ? 3.0 * log2_plus(min_snr)
                                      : rate_sum);
        res.a.block_structure.push_back({start, 3});
    }

    for (double r : res.block_rates) res.sum_rate += r;
    return res;
}

SchemeResult dsv(const ChannelSample& ch, double p) {
    const int mt = ch.mt();
    if (mt % 2 != 0) throw DomainError("dsv: M_T must be even");
    const Matrix kernel = snr_kernel(ch, p);
    SchemeResult res;
    for (int i = 0; i < mt; ++i) {
        // 1-based row index i+1: odd rows offer e_i + e_{i+1}, even rows e_{i-1} - e_i
        const IntVector first = unit_vec(mt, i);
        IntVector second;
        if (i % 2 == 0) {
            second = unit_vec(mt, i) + unit_vec(mt, i + 1);
        } else {
            second = unit_vec(mt, i - 1) - unit_vec(mt, i);
        }
        const double snr1 = effective_snr_from_kernel(kernel, first);
        const double snr2 = effective_snr_from_kernel(kernel, second);
        const bool take_second = snr2 > snr1;
        res.a.rows.push_back(take_second ? second : first);
        res.snr_per_row.push_back(take_second ? snr2 : snr1);
        res.rate_per_row.push_back(log2_plus(take_second ? snr2 : snr1));
    }
    for (int b = 0; b < mt / 2; ++b) {
        const double min_snr = std::min(res.snr_per_row[2 * b], res.snr_per_row[2 * b + 1]);
        res.block_rates.push_back(2.0 * log2_plus(min_snr));
        res.a.block_structure.push_back({2 * b, 2});
    }
    for (double r : res.block_rates) res.sum_rate += r;
    return res;
}

double successive_minima(const Matrix& g, int k, double radius_budget) {
    const int dim = static_cast<int>(g.cols());
    if (g.rows() != g.cols() || dim < 1 || dim > 4)
        throw ConfigError("successive_minima: need square generator, dimension <= 4");
    if (k < 1 || k > dim) throw ConfigError("successive_minima: bad index k");
    Matrix ginv;
    try {
        Eigen::FullPivLU<Matrix> lu(g);
        if (!lu.isInvertible()) throw SingularityError("successive_minima: singular generator");
        ginv = lu.inverse();
    } catch (const SingularityError&) {
        throw;
    }
    // |c_i| <= ||row i of G^{-1}|| * R for any c with ||G c|| <= R
    std::vector<int> box(dim);
    for (int i = 0; i < dim; ++i)
        box[i] = static_cast<int>(std::floor(ginv.row(i).norm() * radius_budget)) + 1;

    struct Point {
        double norm;
        IntVector c;
    };
    std::vector<Point> points;
    IntVector c = IntVector::Zero(dim);
    std::function<void(int)> rec = [&](int idx) {
        if (idx == dim) {
            if (c.isZero() || !lex_positive(c)) return;
            const double nrm = (g * c.cast<double>()).norm();
            if (nrm <= radius_budget) points.push_back({nrm, c});
            return;
        }
        for (int x = -box[idx]; x <= box[idx]; ++x) {
            c(idx) = x;
            rec(idx + 1);
        }
        c(idx) = 0;
    };
    rec(0);
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return lex_less(a.c, b.c);
    });
    CoefficientMatrix kept;
    for (const auto& pt : points) {
        kept.rows.push_back(pt.c);
        if (integer_full_rank(kept)) {
            if (static_cast<int>(kept.rows.size()) == k) return pt.norm;
        } else {
            kept.rows.pop_back();
        }
    }
    throw SearchExhaustedError("successive_minima: radius budget too small for index k");
}

}  // namespace ifsim
