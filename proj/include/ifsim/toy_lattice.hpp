#pragma once

#include <array>
#include <cstdint>

namespace ifsim {

// Noiseless 2x2 integer channel: y = H x with integer H, invertible over Q.
struct IntegerChannel2x2 {
    std::array<std::array<std::int64_t, 2>, 2> h;

    std::int64_t det() const { return h[0][0] * h[1][1] - h[0][1] * h[1][0]; }
};

// Exact rational value n/d, kept in lowest terms with d > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Rational make_rational(std::int64_t num, std::int64_t den);

// Cramer's rule: x = d^{-1} [y1 h22 - y2 h12, y2 h11 - y1 h21]. Exact.
std::array<Rational, 2> solve_integer_channel(const IntegerChannel2x2& ic,
                                              const std::array<Rational, 2>& y);

std::array<double, 2> solve_integer_channel(const IntegerChannel2x2& ic,
                                            const std::array<double, 2>& y);

}  // namespace ifsim
