#include "ifsim/toy_lattice.hpp"

#include <numeric>

#include "ifsim/errors.hpp"

namespace ifsim {

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("make_rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

namespace {

Rational mul(const Rational& a, std::int64_t k) {
    return make_rational(a.num * k, a.den);
}

Rational sub(const Rational& a, const Rational& b) {
    return make_rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

Rational div_int(const Rational& a, std::int64_t k) {
    return make_rational(a.num, a.den * k);
}

}  // namespace

std::array<Rational, 2> solve_integer_channel(const IntegerChannel2x2& ic,
                                              const std::array<Rational, 2>& y) {
    const std::int64_t d = ic.det();
    if (d == 0) throw SingularityError("solve_integer_channel: zero determinant");
    const Rational x1 = div_int(sub(mul(y[0], ic.h[1][1]), mul(y[1], ic.h[0][1])), d);
    const Rational x2 = div_int(sub(mul(y[1], ic.h[0][0]), mul(y[0], ic.h[1][0])), d);
    return {x1, x2};
}

std::array<double, 2> solve_integer_channel(const IntegerChannel2x2& ic,
                                            const std::array<double, 2>& y) {
    const std::int64_t d = ic.det();
    if (d == 0) throw SingularityError("solve_integer_channel: zero determinant");
    const double dd = static_cast<double>(d);
    return {(y[0] * ic.h[1][1] - y[1] * ic.h[0][1]) / dd,
            (y[1] * ic.h[0][0] - y[0] * ic.h[1][0]) / dd};
}

}  // namespace ifsim
