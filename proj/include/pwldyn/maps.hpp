#pragma once

#include <functional>

#include "pwldyn/pwl.hpp"

namespace pwldyn {

/// Tent map t(x; mu) on [0,1]: peak mu/2 at x = 1/2.
inline PwlFunction tent(const Rational& mu) {
    if (!(mu > 0) || mu > 2) throw DomainError("tent: mu must be in (0, 2]");
    return PwlFunction({{rat(0), rat(0)}, {rat(1, 2), mu / 2}, {rat(1), rat(0)}});
}

/// Interpolant of the period-3 orbit 1 -> 2 -> 3 -> 1 on [1,3].
inline PwlFunction canonical_period3() {
    return PwlFunction({{rat(1), rat(2)}, {rat(2), rat(3)}, {rat(3), rat(1)}});
}

/// Prime-period-4 map on [1,4] with linear crossing growth
/// (1 -> 4, 4 -> 2, 2 -> 3, 3 -> 1).
inline PwlFunction canonical_period4() {
    return PwlFunction({{rat(1), rat(4)}, {rat(2), rat(3)}, {rat(3), rat(1)}, {rat(4), rat(2)}});
}

/// Interpolant of the period-5 orbit 1 -> 5 -> 3 -> 2 -> 4 -> 1 on [1,5].
/// Has a point of period 5 but none of period 3.
inline PwlFunction canonical_period5() {
    return PwlFunction(
        {{rat(1), rat(5)}, {rat(2), rat(4)}, {rat(3), rat(2)}, {rat(4), rat(1)}, {rat(5), rat(3)}});
}

/// PWL interpolant of a pointwise map on [0,1] over N+1 uniform grid nodes.
/// Sampled values are snapped to denominator 10^15; the result is an
/// approximation and must be flagged as such downstream.
inline PwlFunction approximate_map(const std::function<double(double)>& fn, unsigned n_pieces) {
    if (n_pieces < 2) throw DomainError("approximate_map: need N >= 2");
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, 15);
    std::vector<PwlFunction::Point> pts;
    pts.reserve(n_pieces + 1);
    for (unsigned i = 0; i <= n_pieces; ++i) {
        Rational x = rat(i, n_pieces);
        double v = fn(to_double(x));
        if (v < 0) v = 0;
        if (v > 1) v = 1;
        BigInt num(v * 1e15 + 0.5);
        Rational y(num, scale);
        y.canonicalize();
        pts.push_back({std::move(x), std::move(y)});
    }
    return PwlFunction(std::move(pts));
}

/// Grid approximation of the logistic map r*x*(1-x) on [0,1].
inline PwlFunction logistic_approx(const Rational& r, unsigned n_pieces) {
    double rd = to_double(r);
    return approximate_map([rd](double x) { return rd * x * (1.0 - x); }, n_pieces);
}

}  // namespace pwldyn
