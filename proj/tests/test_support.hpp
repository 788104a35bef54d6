#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "pwldyn/pwl.hpp"

// Test-only helpers: randomized generators and brute-force oracles kept
// independent of the library's counting path.
namespace testsupport {

using pwldyn::PwlFunction;
using pwldyn::Rational;

inline Rational random_rational(std::mt19937& rng, int max_den = 64, int max_num = 64) {
    std::uniform_int_distribution<int> den(1, max_den);
    int d = den(rng);
    std::uniform_int_distribution<int> num(0, max_num);
    return pwldyn::rat(num(rng), d);
}

/// Random PWL self-map of [0,1] with the given number of pieces.
inline PwlFunction random_pwl(std::mt19937& rng, int pieces) {
    std::uniform_int_distribution<int> num(0, 60);
    std::vector<Rational> xs{pwldyn::rat(0), pwldyn::rat(1)};
    while (int(xs.size()) < pieces + 1) {
        Rational x = pwldyn::rat(num(rng), 60);
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<PwlFunction::Point> pts;
    for (const Rational& x : xs) pts.push_back({x, pwldyn::rat(num(rng), 60)});
    return PwlFunction(std::move(pts));
}

/// Random rational in the domain of f (uniform over a fine grid).
inline Rational random_point_in(std::mt19937& rng, const pwldyn::Interval& iv) {
    std::uniform_int_distribution<int> num(0, 720);
    return iv.lo + (iv.hi - iv.lo) * pwldyn::rat(num(rng), 720);
}

/// Independent crossing oracle. A maximal monotone traversal is delimited by
/// local extrema of the breakpoint-value sequence, and a monotone stretch
/// attains its min and max at its two delimiting extrema. So list the values
/// at every direction reversal (endpoints included, flats ignored) and count
/// consecutive extremum pairs straddling [x, y].
inline long crossings_oracle(const PwlFunction& f, const Rational& x, const Rational& y) {
    std::vector<Rational> ext;
    const auto& pts = f.breakpoints();
    ext.push_back(pts.front().y);
    int dir = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Rational& prev = pts[i - 1].y;
        const Rational& cur = pts[i].y;
        int s = (cur > prev) - (cur < prev);
        if (s == 0) continue;
        if (dir != 0 && s != dir) ext.push_back(prev);
        dir = s;
    }
    ext.push_back(pts.back().y);
    long crossings = 0;
    for (std::size_t i = 0; i + 1 < ext.size(); ++i)
        if (std::min(ext[i], ext[i + 1]) <= x && std::max(ext[i], ext[i + 1]) >= y) ++crossings;
    return crossings;
}

}  // namespace testsupport
