#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "pwldyn/covering.hpp"
#include "pwldyn/pwl.hpp"
#include "pwldyn/relu.hpp"

namespace pwldyn {

struct LabeledPoint {
    Rational x;
    int label;  // 0 or 1
};

/// 2n points sorted by x with labels alternating 0,1,0,1,... and the
/// classification threshold (x+y)/2.
struct LabeledDataset {
    std::vector<LabeledPoint> points;
    Rational threshold;

    std::size_t n() const { return points.size() / 2; }
};

/// n of the classification theorem: floor(floor(rho_(p-2)^k) / 2), with the
/// power floored through a certified rational bracket.
inline BigInt theorem_n(int p, unsigned k) {
    if (p < 3 || p % 2 == 0) throw DomainError("theorem_n needs odd p >= 3");
    BigInt f = certified_floor_rho_pow(p - 2, k);
    BigInt n;
    mpz_fdiv_q_ui(n.get_mpz_t(), f.get_mpz_t(), 2);
    return n;
}

/// Alternating preimages of x (label 0) and y (label 1) under h = f^(k*m), in
/// increasing order; 2n of them. h classifies the result with zero error.
inline LabeledDataset build_alternating_dataset(const PwlFunction& f, unsigned m, unsigned k,
                                                const Rational& x, const Rational& y,
                                                std::size_t n_pairs,
                                                std::size_t piece_cap = kDefaultPieceCap) {
    if (!(x < y)) throw DomainError("dataset needs x < y");
    if (n_pairs == 0) throw DomainError("dataset needs n >= 1");
    PwlFunction h = iterate(f, k * m, piece_cap);

    // attainment events: leftmost preimage of x and of y on each piece
    struct Event {
        Rational pos;
        int which;  // 0 = value x, 1 = value y
    };
    std::vector<Event> events;
    const auto& pts = h.breakpoints();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        const Rational lo = std::min(a.y, b.y);
        const Rational hi = std::max(a.y, b.y);
        auto preimage = [&](const Rational& v) -> Rational {
            if (a.y == b.y) return a.x;  // flat piece at the value: leftmost
            return a.x + (v - a.y) * (b.x - a.x) / (b.y - a.y);
        };
        if (lo <= x && x <= hi) events.push_back({preimage(x), 0});
        if (lo <= y && y <= hi) events.push_back({preimage(y), 1});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return a.pos < b.pos || (a.pos == b.pos && a.which < b.which);
    });
    events.erase(std::unique(events.begin(), events.end(),
                             [](const Event& a, const Event& b) {
                                 return a.pos == b.pos && a.which == b.which;
                             }),
                 events.end());

    LabeledDataset d;
    d.threshold = (x + y) / 2;
    int want = 0;  // alternate preimage-of-x, preimage-of-y, ...
    for (const Event& e : events) {
        if (d.points.size() == 2 * n_pairs) break;
        if (e.which != want) continue;
        if (!d.points.empty() && !(d.points.back().x < e.pos)) continue;
        d.points.push_back({e.pos, want});
        want = 1 - want;
    }
    if (d.points.size() < 2 * n_pairs)
        throw DomainError("insufficient crossings: found " +
                          std::to_string(d.points.size()) + " alternating points, need " +
                          std::to_string(2 * n_pairs));
    return d;
}

/// Exact fraction of dataset points where 1[g(x_i) >= threshold] != label_i.
inline Rational classification_error(const PwlFunction& g, const LabeledDataset& d) {
    if (d.points.empty()) throw DomainError("empty dataset");
    long miss = 0;
    for (const LabeledPoint& p : d.points) {
        int predicted = g.eval(p.x) >= d.threshold ? 1 : 0;
        if (predicted != p.label) ++miss;
    }
    return rat(miss, long(d.points.size()));
}

/// Minimum classification error over every thresholded classifier whose
/// prediction is constant on at most `pieces` runs along the sorted points.
/// DP over (position, runs used, current output); conservative superset of
/// what a `pieces`-piece PWL function can realize.
inline Rational oracle_min_error(const LabeledDataset& d, std::size_t pieces) {
    if (pieces < 1) throw DomainError("oracle needs pieces >= 1");
    const std::size_t sz = d.points.size();
    if (sz == 0) throw DomainError("empty dataset");
    const long inf = long(sz) + 1;
    // best[r][c] = min errors for a prefix, using r runs, last output c
    std::vector<std::array<long, 2>> best(pieces + 1, {inf, inf});
    best[1][0] = d.points[0].label != 0;
    best[1][1] = d.points[0].label != 1;
    for (std::size_t i = 1; i < sz; ++i) {
        std::vector<std::array<long, 2>> next(pieces + 1, {inf, inf});
        for (std::size_t r = 1; r <= pieces; ++r) {
            for (int c = 0; c < 2; ++c) {
                if (best[r][c] >= inf) continue;
                long base = best[r][c];
                // stay on the same run
                long stay = base + (d.points[i].label != c);
                next[r][c] = std::min(next[r][c], stay);
                // open a new run with the opposite output
                if (r + 1 <= pieces) {
                    long flip = base + (d.points[i].label != 1 - c);
                    next[r + 1][1 - c] = std::min(next[r + 1][1 - c], flip);
                }
            }
        }
        best = std::move(next);
    }
    long answer = inf;
    for (std::size_t r = 1; r <= pieces; ++r)
        for (int c = 0; c < 2; ++c) answer = std::min(answer, best[r][c]);
    return rat(answer, long(sz));
}

struct TradeoffRow {
    unsigned l;
    long u_max;          // floor(rho^(k/l) / 8); 0 means the bound is vacuous
    double bound_value;  // rho^(k/l) / 8
    bool vacuous;
};

/// Per-depth maximal width for which the >= 1/4 error guarantee applies.
inline std::vector<TradeoffRow> tradeoff_table(int p, unsigned k,
                                               const std::vector<unsigned>& l_range) {
    if (p < 3 || p % 2 == 0) throw DomainError("tradeoff_table needs odd p >= 3");
    double r = rho(p - 2);
    std::vector<TradeoffRow> rows;
    for (unsigned l : l_range) {
        if (l == 0) throw DomainError("tradeoff_table needs l >= 1");
        double v = std::pow(r, double(k) / double(l)) / 8.0;
        long u = long(std::floor(v));
        rows.push_back({l, u, v, u <= 0});
    }
    return rows;
}

struct ErrorBoundReport {
    BigInt pieces;     // (2u)^l
    Rational bound;    // max(0, (n - 4*(2u)^l) / (2n))
    Rational oracle;   // DP optimum at that piece budget
    bool quarter_regime;  // bound >= 1/4 asserted
};

/// Checks R(g) >= (n - 4(2u)^l)/(2n) against the DP oracle; an assertion
/// failure here is an implementation bug, not a property of the inputs.
inline ErrorBoundReport verify_error_bound(const LabeledDataset& d, unsigned l, unsigned u) {
    ErrorBoundReport rep;
    rep.pieces = piece_bound(l, u);
    const long n = long(d.n());
    Rational bound = (Rational(n) - 4 * Rational(rep.pieces)) / (2 * n);
    if (bound < 0) bound = rat(0);
    rep.bound = bound;
    std::size_t p = rep.pieces.fits_ulong_p() ? rep.pieces.get_ui() : d.points.size();
    rep.oracle = oracle_min_error(d, std::min<std::size_t>(p, d.points.size()));
    if (rep.oracle < rep.bound)
        throw InvariantError("oracle beat the theorem bound: oracle=" + to_string(rep.oracle) +
                             " bound=" + to_string(rep.bound));
    rep.quarter_regime = rep.bound >= rat(1, 4);
    return rep;
}

}  // namespace pwldyn
