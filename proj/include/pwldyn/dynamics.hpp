#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "pwldyn/pwl.hpp"

namespace pwldyn {

/// n = 2^two_exponent * odd_part, uniquely.
struct SharkovskyKey {
    unsigned two_exponent;
    unsigned long odd_part;

    static SharkovskyKey of(unsigned long n) {
        if (n == 0) throw DomainError("sharkovsky key of 0");
        unsigned e = 0;
        while (n % 2 == 0) {
            n /= 2;
            ++e;
        }
        return {e, n};
    }

    unsigned long value() const { return (1ul << two_exponent) * odd_part; }
    bool power_of_two() const { return odd_part == 1; }
};

/// Strict Sharkovsky order: 3 |> 5 |> 7 |> ... |> 2*3 |> 2*5 |> ...
/// |> 2^2*3 |> ... |> ... |> 8 |> 4 |> 2 |> 1.
inline bool sharkovsky_precedes(unsigned long a, unsigned long b) {
    if (a == 0 || b == 0) throw DomainError("sharkovsky order is on positive integers");
    auto ka = SharkovskyKey::of(a);
    auto kb = SharkovskyKey::of(b);
    if (ka.power_of_two() != kb.power_of_two()) return kb.power_of_two();
    if (ka.power_of_two()) return ka.two_exponent > kb.two_exponent;
    if (ka.two_exponent != kb.two_exponent) return ka.two_exponent < kb.two_exponent;
    return ka.odd_part < kb.odd_part;
}

/// 1..cap sorted from Sharkovsky-greatest (3) to least (1).
inline std::vector<unsigned long> sharkovsky_order_up_to(unsigned long cap) {
    std::vector<unsigned long> out;
    for (unsigned long n = 1; n <= cap; ++n) out.push_back(n);
    std::sort(out.begin(), out.end(),
              [](unsigned long a, unsigned long b) { return sharkovsky_precedes(a, b); });
    return out;
}

/// Exact periodic orbit in iteration order. When from_segment is set the
/// orbit is a representative of a whole interval of periodic points
/// (uncountably many).
struct Cycle {
    std::vector<Rational> points;
    unsigned period;
    bool from_segment = false;
};

namespace detail {

inline Rational eval_iter(const PwlFunction& f, Rational x, unsigned k) {
    for (unsigned i = 0; i < k; ++i) x = f.eval(x);
    return x;
}

inline unsigned least_period(const PwlFunction& f, const Rational& x0, unsigned n) {
    Rational x = x0;
    for (unsigned k = 1; k <= n; ++k) {
        x = f.eval(x);
        if (x == x0) return k;
    }
    return 0;  // not periodic within n steps
}

inline std::vector<unsigned> proper_divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

// Subtract a union of closed intervals from one closed interval; returns the
// closed remainders (degenerate ones dropped).
inline std::vector<Interval> subtract_segments(const Interval& seg,
                                               std::vector<Interval> cut) {
    std::sort(cut.begin(), cut.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    Rational cursor = seg.lo;
    for (const Interval& c : cut) {
        if (c.hi < cursor || c.lo > seg.hi) continue;
        if (c.lo > cursor) out.push_back({cursor, std::min(c.lo, seg.hi)});
        if (c.hi > cursor) cursor = c.hi;
    }
    if (cursor < seg.hi) out.push_back({cursor, seg.hi});
    std::erase_if(out, [](const Interval& iv) { return iv.degenerate(); });
    return out;
}

// Pick a point of the segment distinct from every listed bad point.
inline std::optional<Rational> segment_representative(const Interval& seg,
                                                      const std::vector<Rational>& bad) {
    std::vector<Rational> inside;
    for (const Rational& b : bad)
        if (seg.lo < b && b < seg.hi) inside.push_back(b);
    std::sort(inside.begin(), inside.end());
    Rational left = seg.lo;
    Rational right = inside.empty() ? seg.hi : inside.front();
    if (left == right) return std::nullopt;
    return (left + right) / 2;
}

}  // namespace detail

/// All cycles of least period exactly n, via exact roots of f^n(x) = x.
/// Flat diagonal segments of f^n contribute one representative orbit each.
inline std::vector<Cycle> find_cycles(const PwlFunction& f, unsigned n,
                                      std::size_t piece_cap = kDefaultPieceCap) {
    if (n == 0) throw DomainError("find_cycles needs n >= 1");
    PwlFunction fn = iterate(f, n, piece_cap);
    FixedPoints fixed = solve_equals_identity(fn);

    // lower-period structure: isolated roots and flat segments of f^d, d | n
    std::vector<Rational> lower_roots;
    std::vector<Interval> lower_segments;
    for (unsigned d : detail::proper_divisors(n)) {
        FixedPoints fd = solve_equals_identity(iterate(f, d, piece_cap));
        lower_roots.insert(lower_roots.end(), fd.roots.begin(), fd.roots.end());
        lower_segments.insert(lower_segments.end(), fd.segments.begin(), fd.segments.end());
    }

    std::set<Rational> seen;
    std::vector<Cycle> cycles;
    auto emit = [&](const Rational& x0, bool from_segment) {
        if (seen.count(x0)) return;
        Cycle c;
        c.period = n;
        c.from_segment = from_segment;
        Rational x = x0;
        for (unsigned k = 0; k < n; ++k) {
            c.points.push_back(x);
            seen.insert(x);
            x = f.eval(x);
        }
        if (x != x0) throw InvariantError("cycle does not close");
        // deterministic: start the orbit at its smallest point
        auto it = std::min_element(c.points.begin(), c.points.end());
        std::rotate(c.points.begin(), it, c.points.end());
        cycles.push_back(std::move(c));
    };

    for (const Rational& x0 : fixed.roots)
        if (detail::least_period(f, x0, n) == n) emit(x0, false);

    for (const Interval& seg : fixed.segments) {
        for (const Interval& sub : detail::subtract_segments(seg, lower_segments)) {
            auto rep = detail::segment_representative(sub, lower_roots);
            if (rep && detail::least_period(f, *rep, n) == n) emit(*rep, true);
        }
    }

    std::sort(cycles.begin(), cycles.end(),
              [](const Cycle& a, const Cycle& b) { return a.points.front() < b.points.front(); });
    return cycles;
}

struct PrimePeriodResult {
    std::optional<SharkovskyKey> key;     // empty: none found up to cap
    std::vector<Cycle> witnesses;         // cycles at the prime period
    std::vector<unsigned long> skipped;   // candidates abandoned at the piece cap
    unsigned long search_cap;
    bool exact = true;                    // false when any candidate was skipped
};

/// Sharkovsky-greatest period n <= search_cap with a cycle, scanning
/// candidates in Sharkovsky order so the first hit wins.
inline PrimePeriodResult prime_period(const PwlFunction& f, unsigned long search_cap,
                                      std::size_t piece_cap = kDefaultPieceCap) {
    PrimePeriodResult res;
    res.search_cap = search_cap;
    for (unsigned long n : sharkovsky_order_up_to(search_cap)) {
        try {
            auto cycles = find_cycles(f, static_cast<unsigned>(n), piece_cap);
            if (!cycles.empty()) {
                res.key = SharkovskyKey::of(n);
                res.witnesses = std::move(cycles);
                return res;
            }
        } catch (const ResourceCapError&) {
            res.skipped.push_back(n);
            res.exact = false;
        }
    }
    return res;
}

struct ForcingReport {
    unsigned long period;
    std::vector<std::pair<unsigned long, Cycle>> witnesses;  // (forced period, witness)
};

/// Checks the forcing property below n: every n' with n |> n' and n' <= cap
/// must have a cycle. A miss is a bug in cycle detection, not a property of f.
inline ForcingReport verify_forcing(const PwlFunction& f, unsigned long n, unsigned long cap,
                                    std::size_t piece_cap = kDefaultPieceCap) {
    if (find_cycles(f, static_cast<unsigned>(n), piece_cap).empty())
        throw DomainError("verify_forcing: f has no cycle of period " + std::to_string(n));
    ForcingReport report{n, {}};
    for (unsigned long m : sharkovsky_order_up_to(cap)) {
        if (!sharkovsky_precedes(n, m)) continue;
        auto cycles = find_cycles(f, static_cast<unsigned>(m), piece_cap);
        if (cycles.empty())
            throw InvariantError("forcing violated: period " + std::to_string(m) +
                                 " missing below " + std::to_string(n));
        report.witnesses.emplace_back(m, cycles.front());
    }
    return report;
}

}  // namespace pwldyn
