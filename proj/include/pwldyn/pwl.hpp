#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pwldyn/interval.hpp"
#include "pwldyn/rational.hpp"

namespace pwldyn {

inline constexpr std::size_t kDefaultPieceCap = 10'000'000;

/// Continuous piecewise-linear map on a closed rational interval, stored as
/// sorted breakpoints. Canonical form: no interior breakpoint collinear with
/// its neighbors. Immutable after construction.
class PwlFunction {
public:
    struct Point {
        Rational x;
        Rational y;
        bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    };

    explicit PwlFunction(std::vector<Point> pts) : pts_(std::move(pts)) {
        if (pts_.size() < 2) throw DomainError("pwl needs at least 2 breakpoints");
        for (std::size_t i = 1; i < pts_.size(); ++i)
            if (!(pts_[i - 1].x < pts_[i].x))
                throw DomainError("pwl breakpoint x-coordinates must be strictly increasing");
        canonicalize();
    }

    static PwlFunction from_pairs(std::vector<std::pair<Rational, Rational>> pairs) {
        std::vector<Point> pts;
        pts.reserve(pairs.size());
        for (auto& p : pairs) pts.push_back({std::move(p.first), std::move(p.second)});
        return PwlFunction(std::move(pts));
    }

    static PwlFunction identity(const Interval& dom) {
        if (dom.degenerate()) throw DomainError("identity needs a nondegenerate domain");
        return PwlFunction({{dom.lo, dom.lo}, {dom.hi, dom.hi}});
    }

    const std::vector<Point>& breakpoints() const { return pts_; }
    std::size_t pieces() const { return pts_.size() - 1; }
    Interval domain() const { return {pts_.front().x, pts_.back().x}; }

    Rational eval(const Rational& x) const {
        if (x < pts_.front().x || x > pts_.back().x)
            throw DomainError("eval outside domain: x=" + to_string(x));
        std::size_t i = piece_index(x);
        const Point& a = pts_[i];
        const Point& b = pts_[i + 1];
        if (x == a.x) return a.y;
        if (x == b.x) return b.y;
        return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
    }

    /// Exact [min, max] of the function over iv.
    Interval image(const Interval& iv) const {
        if (!domain().contains(iv)) throw DomainError("image: interval outside domain");
        Rational lo = eval(iv.lo);
        Rational hi = lo;
        auto widen = [&](const Rational& v) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        };
        widen(eval(iv.hi));
        for (const Point& p : pts_)
            if (iv.lo < p.x && p.x < iv.hi) widen(p.y);
        return {lo, hi};
    }

    Interval range() const { return image(domain()); }

    bool operator==(const PwlFunction& o) const { return pts_ == o.pts_; }

private:
    std::vector<Point> pts_;

    void canonicalize() {
        std::vector<Point> out;
        out.reserve(pts_.size());
        for (Point& p : pts_) {
            while (out.size() >= 2) {
                const Point& a = out[out.size() - 2];
                const Point& b = out.back();
                // collinear: (b-a) x (p-b) == 0
                if ((b.y - a.y) * (p.x - b.x) == (p.y - b.y) * (b.x - a.x))
                    out.pop_back();
                else
                    break;
            }
            out.push_back(std::move(p));
        }
        pts_ = std::move(out);
    }

    // index of a piece containing x (last piece whose left endpoint <= x)
    std::size_t piece_index(const Rational& x) const {
        std::size_t lo = 0, hi = pts_.size() - 1;
        while (lo + 1 < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (pts_[mid].x <= x)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }
};

/// Exact h(x) = f(g(x)). Breakpoints of h are g's breakpoints plus the exact
/// preimages of f's breakpoints through each monotone piece of g.
inline PwlFunction compose(const PwlFunction& f, const PwlFunction& g) {
    if (!f.domain().contains(g.range()))
        throw DomainError("compose: range of inner function outside domain of outer");
    const auto& gp = g.breakpoints();
    const auto& fp = f.breakpoints();
    std::vector<Rational> xs;
    xs.reserve(gp.size() + fp.size());
    for (const auto& p : gp) xs.push_back(p.x);
    for (std::size_t i = 0; i + 1 < gp.size(); ++i) {
        const auto& a = gp[i];
        const auto& b = gp[i + 1];
        if (a.y == b.y) continue;  // flat piece: no interior pullbacks
        const Rational lo = std::min(a.y, b.y);
        const Rational hi = std::max(a.y, b.y);
        for (const auto& q : fp) {
            if (lo < q.x && q.x < hi) {
                // solve g(x) = q.x on [a.x, b.x]
                xs.push_back(a.x + (q.x - a.y) * (b.x - a.x) / (b.y - a.y));
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<PwlFunction::Point> pts;
    pts.reserve(xs.size());
    for (auto& x : xs) {
        Rational y = f.eval(g.eval(x));
        pts.push_back({std::move(x), std::move(y)});
    }
    return PwlFunction(std::move(pts));
}

inline PwlFunction iterate(const PwlFunction& f, unsigned t,
                           std::size_t piece_cap = kDefaultPieceCap) {
    if (t == 0) throw DomainError("iterate needs t >= 1");
    if (!f.domain().contains(f.range()))
        throw DomainError("iterate: function does not map its domain into itself");
    PwlFunction h = f;
    for (unsigned i = 1; i < t; ++i) {
        if (h.pieces() * f.pieces() > piece_cap)
            throw ResourceCapError("iterate: piece cap exceeded at step " + std::to_string(i + 1));
        h = compose(f, h);
    }
    return h;
}

struct MonotoneRun {
    std::size_t first;  // breakpoint indices [first, last]
    std::size_t last;
    Rational min;
    Rational max;
    int direction;  // +1 rising, -1 falling, 0 constant
};

/// Maximal monotone runs of f, flat pieces absorbed into the current run.
inline std::vector<MonotoneRun> monotone_runs(const PwlFunction& f) {
    const auto& pts = f.breakpoints();
    std::vector<MonotoneRun> runs;
    MonotoneRun cur{0, 0, pts[0].y, pts[0].y, 0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const Rational& y0 = pts[i - 1].y;
        const Rational& y1 = pts[i].y;
        int s = (y1 > y0) - (y1 < y0);
        if (s != 0 && cur.direction != 0 && s != cur.direction) {
            runs.push_back(cur);
            cur = MonotoneRun{i - 1, i - 1, y0, y0, 0};
        }
        if (s != 0) cur.direction = s;
        cur.last = i;
        if (y1 < cur.min) cur.min = y1;
        if (y1 > cur.max) cur.max = y1;
    }
    runs.push_back(cur);
    return runs;
}

/// Number of maximal monotone traversals of f across [x, y]; a local extremum
/// landing exactly on x or y counts as an attainment.
inline long count_crossings(const PwlFunction& f, const Rational& x, const Rational& y) {
    if (!(x < y)) throw DomainError("count_crossings needs x < y");
    long n = 0;
    for (const MonotoneRun& r : monotone_runs(f))
        if (r.min <= x && r.max >= y) ++n;
    return n;
}

struct FixedPoints {
    std::vector<Rational> roots;      // isolated solutions of f(x) = x
    std::vector<Interval> segments;   // whole pieces lying on the diagonal
};

/// All solutions of f(x) = x, exactly. Pieces with slope 1 through the
/// diagonal are reported as segments.
inline FixedPoints solve_equals_identity(const PwlFunction& f) {
    FixedPoints out;
    const auto& pts = f.breakpoints();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[i + 1];
        const Rational dy = b.y - a.y;
        const Rational dx = b.x - a.x;
        if (dy == dx) {
            if (a.y == a.x) out.segments.push_back({a.x, b.x});
            continue;
        }
        // (a.y - a.x) + (dy - dx) * s = 0 with s = (x - a.x)/dx in [0,1]
        Rational s = (a.x - a.y) / (dy - dx) * dx;  // x - a.x
        if (0 <= s && s <= dx) out.roots.push_back(a.x + s);
    }
    // drop roots swallowed by segments or duplicated at shared breakpoints
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
    std::erase_if(out.roots, [&](const Rational& r) {
        for (const Interval& s : out.segments)
            if (s.contains(r)) return true;
        return false;
    });
    return out;
}

}  // namespace pwldyn
