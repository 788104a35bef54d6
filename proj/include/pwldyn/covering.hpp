#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "pwldyn/dynamics.hpp"
#include "pwldyn/pwl.hpp"

namespace pwldyn {

/// Intervals induced by the sorted points of a cycle plus the directed cover
/// relation between them. Edge (i, j) means I_i covers I_j under f, decided
/// from endpoint images alone (sound by the intermediate value theorem).
struct CoveringGraph {
    std::vector<Interval> intervals;
    std::vector<std::vector<bool>> adj;

    bool edge(std::size_t i, std::size_t j) const { return adj[i][j]; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t i = 0; i < adj.size(); ++i)
            for (std::size_t j = 0; j < adj.size(); ++j)
                if (adj[i][j]) out.emplace_back(int(i), int(j));
        return out;
    }
};

inline CoveringGraph build_covering_graph(const PwlFunction& f, const Cycle& c) {
    if (c.period < 2) throw DomainError("covering graph needs a cycle of period >= 2");
    std::vector<Rational> beta = c.points;
    std::sort(beta.begin(), beta.end());
    CoveringGraph g;
    for (std::size_t i = 0; i + 1 < beta.size(); ++i) g.intervals.push_back({beta[i], beta[i + 1]});
    std::size_t m = g.intervals.size();
    g.adj.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
        Rational fa = f.eval(beta[i]);
        Rational fb = f.eval(beta[i + 1]);
        Interval span{std::min(fa, fb), std::max(fa, fb)};
        for (std::size_t j = 0; j < m; ++j) g.adj[i][j] = span.contains(g.intervals[j]);
    }
    return g;
}

/// The J_0..J_r chain: J_0 has a self-edge and J_0 -> J_1 -> ... -> J_r -> J_0
/// closes the loop. Minimal r, ties broken by smallest J_0 index then
/// lexicographically smallest chain.
struct CoveringChain {
    std::vector<int> chain;                    // graph interval indices, chain order
    std::vector<Interval> intervals;           // same order
    int r;
    std::vector<std::vector<int>> matrix_a;    // (r+1)x(r+1), A[j][i]

    /// Chain positions sorted so their intervals run right-to-left. This is
    /// the order crossing vectors are reported in.
    std::vector<int> display_positions() const {
        std::vector<int> pos(chain.size());
        std::iota(pos.begin(), pos.end(), 0);
        std::sort(pos.begin(), pos.end(),
                  [&](int a, int b) { return intervals[b].lo < intervals[a].lo; });
        return pos;
    }
};

/// Adjacency matrix of the directed (r+1)-cycle with a self-loop at vertex 0:
/// A[0][0] = 1, A[i+1][i] = 1, A[0][r] = 1.
inline std::vector<std::vector<int>> chain_matrix(int r) {
    std::vector<std::vector<int>> a(r + 1, std::vector<int>(r + 1, 0));
    a[0][0] = 1;
    for (int i = 0; i + 1 <= r; ++i) a[i + 1][i] = 1;
    a[0][r] = 1;
    return a;
}

inline CoveringChain extract_chain(const CoveringGraph& g) {
    const std::size_t m = g.intervals.size();
    int best_len = std::numeric_limits<int>::max();
    std::vector<int> best_chain;
    for (std::size_t v = 0; v < m; ++v) {
        if (!g.adj[v][v]) continue;
        // shortest distance from every vertex back to v
        std::vector<int> dist(m, -1);
        std::queue<std::size_t> q;
        dist[v] = 0;
        q.push(v);
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (std::size_t w = 0; w < m; ++w)
                if (g.adj[w][u] && dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
        // cheapest non-trivial cycle v -> w -> ... -> v
        int len = std::numeric_limits<int>::max();
        for (std::size_t w = 0; w < m; ++w)
            if (w != v && g.adj[v][w] && dist[w] >= 0) len = std::min(len, dist[w] + 1);
        if (len >= best_len || len == std::numeric_limits<int>::max()) continue;
        // rebuild the lexicographically smallest chain of that length
        std::vector<int> chain{int(v)};
        std::size_t cur = v;
        int remaining = len;
        while (remaining > 1) {
            for (std::size_t w = 0; w < m; ++w) {
                if (w != v && g.adj[cur][w] && dist[w] == remaining - 1) {
                    chain.push_back(int(w));
                    cur = w;
                    break;
                }
            }
            --remaining;
        }
        best_len = len;
        best_chain = std::move(chain);
    }
    if (best_chain.empty())
        throw ChainNotFoundError("no self-loop cycle in covering graph (odd period > 1 required)");
    CoveringChain out;
    out.chain = best_chain;
    for (int idx : best_chain) out.intervals.push_back(g.intervals[idx]);
    out.r = int(best_chain.size()) - 1;
    out.matrix_a = chain_matrix(out.r);
    return out;
}

/// Exact crossing counts of f^t over the chain intervals, in chain order
/// (delta[0] belongs to the self-loop interval J_0).
struct CrossingVector {
    unsigned t;
    std::vector<long> delta;
};

inline CrossingVector crossing_vector(const PwlFunction& f, const CoveringChain& chain,
                                      unsigned t, std::size_t piece_cap = kDefaultPieceCap) {
    PwlFunction h = iterate(f, t, piece_cap);
    CrossingVector out{t, {}};
    for (const Interval& j : chain.intervals)
        out.delta.push_back(count_crossings(h, j.lo, j.hi));
    return out;
}

/// Unique root in (1, 2) of lambda^(r+1) - lambda^r - 1, by bisection.
inline double rho(int r, double tol = 1e-12) {
    if (r < 1) throw DomainError("rho needs r >= 1");
    if (!(tol > 0)) throw DomainError("rho needs tol > 0");
    auto pi = [r](double x) { return std::pow(x, r + 1) - std::pow(x, r) - 1.0; };
    double lo = 1.0, hi = 2.0;
    while (hi - lo > tol / 2) {
        double mid = (lo + hi) / 2;
        if (pi(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

/// Exact rational bracket [lo, hi] around rho(r) with hi - lo <= width.
inline std::pair<Rational, Rational> rho_bracket(int r, const Rational& width) {
    if (r < 1) throw DomainError("rho_bracket needs r >= 1");
    auto pi = [r](const Rational& x) -> Rational {
        return pow_rat(x, r + 1) - pow_rat(x, r) - 1;
    };
    Rational lo = rat(1), hi = rat(2);
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (pi(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

/// floor(rho(r)^k), certified: the bracket is tightened until both endpoint
/// powers share a floor.
inline BigInt certified_floor_rho_pow(int r, unsigned k) {
    Rational width = rat(1, 1024);
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto [lo, hi] = rho_bracket(r, width);
        BigInt flo = floor_rat(pow_rat(lo, k));
        BigInt fhi = floor_rat(pow_rat(hi, k));
        if (flo == fhi) return flo;
        width /= 1024;
    }
    throw InvariantError("certified_floor_rho_pow failed to converge");
}

inline std::vector<std::vector<BigInt>> matrix_mul(const std::vector<std::vector<BigInt>>& a,
                                                   const std::vector<std::vector<BigInt>>& b) {
    std::size_t n = a.size();
    std::vector<std::vector<BigInt>> c(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline std::vector<std::vector<BigInt>> matrix_pow(std::vector<std::vector<BigInt>> a, unsigned t) {
    std::size_t n = a.size();
    std::vector<std::vector<BigInt>> out(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    while (t > 0) {
        if (t & 1u) out = matrix_mul(out, a);
        a = matrix_mul(a, a);
        t >>= 1u;
    }
    return out;
}

inline std::vector<std::vector<BigInt>> to_bigint_matrix(const std::vector<std::vector<int>>& a) {
    std::vector<std::vector<BigInt>> out;
    for (const auto& row : a) {
        std::vector<BigInt> r;
        for (int v : row) r.emplace_back(v);
        out.push_back(std::move(r));
    }
    return out;
}

/// Exact first-row sum of A^t for the r-chain matrix (the infinity norm of
/// A^t; Fibonacci numbers when r = 1).
inline BigInt matrix_power_rowsum(int r, unsigned t) {
    if (r < 1 || t < 1) throw DomainError("matrix_power_rowsum needs r, t >= 1");
    auto at = matrix_pow(to_bigint_matrix(chain_matrix(r)), t);
    BigInt sum = 0;
    for (const BigInt& v : at[0]) sum += v;
    return sum;
}

inline BigInt matrix_power_total(const std::vector<std::vector<int>>& a, unsigned t) {
    auto at = matrix_pow(to_bigint_matrix(a), t);
    BigInt sum = 0;
    for (const auto& row : at)
        for (const BigInt& v : row) sum += v;
    return sum;
}

/// rho_(p-2)^t, the crossing growth guarantee for an odd period p at iterate
/// index m*t when the full period is m*p.
inline double crossing_lower_bound(int p, unsigned t) {
    if (p < 3 || p % 2 == 0) throw DomainError("crossing_lower_bound needs odd p >= 3");
    if (t == 0) return 1.0;
    return std::pow(rho(p - 2), t);
}

}  // namespace pwldyn
