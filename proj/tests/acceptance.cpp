// End-to-end acceptance checks, one pass/fail line each. Exit status is
// nonzero when any check fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pwldyn/pwldyn.hpp"

using namespace pwldyn;

namespace {

int failures = 0;

void run(int number, const std::string& title, const std::function<void()>& body) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ": " << title << " (" << ms << " ms)";
    if (!ok) {
        std::cout << " -- " << detail;
        ++failures;
    }
    std::cout << "\n";
}

void require(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

Cycle first_cycle(const PwlFunction& f, unsigned n) {
    auto cycles = find_cycles(f, n);
    require(!cycles.empty(), "no cycle of period " + std::to_string(n));
    return cycles.front();
}

std::vector<long> display_delta(const PwlFunction& f, const CoveringChain& chain, unsigned t) {
    CrossingVector cv = crossing_vector(f, chain, t);
    std::vector<long> out;
    for (int pos : chain.display_positions()) out.push_back(cv.delta[pos]);
    return out;
}

std::string fmt(const std::vector<long>& v) {
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << ")";
    return s.str();
}

}  // namespace

int main() {
    run(1, "period-3 fixture crossing vectors (2,1)..(8,5)", [] {
        PwlFunction f = canonical_period3();
        CoveringChain chain = extract_chain(build_covering_graph(f, first_cycle(f, 3)));
        std::vector<std::vector<long>> expected{{2, 1}, {3, 2}, {5, 3}, {8, 5}};
        for (unsigned t = 1; t <= 4; ++t) {
            auto got = display_delta(f, chain, t);
            require(got == expected[t - 1],
                    "t=" + std::to_string(t) + " got " + fmt(got) + " want " + fmt(expected[t - 1]));
        }
    });

    run(2, "period-5 fixture crossing vectors (1,1,2,2)..(4,5,7,5)", [] {
        PwlFunction f = canonical_period5();
        CoveringChain chain = extract_chain(build_covering_graph(f, first_cycle(f, 5)));
        require(chain.r == 3, "chain length r != 3");
        std::vector<std::vector<long>> expected{
            {1, 1, 2, 2}, {2, 2, 3, 2}, {2, 3, 5, 4}, {4, 5, 7, 5}};
        for (unsigned t = 1; t <= 4; ++t) {
            auto got = display_delta(f, chain, t);
            require(got == expected[t - 1],
                    "t=" + std::to_string(t) + " got " + fmt(got) + " want " + fmt(expected[t - 1]));
        }
    });

    run(3, "period-4 map: total entry sum of A^t and total crossings both equal t+3", [] {
        PwlFunction f = canonical_period4();
        CoveringGraph g = build_covering_graph(f, first_cycle(f, 4));
        // adjacency matrix of the full covering graph
        std::vector<std::vector<int>> a(3, std::vector<int>(3, 0));
        for (auto [i, j] : g.edges()) a[j][i] = 1;  // column-stochastic convention A[j][i]
        for (unsigned t = 1; t <= 20; ++t) {
            require(matrix_power_total(a, t) == BigInt(t + 3),
                    "matrix total != t+3 at t=" + std::to_string(t));
            PwlFunction ft = iterate(f, t);
            long total = 0;
            for (const Interval& j : g.intervals) total += count_crossings(ft, j.lo, j.hi);
            require(total == long(t) + 3, "measured crossings != t+3 at t=" + std::to_string(t));
        }
    });

    run(4, "delta_0^t >= rho_r^t for tent(2) (t<=14) and the period-5 fixture (t<=10)", [] {
        {
            PwlFunction f = tent(rat(2));
            CoveringChain chain = extract_chain(build_covering_graph(f, first_cycle(f, 3)));
            double r = rho(chain.r);
            for (unsigned t = 1; t <= 14; ++t) {
                double d0 = double(crossing_vector(f, chain, t).delta[0]);
                require(d0 >= std::pow(r, t) * (1 - 1e-9),
                        "tent(2) bound violated at t=" + std::to_string(t));
            }
        }
        {
            PwlFunction f = canonical_period5();
            CoveringChain chain = extract_chain(build_covering_graph(f, first_cycle(f, 5)));
            double r = rho(chain.r);
            for (unsigned t = 1; t <= 10; ++t) {
                double d0 = double(crossing_vector(f, chain, t).delta[0]);
                require(d0 >= std::pow(r, t) * (1 - 1e-9),
                        "period-5 bound violated at t=" + std::to_string(t));
            }
        }
    });

    run(5, "spectral checks: rho(1)=golden ratio, monotone in r, determinant identity", [] {
        require(std::abs(rho(1) - (1 + std::sqrt(5.0)) / 2) <= 1e-12, "rho(1) != golden ratio");
        double prev = 2.0;
        for (int r = 1; r <= 20; ++r) {
            double v = rho(r);
            require(v > 1.0 && v < 2.0 && v < prev, "rho not strictly decreasing in (1,2)");
            prev = v;
        }
        for (int r = 1; r <= 8; ++r) {
            auto a = chain_matrix(r);
            const int n = r + 1;
            for (int sample = 1; sample <= 20; ++sample) {
                Rational lambda = rat(sample * 3 + 1, 7);
                // det(A^T - lambda I) by exact elimination
                std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, rat(0)));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) m[i][j] = rat(a[j][i]);
                for (int i = 0; i < n; ++i) m[i][i] -= lambda;
                Rational d = rat(1);
                for (int col = 0; col < n; ++col) {
                    int piv = col;
                    while (piv < n && m[piv][col] == 0) ++piv;
                    require(piv < n, "singular at a sample point");
                    if (piv != col) {
                        std::swap(m[piv], m[col]);
                        d = -d;
                    }
                    d *= m[col][col];
                    for (int row = col + 1; row < n; ++row) {
                        if (m[row][col] == 0) continue;
                        Rational factor = m[row][col] / m[col][col];
                        for (int k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
                    }
                }
                Rational pi = pow_rat(lambda, r + 1) - pow_rat(lambda, r) - 1;
                require(d == pi || d == -pi, "characteristic polynomial mismatch");
            }
        }
    });

    run(6, "matrix_power_rowsum(1,t) is the Fibonacci sequence 2,3,5,8,... for t=1..40", [] {
        BigInt a = 1, b = 1;  // rowsum(1,t) = fib with rowsum(1,1)=2, rowsum(1,2)=3
        for (unsigned t = 1; t <= 40; ++t) {
            BigInt expected = a + b;
            require(matrix_power_rowsum(1, t) == expected,
                    "rowsum mismatch at t=" + std::to_string(t));
            a = b;
            b = expected;
        }
    });

    run(7, "stacked tent networks extract to exact iterates with 2^k pieces, k=1..12", [] {
        PwlFunction t2 = tent(rat(2));
        ReluNetwork unit = compile_tent(rat(2));
        for (unsigned k = 1; k <= 12; ++k) {
            PwlFunction f = extract_pwl(stack(unit, k), {rat(0), rat(1)});
            require(f == iterate(t2, k), "extracted != iterate at k=" + std::to_string(k));
            require(f.pieces() == (std::size_t(1) << k), "piece count != 2^k");
            require(BigInt(f.pieces()) <= piece_bound(k, 2), "piece bound violated");
        }
    });

    run(8, "depth/width error bound at desk scale (tent(2), k=12, n=160)", [] {
        BigInt n = theorem_n(3, 12);
        require(n == 160, "n != 160");
        PwlFunction t2 = tent(rat(2));
        LabeledDataset d =
            build_alternating_dataset(t2, 1, 12, rat(1, 3), rat(2, 3), 160);
        require(classification_error(iterate(t2, 12), d) == rat(0),
                "deep iterate does not classify exactly");
        ErrorBoundReport rep = verify_error_bound(d, 2, 1);  // (2u)^l = 4
        require(rep.pieces == 4, "(2u)^l != 4");
        require(rep.bound == rat(160 - 16, 320), "bound != (n - 4*4)/(2n)");
        require(rep.oracle >= rep.bound, "oracle below bound");
        // width at the theorem threshold keeps the guarantee at >= 1/4
        auto rows = tradeoff_table(3, 12, {2});
        require(rows[0].u_max >= 1, "threshold width vanished");
        ErrorBoundReport at_threshold =
            verify_error_bound(d, 2, unsigned(rows[0].u_max));
        require(at_threshold.bound >= rat(1, 4), "bound below 1/4 at threshold width");
    });

    run(9, "forcing: tent(2) has periods {1,2,4,5,6,7,8}; period-5 fixture lacks 3", [] {
        ForcingReport r1 = verify_forcing(tent(rat(2)), 3, 8);
        std::vector<unsigned long> got;
        for (const auto& [m, c] : r1.witnesses) got.push_back(m);
        require(got == std::vector<unsigned long>{5, 7, 6, 8, 4, 2, 1},
                "tent(2) forced periods mismatch");
        PwlFunction p5 = canonical_period5();
        ForcingReport r2 = verify_forcing(p5, 5, 7);
        got.clear();
        for (const auto& [m, c] : r2.witnesses) got.push_back(m);
        require(got == std::vector<unsigned long>{7, 6, 4, 2, 1},
                "period-5 forced periods mismatch");
        require(find_cycles(p5, 3).empty(), "period-5 fixture unexpectedly has a 3-cycle");
    });

    run(10, "brittleness: 3-cycle at the golden-ratio slope, gone under tiny negative bias", [] {
        Rational phi_hat = rho_bracket(1, rat(1, 1000000000000L)).second;  // >= phi, 1e-12 close
        require(!find_cycles(tent(phi_hat), 3).empty(), "tent(phi_hat) lacks a 3-cycle");
        require(find_cycles(tent(phi_hat - rat(1, 100)), 3).empty(),
                "tent(phi_hat - 1/100) has a 3-cycle");
        require(find_cycles(tent(phi_hat - rat(1, 1000000)), 3).empty(),
                "tent(phi_hat - 1e-6) has a 3-cycle");
    });

    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
