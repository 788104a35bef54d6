#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "pwldyn/pwl.hpp"

namespace pwldyn {

enum class Activation { Relu, Identity };

/// Layered affine + activation description of a 1-D -> 1-D network with exact
/// rational weights. Relu units may carry an offset: max(v, offset), the
/// biased-gate variant; offset 0 is plain relu.
class ReluNetwork {
public:
    struct Layer {
        std::vector<std::vector<Rational>> weights;  // out_dim x in_dim
        std::vector<Rational> biases;                // out_dim
        Activation activation;
        Rational offset = rat(0);

        std::size_t out_dim() const { return weights.size(); }
        std::size_t in_dim() const { return weights.empty() ? 0 : weights.front().size(); }
    };

    explicit ReluNetwork(std::vector<Layer> layers) : layers_(std::move(layers)) {
        if (layers_.empty()) throw DomainError("network needs at least one layer");
        std::size_t dim = 1;
        for (const Layer& l : layers_) {
            if (l.weights.empty()) throw DomainError("empty layer");
            if (l.in_dim() != dim) throw DomainError("layer input dimension mismatch");
            if (l.biases.size() != l.out_dim()) throw DomainError("bias dimension mismatch");
            for (const auto& row : l.weights)
                if (row.size() != l.in_dim()) throw DomainError("ragged weight matrix");
            dim = l.out_dim();
        }
        if (dim != 1) throw DomainError("network output dimension must be 1");
        if (layers_.back().activation != Activation::Identity)
            throw DomainError("final layer activation must be identity");
    }

    const std::vector<Layer>& layers() const { return layers_; }

    /// Number of relu layers.
    std::size_t depth() const {
        std::size_t d = 0;
        for (const Layer& l : layers_)
            if (l.activation == Activation::Relu) ++d;
        return d;
    }

    /// Maximal relu layer size.
    std::size_t width() const {
        std::size_t u = 0;
        for (const Layer& l : layers_)
            if (l.activation == Activation::Relu) u = std::max(u, l.out_dim());
        return u;
    }

    Rational eval(const Rational& x) const {
        std::vector<Rational> v{x};
        for (const Layer& l : layers_) {
            std::vector<Rational> next(l.out_dim(), rat(0));
            for (std::size_t j = 0; j < l.out_dim(); ++j) {
                Rational acc = l.biases[j];
                for (std::size_t m = 0; m < l.in_dim(); ++m) acc += l.weights[j][m] * v[m];
                if (l.activation == Activation::Relu && acc < l.offset) acc = l.offset;
                next[j] = std::move(acc);
            }
            v = std::move(next);
        }
        return v[0];
    }

private:
    std::vector<Layer> layers_;
};

/// Width-2, depth-1 network computing t(x; mu) exactly on [0,1]:
/// hidden relu(x), relu(x - 1/2); output mu*h1 - 2*mu*h2.
inline ReluNetwork compile_tent(const Rational& mu) {
    if (!(mu > 0) || mu > 2) throw DomainError("compile_tent: mu must be in (0, 2]");
    ReluNetwork::Layer hidden{{{rat(1)}, {rat(1)}}, {rat(0), rat(-1, 2)}, Activation::Relu};
    ReluNetwork::Layer out{{{mu, -2 * mu}}, {rat(0)}, Activation::Identity};
    return ReluNetwork({hidden, out});
}

/// k copies of net composed end to end.
inline ReluNetwork stack(const ReluNetwork& net, unsigned k) {
    if (k == 0) throw DomainError("stack needs k >= 1");
    std::vector<ReluNetwork::Layer> layers;
    for (unsigned i = 0; i < k; ++i)
        for (const auto& l : net.layers()) layers.push_back(l);
    return ReluNetwork(std::move(layers));
}

/// Exact PWL function the network computes on the domain, by breakpoint
/// propagation: each relu inserts breakpoints at the exact crossings of its
/// pre-activation with the offset.
inline PwlFunction extract_pwl(const ReluNetwork& net, const Interval& domain) {
    if (domain.degenerate()) throw DomainError("extract_pwl needs a nondegenerate domain");
    std::vector<Rational> xs{domain.lo, domain.hi};
    // values[i] = current layer outputs at xs[i]
    std::vector<std::vector<Rational>> values{{domain.lo}, {domain.hi}};

    for (const auto& layer : net.layers()) {
        auto preact = [&](std::size_t i, std::size_t j) {
            Rational acc = layer.biases[j];
            for (std::size_t m = 0; m < layer.in_dim(); ++m)
                acc += layer.weights[j][m] * values[i][m];
            return acc;
        };
        std::vector<std::vector<Rational>> pre(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < layer.out_dim(); ++j) pre[i].push_back(preact(i, j));

        if (layer.activation == Activation::Relu) {
            std::vector<Rational> cuts;
            for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
                for (std::size_t j = 0; j < layer.out_dim(); ++j) {
                    const Rational a = pre[i][j] - layer.offset;
                    const Rational b = pre[i + 1][j] - layer.offset;
                    if ((a < 0 && b > 0) || (a > 0 && b < 0))
                        cuts.push_back(xs[i] + a / (a - b) * (xs[i + 1] - xs[i]));
                }
            }
            if (!cuts.empty()) {
                std::vector<Rational> merged = xs;
                merged.insert(merged.end(), cuts.begin(), cuts.end());
                std::sort(merged.begin(), merged.end());
                merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
                std::vector<std::vector<Rational>> pre2(merged.size());
                std::size_t seg = 0;
                for (std::size_t i = 0; i < merged.size(); ++i) {
                    while (xs[seg + 1] < merged[i]) ++seg;
                    if (merged[i] == xs[seg]) {
                        pre2[i] = pre[seg];
                    } else if (merged[i] == xs[seg + 1]) {
                        pre2[i] = pre[seg + 1];
                    } else {
                        const Rational t = (merged[i] - xs[seg]) / (xs[seg + 1] - xs[seg]);
                        for (std::size_t j = 0; j < layer.out_dim(); ++j)
                            pre2[i].push_back(pre[seg][j] + t * (pre[seg + 1][j] - pre[seg][j]));
                    }
                }
                xs = std::move(merged);
                pre = std::move(pre2);
            }
            for (auto& row : pre)
                for (Rational& v : row)
                    if (v < layer.offset) v = layer.offset;
        }
        values = std::move(pre);
    }

    std::vector<PwlFunction::Point> pts;
    pts.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pts.push_back({xs[i], values[i][0]});
    return PwlFunction(std::move(pts));
}

/// (2u)^l, the affine-piece upper bound for a width-u, depth-l relu network.
inline BigInt piece_bound(unsigned l, unsigned u) {
    if (l < 1 || u < 1) throw DomainError("piece_bound needs l, u >= 1");
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2ul * u, l);
    return out;
}

}  // namespace pwldyn
