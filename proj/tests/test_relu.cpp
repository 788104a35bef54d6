#include "doctest.h"

#include <random>

#include "pwldyn/maps.hpp"
#include "pwldyn/relu.hpp"
#include "test_support.hpp"

using namespace pwldyn;
using testsupport::random_point_in;

namespace {

ReluNetwork random_network(std::mt19937& rng, int relu_layers) {
    std::uniform_int_distribution<int> dim_dist(1, 3);
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den(1, 6);
    auto coeff = [&] { return rat(num(rng), den(rng)); };
    std::vector<ReluNetwork::Layer> layers;
    std::size_t in = 1;
    for (int i = 0; i < relu_layers; ++i) {
        std::size_t out = std::size_t(dim_dist(rng));
        ReluNetwork::Layer l;
        l.activation = Activation::Relu;
        for (std::size_t j = 0; j < out; ++j) {
            std::vector<Rational> row;
            for (std::size_t m = 0; m < in; ++m) row.push_back(coeff());
            l.weights.push_back(std::move(row));
            l.biases.push_back(coeff());
        }
        layers.push_back(std::move(l));
        in = out;
    }
    ReluNetwork::Layer fin;
    fin.activation = Activation::Identity;
    std::vector<Rational> row;
    for (std::size_t m = 0; m < in; ++m) row.push_back(coeff());
    fin.weights.push_back(std::move(row));
    fin.biases.push_back(coeff());
    layers.push_back(std::move(fin));
    return ReluNetwork(std::move(layers));
}

}  // namespace

TEST_CASE("compile_tent(2): hand-checked evaluations") {
    ReluNetwork net = compile_tent(rat(2));
    CHECK(net.depth() == 1);
    CHECK(net.width() == 2);
    CHECK(net.eval(rat(0)) == rat(0));
    CHECK(net.eval(rat(1, 4)) == rat(1, 2));
    CHECK(net.eval(rat(1, 2)) == rat(1));
    CHECK(net.eval(rat(3, 4)) == rat(1, 2));
    CHECK(net.eval(rat(1)) == rat(0));
}

TEST_CASE("two stacked tent units evaluate the second iterate") {
    ReluNetwork net = stack(compile_tent(rat(2)), 2);
    CHECK(net.depth() == 2);
    CHECK(net.eval(rat(3, 4)) == rat(1));
    CHECK(net.eval(rat(1, 4)) == rat(1));
    CHECK(net.eval(rat(1, 8)) == rat(1, 2));
}

TEST_CASE("compile_tent matches tent(mu) across a grid of slopes") {
    for (int i = 1; i <= 101; ++i) {
        Rational mu = rat(2 * i, 101);  // 101 values in (0, 2]
        PwlFunction direct = tent(mu);
        PwlFunction extracted = extract_pwl(compile_tent(mu), {rat(0), rat(1)});
        CHECK(extracted == direct);
    }
}

TEST_CASE("compile_tent rejects out-of-range slope") {
    CHECK_THROWS_AS(compile_tent(rat(0)), DomainError);
    CHECK_THROWS_AS(compile_tent(rat(5, 2)), DomainError);
}

TEST_CASE("extract_pwl inserts the exact relu kink") {
    // relu(x - 1/3) on [0, 1]
    ReluNetwork::Layer hidden{{{rat(1)}}, {rat(-1, 3)}, Activation::Relu};
    ReluNetwork::Layer out{{{rat(1)}}, {rat(0)}, Activation::Identity};
    ReluNetwork net({hidden, out});
    PwlFunction f = extract_pwl(net, {rat(0), rat(1)});
    PwlFunction expected = PwlFunction::from_pairs(
        {{rat(0), rat(0)}, {rat(1, 3), rat(0)}, {rat(1), rat(2, 3)}});
    CHECK(f == expected);
}

TEST_CASE("offset relu clamps at the offset, not at zero") {
    // max(x - 1/2, 1/10) on [0, 1]: kink where x - 1/2 = 1/10
    ReluNetwork::Layer hidden{{{rat(1)}}, {rat(-1, 2)}, Activation::Relu, rat(1, 10)};
    ReluNetwork::Layer out{{{rat(1)}}, {rat(0)}, Activation::Identity};
    ReluNetwork net({hidden, out});
    CHECK(net.eval(rat(0)) == rat(1, 10));
    CHECK(net.eval(rat(3, 5)) == rat(1, 10));
    CHECK(net.eval(rat(1)) == rat(1, 2));
    PwlFunction f = extract_pwl(net, {rat(0), rat(1)});
    PwlFunction expected = PwlFunction::from_pairs(
        {{rat(0), rat(1, 10)}, {rat(3, 5), rat(1, 10)}, {rat(1), rat(1, 2)}});
    CHECK(f == expected);
}

TEST_CASE("network validation") {
    ReluNetwork::Layer relu_out{{{rat(1)}}, {rat(0)}, Activation::Relu};
    CHECK_THROWS_AS(ReluNetwork({relu_out}), DomainError);
    ReluNetwork::Layer wide{{{rat(1)}, {rat(1)}}, {rat(0), rat(0)}, Activation::Relu};
    ReluNetwork::Layer narrow_in{{{rat(1)}}, {rat(0)}, Activation::Identity};
    CHECK_THROWS_AS(ReluNetwork({wide, wide, narrow_in}), DomainError);
    ReluNetwork::Layer bad_bias{{{rat(1)}}, {rat(0), rat(0)}, Activation::Identity};
    CHECK_THROWS_AS(ReluNetwork({bad_bias}), DomainError);
}

TEST_CASE("stack and iterate commute through extraction") {
    PwlFunction t2 = tent(rat(2));
    ReluNetwork unit = compile_tent(rat(2));
    for (unsigned k = 1; k <= 8; ++k) {
        ReluNetwork net = stack(unit, k);
        CHECK(net.depth() == k);
        PwlFunction f = extract_pwl(net, {rat(0), rat(1)});
        CHECK(f == iterate(t2, k));
        CHECK(f.pieces() == (1u << k));
    }
}

TEST_CASE("property: extract_pwl agrees with network evaluation") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> depth_dist(1, 3);
    int checked = 0;
    for (int round = 0; round < 25; ++round) {
        ReluNetwork net = random_network(rng, depth_dist(rng));
        PwlFunction f = extract_pwl(net, {rat(0), rat(1)});
        for (int i = 0; i < 40; ++i) {
            Rational x = random_point_in(rng, {rat(0), rat(1)});
            CHECK(f.eval(x) == net.eval(x));
            ++checked;
        }
        CHECK(BigInt(f.pieces()) <= piece_bound(unsigned(net.depth()), unsigned(net.width())));
    }
    CHECK(checked == 1000);
}

TEST_CASE("piece_bound values") {
    CHECK(piece_bound(1, 2) == 4);
    CHECK(piece_bound(3, 2) == 64);
    CHECK(piece_bound(12, 1) == 4096);
    CHECK_THROWS_AS(piece_bound(0, 2), DomainError);
}
