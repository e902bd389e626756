#include "doctest.h"

#include "oggn/errors.hpp"
#include "oggn/gradcheck.hpp"
#include "oggn/matrix.hpp"
#include "oggn/network.hpp"
#include "oggn/network_io.hpp"
#include "oggn/optim.hpp"
#include "oggn/rng.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace oggn;

TEST_CASE("matrix shapes and element access") {
    Matrix m(2, 3, 1.5);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 2) == 1.5);
    m(0, 1) = -4.0;
    CHECK(m(0, 1) == -4.0);
}

TEST_CASE("matmul computes the textbook product") {
    Matrix a(2, 3);
    a(0, 0) = 1; a(0, 1) = 2; a(0, 2) = 3;
    a(1, 0) = 4; a(1, 1) = 5; a(1, 2) = 6;
    Matrix b(3, 2);
    b(0, 0) = 7; b(0, 1) = 8;
    b(1, 0) = 9; b(1, 1) = 10;
    b(2, 0) = 11; b(2, 1) = 12;

    Matrix c = matmul(a, b);
    CHECK(c(0, 0) == 58.0);
    CHECK(c(0, 1) == 64.0);
    CHECK(c(1, 0) == 139.0);
    CHECK(c(1, 1) == 154.0);
}

TEST_CASE("matmul rejects mismatched shapes") {
    Matrix a(2, 3), b(2, 3);
    CHECK_THROWS_AS(matmul(a, b), ShapeError);
}

TEST_CASE("transposed products agree with explicit transposes") {
    Rng rng(5);
    Matrix a(4, 3), b(4, 2), c(3, 5);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform(-1, 1);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = rng.uniform(-1, 1);
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = rng.uniform(-1, 1);

    Matrix atb = matmul_at_b(a, b);
    Matrix ref = matmul(transpose(a), b);
    for (std::size_t i = 0; i < atb.rows(); ++i)
        for (std::size_t j = 0; j < atb.cols(); ++j)
            CHECK(atb(i, j) == doctest::Approx(ref(i, j)));

    Matrix abt = matmul_a_bt(a, transpose(c));  // (4x3)*(3x5)^T^T — a * c
    Matrix ref2 = matmul(a, c);
    for (std::size_t i = 0; i < abt.rows(); ++i)
        for (std::size_t j = 0; j < abt.cols(); ++j)
            CHECK(abt(i, j) == doctest::Approx(ref2(i, j)));
}

TEST_CASE("rng is deterministic and uniform01 stays in range") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        double u = a.uniform01();
        CHECK(u == b.uniform01());
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("derive_seed separates roles and preserves determinism") {
    CHECK(derive_seed(1, "noise") == derive_seed(1, "noise"));
    CHECK(derive_seed(1, "noise") != derive_seed(1, "generator-init"));
    CHECK(derive_seed(1, "noise") != derive_seed(2, "noise"));
}

TEST_CASE("init_network shapes, bounds, and determinism") {
    Network net = init_network({4, 8, 2}, {Activation::Tanh, Activation::Identity}, 7);
    CHECK(net.layer_count() == 2);
    CHECK(net.weights[0].rows() == 4);
    CHECK(net.weights[0].cols() == 8);
    CHECK(net.weights[1].rows() == 8);
    CHECK(net.weights[1].cols() == 2);
    CHECK(net.biases[0].size() == 8);
    CHECK(net.biases[1].size() == 2);

    // Glorot-uniform bound for the first layer.
    const double bound = std::sqrt(6.0 / (4 + 8));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            CHECK(net.weights[0](i, j) <= bound);
            CHECK(net.weights[0](i, j) >= -bound);
        }
    for (double b : net.biases[0]) CHECK(b == 0.0);

    Network again = init_network({4, 8, 2}, {Activation::Tanh, Activation::Identity}, 7);
    CHECK(net == again);
    Network other = init_network({4, 8, 2}, {Activation::Tanh, Activation::Identity}, 8);
    CHECK(net != other);
}

TEST_CASE("init_network validates its arguments") {
    CHECK_THROWS_AS(init_network({4}, {}, 1), ShapeError);
    CHECK_THROWS_AS(init_network({4, 0, 2}, {Activation::Tanh, Activation::Identity}, 1),
                    ShapeError);
    CHECK_THROWS_AS(init_network({4, 8, 2}, {Activation::Tanh}, 1), ShapeError);
}

TEST_CASE("forward matches a hand-computed single neuron") {
    Network net = init_network({1, 1}, {Activation::Identity}, 0);
    net.weights[0](0, 0) = 2.0;
    net.biases[0][0] = 0.5;
    Matrix x(3, 1);
    x(0, 0) = 0.0; x(1, 0) = 1.0; x(2, 0) = -2.0;
    Matrix y = forward(net, x);
    CHECK(y(0, 0) == 0.5);
    CHECK(y(1, 0) == 2.5);
    CHECK(y(2, 0) == -3.5);
}

TEST_CASE("forward applies tanh and relu") {
    Network net = init_network({1, 1}, {Activation::Tanh}, 0);
    net.weights[0](0, 0) = 1.0;
    Matrix x(1, 1);
    x(0, 0) = 0.7;
    CHECK(forward(net, x)(0, 0) == doctest::Approx(std::tanh(0.7)));

    net.activations[0] = Activation::Relu;
    x(0, 0) = -0.7;
    CHECK(forward(net, x)(0, 0) == 0.0);
}

TEST_CASE("backward matches finite differences on random networks") {
    // Ten random shapes, mixed activations; the heaviest correctness gate
    // in the whole core.
    Rng rng(123);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t in = 1 + rng.below(6);
        const std::size_t h1 = 1 + rng.below(16);
        const std::size_t h2 = 1 + rng.below(16);
        const std::size_t out = 1 + rng.below(3);
        const Activation acts[] = {Activation::Relu, Activation::Tanh, Activation::Identity};
        Network net = init_network({in, h1, h2, out},
                                   {acts[rng.below(3)], acts[rng.below(3)], Activation::Identity},
                                   1000 + trial);
        Matrix x(2 + rng.below(4), in), t(x.rows(), out);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            for (std::size_t j = 0; j < in; ++j) x(i, j) = rng.uniform(-2, 2);
            for (std::size_t j = 0; j < out; ++j) t(i, j) = rng.uniform(-2, 2);
        }
        worst = std::max(worst, grad_check(net, x, t, 1e-4));
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("mse_loss value and gradient") {
    Matrix pred(2, 1), target(2, 1);
    pred(0, 0) = 3.0; pred(1, 0) = -1.0;
    target(0, 0) = 1.0; target(1, 0) = -1.0;
    LossResult loss = mse_loss(pred, target);
    CHECK(loss.value == doctest::Approx(2.0));  // (4 + 0) / 2
    CHECK(loss.d_pred(0, 0) == doctest::Approx(2.0));
    CHECK(loss.d_pred(1, 0) == 0.0);

    Matrix bad(1, 1);
    CHECK_THROWS_AS(mse_loss(pred, bad), ShapeError);
}

TEST_CASE("adam step moves parameters against the gradient") {
    Network net = init_network({1, 1}, {Activation::Identity}, 3);
    net.weights[0](0, 0) = 1.0;
    AdamState state(net, {.lr = 0.1});
    Gradients g = zero_gradients_like(net);
    g.weights[0](0, 0) = 1.0;
    adam_step(net, g, state);
    // First bias-corrected step is exactly -lr * g/|g|.
    CHECK(net.weights[0](0, 0) == doctest::Approx(0.9).epsilon(1e-6));
    CHECK(state.step_count() == 1);
}

TEST_CASE("sgd step is plain descent") {
    Network net = init_network({1, 1}, {Activation::Identity}, 3);
    net.weights[0](0, 0) = 1.0;
    net.biases[0][0] = 0.25;
    Gradients g = zero_gradients_like(net);
    g.weights[0](0, 0) = 2.0;
    g.biases[0][0] = 1.0;
    sgd_step(net, g, 0.1);
    CHECK(net.weights[0](0, 0) == doctest::Approx(0.8));
    CHECK(net.biases[0][0] == doctest::Approx(0.15));
}

TEST_CASE("cosine schedule anneals from base to zero") {
    CHECK(scheduled_lr(1.0, LrSchedule::Cosine, 0, 100) == doctest::Approx(1.0));
    CHECK(scheduled_lr(1.0, LrSchedule::Cosine, 99, 100) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scheduled_lr(1.0, LrSchedule::Constant, 50, 100) == 1.0);
    // Midpoint of the cosine is half the base.
    CHECK(scheduled_lr(0.5, LrSchedule::Cosine, 50, 101) == doctest::Approx(0.25));
}

TEST_CASE("name round-trips for enums") {
    CHECK(activation_from_name("tanh") == Activation::Tanh);
    CHECK(activation_name(Activation::Relu) == "relu");
    CHECK_THROWS_AS(activation_from_name("swish"), ParseError);
    CHECK(optimizer_from_name("adam") == Optimizer::Adam);
    CHECK(optimizer_name(Optimizer::Sgd) == "sgd");
    CHECK_THROWS_AS(optimizer_from_name("rmsprop"), ParseError);
    CHECK(lr_schedule_from_name("cosine") == LrSchedule::Cosine);
    CHECK_THROWS_AS(lr_schedule_from_name("step"), ParseError);
}

TEST_CASE("network json round-trip is exact") {
    Network net = init_network({3, 5, 2}, {Activation::Tanh, Activation::Identity}, 11);
    const auto path = std::filesystem::temp_directory_path() / "oggn_net_roundtrip.json";
    save_network(net, path);
    Network back = load_network(path);
    CHECK(net == back);
    std::filesystem::remove(path);
}

TEST_CASE("load_network rejects malformed files") {
    const auto path = std::filesystem::temp_directory_path() / "oggn_net_bad.json";
    {
        std::FILE* f = std::fopen(path.string().c_str(), "w");
        std::fputs("{\"format_version\": 1, \"layer_sizes\": [2]}", f);
        std::fclose(f);
    }
    CHECK_THROWS_AS(load_network(path), ParseError);
    std::filesystem::remove(path);
}
