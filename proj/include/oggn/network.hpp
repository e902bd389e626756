#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oggn/matrix.hpp"

namespace oggn {

enum class Activation { Relu, Tanh, Identity };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation a);

/// Dense feed-forward network. weights[l] has shape
/// (layer_sizes[l] x layer_sizes[l+1]) and biases[l] matches layer l+1, so
/// a batch propagates as rows: z = a * W + b.
struct Network {
    std::vector<std::size_t> layer_sizes;
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
    std::vector<Activation> activations; // one per weight layer
    std::uint64_t seed = 0;

    std::size_t layer_count() const { return weights.size(); }
    std::size_t input_dim() const { return layer_sizes.front(); }
    std::size_t output_dim() const { return layer_sizes.back(); }
    std::size_t parameter_count() const;

    friend bool operator==(const Network&, const Network&) = default;
};

/// Per-layer intermediates captured by forward() and consumed by backward().
struct ForwardCache {
    Matrix input;
    std::vector<Matrix> pre_activations;
    std::vector<Matrix> activations;
};

/// Parameter gradients, shaped exactly like the network's parameters.
struct Gradients {
    std::vector<Matrix> weights;
    std::vector<std::vector<double>> biases;
};

struct BackwardResult {
    Gradients grads;
    Matrix d_input;
};

struct LossResult {
    double value = 0.0;
    Matrix d_pred;
};

/// Glorot-uniform weights in [-sqrt(6/(fan_in+fan_out)), +...], zero biases.
/// Deterministic for a fixed seed.
Network init_network(const std::vector<std::size_t>& layer_sizes,
                     const std::vector<Activation>& activations,
                     std::uint64_t seed);

/// Batched forward pass. Fills `cache` (when non-null) for backward().
Matrix forward(const Network& net, const Matrix& input, ForwardCache* cache = nullptr);

/// Reverse-mode pass: gradients with respect to every parameter and to the
/// input batch. d_input is always produced; callers that only train the
/// network may ignore it, callers that train *through* a frozen network
/// need exactly that matrix.
BackwardResult backward(const Network& net, const ForwardCache& cache,
                        const Matrix& d_output);

/// Mean of squared elementwise differences and its gradient w.r.t. pred:
/// d_pred = 2 (pred - target) / element_count.
LossResult mse_loss(const Matrix& pred, const Matrix& target);

Gradients zero_gradients_like(const Network& net);

} // namespace oggn
