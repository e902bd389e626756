#include "oggn/network.hpp"

#include <cmath>
#include <string>

#include "oggn/errors.hpp"
#include "oggn/rng.hpp"

namespace oggn {

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::Relu;
    if (name == "tanh") return Activation::Tanh;
    if (name == "identity") return Activation::Identity;
    throw ParseError("unknown activation '" + name + "' (expected relu, tanh or identity)");
}

std::string activation_name(Activation a) {
    switch (a) {
        case Activation::Relu: return "relu";
        case Activation::Tanh: return "tanh";
        case Activation::Identity: return "identity";
    }
    throw ConfigError("invalid activation tag");
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const auto& w : weights) n += w.size();
    for (const auto& b : biases) n += b.size();
    return n;
}

Network init_network(const std::vector<std::size_t>& layer_sizes,
                     const std::vector<Activation>& activations,
                     std::uint64_t seed) {
    if (layer_sizes.size() < 2)
        throw ShapeError("init_network: need at least an input and an output layer");
    for (std::size_t s : layer_sizes)
        if (s == 0) throw ShapeError("init_network: zero-width layer");
    if (activations.size() != layer_sizes.size() - 1)
        throw ShapeError("init_network: expected " + std::to_string(layer_sizes.size() - 1) +
                         " activations, got " + std::to_string(activations.size()));

    Network net;
    net.layer_sizes = layer_sizes;
    net.activations = activations;
    net.seed = seed;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const std::size_t fan_in = layer_sizes[l];
        const std::size_t fan_out = layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        Matrix w(fan_in, fan_out);
        for (double& v : w.values()) v = rng.uniform(-limit, limit);
        net.weights.push_back(std::move(w));
        net.biases.emplace_back(fan_out, 0.0);
    }
    return net;
}

namespace {

double activate(Activation a, double z) {
    switch (a) {
        case Activation::Relu: return z > 0.0 ? z : 0.0;
        case Activation::Tanh: return std::tanh(z);
        case Activation::Identity: return z;
    }
    return z;
}

// Derivative expressed through the activation output, which every supported
// function allows; saves keeping pre-activations around in the hot loop.
double activate_slope(Activation a, double z, double out) {
    switch (a) {
        case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::Tanh: return 1.0 - out * out;
        case Activation::Identity: return 1.0;
    }
    return 1.0;
}

} // namespace

Matrix forward(const Network& net, const Matrix& input, ForwardCache* cache) {
    if (input.cols() != net.input_dim())
        throw ShapeError("forward: input has " + std::to_string(input.cols()) +
                         " columns, network expects " + std::to_string(net.input_dim()));
    if (cache) {
        cache->input = input;
        cache->pre_activations.clear();
        cache->activations.clear();
    }
    Matrix a = input;
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        Matrix z = matmul(a, net.weights[l]);
        const auto& bias = net.biases[l];
        for (std::size_t i = 0; i < z.rows(); ++i) {
            double* zi = z.data() + i * z.cols();
            for (std::size_t j = 0; j < z.cols(); ++j) zi[j] += bias[j];
        }
        Matrix out(z.rows(), z.cols());
        for (std::size_t idx = 0; idx < z.size(); ++idx)
            out.values()[idx] = activate(net.activations[l], z.values()[idx]);
        if (cache) {
            cache->pre_activations.push_back(z);
            cache->activations.push_back(out);
        }
        a = std::move(out);
    }
    return a;
}

BackwardResult backward(const Network& net, const ForwardCache& cache,
                        const Matrix& d_output) {
    const std::size_t layers = net.layer_count();
    if (cache.pre_activations.size() != layers || cache.activations.size() != layers)
        throw ShapeError("backward: cache does not match the network");
    if (!d_output.same_shape(cache.activations.back()))
        throw ShapeError("backward: d_output shape does not match the forward output");

    BackwardResult res;
    res.grads.weights.resize(layers);
    res.grads.biases.resize(layers);

    Matrix delta = d_output;  // gradient w.r.t. layer activations, walking backwards
    for (std::size_t l = layers; l-- > 0;) {
        const Matrix& z = cache.pre_activations[l];
        const Matrix& out = cache.activations[l];
        for (std::size_t idx = 0; idx < delta.size(); ++idx)
            delta.values()[idx] *=
                activate_slope(net.activations[l], z.values()[idx], out.values()[idx]);

        const Matrix& prev = l == 0 ? cache.input : cache.activations[l - 1];
        res.grads.weights[l] = matmul_at_b(prev, delta);
        std::vector<double> db(delta.cols(), 0.0);
        for (std::size_t i = 0; i < delta.rows(); ++i) {
            const double* di = delta.data() + i * delta.cols();
            for (std::size_t j = 0; j < delta.cols(); ++j) db[j] += di[j];
        }
        res.grads.biases[l] = std::move(db);
        delta = matmul_a_bt(delta, net.weights[l]);
    }
    res.d_input = std::move(delta);
    return res;
}

LossResult mse_loss(const Matrix& pred, const Matrix& target) {
    if (!pred.same_shape(target))
        throw ShapeError("mse_loss: pred is " + std::to_string(pred.rows()) + "x" +
                         std::to_string(pred.cols()) + ", target is " +
                         std::to_string(target.rows()) + "x" + std::to_string(target.cols()));
    if (pred.empty()) throw ShapeError("mse_loss: empty matrices");
    LossResult res;
    res.d_pred = Matrix(pred.rows(), pred.cols());
    const double n = static_cast<double>(pred.size());
    double sum = 0.0;
    for (std::size_t idx = 0; idx < pred.size(); ++idx) {
        const double diff = pred.values()[idx] - target.values()[idx];
        sum += diff * diff;
        res.d_pred.values()[idx] = 2.0 * diff / n;
    }
    res.value = sum / n;
    return res;
}

Gradients zero_gradients_like(const Network& net) {
    Gradients g;
    for (const auto& w : net.weights) g.weights.emplace_back(w.rows(), w.cols());
    for (const auto& b : net.biases) g.biases.emplace_back(b.size(), 0.0);
    return g;
}

} // namespace oggn
