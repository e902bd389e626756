#include "oggn/optim.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oggn/errors.hpp"

namespace oggn {

AdamState::AdamState(const Network& net, AdamConfig cfg)
    : cfg_(cfg), m_(zero_gradients_like(net)), v_(zero_gradients_like(net)) {}

namespace {

void check_like(const Network& net, const Gradients& grads, const char* who) {
    if (grads.weights.size() != net.weights.size() || grads.biases.size() != net.biases.size())
        throw ShapeError(std::string(who) + ": gradient layer count does not match the network");
    for (std::size_t l = 0; l < net.weights.size(); ++l)
        if (!grads.weights[l].same_shape(net.weights[l]) ||
            grads.biases[l].size() != net.biases[l].size())
            throw ShapeError(std::string(who) + ": gradient shape mismatch at layer " +
                             std::to_string(l));
}

} // namespace

void adam_step(Network& net, const Gradients& grads, AdamState& state) {
    check_like(net, grads, "adam_step");
    const AdamConfig& c = state.cfg_;
    state.step_ += 1;
    const double t = static_cast<double>(state.step_);
    const double corr1 = 1.0 - std::pow(c.beta1, t);
    const double corr2 = 1.0 - std::pow(c.beta2, t);

    auto update = [&](double& param, double g, double& m, double& v) {
        m = c.beta1 * m + (1.0 - c.beta1) * g;
        v = c.beta2 * v + (1.0 - c.beta2) * g * g;
        param -= c.lr * (m / corr1) / (std::sqrt(v / corr2) + c.epsilon);
    };

    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        auto& w = net.weights[l].values();
        const auto& gw = grads.weights[l].values();
        auto& mw = state.m_.weights[l].values();
        auto& vw = state.v_.weights[l].values();
        for (std::size_t i = 0; i < w.size(); ++i) update(w[i], gw[i], mw[i], vw[i]);

        auto& b = net.biases[l];
        const auto& gb = grads.biases[l];
        auto& mb = state.m_.biases[l];
        auto& vb = state.v_.biases[l];
        for (std::size_t i = 0; i < b.size(); ++i) update(b[i], gb[i], mb[i], vb[i]);
    }
}

void sgd_step(Network& net, const Gradients& grads, double lr) {
    check_like(net, grads, "sgd_step");
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        auto& w = net.weights[l].values();
        const auto& gw = grads.weights[l].values();
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * gw[i];
        auto& b = net.biases[l];
        const auto& gb = grads.biases[l];
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= lr * gb[i];
    }
}

Optimizer optimizer_from_name(const std::string& name) {
    if (name == "adam") return Optimizer::Adam;
    if (name == "sgd") return Optimizer::Sgd;
    throw ParseError("unknown optimizer '" + name + "' (expected adam or sgd)");
}

std::string optimizer_name(Optimizer o) { return o == Optimizer::Adam ? "adam" : "sgd"; }

LrSchedule lr_schedule_from_name(const std::string& name) {
    if (name == "constant") return LrSchedule::Constant;
    if (name == "cosine") return LrSchedule::Cosine;
    throw ParseError("unknown lr schedule '" + name + "' (expected constant or cosine)");
}

std::string lr_schedule_name(LrSchedule s) {
    return s == LrSchedule::Constant ? "constant" : "cosine";
}

double scheduled_lr(double base, LrSchedule schedule, std::size_t epoch, std::size_t total) {
    if (schedule == LrSchedule::Constant || total <= 1) return base;
    const double progress = static_cast<double>(epoch) / static_cast<double>(total - 1);
    return base * 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
}

} // namespace oggn
