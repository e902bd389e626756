#pragma once

#include <cstddef>

#include "oggn/network.hpp"

namespace oggn {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Per-parameter moment accumulators for Adam. Create once per network and
/// reuse across steps; shapes are checked on every update.
class AdamState {
public:
    explicit AdamState(const Network& net, AdamConfig cfg = {});

    AdamConfig& config() { return cfg_; }
    const AdamConfig& config() const { return cfg_; }
    long step_count() const { return step_; }

    friend void adam_step(Network& net, const Gradients& grads, AdamState& state);

private:
    AdamConfig cfg_;
    long step_ = 0;
    Gradients m_;
    Gradients v_;
};

/// Standard Adam update with bias correction; increments the step counter.
void adam_step(Network& net, const Gradients& grads, AdamState& state);

/// Plain gradient descent step.
void sgd_step(Network& net, const Gradients& grads, double lr);

enum class LrSchedule { Constant, Cosine };

LrSchedule lr_schedule_from_name(const std::string& name);
std::string lr_schedule_name(LrSchedule s);

enum class Optimizer { Adam, Sgd };

Optimizer optimizer_from_name(const std::string& name);
std::string optimizer_name(Optimizer o);

/// Learning rate for step `epoch` of `total`. Cosine anneals from `base`
/// to zero over the run.
double scheduled_lr(double base, LrSchedule schedule, std::size_t epoch, std::size_t total);

} // namespace oggn
