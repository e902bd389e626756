#include "oggn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

namespace oggn {

namespace {

double loss_at(const Network& net, const Matrix& input, const Matrix& target) {
    return mse_loss(forward(net, input), target).value;
}

double rel_err(double analytic, double numeric) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    return std::abs(analytic - numeric) / denom;
}

} // namespace

double grad_check(const Network& net, const Matrix& input, const Matrix& target,
                  double eps) {
    ForwardCache cache;
    const Matrix pred = forward(net, input, &cache);
    const LossResult loss = mse_loss(pred, target);
    const BackwardResult analytic = backward(net, cache, loss.d_pred);

    double worst = 0.0;
    Network probe = net;
    auto central = [&](double& slot) {
        const double saved = slot;
        slot = saved + eps;
        const double up = loss_at(probe, input, target);
        slot = saved - eps;
        const double down = loss_at(probe, input, target);
        slot = saved;
        return (up - down) / (2.0 * eps);
    };

    for (std::size_t l = 0; l < probe.weights.size(); ++l) {
        auto& w = probe.weights[l].values();
        for (std::size_t i = 0; i < w.size(); ++i)
            worst = std::max(worst, rel_err(analytic.grads.weights[l].values()[i], central(w[i])));
        auto& b = probe.biases[l];
        for (std::size_t i = 0; i < b.size(); ++i)
            worst = std::max(worst, rel_err(analytic.grads.biases[l][i], central(b[i])));
    }

    Matrix probe_in = input;
    for (std::size_t i = 0; i < probe_in.size(); ++i) {
        auto& slot = probe_in.values()[i];
        const double saved = slot;
        slot = saved + eps;
        const double up = loss_at(net, probe_in, target);
        slot = saved - eps;
        const double down = loss_at(net, probe_in, target);
        slot = saved;
        worst = std::max(worst, rel_err(analytic.d_input.values()[i], (up - down) / (2.0 * eps)));
    }
    return worst;
}

double grad_check(const Network& net, const Matrix& input, double eps) {
    return grad_check(net, input, Matrix(input.rows(), net.output_dim()), eps);
}

} // namespace oggn
