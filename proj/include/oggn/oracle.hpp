#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "oggn/dataset.hpp"
#include "oggn/network.hpp"
#include "oggn/optim.hpp"

namespace oggn {

/// A trained scorer: network plus the feature/target standardization fitted
/// on its training set. Raw feature rows go in, raw-scale values come out.
struct OracleModel {
    Network net;
    std::vector<double> feature_mean;
    std::vector<double> feature_scale;  // std dev, clamped to 1 when degenerate
    double target_mean = 0.0;
    double target_scale = 1.0;

    std::size_t input_dim() const { return net.input_dim(); }
    friend bool operator==(const OracleModel&, const OracleModel&) = default;
};

struct OracleTrainConfig {
    std::vector<std::size_t> hidden = {64, 64};
    Activation activation = Activation::Tanh;
    std::size_t epochs = 200;
    std::size_t batch = 128;
    AdamConfig adam;                       // lr 1e-3
    LrSchedule schedule = LrSchedule::Cosine;
    std::uint64_t seed = 0;
};

struct OracleTrainReport {
    std::vector<double> loss_history;      // per-epoch mean train MSE
    double final_train_mse = 0.0;
};

/// Standardizes the data, trains with Adam on shuffled mini-batches, and
/// bakes the standardization into the returned model.
OracleModel train_oracle(const Dataset& train, const OracleTrainConfig& cfg,
                         OracleTrainReport* report = nullptr);

struct OracleEval {
    double value = 0.0;
    std::vector<double> grad;  // d value / d raw feature
};

/// Scores one raw feature row; the gradient is propagated through both
/// standardizations so it is exact in raw units.
OracleEval oracle_value_and_grad(const OracleModel& model, std::span<const double> x);

/// Batch forward pass on raw rows, one prediction per row (n x 1).
Matrix oracle_predict(const OracleModel& model, const Matrix& features);

struct OracleMetrics {
    double mse = 0.0;
    double mean_rel_err = 0.0;  // mean |pred - y| / max(|y|, 1e-9)
    double max_rel_err = 0.0;
};

OracleMetrics evaluate_oracle(const OracleModel& model, const Dataset& ds);

// JSON file format_version 1: network plus standardization arrays.
void save_oracle(const OracleModel& model, const std::filesystem::path& path);
OracleModel load_oracle(const std::filesystem::path& path);

/// Tagged union over the three scorer kinds — a trained network, an analytic
/// function, or the residual norm sqrt(sum f_k^2) of an equation system.
/// All expose a value and its gradient with respect to the raw features.
class Oracle {
public:
    static Oracle neural(OracleModel model);
    static Oracle analytic(PolyFunction f);
    static Oracle residual(PolySystem s);

    std::size_t input_dim() const;
    OracleEval value_and_grad(std::span<const double> x) const;

    // Kind probes; non-matching accessors return nullptr.
    const OracleModel* neural_model() const;
    const PolyFunction* analytic_function() const;
    const PolySystem* system() const;

    /// Per-variable: true where the scorer's domain demands x >= 0
    /// (any fractional exponent). Neural scorers demand nothing.
    std::vector<bool> required_nonnegative() const;

private:
    std::variant<OracleModel, PolyFunction, PolySystem> impl_;
    explicit Oracle(std::variant<OracleModel, PolyFunction, PolySystem> impl)
        : impl_(std::move(impl)) {}
};

/// An oracle reference may name a trained model file, an analytic function
/// file, or a built-in function id; picks by content.
Oracle resolve_oracle(const std::string& ref);

} // namespace oggn
