#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oggn/constraint.hpp"
#include "oggn/network.hpp"
#include "oggn/optim.hpp"
#include "oggn/oracle.hpp"

namespace oggn {

/// How one feature is produced: learned freely, pinned to a constant, or
/// learned under a box constraint.
struct FeatureMode {
    enum class Kind { Free, Fixed, Constrained };
    Kind kind = Kind::Free;
    double fixed_value = 0.0;
    ConstraintSpec constraint;  // meaningful only when kind == Constrained

    static FeatureMode free() { return {}; }
    static FeatureMode fixed(double value);
    static FeatureMode constrained(ConstraintSpec spec);
    friend bool operator==(const FeatureMode&, const FeatureMode&) = default;
};

enum class StopRule { ToleranceOnly, RangeExit };
enum class StopReason { Tolerance, MaxEpochs, RangeExit };

StopRule stop_rule_from_name(const std::string& name);   // "tolerance-only" | "range-exit"
std::string stop_rule_name(StopRule r);
std::string stop_reason_name(StopReason r);

struct GeneratorConfig {
    std::vector<std::size_t> hidden = {64, 64};  // output layer appended automatically
    Activation activation = Activation::Tanh;    // hidden layers; output is identity
};

struct GenTrainConfig {
    std::size_t max_epochs = 2000;
    // Plain SGD is the default on purpose: the oracle's input gradient
    // carries the relative importance of each feature, and per-parameter
    // normalizers (Adam) erase exactly that signal, sending weakly-coupled
    // features on full-speed random walks out of their constraint boxes.
    Optimizer optimizer = Optimizer::Sgd;
    double lr = 5e-5;
    LrSchedule schedule = LrSchedule::Cosine;
    std::optional<double> tolerance;  // loss threshold e; default (0.005*target)^2, or 1e-4 when target = 0
    std::uint64_t seed = 0;
    double range_slack = 0.01;        // in_range slack for the range-exit rule
};

struct GenerationTask {
    Oracle oracle;
    double desired_target = 0.0;
    std::vector<FeatureMode> modes;   // one per oracle input
    std::size_t rows = 8;
    std::size_t noise_dim = 16;
    GeneratorConfig generator_cfg;
    GenTrainConfig train_cfg;
    StopRule stop_rule = StopRule::ToleranceOnly;
    bool nonneg = true;               // softplus on learned features; forced where the oracle demands it
};

struct GenerationResult {
    Matrix features;                   // rows x d, from the best epoch
    Matrix predicted_targets;          // rows x 1, oracle output at those features
    std::optional<Matrix> true_targets;    // rows x 1 when a ground-truth function is known
    std::optional<Matrix> residuals;       // rows x n_equations for system tasks
    std::vector<double> loss_history;  // one mean loss per epoch run
    std::size_t epochs_run = 0;
    StopReason stop_reason = StopReason::MaxEpochs;
    double desired_target = 0.0;
    double loss = 0.0;                 // loss of the reported epoch
};

/// Fixed random generator input, sampled once per task and reused each epoch.
struct NoiseBlock {
    Matrix block;   // rows x noise_dim, i.i.d. uniform [0,1)
    std::uint64_t seed = 0;
};

NoiseBlock sample_noise(std::size_t rows, std::size_t noise_dim, std::uint64_t seed);

struct AssembledFeatures {
    Matrix values;  // rows x d
    Matrix slopes;  // d assembled / d raw, zero for fixed columns
};

/// Expands raw generator output (one column per non-Fixed feature, in order)
/// to full feature rows. `nonneg` marks learned features that pass through
/// softplus before any constraint; fixed columns take their constant.
AssembledFeatures assemble_features(const Matrix& raw, const std::vector<FeatureMode>& modes,
                                    const std::vector<bool>& nonneg);

/// Effective per-feature nonnegativity for a task: the oracle's own domain
/// demands, plus every learned feature when task.nonneg is set.
std::vector<bool> effective_nonneg(const GenerationTask& task);

/// Trains a fresh generator against the frozen oracle until the loss reaches
/// tolerance, the epoch budget runs out, or the range-exit rule fires.
GenerationResult oggn_train(const GenerationTask& task);

struct SolveConfig {
    std::size_t rows = 8;
    std::size_t noise_dim = 16;
    GeneratorConfig generator_cfg;
    GenTrainConfig train_cfg = {.max_epochs = 4000, .optimizer = Optimizer::Adam, .lr = 1e-3};
    bool nonneg = true;
};

/// Drives the residual norm of the system toward zero; the result's
/// `residuals` carries per-equation values at the reported rows.
GenerationResult solve_system(const PolySystem& sys, const SolveConfig& cfg);

struct VerifyRow {
    double predicted = 0.0;   // oracle's value
    double true_value = 0.0;  // ground-truth function's value
    double oracle_gap = 0.0;  // |predicted - true_value|
    double target_gap = 0.0;  // |desired_target - true_value|
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    double median_true_value = 0.0;
    double mean_oracle_gap = 0.0;
};

/// Ground-truth audit: evaluates `truth` on each generated row.
VerifyReport verify_result(const GenerationResult& result, const PolyFunction& truth);

} // namespace oggn
