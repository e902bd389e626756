#include "oggn/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "oggn/errors.hpp"
#include "oggn/log.hpp"
#include "oggn/rng.hpp"

namespace oggn {

FeatureMode FeatureMode::fixed(double value) {
    if (!std::isfinite(value)) throw ConfigError("fixed feature value must be finite");
    FeatureMode m;
    m.kind = Kind::Fixed;
    m.fixed_value = value;
    return m;
}

FeatureMode FeatureMode::constrained(ConstraintSpec spec) {
    FeatureMode m;
    m.kind = Kind::Constrained;
    m.constraint = make_constraint(spec.lower, spec.upper, spec.c1, spec.c2);
    return m;
}

StopRule stop_rule_from_name(const std::string& name) {
    if (name == "tolerance-only" || name == "tolerance_only") return StopRule::ToleranceOnly;
    if (name == "range-exit" || name == "range_exit") return StopRule::RangeExit;
    throw ParseError("unknown stop rule '" + name + "' (expected tolerance-only or range-exit)");
}

std::string stop_rule_name(StopRule r) {
    return r == StopRule::ToleranceOnly ? "tolerance-only" : "range-exit";
}

std::string stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::Tolerance: return "tolerance";
        case StopReason::MaxEpochs: return "max_epochs";
        case StopReason::RangeExit: return "range_exit";
    }
    throw ConfigError("invalid stop reason");
}

NoiseBlock sample_noise(std::size_t rows, std::size_t noise_dim, std::uint64_t seed) {
    if (rows == 0 || noise_dim == 0) throw ConfigError("sample_noise: rows and noise_dim must be positive");
    NoiseBlock nb{Matrix(rows, noise_dim), seed};
    Rng rng(seed);
    for (double& v : nb.block.values()) v = rng.uniform01();
    return nb;
}

namespace {

// ln(1 + e^x), overflow-safe; equals x for large x, decays to 0 below.
double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

std::size_t learned_count(const std::vector<FeatureMode>& modes) {
    return static_cast<std::size_t>(
        std::count_if(modes.begin(), modes.end(), [](const FeatureMode& m) {
            return m.kind != FeatureMode::Kind::Fixed;
        }));
}

std::string format_row(std::span<const double> row) {
    std::string s = "(";
    char buf[32];
    for (std::size_t j = 0; j < row.size(); ++j) {
        std::snprintf(buf, sizeof(buf), "%.6g", row[j]);
        s += buf;
        if (j + 1 < row.size()) s += ", ";
    }
    return s + ")";
}

} // namespace

AssembledFeatures assemble_features(const Matrix& raw, const std::vector<FeatureMode>& modes,
                                    const std::vector<bool>& nonneg) {
    const std::size_t d = modes.size();
    const std::size_t k = learned_count(modes);
    if (raw.cols() != k)
        throw ShapeError("assemble_features: raw has " + std::to_string(raw.cols()) +
                         " columns, modes require " + std::to_string(k));
    if (nonneg.size() != d)
        throw ShapeError("assemble_features: nonneg flags must cover every feature");

    AssembledFeatures out{Matrix(raw.rows(), d), Matrix(raw.rows(), d)};
    std::size_t col = 0;
    for (std::size_t j = 0; j < d; ++j) {
        const FeatureMode& mode = modes[j];
        if (mode.kind == FeatureMode::Kind::Fixed) {
            for (std::size_t i = 0; i < raw.rows(); ++i) {
                out.values(i, j) = mode.fixed_value;
                out.slopes(i, j) = 0.0;
            }
            continue;
        }
        for (std::size_t i = 0; i < raw.rows(); ++i) {
            double v = raw(i, col);
            double slope = 1.0;
            if (nonneg[j]) {
                slope = sigmoid(v);
                v = softplus(v);
            }
            if (mode.kind == FeatureMode::Kind::Constrained) {
                slope *= constraint_slope(mode.constraint, v);
                v = apply_constraint(mode.constraint, v);
            }
            out.values(i, j) = v;
            out.slopes(i, j) = slope;
        }
        ++col;
    }
    return out;
}

std::vector<bool> effective_nonneg(const GenerationTask& task) {
    std::vector<bool> flags = task.oracle.required_nonnegative();
    if (task.nonneg)
        for (std::size_t j = 0; j < flags.size(); ++j)
            if (task.modes[j].kind != FeatureMode::Kind::Fixed) flags[j] = true;
    return flags;
}

namespace {

std::vector<std::optional<ConstraintSpec>> specs_from_modes(const std::vector<FeatureMode>& modes) {
    std::vector<std::optional<ConstraintSpec>> specs(modes.size());
    for (std::size_t j = 0; j < modes.size(); ++j)
        if (modes[j].kind == FeatureMode::Kind::Constrained) specs[j] = modes[j].constraint;
    return specs;
}

double resolve_tolerance(const GenTrainConfig& cfg, double target) {
    if (cfg.tolerance) {
        if (*cfg.tolerance <= 0.0) throw ConfigError("tolerance must be positive");
        return *cfg.tolerance;
    }
    if (target == 0.0) return 1e-4;
    const double rel = 0.005 * std::abs(target);
    return rel * rel;
}

void validate_task(const GenerationTask& task) {
    if (task.modes.size() != task.oracle.input_dim())
        throw ShapeError("task has " + std::to_string(task.modes.size()) +
                         " feature modes, oracle expects " +
                         std::to_string(task.oracle.input_dim()));
    if (task.rows == 0) throw ConfigError("task needs at least one row");
    if (task.noise_dim == 0) throw ConfigError("noise_dim must be positive");
    if (task.train_cfg.max_epochs == 0) throw ConfigError("max_epochs must be positive");
    if (!std::isfinite(task.desired_target)) throw ConfigError("desired target must be finite");
    if (task.train_cfg.range_slack < 0.0) throw ConfigError("range slack must be nonnegative");
}

// Per-row feature/prediction snapshot used for best-epoch reporting.
struct RowSnapshot {
    std::vector<double> features;
    double predicted = 0.0;
    double row_loss = 0.0;
    bool set = false;
};

} // namespace

GenerationResult oggn_train(const GenerationTask& task) {
    validate_task(task);
    const std::size_t d = task.modes.size();
    const std::size_t k = learned_count(task.modes);
    const std::size_t rows = task.rows;
    const double tol = resolve_tolerance(task.train_cfg, task.desired_target);
    const std::vector<bool> nonneg = effective_nonneg(task);
    const auto specs = specs_from_modes(task.modes);

    const NoiseBlock noise =
        sample_noise(rows, task.noise_dim, derive_seed(task.train_cfg.seed, "noise"));

    Network generator;
    std::optional<AdamState> adam;
    if (k > 0) {
        std::vector<std::size_t> sizes{task.noise_dim};
        sizes.insert(sizes.end(), task.generator_cfg.hidden.begin(),
                     task.generator_cfg.hidden.end());
        sizes.push_back(k);
        std::vector<Activation> acts(task.generator_cfg.hidden.size(),
                                     task.generator_cfg.activation);
        acts.push_back(Activation::Identity);
        generator = init_network(sizes, acts, derive_seed(task.train_cfg.seed, "generator-init"));
        if (task.train_cfg.optimizer == Optimizer::Adam)
            adam.emplace(generator, AdamConfig{.lr = task.train_cfg.lr});
    }

    Matrix target(rows, 1, task.desired_target);

    GenerationResult result;
    result.desired_target = task.desired_target;

    // Best-batch snapshot (tolerance-only reporting) and per-row snapshots
    // (range-exit reporting, where each row keeps its best in-range epoch).
    Matrix best_features;
    Matrix best_preds;
    double best_loss = std::numeric_limits<double>::infinity();
    std::vector<RowSnapshot> row_best(rows);      // restricted to in-range epochs
    std::vector<RowSnapshot> row_fallback(rows);  // unrestricted
    std::vector<bool> armed(rows, false);

    bool stopped = false;
    for (std::size_t epoch = 0; epoch < task.train_cfg.max_epochs && !stopped; ++epoch) {
        Matrix raw(rows, 0);
        ForwardCache cache;
        const double lr = scheduled_lr(task.train_cfg.lr, task.train_cfg.schedule, epoch,
                                       task.train_cfg.max_epochs);
        if (k > 0) {
            if (adam) adam->config().lr = lr;
            raw = forward(generator, noise.block, &cache);
        }
        const AssembledFeatures assembled = assemble_features(raw, task.modes, nonneg);

        Matrix preds(rows, 1);
        Matrix feature_grads(rows, d);  // d prediction_i / d assembled feature j
        for (std::size_t i = 0; i < rows; ++i) {
            OracleEval eval;
            try {
                eval = task.oracle.value_and_grad(assembled.values.row(i));
            } catch (const DomainError& e) {
                throw DomainError(std::string(e.what()) + " at features " +
                                  format_row(assembled.values.row(i)));
            }
            preds(i, 0) = eval.value;
            for (std::size_t j = 0; j < d; ++j) feature_grads(i, j) = eval.grad[j];
        }

        const LossResult loss = mse_loss(preds, target);
        if (!std::isfinite(loss.value))
            throw TrainingError("generation loss became non-finite at epoch " +
                                std::to_string(epoch));
        result.loss_history.push_back(loss.value);
        if (log_level() >= LogLevel::Debug && epoch % 100 == 0)
            log_debug("generation epoch " + std::to_string(epoch) + " loss " +
                      std::to_string(loss.value));

        // Snapshots.
        if (loss.value < best_loss) {
            best_loss = loss.value;
            best_features = assembled.values;
            best_preds = preds;
        }
        const std::vector<bool> rows_in =
            in_range(specs, assembled.values, task.train_cfg.range_slack);
        for (std::size_t i = 0; i < rows; ++i) {
            const double diff = preds(i, 0) - task.desired_target;
            const double row_loss = diff * diff;
            auto snap = [&](RowSnapshot& s) {
                if (s.set && s.row_loss <= row_loss) return;
                const auto row = assembled.values.row(i);
                s.features.assign(row.begin(), row.end());
                s.predicted = preds(i, 0);
                s.row_loss = row_loss;
                s.set = true;
            };
            snap(row_fallback[i]);
            if (rows_in[i]) snap(row_best[i]);
        }

        // Stop rules: range exit first, then the loss tolerance.
        if (task.stop_rule == StopRule::RangeExit) {
            bool exited = false;
            for (std::size_t i = 0; i < rows; ++i) {
                if (armed[i] && !rows_in[i]) exited = true;
                if (rows_in[i]) armed[i] = true;
            }
            if (exited) {
                result.stop_reason = StopReason::RangeExit;
                stopped = true;
            }
        }
        if (!stopped && k > 0 && loss.value <= tol) {
            result.stop_reason = StopReason::Tolerance;
            stopped = true;
        }

        if (!stopped && k > 0) {
            // d loss / d raw column = d_pred · oracle grad · assembly slope.
            Matrix d_raw(rows, k);
            std::size_t col = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (task.modes[j].kind == FeatureMode::Kind::Fixed) continue;
                for (std::size_t i = 0; i < rows; ++i)
                    d_raw(i, col) =
                        loss.d_pred(i, 0) * feature_grads(i, j) * assembled.slopes(i, j);
                ++col;
            }
            const BackwardResult back = backward(generator, cache, d_raw);
            if (adam)
                adam_step(generator, back.grads, *adam);
            else
                sgd_step(generator, back.grads, lr);
        }
    }

    result.epochs_run = result.loss_history.size();
    if (!stopped) result.stop_reason = StopReason::MaxEpochs;

    if (task.stop_rule == StopRule::RangeExit) {
        result.features = Matrix(rows, d);
        result.predicted_targets = Matrix(rows, 1);
        double sum = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const RowSnapshot& s = row_best[i].set ? row_best[i] : row_fallback[i];
            std::copy(s.features.begin(), s.features.end(), result.features.data() + i * d);
            result.predicted_targets(i, 0) = s.predicted;
            sum += s.row_loss;
        }
        result.loss = sum / static_cast<double>(rows);
    } else {
        result.features = std::move(best_features);
        result.predicted_targets = std::move(best_preds);
        result.loss = best_loss;
    }

    // Ground truth comes free for analytic scorers; attach it.
    if (const PolyFunction* truth = task.oracle.analytic_function()) {
        Matrix tv(rows, 1);
        for (std::size_t i = 0; i < rows; ++i) tv(i, 0) = poly_eval(*truth, result.features.row(i));
        result.true_targets = std::move(tv);
    } else if (const PolySystem* sys = task.oracle.system()) {
        Matrix res(rows, sys->equations.size());
        Matrix tv(rows, 1);
        for (std::size_t i = 0; i < rows; ++i) {
            double sum_sq = 0.0;
            for (std::size_t e = 0; e < sys->equations.size(); ++e) {
                const double fk = poly_eval(sys->equations[e], result.features.row(i));
                res(i, e) = fk;
                sum_sq += fk * fk;
            }
            tv(i, 0) = std::sqrt(sum_sq);
        }
        result.residuals = std::move(res);
        result.true_targets = std::move(tv);
    }

    log_info("generation finished after " + std::to_string(result.epochs_run) + " epochs (" +
             stop_reason_name(result.stop_reason) + "), loss " + std::to_string(result.loss));
    return result;
}

GenerationResult solve_system(const PolySystem& sys, const SolveConfig& cfg) {
    if (sys.equations.empty()) throw ConfigError("solve_system: empty system");
    GenerationTask task{
        .oracle = Oracle::residual(sys),
        .desired_target = 0.0,
        .modes = std::vector<FeatureMode>(sys.n_vars),
        .rows = cfg.rows,
        .noise_dim = cfg.noise_dim,
        .generator_cfg = cfg.generator_cfg,
        .train_cfg = cfg.train_cfg,
        .stop_rule = StopRule::ToleranceOnly,
        .nonneg = cfg.nonneg,
    };
    return oggn_train(task);
}

VerifyReport verify_result(const GenerationResult& result, const PolyFunction& truth) {
    if (truth.n_vars != result.features.cols())
        throw ShapeError("verify_result: truth spans " + std::to_string(truth.n_vars) +
                         " variables, result rows have " +
                         std::to_string(result.features.cols()));
    VerifyReport report;
    std::vector<double> trues;
    for (std::size_t i = 0; i < result.features.rows(); ++i) {
        VerifyRow row;
        row.predicted = result.predicted_targets(i, 0);
        row.true_value = poly_eval(truth, result.features.row(i));
        row.oracle_gap = std::abs(row.predicted - row.true_value);
        row.target_gap = std::abs(result.desired_target - row.true_value);
        report.mean_oracle_gap += row.oracle_gap;
        trues.push_back(row.true_value);
        report.rows.push_back(row);
    }
    if (!report.rows.empty()) {
        report.mean_oracle_gap /= static_cast<double>(report.rows.size());
        std::sort(trues.begin(), trues.end());
        const std::size_t n = trues.size();
        report.median_true_value =
            n % 2 == 1 ? trues[n / 2] : 0.5 * (trues[n / 2 - 1] + trues[n / 2]);
    }
    return report;
}

} // namespace oggn
