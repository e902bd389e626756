#include "doctest.h"

#include "oggn/errors.hpp"
#include "oggn/generator.hpp"
#include "oggn/result_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

using namespace oggn;

namespace {

double softplus(double x) { return std::log1p(std::exp(x)); }

GenerationTask fast_task(double target) {
    GenerationTask task{.oracle = Oracle::analytic(poly4())};
    task.desired_target = target;
    task.modes.assign(4, FeatureMode::free());
    task.generator_cfg.hidden = {16, 16};
    task.train_cfg.max_epochs = 400;
    task.train_cfg.lr = 2e-3;
    task.train_cfg.seed = 7;
    return task;
}

} // namespace

TEST_CASE("noise block is reproducible and in [0, 1)") {
    const NoiseBlock a = sample_noise(4, 6, 99);
    const NoiseBlock b = sample_noise(4, 6, 99);
    CHECK(a.block == b.block);
    CHECK(a.block.rows() == 4);
    CHECK(a.block.cols() == 6);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(a.block(i, j) >= 0.0);
            CHECK(a.block(i, j) < 1.0);
        }
    CHECK(sample_noise(4, 6, 100).block != a.block);
}

TEST_CASE("stop rule and reason names round-trip") {
    CHECK(stop_rule_from_name("tolerance-only") == StopRule::ToleranceOnly);
    CHECK(stop_rule_from_name("range-exit") == StopRule::RangeExit);
    CHECK(stop_rule_from_name("range_exit") == StopRule::RangeExit);
    CHECK(stop_rule_name(StopRule::RangeExit) == "range-exit");
    CHECK(stop_reason_name(StopReason::Tolerance) == "tolerance");
    CHECK(stop_reason_name(StopReason::MaxEpochs) == "max_epochs");
    CHECK(stop_reason_name(StopReason::RangeExit) == "range_exit");
    CHECK_THROWS_AS(stop_rule_from_name("sometimes"), ParseError);
}

TEST_CASE("feature mode constructors validate") {
    CHECK_THROWS_AS(FeatureMode::fixed(std::nan("")), ConfigError);
    CHECK_THROWS_AS(FeatureMode::constrained({.lower = 5, .upper = 1, .c1 = 2, .c2 = 2}),
                    ConfigError);
}

TEST_CASE("assembled fixed columns are bit-exact constants with zero slope") {
    const std::vector<FeatureMode> modes{FeatureMode::free(), FeatureMode::fixed(10.0)};
    Matrix raw(2, 1);  // one learned column
    raw(0, 0) = 0.3;
    raw(1, 0) = -1.2;
    const AssembledFeatures out = assemble_features(raw, modes, {false, false});
    CHECK(out.values(0, 1) == 10.0);
    CHECK(out.values(1, 1) == 10.0);
    CHECK(out.slopes(0, 1) == 0.0);
    CHECK(out.values(0, 0) == 0.3);  // no nonneg map requested
    CHECK(out.slopes(0, 0) == 1.0);
}

TEST_CASE("nonneg map is softplus with sigmoid slope") {
    const std::vector<FeatureMode> modes{FeatureMode::free()};
    Matrix raw(1, 1);
    raw(0, 0) = 0.4;
    const AssembledFeatures out = assemble_features(raw, modes, {true});
    CHECK(out.values(0, 0) == doctest::Approx(softplus(0.4)));
    CHECK(out.slopes(0, 0) == doctest::Approx(1.0 / (1.0 + std::exp(-0.4))));
}

TEST_CASE("constrained columns compose map slopes") {
    // Raw value large enough that softplus lands on the shrink branch:
    // softplus(200) = 200 exactly in doubles, 200 -> 200/20 = 10.
    const ConstraintSpec box = make_constraint(1, 100, 20, 10);
    const std::vector<FeatureMode> modes{FeatureMode::constrained(box)};
    Matrix raw(1, 1);
    raw(0, 0) = 200.0;
    const AssembledFeatures out = assemble_features(raw, modes, {true});
    CHECK(out.values(0, 0) == 10.0);
    // slope = sigmoid(200) * 1/c1 = 1 * 0.05
    CHECK(out.slopes(0, 0) == doctest::Approx(0.05));

    raw(0, 0) = -4.0;  // softplus ≈ 0.018, below the box -> grow branch
    const AssembledFeatures low = assemble_features(raw, modes, {true});
    CHECK(low.values(0, 0) == doctest::Approx(softplus(-4.0) * 10.0));
    CHECK(low.slopes(0, 0) ==
          doctest::Approx(10.0 / (1.0 + std::exp(4.0))));
}

TEST_CASE("effective nonneg forces fractional-exponent oracles") {
    GenerationTask task{.oracle = Oracle::analytic(poly4())};
    task.modes.assign(4, FeatureMode::free());
    task.modes[3] = FeatureMode::fixed(10.0);
    task.nonneg = false;  // user opt-out cannot override the domain demand
    const auto mask = effective_nonneg(task);
    CHECK(mask[0]);
    CHECK(mask[1]);
    CHECK(mask[2]);
    CHECK(mask[3]);
}

TEST_CASE("training approaches the target and reports its best epoch") {
    GenerationTask task = fast_task(150.0);
    const GenerationResult result = oggn_train(task);

    REQUIRE(result.features.rows() == 8);
    REQUIRE(result.features.cols() == 4);
    CHECK(result.loss_history.size() == result.epochs_run);
    // Reported loss is the best epoch's loss.
    CHECK(result.loss == doctest::Approx(*std::min_element(result.loss_history.begin(),
                                                           result.loss_history.end())));
    CHECK(std::fabs(result.predicted_targets(0, 0) - 150.0) / 150.0 < 0.05);
    // Analytic oracle: the predicted value *is* the true value.
    REQUIRE(result.true_targets.has_value());
    CHECK((*result.true_targets)(0, 0) == result.predicted_targets(0, 0));
}

TEST_CASE("training is deterministic end to end") {
    GenerationTask task = fast_task(150.0);
    task.train_cfg.max_epochs = 60;
    const GenerationResult a = oggn_train(task);
    const GenerationResult b = oggn_train(task);
    CHECK(a.features == b.features);
    CHECK(a.loss_history == b.loss_history);
    CHECK(a.epochs_run == b.epochs_run);
}

TEST_CASE("fixed features are constant through training") {
    GenerationTask task = fast_task(150.0);
    task.modes[3] = FeatureMode::fixed(10.0);
    task.train_cfg.max_epochs = 120;
    const GenerationResult result = oggn_train(task);
    for (std::size_t i = 0; i < result.features.rows(); ++i)
        CHECK(result.features(i, 3) == 10.0);
}

TEST_CASE("all-fixed task runs the epoch budget without a tolerance stop") {
    GenerationTask task = fast_task(21.8336);
    for (auto& m : task.modes) m = FeatureMode::fixed(1.0);
    task.train_cfg.max_epochs = 5;
    const GenerationResult result = oggn_train(task);
    CHECK(result.epochs_run == 5);
    CHECK(result.stop_reason == StopReason::MaxEpochs);
    CHECK(result.predicted_targets(0, 0) == 21.8336);
}

TEST_CASE("tolerance stop honours an explicit threshold") {
    GenerationTask task = fast_task(150.0);
    task.train_cfg.tolerance = 1e10;  // absurdly loose: stops after epoch 1
    const GenerationResult result = oggn_train(task);
    CHECK(result.epochs_run == 1);
    CHECK(result.stop_reason == StopReason::Tolerance);
}

TEST_CASE("range-exit reports features inside the box") {
    GenerationTask task = fast_task(788.0);
    const ConstraintSpec box = make_constraint(1, 100, 20, 10);
    task.modes = {FeatureMode::constrained(box), FeatureMode::constrained(box),
                  FeatureMode::constrained(box), FeatureMode::fixed(100.0)};
    task.stop_rule = StopRule::RangeExit;
    task.train_cfg.max_epochs = 200;
    const GenerationResult result = oggn_train(task);

    std::vector<std::optional<ConstraintSpec>> specs{box, box, box, std::nullopt};
    const auto ok = in_range(specs, result.features, task.train_cfg.range_slack);
    for (std::size_t i = 0; i < result.features.rows(); ++i) CHECK(ok[i]);
}

TEST_CASE("task validation rejects inconsistent setups") {
    GenerationTask task = fast_task(100.0);
    task.modes.resize(2);  // wrong arity for the oracle
    CHECK_THROWS_AS(oggn_train(task), ShapeError);

    GenerationTask zero_rows = fast_task(100.0);
    zero_rows.rows = 0;
    CHECK_THROWS_AS(oggn_train(zero_rows), ConfigError);
}

TEST_CASE("system solving drives residuals toward zero and re-evaluates them") {
    SolveConfig cfg;
    cfg.train_cfg.seed = 1;
    const GenerationResult result = solve_system(demo_system(), cfg);
    REQUIRE(result.residuals.has_value());
    REQUIRE(result.true_targets.has_value());

    double best = 1e300;
    for (std::size_t i = 0; i < result.features.rows(); ++i) {
        double sum_sq = 0.0;
        for (std::size_t k = 0; k < result.residuals->cols(); ++k)
            sum_sq += (*result.residuals)(i, k) * (*result.residuals)(i, k);
        // Reported norm equals the recomputed norm of the reported residuals.
        CHECK((*result.true_targets)(i, 0) == doctest::Approx(std::sqrt(sum_sq)).epsilon(1e-12));
        best = std::min(best, std::sqrt(sum_sq));
    }
    CHECK(best < 0.1);
}

TEST_CASE("verify_result recomputes truth and medians") {
    GenerationTask task = fast_task(150.0);
    task.train_cfg.max_epochs = 200;
    const GenerationResult result = oggn_train(task);
    const VerifyReport report = verify_result(result, poly4());
    REQUIRE(report.rows.size() == result.features.rows());
    for (const VerifyRow& row : report.rows) {
        CHECK(row.oracle_gap == doctest::Approx(0.0));  // analytic oracle
        CHECK(row.target_gap == doctest::Approx(std::fabs(150.0 - row.true_value)));
    }
    CHECK(report.median_true_value == doctest::Approx(150.0).epsilon(0.05));
}

TEST_CASE("result files round-trip") {
    GenerationTask task = fast_task(150.0);
    task.train_cfg.max_epochs = 30;
    const GenerationResult result = oggn_train(task);
    const auto path = std::filesystem::temp_directory_path() / "oggn_result_roundtrip.json";
    save_result(result, path, "{\"who\":\"test\"}");
    const LoadedResult back = load_result(path);
    CHECK(back.result.features == result.features);
    CHECK(back.result.loss_history == result.loss_history);
    CHECK(back.result.epochs_run == result.epochs_run);
    CHECK(back.result.stop_reason == result.stop_reason);
    CHECK(back.result.desired_target == result.desired_target);
    CHECK(back.config_echo_json.find("\"who\"") != std::string::npos);
    std::filesystem::remove(path);
}
