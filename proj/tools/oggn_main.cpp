// Command-line front end: dataset synthesis, oracle training and evaluation,
// inversion tasks, equation-system solving, and ground-truth audits.
//
// Exit codes: 0 success, 2 usage or input error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "oggn/oggn.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// ---- flag parsing helpers -------------------------------------------------

// "x3" -> 2 (zero-based), bounded by the feature count.
std::size_t parse_feature_name(const std::string& name, std::size_t d) {
    if (name.size() < 2 || name[0] != 'x')
        throw oggn::ParseError("feature '" + name + "' should look like x1, x2, ...");
    std::size_t idx = 0;
    try {
        idx = std::stoul(name.substr(1));
    } catch (const std::exception&) {
        throw oggn::ParseError("feature '" + name + "' should look like x1, x2, ...");
    }
    if (idx < 1 || idx > d)
        throw oggn::ParseError("feature '" + name + "' is out of range for " +
                               std::to_string(d) + " features");
    return idx - 1;
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw oggn::ParseError("bad " + what + " '" + text + "'");
    }
}

struct FixFlag {
    std::size_t index;
    double value;
};

// "x4=10"
FixFlag parse_fix(const std::string& text, std::size_t d) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw oggn::ParseError("--fix expects name=value, got '" + text + "'");
    return {parse_feature_name(text.substr(0, eq), d), parse_double(text.substr(eq + 1), "fixed value")};
}

struct RangeFlag {
    std::size_t index;
    double lower;
    double upper;
    std::optional<double> c1;  // per-feature override
    std::optional<double> c2;
};

// "x1=1:100" or "x2=1:100@20,10"
RangeFlag parse_range(const std::string& text, std::size_t d) {
    const auto eq = text.find('=');
    const auto colon = text.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
        throw oggn::ParseError("--range expects name=lower:upper[@c1,c2], got '" + text + "'");
    RangeFlag r;
    r.index = parse_feature_name(text.substr(0, eq), d);
    r.lower = parse_double(text.substr(eq + 1, colon - eq - 1), "range lower bound");
    std::string rest = text.substr(colon + 1);
    const auto at = rest.find('@');
    if (at != std::string::npos) {
        const std::string consts = rest.substr(at + 1);
        rest = rest.substr(0, at);
        const auto comma = consts.find(',');
        if (comma == std::string::npos)
            throw oggn::ParseError("--range constants expect c1,c2 after '@' in '" + text + "'");
        r.c1 = parse_double(consts.substr(0, comma), "c1");
        r.c2 = parse_double(consts.substr(comma + 1), "c2");
    }
    r.upper = parse_double(rest, "range upper bound");
    return r;
}

// Half-open sample interval "0:500".
std::pair<double, double> parse_interval(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw oggn::ParseError("--range expects low:high, got '" + text + "'");
    return {parse_double(text.substr(0, colon), "range low"),
            parse_double(text.substr(colon + 1), "range high")};
}

bool parse_on_off(const std::string& text, const std::string& flag) {
    if (text == "on") return true;
    if (text == "off") return false;
    throw oggn::ParseError(flag + " expects on or off, got '" + text + "'");
}

// ---- shared oracle/config plumbing ----------------------------------------

// A domain error while training means the run wandered outside the oracle's
// domain — a numerical failure (exit 3), not a usage error.
oggn::GenerationResult train_or_fail(const oggn::GenerationTask& task) {
    try {
        return oggn::oggn_train(task);
    } catch (const oggn::DomainError& e) {
        throw oggn::TrainingError(e.what());
    }
}


struct GenFlags {
    std::size_t rows = 8;
    std::size_t noise_dim = 16;
    std::vector<std::size_t> hidden = {64, 64};
    std::string activation = "tanh";
    std::string schedule = "cosine";
    std::string optimizer = "sgd";
    double lr = 5e-5;
    std::size_t epochs = 2000;
    double tolerance = 0.0;  // 0 = default rule
    double slack = 0.01;
    std::string nonneg = "on";
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> seeds;  // sweep, overrides --seed when set
};

void add_gen_flags(CLI::App* cmd, GenFlags& f, const std::string& default_optimizer,
                   double default_lr, std::size_t default_epochs) {
    f.optimizer = default_optimizer;
    f.lr = default_lr;
    f.epochs = default_epochs;
    cmd->add_option("--rows", f.rows, "Generated feature vectors per epoch");
    cmd->add_option("--noise-dim", f.noise_dim, "Width of the fixed random input block");
    cmd->add_option("--hidden", f.hidden, "Generator hidden layer sizes")->delimiter(',');
    cmd->add_option("--activation", f.activation, "Generator hidden activation");
    cmd->add_option("--schedule", f.schedule, "Learning-rate schedule (constant|cosine)");
    cmd->add_option("--optimizer", f.optimizer, "Generator optimizer (adam|sgd)");
    cmd->add_option("--lr", f.lr, "Generator learning rate");
    cmd->add_option("--epochs", f.epochs, "Maximum training epochs");
    cmd->add_option("--tolerance", f.tolerance, "Stop once mean loss falls to this value");
    cmd->add_option("--slack", f.slack, "Range slack fraction for the range-exit rule");
    cmd->add_option("--nonneg", f.nonneg, "Map learned features through softplus (on|off)");
    cmd->add_option("--seed", f.seed, "Seed for noise and generator init");
    cmd->add_option("--seeds", f.seeds, "Seed sweep; one result file per seed")->delimiter(',');
}

void fill_task_from_flags(oggn::GenerationTask& task, const GenFlags& f) {
    task.rows = f.rows;
    task.noise_dim = f.noise_dim;
    task.generator_cfg.hidden = f.hidden;
    task.generator_cfg.activation = oggn::activation_from_name(f.activation);
    task.train_cfg.max_epochs = f.epochs;
    task.train_cfg.optimizer = oggn::optimizer_from_name(f.optimizer);
    task.train_cfg.lr = f.lr;
    task.train_cfg.schedule = oggn::lr_schedule_from_name(f.schedule);
    if (f.tolerance != 0.0) task.train_cfg.tolerance = f.tolerance;
    task.train_cfg.range_slack = f.slack;
    task.nonneg = parse_on_off(f.nonneg, "--nonneg");
}

json gen_flags_echo(const GenFlags& f, std::uint64_t seed) {
    json j;
    j["rows"] = f.rows;
    j["noise_dim"] = f.noise_dim;
    j["hidden"] = f.hidden;
    j["activation"] = f.activation;
    j["schedule"] = f.schedule;
    j["optimizer"] = f.optimizer;
    j["lr"] = f.lr;
    j["epochs"] = f.epochs;
    if (f.tolerance != 0.0) j["tolerance"] = f.tolerance;
    j["slack"] = f.slack;
    j["nonneg"] = f.nonneg;
    j["seed"] = seed;
    return j;
}

// "result.json" + seed 3 -> "result-seed3.json" (sweeps only).
std::filesystem::path seed_path(const std::filesystem::path& out, std::uint64_t seed) {
    std::filesystem::path p = out;
    const std::string stem = p.stem().string();
    p.replace_filename(stem + "-seed" + std::to_string(seed) + p.extension().string());
    return p;
}

void print_result_summary(const oggn::GenerationResult& r) {
    std::cout << "epochs run: " << r.epochs_run << " (stopped by " <<
        oggn::stop_reason_name(r.stop_reason) << "), reported loss " << fmt(r.loss) << "\n";
    for (std::size_t i = 0; i < r.features.rows(); ++i) {
        std::cout << "  row " << i << ": features (";
        for (std::size_t j = 0; j < r.features.cols(); ++j) {
            std::cout << fmt(r.features(i, j));
            if (j + 1 < r.features.cols()) std::cout << ", ";
        }
        std::cout << ") -> predicted " << fmt(r.predicted_targets(i, 0));
        if (r.true_targets) std::cout << ", true " << fmt((*r.true_targets)(i, 0));
        if (r.residuals) {
            std::cout << ", residuals (";
            for (std::size_t e = 0; e < r.residuals->cols(); ++e) {
                std::cout << fmt((*r.residuals)(i, e));
                if (e + 1 < r.residuals->cols()) std::cout << ", ";
            }
            std::cout << ")";
        }
        std::cout << "\n";
    }
}

// ---- subcommands -----------------------------------------------------------

struct GenDataArgs {
    std::string function = "poly4";
    std::size_t n = 10000;
    std::string range = "0:500";
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_gen_data(const GenDataArgs& a) {
    const oggn::PolyFunction f = oggn::resolve_function(a.function);
    const auto [low, high] = parse_interval(a.range);
    oggn::SynthConfig cfg{a.function, a.n, low, high, a.seed};
    const oggn::Dataset ds = oggn::synth_dataset(f, cfg);

    json echo{{"command", "gen-data"}, {"function", a.function}, {"n", a.n},
              {"low", low},            {"high", high},           {"seed", a.seed}};
    oggn::save_dataset_csv(ds, a.out, echo.dump());

    double tmin = 0.0, tmax = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double t = ds.targets(i, 0);
        if (i == 0 || t < tmin) tmin = t;
        if (i == 0 || t > tmax) tmax = t;
    }
    std::cout << "wrote " << ds.size() << " rows to " << a.out << " (features in [" << fmt(low)
              << ", " << fmt(high) << "), targets in [" << fmt(tmin) << ", " << fmt(tmax)
              << "])\n";
    return kExitOk;
}

struct TrainOracleArgs {
    std::string data;
    std::string test_data;
    std::vector<std::size_t> hidden = {64, 64};
    std::string activation = "tanh";
    std::string schedule = "cosine";
    std::size_t epochs = 200;
    std::size_t batch = 128;
    double lr = 1e-3;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_train_oracle(const TrainOracleArgs& a) {
    const oggn::Dataset train = oggn::load_dataset_csv(a.data);
    oggn::OracleTrainConfig cfg;
    cfg.hidden = a.hidden;
    cfg.activation = oggn::activation_from_name(a.activation);
    cfg.schedule = oggn::lr_schedule_from_name(a.schedule);
    cfg.epochs = a.epochs;
    cfg.batch = a.batch;
    cfg.adam.lr = a.lr;
    cfg.seed = a.seed;

    oggn::OracleTrainReport report;
    const oggn::OracleModel model = oggn::train_oracle(train, cfg, &report);
    oggn::save_oracle(model, a.out);

    const oggn::OracleMetrics train_m = oggn::evaluate_oracle(model, train);
    std::cout << "trained on " << train.size() << " rows; train mse " << fmt(train_m.mse)
              << ", mean relative error " << fmt(train_m.mean_rel_err * 100.0) << "%\n";
    if (!a.test_data.empty()) {
        const oggn::Dataset test = oggn::load_dataset_csv(a.test_data);
        const oggn::OracleMetrics m = oggn::evaluate_oracle(model, test);
        std::cout << "test (" << test.size() << " rows): mse " << fmt(m.mse)
                  << ", mean relative error " << fmt(m.mean_rel_err * 100.0) << "%\n";
    }
    std::cout << "model written to " << a.out << "\n";
    return kExitOk;
}

struct EvalOracleArgs {
    std::string oracle;
    std::string data;
};

int cmd_eval_oracle(const EvalOracleArgs& a) {
    const oggn::OracleModel model = oggn::load_oracle(a.oracle);
    const oggn::Dataset ds = oggn::load_dataset_csv(a.data);
    const oggn::OracleMetrics m = oggn::evaluate_oracle(model, ds);
    std::cout << "rows " << ds.size() << ": mse " << fmt(m.mse) << ", mean relative error "
              << fmt(m.mean_rel_err * 100.0) << "%, max relative error "
              << fmt(m.max_rel_err * 100.0) << "%\n";
    return kExitOk;
}

struct InvertArgs {
    std::string oracle;
    double target = 0.0;
    std::vector<std::string> fixes;
    std::vector<std::string> ranges;
    std::string c1 = "";
    std::string c2 = "";
    std::string stop = "tolerance-only";
    std::string truth;
    GenFlags gen;
    std::string out;
};

// The 50-epoch unconstrained pre-pass behind `--c1 auto` / `--c2 auto`:
// observe where the learned features land, then pick rescaling constants that
// fold that span back into the box (never below 2).
void resolve_auto_constants(oggn::GenerationTask task, const std::vector<RangeFlag>& ranges,
                            bool auto_c1, bool auto_c2, double& c1, double& c2) {
    for (oggn::FeatureMode& m : task.modes)
        if (m.kind == oggn::FeatureMode::Kind::Constrained) m = oggn::FeatureMode::free();
    task.train_cfg.max_epochs = 50;
    task.train_cfg.tolerance = 1e-300;  // observe all 50 epochs
    task.stop_rule = oggn::StopRule::ToleranceOnly;
    const oggn::GenerationResult probe = oggn::oggn_train(task);

    double worst_c1 = 2.0, worst_c2 = 2.0;
    for (const RangeFlag& r : ranges) {
        double max_out = 0.0;
        double min_pos = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < probe.features.rows(); ++i) {
            const double v = probe.features(i, r.index);
            max_out = std::max(max_out, v);
            if (v > 0.0) min_pos = std::min(min_pos, v);
        }
        if (r.upper > 0.0) worst_c1 = std::max(worst_c1, std::ceil(max_out / r.upper));
        if (std::isfinite(min_pos) && min_pos > 0.0 && r.lower > 0.0)
            worst_c2 = std::max(worst_c2, std::ceil(r.lower / min_pos));
    }
    if (auto_c1) c1 = worst_c1;
    if (auto_c2) c2 = worst_c2;
    std::cout << "auto constants from 50 unconstrained epochs: c1 " << fmt(c1) << ", c2 "
              << fmt(c2) << "\n";
}

int cmd_invert(const InvertArgs& a) {
    oggn::GenerationTask task{.oracle = oggn::resolve_oracle(a.oracle)};
    const std::size_t d = task.oracle.input_dim();
    task.desired_target = a.target;
    task.modes.assign(d, oggn::FeatureMode::free());
    fill_task_from_flags(task, a.gen);
    task.stop_rule = oggn::stop_rule_from_name(a.stop);

    for (const std::string& text : a.fixes) {
        const FixFlag fix = parse_fix(text, d);
        if (task.modes[fix.index].kind != oggn::FeatureMode::Kind::Free)
            throw oggn::ConfigError("feature x" + std::to_string(fix.index + 1) +
                                    " given more than once");
        task.modes[fix.index] = oggn::FeatureMode::fixed(fix.value);
    }

    std::vector<RangeFlag> ranges;
    for (const std::string& text : a.ranges) {
        RangeFlag r = parse_range(text, d);
        if (task.modes[r.index].kind != oggn::FeatureMode::Kind::Free)
            throw oggn::ConfigError("feature x" + std::to_string(r.index + 1) +
                                    " is both fixed and ranged");
        for (const RangeFlag& other : ranges)
            if (other.index == r.index)
                throw oggn::ConfigError("feature x" + std::to_string(r.index + 1) +
                                        " ranged twice");
        ranges.push_back(r);
    }

    const bool auto_c1 = a.c1 == "auto";
    const bool auto_c2 = a.c2 == "auto";
    double global_c1 = a.c1.empty() || auto_c1 ? 2.0 : parse_double(a.c1, "c1");
    double global_c2 = a.c2.empty() || auto_c2 ? 2.0 : parse_double(a.c2, "c2");
    const bool needs_global =
        std::any_of(ranges.begin(), ranges.end(), [](const RangeFlag& r) { return !r.c1; });
    if ((auto_c1 || auto_c2) && needs_global && !ranges.empty()) {
        oggn::GenerationTask probe_task = task;
        probe_task.train_cfg.seed = a.gen.seeds.empty() ? a.gen.seed : a.gen.seeds.front();
        // The probe needs the eventual constrained features marked; give them
        // placeholder constants so validation passes, then strip them inside.
        for (const RangeFlag& r : ranges)
            probe_task.modes[r.index] = oggn::FeatureMode::constrained(
                oggn::make_constraint(r.lower, r.upper, 2.0, 2.0));
        resolve_auto_constants(probe_task, ranges, auto_c1, auto_c2, global_c1, global_c2);
    }
    for (const RangeFlag& r : ranges)
        task.modes[r.index] = oggn::FeatureMode::constrained(oggn::make_constraint(
            r.lower, r.upper, r.c1.value_or(global_c1), r.c2.value_or(global_c2)));

    std::optional<oggn::PolyFunction> truth;
    if (!a.truth.empty()) truth = oggn::resolve_function(a.truth);

    json echo = gen_flags_echo(a.gen, 0);
    echo["command"] = "invert";
    echo["oracle"] = a.oracle;
    echo["target"] = a.target;
    echo["stop"] = a.stop;
    if (!a.fixes.empty()) echo["fix"] = a.fixes;
    if (!a.ranges.empty()) {
        echo["range"] = a.ranges;
        echo["c1"] = global_c1;
        echo["c2"] = global_c2;
    }
    if (!a.truth.empty()) echo["truth"] = a.truth;

    std::vector<std::uint64_t> seeds = a.gen.seeds.empty()
                                           ? std::vector<std::uint64_t>{a.gen.seed}
                                           : a.gen.seeds;
    const bool sweep = !a.gen.seeds.empty();
    for (std::uint64_t seed : seeds) {
        task.train_cfg.seed = seed;
        echo["seed"] = seed;
        oggn::GenerationResult result = train_or_fail(task);
        if (truth && !result.true_targets) {
            oggn::Matrix tv(result.features.rows(), 1);
            for (std::size_t i = 0; i < result.features.rows(); ++i)
                tv(i, 0) = oggn::poly_eval(*truth, result.features.row(i));
            result.true_targets = std::move(tv);
        }
        const std::filesystem::path out = sweep ? seed_path(a.out, seed) : std::filesystem::path(a.out);
        oggn::save_result(result, out, echo.dump());
        std::cout << "seed " << seed << " -> " << out.string() << "\n";
        print_result_summary(result);
    }
    return kExitOk;
}

struct SolveArgs {
    std::string system;
    GenFlags gen;
    std::string out;
};

int cmd_solve_system(const SolveArgs& a) {
    const oggn::PolySystem sys = oggn::resolve_system(a.system);
    oggn::GenerationTask task{.oracle = oggn::Oracle::residual(sys)};
    task.modes.assign(sys.n_vars, oggn::FeatureMode::free());
    fill_task_from_flags(task, a.gen);

    json echo = gen_flags_echo(a.gen, 0);
    echo["command"] = "solve-system";
    echo["system"] = a.system;

    std::vector<std::uint64_t> seeds = a.gen.seeds.empty()
                                           ? std::vector<std::uint64_t>{a.gen.seed}
                                           : a.gen.seeds;
    const bool sweep = !a.gen.seeds.empty();
    for (std::uint64_t seed : seeds) {
        task.train_cfg.seed = seed;
        echo["seed"] = seed;
        const oggn::GenerationResult result = train_or_fail(task);
        const std::filesystem::path out = sweep ? seed_path(a.out, seed) : std::filesystem::path(a.out);
        oggn::save_result(result, out, echo.dump());
        std::cout << "seed " << seed << " -> " << out.string() << "\n";
        print_result_summary(result);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_row = 0;
        for (std::size_t i = 0; i < result.true_targets->rows(); ++i)
            if ((*result.true_targets)(i, 0) < best) {
                best = (*result.true_targets)(i, 0);
                best_row = i;
            }
        std::cout << "  best row " << best_row << " with residual norm " << fmt(best) << "\n";
    }
    return kExitOk;
}

struct VerifyArgs {
    std::string result;
    std::string truth;
};

int cmd_verify(const VerifyArgs& a) {
    const oggn::LoadedResult loaded = oggn::load_result(a.result);
    const oggn::PolyFunction truth = oggn::resolve_function(a.truth);
    const oggn::VerifyReport report = oggn::verify_result(loaded.result, truth);
    std::cout << "row  predicted      true          |pred-true|   |target-true|\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const oggn::VerifyRow& r = report.rows[i];
        std::printf("%-4zu %-13s %-13s %-13s %-13s\n", i, fmt(r.predicted).c_str(),
                    fmt(r.true_value).c_str(), fmt(r.oracle_gap).c_str(),
                    fmt(r.target_gap).c_str());
    }
    std::cout << "median true value " << fmt(report.median_true_value) << ", mean oracle gap "
              << fmt(report.mean_oracle_gap) << " (desired target "
              << fmt(loaded.result.desired_target) << ")\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train an oracle network, then train generators against it to invert "
                 "targets, honor feature constraints, or solve equation systems."};
    app.require_subcommand(1);

    GenDataArgs gd;
    auto* gen_data = app.add_subcommand("gen-data", "Synthesize a feature/target CSV");
    gen_data->add_option("--function", gd.function, "Built-in function id or function file");
    gen_data->add_option("--n", gd.n, "Sample count");
    gen_data->add_option("--range", gd.range, "Feature sample interval low:high");
    gen_data->add_option("--seed", gd.seed, "Sampling seed");
    gen_data->add_option("--out", gd.out, "Output CSV path")->required();

    TrainOracleArgs to;
    auto* train_oracle = app.add_subcommand("train-oracle", "Fit an oracle network to a CSV");
    train_oracle->add_option("--data", to.data, "Training CSV")->required();
    train_oracle->add_option("--test-data", to.test_data, "Held-out CSV to report metrics on");
    train_oracle->add_option("--hidden", to.hidden, "Hidden layer sizes")->delimiter(',');
    train_oracle->add_option("--activation", to.activation, "Hidden activation");
    train_oracle->add_option("--schedule", to.schedule, "Learning-rate schedule");
    train_oracle->add_option("--epochs", to.epochs, "Training epochs");
    train_oracle->add_option("--batch", to.batch, "Mini-batch size");
    train_oracle->add_option("--lr", to.lr, "Adam learning rate");
    train_oracle->add_option("--seed", to.seed, "Init and shuffle seed");
    train_oracle->add_option("--out", to.out, "Output model path")->required();

    EvalOracleArgs eo;
    auto* eval_oracle = app.add_subcommand("eval-oracle", "Report model error on a CSV");
    eval_oracle->add_option("--oracle", eo.oracle, "Model file")->required();
    eval_oracle->add_option("--data", eo.data, "Evaluation CSV")->required();

    InvertArgs iv;
    auto* invert = app.add_subcommand("invert", "Generate features that hit a desired target");
    invert->add_option("--oracle", iv.oracle, "Model file, function file, or built-in id")
        ->required();
    invert->add_option("--target", iv.target, "Desired oracle output")->required();
    invert->add_option("--fix", iv.fixes, "Pin a feature, e.g. x4=10 (repeatable)");
    invert->add_option("--range", iv.ranges, "Constrain a feature, e.g. x1=1:100[@c1,c2]");
    invert->add_option("--c1", iv.c1, "Shrink divisor for ranges without @ (number or 'auto')");
    invert->add_option("--c2", iv.c2, "Growth multiplier for ranges without @ (number or 'auto')");
    invert->add_option("--stop", iv.stop, "Stop rule: tolerance-only | range-exit");
    invert->add_option("--truth", iv.truth, "Ground-truth function for the audit columns");
    add_gen_flags(invert, iv.gen, "sgd", 5e-5, 2000);
    invert->add_option("--out", iv.out, "Result file path")->required();

    SolveArgs sv;
    auto* solve = app.add_subcommand("solve-system", "Drive a system's residual norm to zero");
    solve->add_option("--system", sv.system, "System file or built-in id")->required();
    add_gen_flags(solve, sv.gen, "adam", 1e-3, 4000);
    solve->add_option("--out", sv.out, "Result file path")->required();

    VerifyArgs vf;
    auto* verify = app.add_subcommand("verify", "Audit a result file against a true function");
    verify->add_option("--result", vf.result, "Result file")->required();
    verify->add_option("--truth", vf.truth, "Function id or file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen_data->parsed()) return cmd_gen_data(gd);
        if (train_oracle->parsed()) return cmd_train_oracle(to);
        if (eval_oracle->parsed()) return cmd_eval_oracle(eo);
        if (invert->parsed()) return cmd_invert(iv);
        if (solve->parsed()) return cmd_solve_system(sv);
        if (verify->parsed()) return cmd_verify(vf);
    } catch (const oggn::TrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const oggn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}
