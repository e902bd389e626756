// Python bindings for the oggn core: dataset synthesis, oracle training,
// inversion, and system solving, mirroring the CLI at file level plus a few
// in-memory conveniences.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oggn/oggn.hpp"

#include <optional>
#include <utility>

namespace py = pybind11;

namespace {

std::vector<std::vector<double>> matrix_rows(const oggn::Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows[i].assign(r.begin(), r.end());
    }
    return rows;
}

std::vector<double> matrix_column0(const oggn::Matrix& m) {
    std::vector<double> out(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) out[i] = m(i, 0);
    return out;
}

py::dict result_to_dict(const oggn::GenerationResult& r) {
    py::dict d;
    d["features"] = matrix_rows(r.features);
    d["predicted_targets"] = matrix_column0(r.predicted_targets);
    if (r.true_targets) d["true_targets"] = matrix_column0(*r.true_targets);
    if (r.residuals) d["residuals"] = matrix_rows(*r.residuals);
    d["loss_history"] = r.loss_history;
    d["epochs_run"] = r.epochs_run;
    d["stop_reason"] = oggn::stop_reason_name(r.stop_reason);
    d["desired_target"] = r.desired_target;
    d["loss"] = r.loss;
    return d;
}

oggn::Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw oggn::ConfigError("need at least one row");
    oggn::Matrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw oggn::ConfigError("ragged feature rows");
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_oggn, m) {
    m.doc() = "Oracle-guided generative network core";

    py::register_exception<oggn::Error>(m, "OggnError");

    m.def(
        "function_value",
        [](const std::string& function, const std::vector<double>& x) {
            return oggn::poly_eval(oggn::resolve_function(function), x);
        },
        py::arg("function"), py::arg("x"),
        "Evaluate a built-in id or function file at a point.");

    m.def(
        "function_gradient",
        [](const std::string& function, const std::vector<double>& x) {
            return oggn::poly_grad(oggn::resolve_function(function), x);
        },
        py::arg("function"), py::arg("x"));

    m.def(
        "synth_data",
        [](const std::string& function, size_t n, double low, double high, uint64_t seed) {
            oggn::SynthConfig cfg;
            cfg.function = function;
            cfg.count = n;
            cfg.low = low;
            cfg.high = high;
            cfg.seed = seed;
            const oggn::Dataset ds = oggn::synth_dataset(oggn::resolve_function(function), cfg);
            return std::make_pair(matrix_rows(ds.features), matrix_rows(ds.targets));
        },
        py::arg("function") = "poly4", py::arg("n") = 10000, py::arg("low") = 0.0,
        py::arg("high") = 500.0, py::arg("seed") = 0,
        "Sample uniform features and evaluate the function; returns (features, targets).");

    m.def(
        "train_oracle",
        [](const std::vector<std::vector<double>>& features,
           const std::vector<std::vector<double>>& targets, const std::string& out,
           const std::vector<size_t>& hidden, size_t epochs, size_t batch, double lr,
           uint64_t seed) {
            oggn::Dataset ds{matrix_from_rows(features), matrix_from_rows(targets)};
            oggn::OracleTrainConfig cfg;
            cfg.hidden = hidden;
            cfg.epochs = epochs;
            cfg.batch = batch;
            cfg.adam.lr = lr;
            cfg.seed = seed;
            oggn::OracleTrainReport report;
            const oggn::OracleModel model = oggn::train_oracle(ds, cfg, &report);
            oggn::save_oracle(model, out);
            py::dict d;
            d["final_train_mse"] = report.final_train_mse;
            d["model"] = out;
            return d;
        },
        py::arg("features"), py::arg("targets"), py::arg("out"),
        py::arg("hidden") = std::vector<size_t>{64, 64}, py::arg("epochs") = 200,
        py::arg("batch") = 128, py::arg("lr") = 1e-3, py::arg("seed") = 0,
        "Fit an oracle network and write it to `out`; returns training metrics.");

    m.def(
        "eval_oracle",
        [](const std::string& model, const std::vector<std::vector<double>>& features,
           const std::vector<std::vector<double>>& targets) {
            oggn::Dataset ds{matrix_from_rows(features), matrix_from_rows(targets)};
            const oggn::OracleMetrics metrics = oggn::evaluate_oracle(oggn::load_oracle(model), ds);
            py::dict d;
            d["mse"] = metrics.mse;
            d["mean_rel_err"] = metrics.mean_rel_err;
            d["max_rel_err"] = metrics.max_rel_err;
            return d;
        },
        py::arg("model"), py::arg("features"), py::arg("targets"));

    m.def(
        "oracle_value_grad",
        [](const std::string& model, const std::vector<double>& x) {
            const oggn::OracleEval e = oggn::oracle_value_and_grad(oggn::load_oracle(model), x);
            return std::make_pair(e.value, e.grad);
        },
        py::arg("model"), py::arg("x"),
        "Oracle prediction and its gradient with respect to the input features.");

    m.def(
        "invert",
        [](const std::string& oracle, double target,
           const std::map<size_t, double>& fix,
           const std::map<size_t, std::tuple<double, double, double, double>>& range,
           size_t rows, size_t epochs, double lr, const std::string& optimizer,
           const std::string& stop, std::optional<double> tolerance, bool nonneg,
           uint64_t seed) {
            oggn::GenerationTask task{.oracle = oggn::resolve_oracle(oracle)};
            task.desired_target = target;
            task.modes.assign(task.oracle.input_dim(), oggn::FeatureMode::free());
            for (const auto& [idx, value] : fix) {
                if (idx >= task.modes.size()) throw oggn::ConfigError("fix index out of range");
                task.modes[idx] = oggn::FeatureMode::fixed(value);
            }
            for (const auto& [idx, spec] : range) {
                if (idx >= task.modes.size()) throw oggn::ConfigError("range index out of range");
                const auto& [lo, hi, c1, c2] = spec;
                task.modes[idx] =
                    oggn::FeatureMode::constrained(oggn::make_constraint(lo, hi, c1, c2));
            }
            task.rows = rows;
            task.train_cfg.max_epochs = epochs;
            task.train_cfg.lr = lr;
            task.train_cfg.optimizer = oggn::optimizer_from_name(optimizer);
            if (tolerance) task.train_cfg.tolerance = *tolerance;
            task.train_cfg.seed = seed;
            task.stop_rule = oggn::stop_rule_from_name(stop);
            task.nonneg = nonneg;
            return result_to_dict(oggn::oggn_train(task));
        },
        py::arg("oracle"), py::arg("target"), py::arg("fix") = std::map<size_t, double>{},
        py::arg("range") = std::map<size_t, std::tuple<double, double, double, double>>{},
        py::arg("rows") = 8, py::arg("epochs") = 2000, py::arg("lr") = 5e-5,
        py::arg("optimizer") = "sgd", py::arg("stop") = "tolerance-only",
        py::arg("tolerance") = std::nullopt, py::arg("nonneg") = true, py::arg("seed") = 1,
        "Train a generator so the oracle maps its features to `target`. `oracle` is a "
        "model file, a function file, or a built-in id. `fix` pins features by index; "
        "`range` maps index -> (low, high, c1, c2).");

    m.def(
        "solve_system",
        [](const std::string& system, size_t rows, size_t epochs, double lr, uint64_t seed) {
            oggn::SolveConfig cfg;
            cfg.rows = rows;
            cfg.train_cfg.max_epochs = epochs;
            cfg.train_cfg.lr = lr;
            cfg.train_cfg.seed = seed;
            return result_to_dict(oggn::solve_system(oggn::resolve_system(system), cfg));
        },
        py::arg("system"), py::arg("rows") = 8, py::arg("epochs") = 4000, py::arg("lr") = 1e-3,
        py::arg("seed") = 1,
        "Search for roots of a polynomial system; `system` is a built-in id or file.");

    m.def(
        "load_result",
        [](const std::string& path) {
            const oggn::LoadedResult loaded = oggn::load_result(path);
            py::dict d = result_to_dict(loaded.result);
            d["config_echo"] = loaded.config_echo_json;
            return d;
        },
        py::arg("path"));

    m.def(
        "verify_result",
        [](const std::string& result, const std::string& truth) {
            const oggn::LoadedResult loaded = oggn::load_result(result);
            const oggn::VerifyReport report =
                oggn::verify_result(loaded.result, oggn::resolve_function(truth));
            py::dict d;
            d["median_true_value"] = report.median_true_value;
            d["mean_oracle_gap"] = report.mean_oracle_gap;
            std::vector<py::dict> rows;
            rows.reserve(report.rows.size());
            for (const auto& row : report.rows) {
                py::dict r;
                r["predicted"] = row.predicted;
                r["true_value"] = row.true_value;
                r["oracle_gap"] = row.oracle_gap;
                r["target_gap"] = row.target_gap;
                rows.push_back(std::move(r));
            }
            d["rows"] = rows;
            return d;
        },
        py::arg("result"), py::arg("truth"),
        "Re-evaluate a result file's features under a ground-truth function.");
}
