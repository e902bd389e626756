#include "oggn/result_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "oggn/errors.hpp"

namespace oggn {

using nlohmann::json;

namespace {

json matrix_rows(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_rows(const json& rows, const std::string& where) {
    if (!rows.is_array()) throw ParseError(where + ": expected an array of rows");
    if (rows.empty()) return {};
    const std::size_t cols = rows[0].size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw ParseError(where + ": ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

json column(const Matrix& m) {
    json arr = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) arr.push_back(m(i, 0));
    return arr;
}

Matrix column_from(const json& arr) {
    Matrix m(arr.size(), 1);
    for (std::size_t i = 0; i < arr.size(); ++i) m(i, 0) = arr[i].get<double>();
    return m;
}

StopReason stop_reason_from_name(const std::string& name) {
    if (name == "tolerance") return StopReason::Tolerance;
    if (name == "max_epochs") return StopReason::MaxEpochs;
    if (name == "range_exit") return StopReason::RangeExit;
    throw ParseError("unknown stop reason '" + name + "'");
}

} // namespace

void save_result(const GenerationResult& result, const std::filesystem::path& path,
                 const std::string& config_echo_json) {
    json j;
    j["format_version"] = 1;
    j["features"] = matrix_rows(result.features);
    j["predicted_targets"] = column(result.predicted_targets);
    if (result.true_targets) j["true_targets"] = column(*result.true_targets);
    if (result.residuals) j["residuals"] = matrix_rows(*result.residuals);
    j["loss_history"] = result.loss_history;
    j["epochs_run"] = result.epochs_run;
    j["stop_reason"] = stop_reason_name(result.stop_reason);
    j["desired_target"] = result.desired_target;
    j["loss"] = result.loss;
    try {
        j["config_echo"] = config_echo_json.empty() ? json::object() : json::parse(config_echo_json);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config echo is not valid JSON: ") + e.what());
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

LoadedResult load_result(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        if (j.value("format_version", 0) != 1)
            throw ParseError(path.string() + ": unsupported format_version");
        LoadedResult loaded;
        GenerationResult& r = loaded.result;
        r.features = matrix_from_rows(j.at("features"), path.string() + ": features");
        r.predicted_targets = column_from(j.at("predicted_targets"));
        if (j.contains("true_targets")) r.true_targets = column_from(j["true_targets"]);
        if (j.contains("residuals"))
            r.residuals = matrix_from_rows(j["residuals"], path.string() + ": residuals");
        r.loss_history = j.at("loss_history").get<std::vector<double>>();
        r.epochs_run = j.at("epochs_run").get<std::size_t>();
        r.stop_reason = stop_reason_from_name(j.at("stop_reason").get<std::string>());
        r.desired_target = j.at("desired_target").get<double>();
        r.loss = j.at("loss").get<double>();
        loaded.config_echo_json = j.value("config_echo", json::object()).dump();
        return loaded;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace oggn
