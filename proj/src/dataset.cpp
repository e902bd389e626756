#include "oggn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>

#include "oggn/errors.hpp"
#include "oggn/rng.hpp"

namespace oggn {

Dataset synth_dataset(const PolyFunction& f, const SynthConfig& cfg) {
    if (cfg.high <= cfg.low) throw ConfigError("synth_dataset: empty sample range");
    Dataset ds;
    ds.features = Matrix(cfg.count, f.n_vars);
    ds.targets = Matrix(cfg.count, 1);
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        auto row = ds.features.row(i);
        for (double& v : row) v = rng.uniform(cfg.low, cfg.high);
        ds.targets(i, 0) = poly_eval(f, row);
    }
    return ds;
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_value(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError("row " + std::to_string(line_no) + ": bad number '" +
                         std::string(field) + "'");
    return v;
}

} // namespace

void save_dataset_csv(const Dataset& ds, const std::filesystem::path& path,
                      const std::string& config_json) {
    if (ds.targets.rows() != ds.features.rows() || ds.targets.cols() != 1)
        throw ShapeError("save_dataset_csv: targets must be one column per feature row");
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    if (!config_json.empty()) out << "# oggn config " << config_json << '\n';
    for (std::size_t j = 0; j < ds.features.cols(); ++j) out << 'x' << j + 1 << ',';
    out << "y\n";
    for (std::size_t i = 0; i < ds.features.rows(); ++i) {
        for (std::size_t j = 0; j < ds.features.cols(); ++j)
            out << format_value(ds.features(i, j)) << ',';
        out << format_value(ds.targets(i, 0)) << '\n';
    }
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

Dataset load_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");

    std::string line;
    std::size_t line_no = 0;
    // Header: any number of leading '#' comment lines, then x1,...,xd,y.
    std::size_t n_cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        n_cols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
        if (n_cols < 2 || line.substr(line.rfind(',') + 1) != "y")
            throw ParseError(path.string() + ": row " + std::to_string(line_no) +
                             ": expected header 'x1,...,y'");
        break;
    }
    if (n_cols == 0) throw ParseError(path.string() + ": missing header");

    std::vector<double> features;
    std::vector<double> targets;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t fields = 0;
        std::size_t start = 0;
        try {
            while (start <= line.size()) {
                std::size_t comma = line.find(',', start);
                if (comma == std::string::npos) comma = line.size();
                const double v = parse_value({line.data() + start, comma - start}, line_no);
                ++fields;
                if (fields < n_cols)
                    features.push_back(v);
                else
                    targets.push_back(v);
                start = comma + 1;
            }
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
        if (fields != n_cols)
            throw ParseError(path.string() + ": row " + std::to_string(line_no) + ": expected " +
                             std::to_string(n_cols) + " fields, got " + std::to_string(fields));
    }

    Dataset ds;
    ds.features = Matrix(targets.size(), n_cols - 1);
    ds.features.values() = std::move(features);
    ds.targets = Matrix(targets.size(), 1);
    ds.targets.values() = std::move(targets);
    return ds;
}

} // namespace oggn
