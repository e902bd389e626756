#include "oggn/network_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "oggn/errors.hpp"

namespace oggn {

using nlohmann::json;

namespace {

json network_to_json(const Network& net) {
    json j;
    j["format_version"] = 1;
    j["layer_sizes"] = net.layer_sizes;
    json acts = json::array();
    for (Activation a : net.activations) acts.push_back(activation_name(a));
    j["activations"] = std::move(acts);
    json weights = json::array();
    for (const Matrix& w : net.weights) weights.push_back(w.values());
    j["weights"] = std::move(weights);
    j["biases"] = net.biases;
    j["seed"] = net.seed;
    return j;
}

Network network_from_json(const json& j, const std::string& where) {
    if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
        throw ParseError(where + ": unsupported format_version");
    Network net;
    net.layer_sizes = j.at("layer_sizes").get<std::vector<std::size_t>>();
    if (net.layer_sizes.size() < 2) throw ParseError(where + ": fewer than two layers");
    for (const auto& name : j.at("activations"))
        net.activations.push_back(activation_from_name(name.get<std::string>()));
    net.biases = j.at("biases").get<std::vector<std::vector<double>>>();
    const auto& weights = j.at("weights");
    if (weights.size() != net.layer_sizes.size() - 1 ||
        net.activations.size() != weights.size() || net.biases.size() != weights.size())
        throw ParseError(where + ": layer counts disagree");
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const std::size_t rows = net.layer_sizes[l];
        const std::size_t cols = net.layer_sizes[l + 1];
        auto values = weights[l].get<std::vector<double>>();
        if (values.size() != rows * cols)
            throw ParseError(where + ": weight layer " + std::to_string(l) + " has " +
                             std::to_string(values.size()) + " values, expected " +
                             std::to_string(rows * cols));
        if (net.biases[l].size() != cols)
            throw ParseError(where + ": bias layer " + std::to_string(l) + " length mismatch");
        Matrix w(rows, cols);
        w.values() = std::move(values);
        net.weights.push_back(std::move(w));
    }
    net.seed = j.value("seed", std::uint64_t{0});
    return net;
}

} // namespace

void save_network(const Network& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    out << network_to_json(net).dump(2) << '\n';
    if (!out) throw ParseError("failed writing '" + path.string() + "'");
}

Network load_network(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        return network_from_json(j, path.string());
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

} // namespace oggn
