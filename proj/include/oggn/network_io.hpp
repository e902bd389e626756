#pragma once

#include <filesystem>

#include "oggn/network.hpp"

// JSON text format, format_version 1:
//   {"format_version": 1, "layer_sizes": [...], "activations": ["tanh", ...],
//    "weights": [[row-major per layer], ...], "biases": [[...], ...], "seed": n}
// save/load round-trips are bit-exact.

namespace oggn {

void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

} // namespace oggn
