#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "oggn/matrix.hpp"
#include "oggn/poly.hpp"

namespace oggn {

/// Features (rows = samples) with one scalar target per row.
struct Dataset {
    Matrix features;  // n x d
    Matrix targets;   // n x 1

    std::size_t size() const { return features.rows(); }
    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Synthesis config echoed into CSV headers so a file is self-describing.
struct SynthConfig {
    std::string function = "poly4";
    std::size_t count = 10000;
    double low = 0.0;
    double high = 500.0;      // samples drawn from [low, high)
    std::uint64_t seed = 0;
};

/// Uniform features in [low, high), targets from the analytic function.
Dataset synth_dataset(const PolyFunction& f, const SynthConfig& cfg);

// CSV layout: optional "# oggn config {json}" comment line, then a header
// "x1,...,xd,y", then %.17g rows (value-exact for doubles).
void save_dataset_csv(const Dataset& ds, const std::filesystem::path& path,
                      const std::string& config_json = "");
Dataset load_dataset_csv(const std::filesystem::path& path);

} // namespace oggn
