#pragma once

#include <filesystem>
#include <string>

#include "oggn/generator.hpp"

namespace oggn {

// Result file, JSON text, format_version 1:
//   {"format_version": 1, "features": [[...], ...], "predicted_targets": [...],
//    "true_targets": [...] (optional), "residuals": [[...], ...] (optional),
//    "loss_history": [...], "epochs_run": n, "stop_reason": "...",
//    "desired_target": t, "loss": l, "config_echo": {...}}
// `config_echo` is the caller's fully-resolved run config, stored verbatim.
void save_result(const GenerationResult& result, const std::filesystem::path& path,
                 const std::string& config_echo_json = "{}");

struct LoadedResult {
    GenerationResult result;
    std::string config_echo_json;
};

LoadedResult load_result(const std::filesystem::path& path);

} // namespace oggn
