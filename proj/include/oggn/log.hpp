#pragma once

#include <string_view>

namespace oggn {

enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

/// Resolved once from the OGGN_LOG env var: "off" (default), "info", "debug".
LogLevel log_level();

/// Diagnostics to stderr; no-ops below the active level.
void log_info(std::string_view message);
void log_debug(std::string_view message);

} // namespace oggn
