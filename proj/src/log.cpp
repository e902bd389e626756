#include "oggn/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace oggn {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("OGGN_LOG");
        if (!env) return LogLevel::Off;
        const std::string v = env;
        if (v == "info") return LogLevel::Info;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Off;
    }();
    return level;
}

namespace {

void emit(std::string_view message) { std::cerr << "[oggn] " << message << '\n'; }

} // namespace

void log_info(std::string_view message) {
    if (log_level() >= LogLevel::Info) emit(message);
}

void log_debug(std::string_view message) {
    if (log_level() >= LogLevel::Debug) emit(message);
}

} // namespace oggn
