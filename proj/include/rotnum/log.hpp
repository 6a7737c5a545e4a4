#pragma once

// Diagnostics go to stderr unless a sink is installed. Verbosity comes from
// the ROTNUM_LOG environment variable: off, error, warn (default), info, debug.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <string_view>

namespace rotnum {

enum class LogLevel { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

[[nodiscard]] inline LogLevel parse_log_level(std::string_view s) noexcept {
    if (s == "off" || s == "0") return LogLevel::off;
    if (s == "error" || s == "1") return LogLevel::error;
    if (s == "info" || s == "3") return LogLevel::info;
    if (s == "debug" || s == "4") return LogLevel::debug;
    return LogLevel::warn;
}

[[nodiscard]] inline LogLevel log_level() noexcept {
    static const LogLevel level = [] {
        const char* env = std::getenv("ROTNUM_LOG");
        return env ? parse_log_level(env) : LogLevel::warn;
    }();
    return level;
}

using LogSink = std::function<void(LogLevel, std::string_view)>;

inline LogSink& log_sink() {
    static LogSink sink;
    return sink;
}

inline void log(LogLevel level, std::string_view message) {
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    if (auto& sink = log_sink()) {
        sink(level, message);
        return;
    }
    if (level == LogLevel::off || level > log_level()) return;
    static constexpr const char* names[] = {"", "error", "warn", "info", "debug"};
    std::cerr << "rotnum[" << names[static_cast<int>(level)] << "]: " << message << '\n';
}

inline void warn(std::string_view message) { log(LogLevel::warn, message); }
inline void info(std::string_view message) { log(LogLevel::info, message); }
inline void debug(std::string_view message) { log(LogLevel::debug, message); }

} // namespace rotnum
