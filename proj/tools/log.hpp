#pragma once

#include <string>

namespace bistab::cli {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Reads BISTAB_LOG (error, warn, info, debug); unset or unknown means warn.
void init_logging();
void set_log_level(LogLevel level);

void log_warn(const std::string& message);
void log_info(const std::string& message);
void log_debug(const std::string& message);

}  // namespace bistab::cli
