#include "log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace bistab::cli {

namespace {

std::atomic<int> g_level{static_cast<int>(LogLevel::warn)};
std::mutex g_mutex;

void emit(LogLevel level, std::string_view tag, const std::string& message) {
  if (static_cast<int>(level) > g_level.load()) return;
  std::lock_guard lock(g_mutex);
  std::cerr << "bistab: " << tag << ": " << message << '\n';
}

}  // namespace

void init_logging() {
  const char* env = std::getenv("BISTAB_LOG");
  if (!env) return;
  const std::string_view v(env);
  if (v == "error") set_log_level(LogLevel::error);
  else if (v == "warn") set_log_level(LogLevel::warn);
  else if (v == "info") set_log_level(LogLevel::info);
  else if (v == "debug") set_log_level(LogLevel::debug);
}

void set_log_level(LogLevel level) { g_level.store(static_cast<int>(level)); }

void log_warn(const std::string& message) { emit(LogLevel::warn, "warn", message); }
void log_info(const std::string& message) { emit(LogLevel::info, "info", message); }
void log_debug(const std::string& message) { emit(LogLevel::debug, "debug", message); }

}  // namespace bistab::cli
