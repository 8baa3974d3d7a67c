#pragma once

#include <bistab/bistab.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace bistab::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  exit_multistable = 0,
  exit_not_multistable = 1,
  exit_not_applicable = 2,
  exit_input_error = 3,
  exit_construction_failed = 4,
};

struct VerifyRequest {
  Kappa kappa;
  std::vector<double> c;
};

/// Everything one invocation reports; sections are filled as the command
/// gets to them.
struct AnalysisReport {
  std::string source;
  std::optional<BiNetwork> network;
  std::optional<Structure> structure;
  std::optional<Verdict> verdict;
  std::optional<Witness> witness;
  std::optional<std::uint64_t> seed;
  std::optional<SteadyStateSet> witness_check;
  std::optional<VerifyRequest> verify_request;
  std::optional<SteadyStateSet> steady_states;
  /// Set when the command stopped early: "parse", "input", "construction".
  std::optional<std::string> error_kind;
  std::string error_message;
  double elapsed_ms = 0.0;
};

/// Fills network, structure and verdict from network text.
AnalysisReport analyze_text(const std::string& text, const std::string& source);
AnalysisReport analyze_file(const std::string& path);

/// analyze_file plus a witness when the verdict is positive.
AnalysisReport witness_file(const std::string& path, std::uint64_t seed);

/// analyze_file plus the steady states of (kappa, c).
AnalysisReport verify_file(const std::string& path, const VerifyRequest& request);

int analyze_exit_code(const AnalysisReport& report);
int witness_exit_code(const AnalysisReport& report);
int verify_exit_code(const AnalysisReport& report);

/// Decimal rendering with 15 significant digits, locale independent.
std::string decimal(double v);

nlohmann::ordered_json to_json(const AnalysisReport& report);
std::string to_human(const AnalysisReport& report);

/// Reports for every *.net file directly inside dir, in file-name order.
std::vector<AnalysisReport> analyze_directory(const std::string& dir);

}  // namespace bistab::cli
