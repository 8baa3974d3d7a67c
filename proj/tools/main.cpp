#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "log.hpp"
#include "report.hpp"

namespace {

using namespace bistab::cli;

enum class Format { json, human };

void emit(const AnalysisReport& report, Format format) {
  if (format == Format::json) {
    std::cout << to_json(report).dump(2) << '\n';
  } else {
    std::cout << to_human(report);
  }
  if (report.error_kind) std::cerr << "bistab: " << report.error_message << '\n';
}

// Comma-separated doubles; CLI11 would split on the commas but not accept a
// leading minus sign as a value.
bool parse_list(const std::string& text, std::vector<double>& out) {
  out.clear();
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream cell(item);
    cell.imbue(std::locale::classic());
    double v = 0.0;
    if (!(cell >> v) || !(cell >> std::ws).eof()) return false;
    out.push_back(v);
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();

  CLI::App app{"Multistability of two-reaction mass-action networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(BISTAB_VERSION));

  Format format = Format::json;
  const std::map<std::string, Format> formats{{"json", Format::json}, {"human", Format::human}};
  app.add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("json");

  std::string path;
  std::uint64_t seed = 1;
  std::string kappa_text;
  std::string c_text;

  auto* analyze = app.add_subcommand("analyze", "Decide multistability from the coefficients");
  analyze->add_option("network", path, "Network file")->required();

  auto* witness = app.add_subcommand("witness", "Construct and verify rate constants and totals");
  witness->add_option("network", path, "Network file")->required();
  witness->add_option("--seed", seed, "Seed for the perturbation offsets")->default_val(1);

  auto* verify = app.add_subcommand("verify", "Enumerate steady states for given parameters");
  verify->add_option("network", path, "Network file")->required();
  verify->add_option("--kappa", kappa_text, "k1,k2")->required()->allow_extra_args(false);
  verify->add_option("--c", c_text, "c1,...,c_{s-1}")->required()->allow_extra_args(false);

  auto* batch = app.add_subcommand("batch", "Analyze every .net file of a directory");
  batch->add_option("dir", path, "Directory")->required()->check(CLI::ExistingDirectory);

  for (auto* sub : {analyze, witness, verify, batch}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_input_error;
  }

  if (analyze->parsed()) {
    const AnalysisReport report = analyze_file(path);
    emit(report, format);
    return analyze_exit_code(report);
  }
  if (witness->parsed()) {
    const AnalysisReport report = witness_file(path, seed);
    emit(report, format);
    return witness_exit_code(report);
  }
  if (verify->parsed()) {
    VerifyRequest request;
    std::vector<double> kappa;
    if (!parse_list(kappa_text, kappa) || kappa.size() != 2) {
      std::cerr << "bistab: --kappa expects two comma-separated numbers\n";
      return exit_input_error;
    }
    if (!parse_list(c_text, request.c)) {
      std::cerr << "bistab: --c expects comma-separated numbers\n";
      return exit_input_error;
    }
    request.kappa = {kappa[0], kappa[1]};
    const AnalysisReport report = verify_file(path, request);
    emit(report, format);
    return verify_exit_code(report);
  }

  // batch
  for (const AnalysisReport& report : analyze_directory(path)) {
    if (format == Format::json) {
      std::cout << to_json(report).dump() << '\n';
    } else {
      std::cout << to_human(report) << '\n';
    }
    if (report.error_kind) log_warn(report.source + ": " + report.error_message);
  }
  return 0;
}
