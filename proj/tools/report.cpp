#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

#include "log.hpp"

namespace bistab::cli {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::ordered_json;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rational_text(const Rational& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

ordered_json one_based(const std::vector<SpeciesIndex>& set) {
  ordered_json arr = ordered_json::array();
  for (SpeciesIndex i : set) arr.push_back(i + 1);
  return arr;
}

ordered_json decimals(const std::vector<double>& values) {
  ordered_json arr = ordered_json::array();
  for (double v : values) arr.push_back(decimal(v));
  return arr;
}

ordered_json network_json(const BiNetwork& net) {
  ordered_json reactions = ordered_json::array();
  for (std::size_t j = 0; j < 2; ++j) {
    const Reaction& r = net.reaction(j);
    ordered_json item;
    item["label"] = r.label ? ordered_json(*r.label) : ordered_json(nullptr);
    item["reactants"] = format_complex(net, r.reactants);
    item["products"] = format_complex(net, r.products);
    reactions.push_back(item);
  }
  ordered_json out;
  out["species"] = net.species;
  out["reactions"] = reactions;
  return out;
}

ordered_json partition_json(const IndexPartition& part) {
  ordered_json out;
  for (int k = 1; k <= 5; ++k) out["S" + std::to_string(k)] = one_based(part.S(k));
  out["a"] = part.a;
  out["gamma"] = part.gamma;
  out["passive"] = one_based(part.passive);
  ordered_json folded = ordered_json::array();
  for (const FoldedSpecies& f : part.folded) folded.push_back(f.index + 1);
  out["folded"] = folded;
  return out;
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json out;
  out["multistable"] = v.multistable;
  out["case"] = std::string(to_string(v.theorem_case));
  out["cert_subset"] = v.cert_subset ? one_based(*v.cert_subset) : ordered_json(nullptr);
  out["cert_inequality"] = v.cert_inequality;
  out["cert_values"] = v.cert_values;
  return out;
}

ordered_json steady_state_json(const SteadyStateSet& set) {
  ordered_json states = ordered_json::array();
  for (std::size_t k = 0; k < set.size(); ++k) {
    ordered_json item;
    item["x"] = decimals(set.states[k]);
    item["eigenvalue"] = decimal(set.eigenvalue[k]);
    item["stable"] = static_cast<bool>(set.stable[k]);
    item["degenerate"] = static_cast<bool>(set.degenerate[k]);
    item["residual"] = decimal(set.residuals[k]);
    states.push_back(item);
  }
  ordered_json out;
  out["count"] = set.size();
  out["stable_count"] = set.stable_count();
  out["states"] = states;
  return out;
}

ordered_json witness_json(const Witness& w, std::uint64_t seed, const std::optional<SteadyStateSet>& check) {
  ordered_json states = ordered_json::array();
  for (std::size_t k = 0; k < w.steady_states.size(); ++k) {
    ordered_json item;
    item["x"] = decimals(w.steady_states[k]);
    item["stable"] = static_cast<bool>(w.stable[k]);
    item["z"] = decimal(w.z[k]);
    states.push_back(item);
  }
  ordered_json geometry;
  geometry["d"] = decimals(w.geometry.d);
  geometry["K"] = decimal(w.geometry.K);
  ordered_json out;
  out["seed"] = seed;
  out["kappa"] = decimals({w.kappa[0], w.kappa[1]});
  out["c"] = decimals(w.c);
  out["steady_states"] = states;
  out["geometry"] = geometry;
  if (check) out["verified"] = steady_state_json(*check);
  return out;
}

void fill_structure(AnalysisReport& report) {
  report.structure = analyze_structure(*report.network);
  report.verdict = decide(report.structure->partition, report.structure->applicability);
  log_debug("case " + std::string(to_string(report.verdict->theorem_case)) + ": " + report.verdict->cert_inequality);
}

template <class F>
AnalysisReport timed(const std::string& source, F&& body) {
  const auto start = Clock::now();
  AnalysisReport report;
  report.source = source;
  try {
    body(report);
  } catch (const ParseError& e) {
    report.error_kind = "parse";
    report.error_message = e.what();
  } catch (const InvalidNetwork& e) {
    report.error_kind = "parse";
    report.error_message = e.what();
  } catch (const ConstructionFailed& e) {
    report.error_kind = "construction";
    report.error_message = e.what();
  } catch (const std::exception& e) {
    report.error_kind = "input";
    report.error_message = e.what();
  }
  report.elapsed_ms = ms_since(start);
  return report;
}

}  // namespace

std::string decimal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

AnalysisReport analyze_text(const std::string& text, const std::string& source) {
  return timed(source, [&](AnalysisReport& r) {
    r.network = parse_network(text);
    fill_structure(r);
  });
}

AnalysisReport analyze_file(const std::string& path) {
  return timed(path, [&](AnalysisReport& r) {
    r.network = parse_network(read_file(path));
    fill_structure(r);
  });
}

AnalysisReport witness_file(const std::string& path, std::uint64_t seed) {
  return timed(path, [&](AnalysisReport& r) {
    r.network = parse_network(read_file(path));
    fill_structure(r);
    r.seed = seed;
    if (!r.verdict->multistable) {
      r.error_kind = "construction";
      r.error_message = "not multistable (case " + std::string(to_string(r.verdict->theorem_case)) + ")";
      return;
    }
    r.witness = make_witness(*r.network, {.seed = seed});
    r.witness_check = enumerate_steady_states(*r.network, r.witness->kappa, r.witness->c);
    log_info("witness with " + std::to_string(r.witness_check->stable_count()) + " stable states");
  });
}

AnalysisReport verify_file(const std::string& path, const VerifyRequest& request) {
  return timed(path, [&](AnalysisReport& r) {
    r.network = parse_network(read_file(path));
    fill_structure(r);
    r.verify_request = request;
    if (!r.structure->stoich.rank_ok) return;
    r.steady_states = enumerate_steady_states(*r.network, request.kappa, request.c);
  });
}

int analyze_exit_code(const AnalysisReport& report) {
  if (report.error_kind) return exit_input_error;
  if (!report.structure->applicability.ok()) return exit_not_applicable;
  return report.verdict->multistable ? exit_multistable : exit_not_multistable;
}

int witness_exit_code(const AnalysisReport& report) {
  if (report.error_kind == std::optional<std::string>("construction")) return exit_construction_failed;
  if (report.error_kind) return exit_input_error;
  return report.witness ? exit_multistable : exit_construction_failed;
}

int verify_exit_code(const AnalysisReport& report) {
  if (report.error_kind) return exit_input_error;
  if (!report.steady_states) return exit_not_applicable;
  return report.steady_states->stable_count() >= 2 ? exit_multistable : exit_not_multistable;
}

ordered_json to_json(const AnalysisReport& report) {
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["tool"] = {{"name", "bistab"}, {"version", BISTAB_VERSION}};
  out["source"] = report.source;
  if (report.network) out["network"] = network_json(*report.network);
  if (report.structure) {
    const Structure& st = *report.structure;
    out["lambda"] = st.stoich.lambda ? ordered_json(rational_text(*st.stoich.lambda)) : ordered_json(nullptr);
    out["partition"] = partition_json(st.partition);
    out["applicability"] = std::string(to_string(st.applicability.status));
  }
  if (report.verdict) out["verdict"] = verdict_json(*report.verdict);
  if (report.witness) out["witness"] = witness_json(*report.witness, report.seed.value_or(0), report.witness_check);
  if (report.verify_request) {
    ordered_json v;
    v["kappa"] = decimals({report.verify_request->kappa[0], report.verify_request->kappa[1]});
    v["c"] = decimals(report.verify_request->c);
    if (report.steady_states) {
      v["steady_states"] = steady_state_json(*report.steady_states);
      v["multistable"] = report.steady_states->stable_count() >= 2;
    }
    out["verify"] = v;
  }
  if (report.error_kind) out["error"] = {{"kind", *report.error_kind}, {"message", report.error_message}};
  out["timing"] = {{"elapsed_ms", report.elapsed_ms}};
  return out;
}

namespace {

void table(std::ostringstream& os, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t k = 0; k < header.size(); ++k) width[k] = header[k].size();
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    os << " ";
    for (std::size_t k = 0; k < cells.size(); ++k) os << " " << std::setw(static_cast<int>(width[k])) << cells[k];
    os << "\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
}

std::string short_decimal(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(4) << v;
  return os.str();
}

std::string set_text(const std::vector<SpeciesIndex>& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) out += (k ? ", " : "") + std::to_string(set[k] + 1);
  return out + "}";
}

void state_rows(std::ostringstream& os, std::size_t s, const std::vector<State>& states,
                const std::vector<bool>& stable, const std::vector<double>* eig) {
  std::vector<std::string> header{"#"};
  for (std::size_t i = 0; i < s; ++i) header.push_back("x" + std::to_string(i + 1));
  if (eig) header.push_back("eigenvalue");
  header.push_back("stable");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<std::string> row{std::to_string(k + 1)};
    for (double v : states[k]) row.push_back(short_decimal(v));
    if (eig) row.push_back(short_decimal((*eig)[k]));
    row.push_back(stable[k] ? "yes" : "no");
    rows.push_back(std::move(row));
  }
  table(os, header, rows);
}

}  // namespace

std::string to_human(const AnalysisReport& report) {
  std::ostringstream os;
  os << report.source << "\n";
  if (report.network) {
    const BiNetwork& net = *report.network;
    for (std::size_t j = 0; j < 2; ++j) {
      os << "  R" << (j + 1) << ": " << format_complex(net, net.reaction(j).reactants) << " -> "
         << format_complex(net, net.reaction(j).products) << "\n";
    }
  }
  if (report.structure) {
    const Structure& st = *report.structure;
    os << "  lambda = " << (st.stoich.lambda ? rational_text(*st.stoich.lambda) : std::string("undefined"))
       << ", applicability: " << to_string(st.applicability.status) << "\n";
    const IndexPartition& part = st.partition;
    os << "  a = (";
    for (std::size_t i = 0; i < part.a.size(); ++i) os << (i ? ", " : "") << part.a[i];
    os << ")\n ";
    for (int k = 1; k <= 4; ++k) os << " S" << k << "=" << set_text(part.S(k));
    std::vector<SpeciesIndex> folded;
    for (const FoldedSpecies& f : part.folded) folded.push_back(f.index);
    os << " passive=" << set_text(part.passive) << " folded=" << set_text(folded) << "\n";
  }
  if (report.verdict) {
    os << "  verdict: " << (report.verdict->multistable ? "multistable" : "not multistable") << " (case "
       << to_string(report.verdict->theorem_case) << ")\n  " << report.verdict->cert_inequality << "\n";
  }
  if (report.witness) {
    const Witness& w = *report.witness;
    os << "  witness: kappa = (" << decimal(w.kappa[0]) << ", " << decimal(w.kappa[1]) << ")\n  c = (";
    for (std::size_t k = 0; k < w.c.size(); ++k) os << (k ? ", " : "") << decimal(w.c[k]);
    os << ")\n";
    state_rows(os, report.network->species_count(), w.steady_states, w.stable, nullptr);
  }
  if (report.steady_states) {
    const SteadyStateSet& set = *report.steady_states;
    os << "  " << set.size() << " positive steady states, " << set.stable_count() << " stable\n";
    state_rows(os, report.network->species_count(), set.states, set.stable, &set.eigenvalue);
  }
  if (report.error_kind) os << "  error (" << *report.error_kind << "): " << report.error_message << "\n";
  return os.str();
}

std::vector<AnalysisReport> analyze_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".net") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  const std::size_t wave = std::max(1u, std::thread::hardware_concurrency());
  std::vector<AnalysisReport> out;
  out.reserve(files.size());
  for (std::size_t start = 0; start < files.size(); start += wave) {
    std::vector<std::future<AnalysisReport>> jobs;
    for (std::size_t k = start; k < std::min(files.size(), start + wave); ++k) {
      jobs.push_back(std::async(std::launch::async, [path = files[k]] { return analyze_file(path); }));
    }
    for (auto& j : jobs) out.push_back(j.get());
  }
  return out;
}

}  // namespace bistab::cli
