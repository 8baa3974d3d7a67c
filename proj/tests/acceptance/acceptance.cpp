// One line per acceptance criterion; exit status 1 if any criterion fails.

#include "jacobian.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace bistab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// A nondegenerate steady state together with the geometry it sits on.
struct BridgeSample {
  BiNetwork net;
  IndexPartition part;
  Kappa kappa;
  GeometryParams gp;
  double z;
  State x;
};

std::vector<BridgeSample> bridge_samples;

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

Outcome paper_example(std::size_t index) {
  const auto& ex = testing::paper_examples()[index];
  const BiNetwork net = testing::fixture(ex.file);
  const auto c = testing::library_totals(net, ex);
  const auto t0 = Clock::now();
  const SteadyStateSet set = enumerate_steady_states(net, ex.kappa, c);
  const double elapsed = seconds_since(t0);

  Outcome out;
  std::ostringstream os;
  std::vector<std::size_t> stable;
  for (std::size_t n = 0; n < set.size(); ++n) {
    if (set.stable[n]) stable.push_back(n + 1);
  }
  os << "example " << ex.name << ": " << set.size() << " states, stable {" << join(stable) << "}";
  if (set.size() != ex.states.size()) {
    out.pass = false;
  } else {
    int mismatches = 0;
    for (std::size_t n = 0; n < set.size(); ++n) {
      if (set.stable[n] != ex.stable[n] || set.degenerate[n]) out.pass = false;
      for (std::size_t i = 0; i < set.states[n].size(); ++i) {
        if (!testing::matches_digits(set.states[n][i], ex.states[n][i], ex.digits)) ++mismatches;
      }
    }
    if (mismatches) out.pass = false;
    os << ", " << mismatches << " coordinates off at " << ex.digits << " significant digits";
  }
  if (index == 0) {
    os << ", " << elapsed * 1e3 << " ms";
    if (elapsed >= 1.0) out.pass = false;
  }

  const Structure st = analyze_structure(net);
  if (const auto gp = geometry_from_parameters(net, st.partition, ex.kappa, c)) {
    for (std::size_t n = 0; n < set.size(); ++n) {
      if (set.degenerate[n]) continue;
      const double z = set.states[n][st.stoich.pivot] / static_cast<double>(st.stoich.N[st.stoich.pivot][0]);
      bridge_samples.push_back({net, st.partition, ex.kappa, *gp, z, set.states[n]});
    }
  }
  out.detail = os.str();
  return out;
}

Outcome criterion5() {
  Outcome out;
  std::ostringstream os;
  for (const auto& ex : testing::paper_examples()) {
    const Structure st = analyze_structure(testing::fixture(ex.file));
    const Verdict v = decide(st.partition, st.applicability);
    const bool ok = v.multistable && v.theorem_case == ex.expected_case && v.cert_values == ex.cert_values;
    out.pass = out.pass && ok;
    os << ex.name << "->" << to_string(v.theorem_case) << " [";
    for (std::size_t k = 0; k < v.cert_values.size(); ++k) os << (k ? ">" : "") << v.cert_values[k];
    os << "]" << (ok ? "" : " (unexpected)") << "; ";
  }
  out.detail = os.str();
  return out;
}

Outcome criterion6() {
  std::mt19937_64 rng(606);
  const auto t0 = Clock::now();
  std::size_t found = 0, built = 0, certified = 0, generated = 0;
  std::map<std::string, int> cases;
  std::string first_failure;
  while (found < 200) {
    const BiNetwork net = testing::random_network(rng);
    ++generated;
    const Structure st = analyze_structure(net);
    const Verdict v = decide(st.partition, st.applicability);
    if (!v.multistable) continue;
    ++found;
    ++cases[std::string(to_string(v.theorem_case))];
    try {
      const Witness w = make_witness(net, {found, 20});
      ++built;
      const Certification cert = certify_multistable(net, w.kappa, w.c);
      if (cert.multistable) ++certified;
      else if (first_failure.empty()) first_failure = serialize_network(net);
      for (std::size_t n = 0; n < w.steady_states.size(); ++n) {
        if (std::fabs(jacobian_eigenvalue(net, w.kappa, w.steady_states[n])) <=
            1e-9 * monomial_scale(net, w.kappa, w.steady_states[n])) {
          continue;
        }
        bridge_samples.push_back({net, st.partition, w.kappa, w.geometry, w.z[n], w.steady_states[n]});
      }
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = serialize_network(net) + e.what();
    }
  }
  const double elapsed = seconds_since(t0);
  Outcome out;
  out.pass = built == found && certified == found && elapsed < 60.0;
  std::ostringstream os;
  os << found << " multistable of " << generated << " generated, " << built << " witnesses, " << certified
     << " certified, " << elapsed << " s; cases";
  for (const auto& [name, count] : cases) os << " " << name << ":" << count;
  if (!first_failure.empty()) os << "; first failure: " << first_failure;
  out.detail = os.str();
  return out;
}

Outcome criterion7() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> shift(0.0, 10.0);
  std::size_t networks = 0, single_set = 0, samples = 0, violations = 0;
  std::map<std::string, int> cases;
  while (networks < 200) {
    const BiNetwork net = testing::random_network(rng);
    const Structure st = analyze_structure(net);
    if (!st.applicability.ok()) continue;
    const Verdict v = decide(st.partition, st.applicability);
    if (v.multistable) continue;
    // Keep the trivial one-set case from dominating the sample.
    if (v.theorem_case == TheoremCase::d) {
      if (single_set >= 40) continue;
      ++single_set;
    }
    ++networks;
    ++cases[std::string(to_string(v.theorem_case))];
    GeometryParams gp;
    gp.lambda = *st.stoich.lambda;
    gp.d.assign(net.species_count(), 0.0);
    for (int k = 0; k < 10000; ++k) {
      for (double& d : gp.d) {
        do d = shift(rng);
        while (d == 0.0);
      }
      ++samples;
      const auto pieces = monotone_pieces(gp, st.partition);
      const LevelChoice choice = best_level(pieces, 0.0);
      if (choice.negative_crossings < 2) continue;
      gp.K = choice.K;
      if (solve_level(gp, st.partition, gp.K).count_slope(-1) >= 2) ++violations;
    }
  }
  Outcome out;
  out.pass = violations == 0;
  std::ostringstream os;
  os << networks << " networks, " << samples << " (d, level-range) samples, " << violations
     << " with two negative-slope roots; cases";
  for (const auto& [name, count] : cases) os << " " << name << ":" << count;
  out.detail = os.str();
  return out;
}

Outcome criterion8() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> rate(0.1, 10.0), conc(0.1, 5.0);
  std::size_t cases = 0, agree = 0, grid_cases = 0, grid_agree = 0, total_states = 0, multi = 0;
  std::string first_mismatch;
  while (cases < 100) {
    const BiNetwork net = testing::random_network(rng);
    const Structure st = analyze_structure(net);
    if (!st.applicability.ok()) continue;
    const Verdict v = decide(st.partition, st.applicability);
    Kappa kappa;
    std::vector<double> c;
    if (cases % 2 == 1) {
      // Odd cases reuse witness parameters so that several states occur.
      if (!v.multistable) continue;
      const Witness w = make_witness(net, {cases, 20});
      kappa = w.kappa;
      c = w.c;
    } else {
      kappa = {rate(rng), rate(rng)};
      State x0(net.species_count());
      for (double& x : x0) x = conc(rng);
      for (const auto& row : st.stoich.W) {
        double acc = 0.0;
        for (SpeciesIndex i = 0; i < x0.size(); ++i) acc += boost::rational_cast<double>(row[i]) * x0[i];
        c.push_back(acc);
      }
    }
    ++cases;
    const SteadyStateSet set = enumerate_steady_states(net, kappa, c);
    std::size_t g_count = 0;
    if (const auto gp = geometry_from_parameters(net, st.partition, kappa, c)) {
      g_count = solve_level(*gp, st.partition, gp->K).roots.size();
    }
    total_states += set.size();
    if (set.size() >= 2) ++multi;
    if (g_count == set.size()) ++agree;
    else if (first_mismatch.empty()) first_mismatch = serialize_network(net);
    if (cases % 5 == 0) {
      ++grid_cases;
      if (testing::grid_sign_changes(net, kappa, c, 200000) == set.size()) ++grid_agree;
    }
  }
  Outcome out;
  out.pass = agree == cases && grid_agree == grid_cases;
  std::ostringstream os;
  os << agree << "/" << cases << " polynomial vs level-set counts agree (" << total_states << " states, " << multi
     << " cases with >=2); grid oracle " << grid_agree << "/" << grid_cases;
  if (!first_mismatch.empty()) os << "; first mismatch: " << first_mismatch;
  out.detail = os.str();
  return out;
}

Outcome criterion9() {
  std::size_t checked = 0, sign_ok = 0, spectrum_ok = 0;
  double worst_rest = 0.0;
  for (const BridgeSample& b : bridge_samples) {
    ++checked;
    const double dg = eval_dg(b.gp, b.part, b.z);
    const double eig = jacobian_eigenvalue(b.net, b.kappa, b.x);
    if ((dg > 0) == (eig > 0) && dg != 0.0) ++sign_ok;
    const auto spec = testing::full_jacobian_spectrum(b.net, b.kappa, b.x);
    worst_rest = std::max(worst_rest, spec.rest);
    if (spec.rest < 1e-8 && std::fabs(spec.dominant - eig) <= 1e-6 * std::fabs(eig)) ++spectrum_ok;
  }
  Outcome out;
  out.pass = checked > 0 && sign_ok == checked && spectrum_ok == checked;
  std::ostringstream os;
  os << checked << " nondegenerate states, " << sign_ok << " sign matches, " << spectrum_ok
     << " full spectra with s-1 eigenvalues < 1e-8 (largest " << worst_rest << ")";
  out.detail = os.str();
  return out;
}

Outcome criterion10() {
  std::mt19937_64 rng(1010);
  std::size_t points = 0, ok = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto [part, gp] = testing::random_geometry(rng);
    const Interval w = testing::finite_window(domain_interval(gp, part));
    const double h = 1e-6 * w.width();
    double weight = 0.0;
    for (SpeciesIndex i = 0; i < part.species_count(); ++i) weight += static_cast<double>(part.a[i]);
    std::uniform_real_distribution<double> where(w.lo + 0.01 * w.width(), w.hi - 0.01 * w.width());
    for (int k = 0; k < 100; ++k) {
      const double z = where(rng);
      const double fd1 = (eval_g(gp, part, z + h) - eval_g(gp, part, z - h)) / (2 * h);
      const double fd2 = (eval_dg(gp, part, z + h) - eval_dg(gp, part, z - h)) / (2 * h);
      const double dg = eval_dg(gp, part, z);
      const double d2g = eval_d2g(gp, part, z);
      // Relative to |value|, floored at the natural scale of the window so
      // that points where the derivative crosses zero stay meaningful.
      const double e1 = std::fabs(fd1 - dg) / std::max(std::fabs(dg), weight / w.width());
      const double e2 = std::fabs(fd2 - d2g) / std::max(std::fabs(d2g), weight / (w.width() * w.width()));
      worst = std::max({worst, e1, e2});
      ++points;
      if (e1 < 1e-6 && e2 < 1e-6) ++ok;
    }
  }
  Outcome out;
  out.pass = ok == points;
  std::ostringstream os;
  os << ok << "/" << points << " points within 1e-6 (worst relative error " << worst << ")";
  out.detail = os.str();
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, [] { return paper_example(0); }},
      {2, [] { return paper_example(1); }},
      {3, [] { return paper_example(2); }},
      {4, [] { return paper_example(3); }},
      {5, criterion5},
      {6, criterion6},
      {7, criterion7},
      {8, criterion8},
      {9, criterion9},
      {10, criterion10},
  };
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    failed += !out.pass;
    std::printf("criterion %2d  %s  %s\n", id, out.pass ? "PASS" : "FAIL", out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
