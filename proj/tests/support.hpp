#pragma once

#include <bistab/bistab.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bistab::testing {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline BiNetwork fixture(const std::string& name) {
  return parse_network(read_text(std::string(BISTAB_NETWORKS_DIR) + "/" + name));
}

/// One worked example: network, parameters as printed (rows and totals of
/// the displayed augmented system), printed steady states and stability.
struct PaperExample {
  const char* name;
  const char* file;
  Kappa kappa;
  /// Displayed conservation rows, each a coefficient vector over species.
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<double> totals;
  std::vector<std::vector<double>> states;
  std::vector<bool> stable;
  /// Significant digits the comparison asks for.
  int digits;
  TheoremCase expected_case;
  std::vector<std::int64_t> cert_values;
};

inline const std::vector<PaperExample>& paper_examples() {
  static const std::vector<PaperExample> examples{
      {"a",
       "a.net",
       {1.0, 1.0},
       {{-1, -1, 0, 0}, {-1, 0, -1, 0}, {1, 0, 0, -1}},
       {-2.0, -1.7, 0.3},
       {{0.3293, 1.671, 1.371, 0.02930}, {1.000, 1.000, 0.7000, 0.7000}, {1.548, 0.4521, 0.1521, 1.248}},
       {true, false, true},
       3,
       TheoremCase::a,
       {3, 1}},
      {"b(i)",
       "b1.net",
       {1.0, 2.0},
       {{1, -1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, -1}},
       {0.09, 3.0, 0.1},
       {{0.1448, 0.05478, 2.855, 0.04478}, {0.7442, 0.6542, 2.256, 0.6442}, {2.103, 2.013, 0.8967, 2.003}},
       {true, false, true},
       3,
       TheoremCase::b1,
       {4, 3}},
      {"b(ii)",
       "b2.net",
       {1.0, 72.0},
       {{1, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {1, 0, 0, 1, 0, 0}, {1, 0, 0, 0, 1, 0}, {3, 0, 0, 0, 0, 1}},
       {101.0, 101.0, 1000.0, 100.0, 315.0},
       {{32.09, 68.91, 68.91, 967.9, 67.91, 218.7},
        {86.24, 14.76, 14.76, 913.8, 13.76, 56.29},
        {97.55, 3.450, 3.450, 902.5, 2.450, 22.35},
        {99.54, 1.464, 1.464, 900.5, 0.4641, 16.39}},
       {false, true, false, true},
       4,
       TheoremCase::b3,
       {4, 3, 1}},
      {"c",
       "c.net",
       {1.0, 328.0},
       {{1, -1, 0, 0, 0}, {2, 0, -1, 0, 0}, {1, 0, 0, -1, 0}, {1, 0, 0, 0, -1}},
       {100.0, 1.0, 101.0, 90.0},
       {{101.6, 1.588, 202.2, 0.5879, 11.59},
        {108.1, 8.081, 215.2, 7.081, 18.08},
        {128.2, 28.21, 255.4, 27.21, 38.21},
        {190.6, 90.62, 380.2, 89.62, 100.6}},
       {true, false, true, false},
       4,
       TheoremCase::c2,
       {3, 2, 1}},
  };
  return examples;
}

/// Totals of the library's conservation rows for a printed system.
inline std::vector<double> library_totals(const BiNetwork& net, const PaperExample& ex) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : ex.rows) {
    std::vector<Rational> row;
    for (std::int64_t v : r) row.emplace_back(v);
    rows.push_back(std::move(row));
  }
  return canonical_totals(stoich_data(net), rows, ex.totals);
}

/// |computed - printed| within half a unit of the last requested digit
/// plus the rounding of the printed value itself.
inline bool matches_digits(double computed, double printed, int digits) {
  const double e = std::floor(std::log10(std::fabs(printed)));
  const double unit = std::pow(10.0, e - (digits - 1));
  return std::fabs(computed - printed) <= 0.5 * unit + 0.5 * std::pow(10.0, e - 3);
}

struct RandomNetworkOptions {
  std::size_t max_species = 5;
  int max_coefficient = 6;
  /// Probability that a species has no net change (passive/folded cases).
  double p_unchanged = 0.1;
};

/// A random two-reaction network with proportional reaction vectors and
/// lambda < 0: a direction u, a ratio lambda with lambda*u integral, and
/// reactant vectors keeping every product coefficient in [0, max].
inline BiNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  static const std::vector<std::pair<int, int>> ratios{{-1, 1}, {-2, 1}, {-1, 2}, {-3, 1},
                                                       {-1, 3}, {-2, 3}, {-3, 2}};
  std::uniform_int_distribution<std::size_t> species_count(1, opt.max_species);
  std::uniform_int_distribution<std::size_t> ratio_pick(0, ratios.size() - 1);
  std::bernoulli_distribution unchanged(opt.p_unchanged);
  const int m = opt.max_coefficient;
  while (true) {
    const std::size_t s = species_count(rng);
    const auto [num, den] = ratios[ratio_pick(rng)];
    std::uniform_int_distribution<int> step(-3, 3);
    std::vector<int> u(s);
    bool any = false;
    for (int& v : u) {
      v = unchanged(rng) ? 0 : step(rng) * den;
      any = any || v != 0;
    }
    if (!any) continue;
    bool ok = true;
    BiNetwork net;
    for (std::size_t i = 0; i < s && ok; ++i) {
      net.species.push_back("X" + std::to_string(i + 1));
      const int du1 = u[i];
      const int du2 = u[i] * num / den;
      auto pick = [&](int delta, Coefficient& alpha, Coefficient& beta) {
        const int lo = std::max(0, -delta);
        const int hi = std::min(m, m - delta);
        if (lo > hi) return false;
        alpha = std::uniform_int_distribution<int>(lo, hi)(rng);
        beta = alpha + delta;
        return true;
      };
      Coefficient a1 = 0, b1 = 0, a2 = 0, b2 = 0;
      ok = pick(du1, a1, b1) && pick(du2, a2, b2);
      if (!ok) break;
      if (a1) net.r1.reactants[i] = a1;
      if (b1) net.r1.products[i] = b1;
      if (a2) net.r2.reactants[i] = a2;
      if (b2) net.r2.products[i] = b2;
    }
    if (!ok) continue;
    try {
      validate(net);
    } catch (const InvalidNetwork&) {
      continue;
    }
    return net;
  }
}

/// Brute-force subset-sum oracle.
inline bool any_subset_between(const std::vector<std::int64_t>& values, std::int64_t lo, std::int64_t hi) {
  const std::size_t n = values.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1U) sum += values[k];
    }
    if (lo < sum && sum < hi) return true;
  }
  return false;
}

/// Independent count of positive steady states: sign changes of
/// ln(k1 x^alpha1) - ln(-lambda k2 x^alpha2) on a grid over the positive
/// segment, cosine-clustered towards both ends (a tangent map covers
/// unbounded segments).
inline std::size_t grid_sign_changes(const BiNetwork& net, const Kappa& kappa, const std::vector<double>& c,
                                     std::size_t samples) {
  const StoichData sd = stoich_data(net);
  const std::size_t s = net.species_count();
  const SpeciesIndex p = sd.pivot;
  const double np = static_cast<double>(sd.N[p][0]);
  std::vector<double> m(s, 0.0), b(s, 0.0);
  m[p] = 1.0;
  const auto conserved = sd.conserved_species();
  for (std::size_t r = 0; r < conserved.size(); ++r) {
    m[conserved[r]] = static_cast<double>(sd.N[conserved[r]][0]) / np;
    b[conserved[r]] = -c[r] / np;
  }
  double lo = 0.0, hi = INFINITY;
  for (std::size_t i = 0; i < s; ++i) {
    if (m[i] > 0) lo = std::max(lo, -b[i] / m[i]);
    else if (m[i] < 0) hi = std::min(hi, -b[i] / m[i]);
    else if (b[i] <= 0) return 0;
  }
  if (!(lo < hi)) return 0;
  const double lambda = boost::rational_cast<double>(*sd.lambda);
  auto level = [&](double t) {
    double acc = std::log(kappa[0]) - std::log(-lambda * kappa[1]);
    for (std::size_t k = 0; k < s; ++k) {
      const double x = m[k] * t + b[k];
      acc += static_cast<double>(net.alpha(k, 0) - net.alpha(k, 1)) * std::log(x);
    }
    return acc;
  };
  const double scale = std::max(1.0, lo);
  std::size_t changes = 0;
  int last = 0;
  for (std::size_t k = 1; k < samples; ++k) {
    const double f = 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(k) / static_cast<double>(samples)));
    const double t = std::isinf(hi) ? lo + scale * std::tan(f * M_PI / 2) : lo + (hi - lo) * f;
    if (!(t > lo && t < hi)) continue;
    const double v = level(t);
    const int sg = (v > 0) - (v < 0);
    if (sg != 0 && last != 0 && sg != last) ++changes;
    if (sg != 0) last = sg;
  }
  return changes;
}

/// A reduced partition whose species are laid out set by set; `a[k]` holds
/// the a-values of S(k+1). Every gamma is 1 unless given.
inline IndexPartition make_partition(const std::array<std::vector<std::int64_t>, 4>& a,
                                     const std::array<std::vector<std::int64_t>, 4>& gamma = {}) {
  IndexPartition part;
  part.reduced = true;
  for (int k = 0; k < 4; ++k) {
    const auto& values = a[static_cast<std::size_t>(k)];
    for (std::size_t n = 0; n < values.size(); ++n) {
      const SpeciesIndex i = part.membership.size();
      const auto& g = gamma[static_cast<std::size_t>(k)];
      part.membership.push_back(static_cast<IndexSet>(k));
      part.a.push_back(values[n]);
      part.gamma.push_back(n < g.size() ? g[n] : 1);
      part.orientation.push_back(k == 0 || k == 3 ? 1 : -1);
      part.S(k + 1).push_back(i);
    }
  }
  return part;
}

struct RandomGeometry {
  IndexPartition part;
  GeometryParams gp;
};

/// Random active terms (a in 1..4, gamma in 1..3, d in (-5, 5)) with a
/// nonempty domain.
inline RandomGeometry random_geometry(std::mt19937_64& rng, std::size_t max_active = 8) {
  std::uniform_int_distribution<std::size_t> count(1, max_active);
  std::uniform_int_distribution<int> set(0, 3);
  std::uniform_int_distribution<std::int64_t> a(1, 4), gamma(1, 3);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  while (true) {
    std::array<std::vector<std::int64_t>, 4> av, gv;
    const std::size_t n = count(rng);
    for (std::size_t k = 0; k < n; ++k) {
      const auto sk = static_cast<std::size_t>(set(rng));
      av[sk].push_back(a(rng));
      gv[sk].push_back(gamma(rng));
    }
    RandomGeometry out{make_partition(av, gv), {}};
    out.gp.d.resize(n);
    for (double& d : out.gp.d) d = shift(rng);
    if (!domain_interval(out.gp, out.part).empty()) return out;
  }
}

/// A finite window inside the domain: unbounded ends are cut 20 units past
/// the finite one (or at +-20 when both are infinite).
inline Interval finite_window(const Interval& I) {
  Interval w = I;
  if (std::isinf(w.lo) && std::isinf(w.hi)) return {-20.0, 20.0};
  if (std::isinf(w.lo)) w.lo = w.hi - 20.0;
  if (std::isinf(w.hi)) w.hi = w.lo + 20.0;
  return w;
}

/// Sign changes of g - K on n points clustered towards both ends of the
/// domain (cosine spacing; unbounded ends through a tangent map).
inline std::size_t grid_level_crossings(const GeometryParams& gp, const IndexPartition& part, double K,
                                        std::size_t n) {
  const Interval I = domain_interval(gp, part);
  auto point = [&](double f) {
    if (I.bounded()) return I.lo + (I.hi - I.lo) * f;
    if (std::isinf(I.lo) && std::isinf(I.hi)) return std::tan(M_PI * (f - 0.5));
    if (std::isinf(I.hi)) return I.lo + std::tan(M_PI / 2 * f);
    return I.hi - std::tan(M_PI / 2 * (1.0 - f));
  };
  std::size_t changes = 0;
  int last = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const double f = 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(k) / static_cast<double>(n)));
    const double z = point(f);
    if (!I.contains(z)) continue;
    const double v = eval_g(gp, part, z) - K;
    const int sg = (v > 0) - (v < 0);
    if (sg != 0 && last != 0 && sg != last) ++changes;
    if (sg != 0) last = sg;
  }
  return changes;
}

}  // namespace bistab::testing
