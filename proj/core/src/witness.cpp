#include "bistab/witness.hpp"

#include "bistab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace bistab {

namespace {

double sum_a(const IndexPartition& part, const std::vector<SpeciesIndex>& set) {
  double total = 0.0;
  for (SpeciesIndex i : set) total += static_cast<double>(part.a[i]);
  return total;
}

SpeciesIndex argmin_a(const IndexPartition& part, const std::vector<SpeciesIndex>& set) {
  return *std::min_element(set.begin(), set.end(),
                           [&](SpeciesIndex x, SpeciesIndex y) { return part.a[x] < part.a[y]; });
}

std::vector<SpeciesIndex> without(const std::vector<SpeciesIndex>& set, const std::vector<SpeciesIndex>& drop) {
  std::vector<SpeciesIndex> out;
  for (SpeciesIndex i : set) {
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.push_back(i);
  }
  return out;
}

// The z -> -z image: S1 <-> S2 and S3 <-> S4 with the same shifts.
IndexPartition mirror(const IndexPartition& part) {
  IndexPartition m = part;
  std::swap(m.S(1), m.S(2));
  std::swap(m.S(3), m.S(4));
  for (IndexSet& set : m.membership) {
    switch (set) {
      case IndexSet::s1: set = IndexSet::s2; break;
      case IndexSet::s2: set = IndexSet::s1; break;
      case IndexSet::s3: set = IndexSet::s4; break;
      case IndexSet::s4: set = IndexSet::s3; break;
      case IndexSet::s5: break;
    }
  }
  for (int& o : m.orientation) o = -o;
  return m;
}

// Scan points in (lo, hi): a golden-ratio sequence plus geometric runs
// towards both ends.
std::vector<double> scan_points(double lo, double hi) {
  std::vector<double> pts;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int k = 1; k <= 64; ++k) {
    const double u = std::fmod(k * phi, 1.0);
    pts.push_back(lo + (hi - lo) * u);
  }
  double f = 0.5;
  for (int k = 0; k < 40; ++k, f *= 0.5) {
    pts.push_back(lo + (hi - lo) * f);
    pts.push_back(hi - (hi - lo) * f);
  }
  pts.erase(std::remove_if(pts.begin(), pts.end(), [&](double z) { return !(lo < z && z < hi); }), pts.end());
  std::sort(pts.begin(), pts.end());
  return pts;
}

struct Base {
  std::vector<double> d;
  std::vector<double> probes;
  std::vector<int> signs;
};

// Case (a), first disjunct: sum_S1 a > min_S4 a with all four sets nonempty.
Base construct_a(const IndexPartition& part) {
  Base b;
  b.d.assign(part.species_count(), 0.0);
  const SpeciesIndex i0 = argmin_a(part, part.S(4));
  const double a0 = static_cast<double>(part.a[i0]);
  const double s1 = sum_a(part, part.S(1));
  const double sigma1 = (s1 + a0) / (2.0 * a0);
  const double c0 = a0 * (s1 - a0) / (s1 + a0);
  const double sigma3 = 2.0 * sum_a(part, part.S(3)) / c0;
  const double sigma4 = std::max(2.0 * sum_a(part, without(part.S(4), {i0})) / c0, 2.0);
  const double sigma2 = sigma3 + 1.0;
  for (SpeciesIndex i : part.S(1)) b.d[i] = sigma1;
  for (SpeciesIndex i : part.S(2)) b.d[i] = sigma2;
  for (SpeciesIndex i : part.S(3)) b.d[i] = sigma3;
  for (SpeciesIndex i : part.S(4)) b.d[i] = sigma4;
  b.d[i0] = 1.0;
  b.probes = {0.0};
  b.signs = {+1};
  return b;
}

// Case (b)(1): S1, S3, S4 nonempty, S2 empty.
Base construct_b1(const IndexPartition& part) {
  Base b;
  b.d.assign(part.species_count(), 0.0);
  const SpeciesIndex p = argmin_a(part, part.S(4));
  const double ap = static_cast<double>(part.a[p]);
  const double s1 = sum_a(part, part.S(1));
  const double s3 = sum_a(part, part.S(3));
  const auto rest4 = without(part.S(4), {p});
  const double s4 = sum_a(part, rest4);

  auto N = [&](double z) { return s1 - s3 * z / (1.0 - z) - ap; };
  auto D = [&](double z) { return s3 / (1.0 - z) + ap / z; };
  double z_tilde = 0.0;
  double best = 0.0;
  for (double z : scan_points(0.0, 1.0)) {
    if (N(z) <= 0.0) continue;
    const double ratio = N(z) / D(z);
    if (ratio > best) {
      best = ratio;
      z_tilde = z;
    }
  }
  if (best <= 0.0) throw ConstructionFailed("case b1: no point with positive numerator");
  const double d = best / 2.0;
  const double h = s1 / (z_tilde + d) - s3 / (1.0 - z_tilde) - ap / z_tilde;
  const double e = s4 > 0.0 ? 2.0 * s4 / h : 1.0;

  for (SpeciesIndex i : part.S(1)) b.d[i] = d;
  for (SpeciesIndex i : part.S(3)) b.d[i] = 1.0;
  for (SpeciesIndex i : rest4) b.d[i] = e;
  b.d[p] = 0.0;
  b.probes = {z_tilde};
  b.signs = {+1};
  return b;
}

// Case (b)(3) and, with S1 empty, case (c)(1): the subset S2* of S2 sits
// strictly between min_S3 a and sum_S3 a.
Base construct_b3(const IndexPartition& part, const std::vector<SpeciesIndex>& s2_star) {
  Base b;
  b.d.assign(part.species_count(), 0.0);
  const SpeciesIndex p = argmin_a(part, part.S(3));
  const double ap = static_cast<double>(part.a[p]);
  const double A = sum_a(part, part.S(1));
  const double star = sum_a(part, s2_star);
  const double B = star - ap;
  const auto rest3 = without(part.S(3), {p});
  const double C = sum_a(part, rest3);
  const auto rest2 = without(part.S(2), s2_star);
  const double s2_rest = sum_a(part, rest2);

  // Step 1: w3 below N/D at some z1 where that ratio exceeds 1.
  auto N1 = [&](double z) { return C + A + B * z / (1.0 - z); };
  auto D1 = [&](double z) { return A / z + B / (1.0 - z); };
  double z1 = 0.0;
  double best1 = 1.0;
  for (double z : scan_points(0.0, 1.0)) {
    const double den = D1(z);
    if (!(den > 0.0)) continue;
    const double ratio = N1(z) / den;
    if (ratio > best1) {
      best1 = ratio;
      z1 = z;
    }
  }
  if (!(best1 > 1.0) || z1 == 0.0) throw ConstructionFailed("case b3: step 1 found no admissible point");
  const double w3 = (1.0 + best1) / 2.0;

  // Step 2: w1 below N~/D~ at some z2 in (z1, 1) where that ratio exceeds 1.
  auto D2 = [&](double z) { return -A / z + ap / (1.0 - z) + C / (w3 - z); };
  auto N2 = [&](double z) { return star - A + ap * z / (1.0 - z) + C * z / (w3 - z); };
  double z2 = 0.0;
  double best2 = 1.0;
  for (double z : scan_points(z1, 1.0)) {
    const double den = D2(z);
    const double num = N2(z);
    if (!(den > 0.0 && num > 0.0)) continue;
    if (num / den > best2) {
      best2 = num / den;
      z2 = z;
    }
  }
  if (!(best2 > 1.0)) throw ConstructionFailed("case b3: step 2 found no admissible point");
  const double w1 = (1.0 + best2) / 2.0;

  // Step 3.
  auto h = [&](double z) { return A / z + star / (w1 - z) - ap / (1.0 - z) - C / (w3 - z); };
  const double h1 = h(z1);
  if (!(h1 < 0.0)) throw ConstructionFailed("case b3: h(z1) is not negative");
  const double w2 = std::max(2.0 * s2_rest / (-h1) + z1, 2.0);

  for (SpeciesIndex i : part.S(1)) b.d[i] = 0.0;
  for (SpeciesIndex i : s2_star) b.d[i] = w1;
  for (SpeciesIndex i : rest2) b.d[i] = w2;
  for (SpeciesIndex i : rest3) b.d[i] = w3;
  b.d[p] = 1.0;
  b.probes = {z1, z2};
  b.signs = {-1, +1};
  return b;
}

// Positive offsets separate equal shifts; they only move domain ends outwards.
std::vector<double> separate(const IndexPartition& part, std::vector<double> d, std::uint64_t seed, int attempt) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (SpeciesIndex i = 0; i < d.size(); ++i) {
    if (!part.is_active(i)) continue;
    lo = std::min(lo, d[i]);
    hi = std::max(hi, d[i]);
  }
  if (!(lo <= hi)) return d;
  const double spread = hi > lo ? hi - lo : std::max(1.0, std::fabs(hi));
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(attempt));
  std::uniform_real_distribution<double> jitter(1.0, 1.5);
  const double base = 1e-4 * spread / (1.0 + attempt);

  std::map<double, std::vector<SpeciesIndex>> groups;
  for (SpeciesIndex i = 0; i < d.size(); ++i) {
    if (part.is_active(i)) groups[d[i]].push_back(i);
  }
  for (auto& [value, members] : groups) {
    double eps = base * jitter(rng);
    for (std::size_t k = 1; k < members.size(); ++k) {
      d[members[k]] = value + eps;
      eps *= 2.0;
    }
  }
  return d;
}

bool certified(const GeometryParams& gp, const IndexPartition& part) {
  const RootReport report = solve_level(gp, part, gp.K);
  return report.count_slope(-1) >= 2;
}

}  // namespace

ProofConstruction proof_construction(const IndexPartition& part, const Verdict& verdict) {
  if (!verdict.multistable) throw PreconditionError("no construction for a network that is not multistable");
  ProofConstruction out;
  out.mirrored = verdict.mirrored;
  const IndexPartition frame = verdict.mirrored ? mirror(part) : part;
  Base base;
  switch (verdict.theorem_case) {
    case TheoremCase::a: base = construct_a(frame); break;
    case TheoremCase::b1:
    case TheoremCase::b2: base = construct_b1(frame); break;
    case TheoremCase::b3:
    case TheoremCase::b4:
    case TheoremCase::c1:
    case TheoremCase::c2:
      if (!verdict.cert_subset) throw PreconditionError("verdict lacks its certifying subset");
      base = construct_b3(frame, *verdict.cert_subset);
      break;
    default: throw PreconditionError("verdict case has no construction");
  }
  out.d = std::move(base.d);
  out.probe_signs = std::move(base.signs);
  for (double z : base.probes) out.probes.push_back(verdict.mirrored ? -z : z);
  return out;
}

GeometryParams construct_geometry(const IndexPartition& part, const Verdict& verdict, const Rational& lambda,
                                  const WitnessOptions& options, int attempt) {
  const ProofConstruction proof = proof_construction(part, verdict);
  for (int k = attempt; k < attempt + std::max(1, options.max_attempts); ++k) {
    GeometryParams gp;
    gp.lambda = lambda;
    gp.d = separate(part, proof.d, options.seed, k);
    const auto pieces = monotone_pieces(gp, part);
    const LevelChoice choice = best_level(pieces);
    if (choice.negative_crossings < 2) continue;
    gp.K = choice.K;
    if (certified(gp, part)) return gp;
  }
  std::ostringstream msg;
  msg << "no certified geometry for case " << to_string(verdict.theorem_case) << " after "
      << options.max_attempts << " attempts";
  throw ConstructionFailed(msg.str());
}

State state_at(const BiNetwork& net, const GeometryParams& gp, double z) {
  const std::size_t s = net.species_count();
  State x(s);
  for (SpeciesIndex i = 0; i < s; ++i) {
    const Coefficient n = net.net_change(i, 0);
    if (n == 0) {
      x[i] = gp.fixed_x.empty() ? 1.0 : gp.fixed_x.at(i);
      continue;
    }
    const double mu = n > 0 ? gp.d[i] : -gp.d[i];
    x[i] = static_cast<double>(n) * (z + mu);
  }
  return x;
}

Witness backmap(GeometryParams gp, const IndexPartition& part, const BiNetwork& net, const RootReport& report) {
  if (report.roots.empty()) throw PreconditionError("backmap needs at least one root");
  const std::size_t s = net.species_count();
  const StoichData sd = stoich_data(net);
  if (!sd.rank_ok) throw PreconditionError("reaction vectors are not proportional");

  double zmin = report.roots.front().z;
  double zmax = report.roots.front().z;
  for (const LevelRoot& r : report.roots) {
    zmin = std::min(zmin, r.z);
    zmax = std::max(zmax, r.z);
  }
  const double margin = 1.0 + (zmax - zmin);
  gp.bounded_passive.clear();
  for (SpeciesIndex i : part.passive) {
    const int o = part.orientation[i];
    if (o == 0) continue;
    gp.d[i] = o > 0 ? margin - zmin : zmax + margin;
    gp.bounded_passive.push_back(i);
  }
  if (gp.fixed_x.empty()) gp.fixed_x.assign(s, 1.0);

  gp.folded_offset = 0.0;
  for (const FoldedSpecies& f : part.folded) gp.folded_offset += static_cast<double>(f.exponent) * std::log(gp.fixed_x[f.index]);

  Witness w;
  const double lambda = boost::rational_cast<double>(gp.lambda);
  w.kappa = {1.0, std::exp(gp.K + gp.folded_offset) / (-lambda)};

  const SpeciesIndex p = sd.pivot;
  const double np = static_cast<double>(sd.N[p][0]);
  auto mu = [&](SpeciesIndex i) { return sd.N[i][0] > 0 ? gp.d[i] : -gp.d[i]; };
  for (SpeciesIndex i : sd.conserved_species()) {
    const Coefficient n = sd.N[i][0];
    if (n == 0) {
      w.c.push_back(-np * gp.fixed_x[i]);
    } else {
      w.c.push_back(np * static_cast<double>(n) * (mu(p) - mu(i)));
    }
  }

  for (const LevelRoot& r : report.roots) {
    State x = state_at(net, gp, r.z);
    for (SpeciesIndex k = 0; k < s; ++k) {
      if (!(x[k] > 0.0)) {
        std::ostringstream msg;
        msg << "back-map produced x_" << (k + 1) << " = " << x[k] << " at z = " << r.z;
        throw ConstructionFailed(msg.str());
      }
    }
    w.steady_states.push_back(std::move(x));
    w.stable.push_back(r.slope < 0 && !r.degenerate);
    w.z.push_back(r.z);
  }
  w.geometry = std::move(gp);
  return w;
}

Witness make_witness(const BiNetwork& net, const WitnessOptions& options) {
  const Structure st = analyze_structure(net);
  const Verdict verdict = decide(st.partition, st.applicability);
  if (!verdict.multistable) {
    throw PreconditionError("network is not multistable (case " + std::string(to_string(verdict.theorem_case)) +
                            ")");
  }
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    WitnessOptions single = options;
    single.max_attempts = 1;
    try {
      const GeometryParams gp = construct_geometry(st.partition, verdict, *st.stoich.lambda, single, attempt);
      const RootReport report = solve_level(gp, st.partition, gp.K);
      Witness w = backmap(gp, st.partition, net, report);
      const Certification cert = certify_multistable(net, w.kappa, w.c);
      if (cert.multistable) return w;
      last_error = "verifier found " + std::to_string(cert.states.stable_count()) + " stable states";
    } catch (const ConstructionFailed& e) {
      last_error = e.what();
    }
  }
  throw ConstructionFailed(last_error);
}

std::optional<GeometryParams> geometry_from_parameters(const BiNetwork& net, const IndexPartition& part,
                                                       const Kappa& kappa, const std::vector<double>& c) {
  const StoichData sd = stoich_data(net);
  if (!sd.rank_ok) throw PreconditionError("reaction vectors are not proportional");
  const std::size_t s = net.species_count();
  if (c.size() + 1 != s) throw PreconditionError("wrong number of total constants");
  if (!(kappa[0] > 0.0 && kappa[1] > 0.0)) throw PreconditionError("rate constants must be positive");

  GeometryParams gp;
  gp.lambda = *sd.lambda;
  gp.d.assign(s, 0.0);
  gp.fixed_x.assign(s, 1.0);
  const SpeciesIndex p = sd.pivot;
  const double np = static_cast<double>(sd.N[p][0]);
  const auto conserved = sd.conserved_species();
  for (std::size_t r = 0; r < conserved.size(); ++r) {
    const SpeciesIndex i = conserved[r];
    const Coefficient n = sd.N[i][0];
    if (n == 0) {
      const double x = -c[r] / np;
      if (!(x > 0.0)) return std::nullopt;
      gp.fixed_x[i] = x;
      continue;
    }
    const double mu = -c[r] / (np * static_cast<double>(n));
    gp.d[i] = n > 0 ? mu : -mu;
  }
  for (SpeciesIndex i : part.passive) {
    if (part.orientation[i] != 0) gp.bounded_passive.push_back(i);
  }
  for (const FoldedSpecies& f : part.folded) gp.folded_offset += static_cast<double>(f.exponent) * std::log(gp.fixed_x[f.index]);
  const double lambda = boost::rational_cast<double>(gp.lambda);
  gp.K = std::log(-lambda * kappa[1] / kappa[0]) - gp.folded_offset;
  return gp;
}

}  // namespace bistab
