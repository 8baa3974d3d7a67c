#include "bistab/verifier.hpp"

#include "bistab/errors.hpp"
#include "bistab/polynomial.hpp"
#include "bistab/stoich.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace bistab {

namespace {

using ld = long double;

int sign_of(ld v) { return (v > 0) - (v < 0); }

constexpr double kStabilityThreshold = 1e-9;

// x_k along the positive segment, written as A_k (1-s) + B_k s after
// mapping the pivot range onto s in (0, 1). On an unbounded range the
// physical value is that linear form divided by (1-s).
struct Factor {
  SpeciesIndex species;
  ld A;
  ld B;
  int e1;
  int e2;
};

struct Reduced {
  std::vector<Factor> factors;
  ld C1;
  ld C2;
  bool unbounded;
  int pad1 = 0;  // powers of (1-s) homogenizing each term
  int pad2 = 0;

  ScaledValue eval(ld s) const {
    const ld r = 1.0L - s;
    ld t1 = C1;
    ld t2 = C2;
    for (const Factor& f : factors) {
      const ld v = f.A * r + f.B * s;
      for (int k = 0; k < f.e1; ++k) t1 *= v;
      for (int k = 0; k < f.e2; ++k) t2 *= v;
    }
    for (int k = 0; k < pad1; ++k) t1 *= r;
    for (int k = 0; k < pad2; ++k) t2 *= r;
    return {t1 + t2, std::fabs(t1) + std::fabs(t2)};
  }

  Polynomial expand() const {
    Polynomial p1({C1});
    Polynomial p2({C2});
    for (const Factor& f : factors) {
      const Polynomial lin = Polynomial::linear(f.A, f.B - f.A);
      if (f.e1 > 0) p1 *= lin.pow(static_cast<unsigned>(f.e1));
      if (f.e2 > 0) p2 *= lin.pow(static_cast<unsigned>(f.e2));
    }
    const Polynomial r = Polynomial::linear(1.0L, -1.0L);
    if (pad1 > 0) p1 *= r.pow(static_cast<unsigned>(pad1));
    if (pad2 > 0) p2 *= r.pow(static_cast<unsigned>(pad2));
    return p1 + p2;
  }

  // Sign of the function as s -> 0+ (right == false) or s -> 1- (right == true).
  int end_sign(bool right) const {
    int order1 = right ? pad1 : 0;
    int order2 = right ? pad2 : 0;
    ld c1 = C1;
    ld c2 = C2;
    for (const Factor& f : factors) {
      const ld here = right ? f.B : f.A;
      const ld slope = right ? f.A : f.B;  // leading behaviour when `here` is 0
      const ld lead = here != 0.0L ? here : slope;
      const int vanish = here == 0.0L ? 1 : 0;
      for (int k = 0; k < f.e1; ++k) c1 *= lead;
      for (int k = 0; k < f.e2; ++k) c2 *= lead;
      order1 += vanish * f.e1;
      order2 += vanish * f.e2;
    }
    if (order1 < order2) return sign_of(c1);
    if (order2 < order1) return sign_of(c2);
    const ld sum = c1 + c2;
    if (std::fabs(sum) <= 1e-15L * (std::fabs(c1) + std::fabs(c2))) return 0;
    return sign_of(sum);
  }
};

std::vector<ld> sample_grid(const Reduced& red) {
  std::vector<ld> grid;
  constexpr int kCheb = 256;
  for (int k = 1; k < kCheb; ++k) {
    grid.push_back(0.5L * (1.0L - std::cos(std::numbers::pi_v<ld> * k / kCheb)));
  }
  ld eps = 0.1L;
  for (int k = 1; k <= 18; ++k, eps /= 10.0L) {
    grid.push_back(eps);
    grid.push_back(1.0L - eps);
  }
  const Polynomial p = red.expand();
  if (p.degree() >= 2) {
    for (const IsolatedRoot& r : isolate_real_roots(p.derivative(), 0.0L, 1.0L)) grid.push_back(r.x);
  }
  grid.erase(std::remove_if(grid.begin(), grid.end(), [](ld s) { return !(s > 0.0L && s < 1.0L); }),
             grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ld bisect(const Reduced& red, ld lo, ld hi, int sign_lo) {
  for (int it = 0; it < 256; ++it) {
    const ld mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const int s = sign_of(red.eval(mid).value);
    if (s == 0) return mid;
    (s == sign_lo ? lo : hi) = mid;
  }
  return lo + (hi - lo) / 2;
}

std::vector<ld> roots_in_unit_interval(const Reduced& red) {
  const std::vector<ld> grid = sample_grid(red);
  std::vector<ld> roots;
  int last_sign = red.end_sign(false);
  ld last_pos = 0.0L;
  std::vector<ld> zeros;
  auto step = [&](ld pos, int sign) {
    if (sign == 0) {
      zeros.push_back(pos);
      return;
    }
    if (last_sign == 0) {
      // Unknown sign at the left end: only zeros seen so far count.
      if (!zeros.empty()) roots.push_back(zeros.front());
    } else if (!zeros.empty()) {
      roots.push_back(zeros[zeros.size() / 2]);
    } else if (sign != last_sign) {
      roots.push_back(bisect(red, last_pos, pos, last_sign));
    }
    zeros.clear();
    last_sign = sign;
    last_pos = pos;
  };
  for (ld s : grid) {
    const ScaledValue v = red.eval(s);
    const int sg = std::fabs(v.value) <= 1e-16L * v.scale ? 0 : sign_of(v.value);
    step(s, sg);
  }
  const int right = red.end_sign(true);
  if (right != 0) {
    step(1.0L, right);
  } else if (!zeros.empty()) {
    roots.push_back(zeros[zeros.size() / 2]);
  }
  return roots;
}

StoichData checked_stoich(const BiNetwork& net, const Kappa& kappa) {
  StoichData sd = stoich_data(net);
  if (!sd.rank_ok) throw PreconditionError("reaction vectors are not proportional");
  if (!(kappa[0] > 0.0 && kappa[1] > 0.0)) throw PreconditionError("rate constants must be positive");
  return sd;
}

double monomial(const BiNetwork& net, const State& x, std::size_t j) {
  double m = 1.0;
  for (const auto& [k, e] : net.reaction(j).reactants) m *= std::pow(x[k], static_cast<double>(e));
  return m;
}

double lambda_value(const StoichData& sd) { return boost::rational_cast<double>(*sd.lambda); }

}  // namespace

std::size_t SteadyStateSet::stable_count() const {
  return static_cast<std::size_t>(std::count(stable.begin(), stable.end(), true));
}

double monomial_scale(const BiNetwork& net, const Kappa& kappa, const State& x) {
  const StoichData sd = checked_stoich(net, kappa);
  return std::max(kappa[0] * monomial(net, x, 0), std::fabs(lambda_value(sd)) * kappa[1] * monomial(net, x, 1));
}

double jacobian_eigenvalue(const BiNetwork& net, const Kappa& kappa, const State& x) {
  const StoichData sd = checked_stoich(net, kappa);
  if (x.size() != net.species_count()) throw PreconditionError("state has the wrong dimension");
  const double lambda = lambda_value(sd);
  const double m1 = kappa[0] * monomial(net, x, 0);
  const double m2 = lambda * kappa[1] * monomial(net, x, 1);
  double eig = 0.0;
  for (SpeciesIndex k = 0; k < x.size(); ++k) {
    if (x[k] <= 0.0) throw PreconditionError("state must be positive");
    const double u = static_cast<double>(sd.N[k][0]);
    if (u == 0.0) continue;
    eig += u * (static_cast<double>(net.alpha(k, 0)) * m1 + static_cast<double>(net.alpha(k, 1)) * m2) / x[k];
  }
  return eig;
}

State vector_field(const BiNetwork& net, const Kappa& kappa, const State& x) {
  const double r1 = kappa[0] * monomial(net, x, 0);
  const double r2 = kappa[1] * monomial(net, x, 1);
  State f(x.size());
  for (SpeciesIndex i = 0; i < x.size(); ++i) {
    f[i] = static_cast<double>(net.net_change(i, 0)) * r1 + static_cast<double>(net.net_change(i, 1)) * r2;
  }
  return f;
}

SteadyStateSet enumerate_steady_states(const BiNetwork& net, const Kappa& kappa, const std::vector<double>& c) {
  const StoichData sd = checked_stoich(net, kappa);
  const std::size_t s = net.species_count();
  if (c.size() + 1 != s) {
    throw PreconditionError("expected " + std::to_string(s - 1) + " total constants, got " +
                            std::to_string(c.size()));
  }
  const SpeciesIndex p = sd.pivot;
  const double np = static_cast<double>(sd.N[p][0]);
  const double lambda = lambda_value(sd);

  // x_i = m_i t + b_i with t = x_p.
  std::vector<double> m(s, 0.0);
  std::vector<double> b(s, 0.0);
  m[p] = 1.0;
  const auto conserved = sd.conserved_species();
  for (std::size_t r = 0; r < conserved.size(); ++r) {
    const SpeciesIndex i = conserved[r];
    m[i] = static_cast<double>(sd.N[i][0]) / np;
    b[i] = -c[r] / np;
  }

  SteadyStateSet out;
  out.pivot = p;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (SpeciesIndex i = 0; i < s; ++i) {
    if (m[i] > 0.0) {
      lo = std::max(lo, -b[i] / m[i]);
    } else if (m[i] < 0.0) {
      hi = std::min(hi, -b[i] / m[i]);
    } else if (!(b[i] > 0.0)) {
      hi = lo;
    }
  }
  out.segment_lo = lo;
  out.segment_hi = hi;
  if (!(lo < hi)) return out;

  const bool unbounded = std::isinf(hi);
  const double h = unbounded ? std::max(1.0, lo) : hi - lo;
  auto attains = [](double bound, double v) { return std::fabs(v - bound) <= 1e-14 * std::max(1.0, std::fabs(bound)); };

  Reduced red;
  red.unbounded = unbounded;
  red.C1 = kappa[0];
  red.C2 = static_cast<ld>(lambda) * kappa[1];
  int deg1 = 0;
  int deg2 = 0;
  std::vector<Factor> all(s);
  for (SpeciesIndex k = 0; k < s; ++k) {
    Factor f;
    f.species = k;
    const Coefficient common = std::min(net.alpha(k, 0), net.alpha(k, 1));
    f.e1 = static_cast<int>(net.alpha(k, 0) - common);
    f.e2 = static_cast<int>(net.alpha(k, 1) - common);
    const bool zero_at_lo = m[k] > 0.0 && attains(lo, -b[k] / m[k]);
    f.A = zero_at_lo ? 0.0L : static_cast<ld>(m[k]) * lo + b[k];
    if (unbounded) {
      f.B = static_cast<ld>(m[k]) * h;
    } else {
      const bool zero_at_hi = m[k] < 0.0 && attains(hi, -b[k] / m[k]);
      f.B = zero_at_hi ? 0.0L : static_cast<ld>(m[k]) * hi + b[k];
    }
    all[k] = f;
    deg1 += f.e1;
    deg2 += f.e2;
    if (f.e1 > 0 || f.e2 > 0) red.factors.push_back(f);
  }
  if (unbounded) {
    const int D = std::max(deg1, deg2);
    red.pad1 = D - deg1;
    red.pad2 = D - deg2;
  }

  for (ld root : roots_in_unit_interval(red)) {
    const ld r = 1.0L - root;
    State x(s);
    bool positive = true;
    for (SpeciesIndex k = 0; k < s; ++k) {
      ld v = all[k].A * r + all[k].B * root;
      if (unbounded) v /= r;
      x[k] = static_cast<double>(v);
      positive = positive && x[k] > 0.0;
    }
    if (!positive) continue;

    const double m1 = kappa[0] * monomial(net, x, 0);
    const double m2 = lambda * kappa[1] * monomial(net, x, 1);
    const double scale = std::max(std::fabs(m1), std::fabs(m2));
    double residual = std::fabs(m1 + m2) / scale;
    for (std::size_t row = 0; row < conserved.size(); ++row) {
      const SpeciesIndex i = conserved[row];
      const double a = static_cast<double>(sd.N[i][0]) * x[p];
      const double bb = np * x[i];
      const double denom = std::max({1.0, std::fabs(c[row]), std::fabs(a), std::fabs(bb)});
      residual = std::max(residual, std::fabs(a - bb - c[row]) / denom);
    }
    const double eig = jacobian_eigenvalue(net, kappa, x);
    const double threshold = kStabilityThreshold * scale;
    out.states.push_back(std::move(x));
    out.eigenvalue.push_back(eig);
    out.stable.push_back(eig < -threshold);
    out.degenerate.push_back(std::fabs(eig) <= threshold);
    out.residuals.push_back(residual);
  }
  return out;
}

Trajectory simulate(const BiNetwork& net, const Kappa& kappa, const State& x0, double t_end,
                    const SimulateOptions& options) {
  if (!(t_end > 0.0)) throw PreconditionError("t_end must be positive");
  if (x0.size() != net.species_count()) throw PreconditionError("initial state has the wrong dimension");
  for (double v : x0) {
    if (!(v > 0.0)) throw PreconditionError("initial state must be positive");
  }

  auto out_of_range = [](const State& x) {
    return std::any_of(x.begin(), x.end(), [](double v) { return !(v >= 1e-12 && v <= 1e12); });
  };

  auto run = [&](std::size_t n, Trajectory* record) {
    const double dt = t_end / static_cast<double>(n);
    const std::size_t stride = std::max<std::size_t>(1, n / (options.max_samples - 1));
    State x = x0;
    State tmp(x.size());
    if (record) {
      record->times = {0.0};
      record->states = {x};
    }
    for (std::size_t k = 0; k < n; ++k) {
      const State k1 = vector_field(net, kappa, x);
      for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
      const State k2 = vector_field(net, kappa, tmp);
      for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
      const State k3 = vector_field(net, kappa, tmp);
      for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + dt * k3[i];
      const State k4 = vector_field(net, kappa, tmp);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      const bool bad = out_of_range(x);
      if (record && ((k + 1) % stride == 0 || k + 1 == n || bad)) {
        record->times.push_back(dt * static_cast<double>(k + 1));
        record->states.push_back(x);
      }
      if (bad) return std::make_pair(x, true);
    }
    return std::make_pair(x, false);
  };

  Trajectory traj;
  std::size_t n = options.initial_steps;
  auto [coarse, coarse_bad] = run(n, nullptr);
  while (true) {
    const std::size_t fine_n = 2 * n;
    const bool last = fine_n >= options.max_steps;
    // Only the final run is recorded; rerunning with a record is cheap
    // relative to the refinement sequence.
    auto [fine, fine_bad] = run(fine_n, nullptr);
    bool agree = !coarse_bad && !fine_bad;
    for (std::size_t i = 0; agree && i < fine.size(); ++i) {
      agree = std::fabs(fine[i] - coarse[i]) <= options.rel_tol * std::fabs(fine[i]);
    }
    if (agree || last || fine_bad) {
      run(fine_n, &traj);
      traj.blew_up = fine_bad;
      traj.converged = agree;
      traj.steps = fine_n;
      return traj;
    }
    n = fine_n;
    coarse = fine;
    coarse_bad = fine_bad;
  }
}

Certification certify_multistable(const BiNetwork& net, const Kappa& kappa, const std::vector<double>& c) {
  Certification cert;
  cert.states = enumerate_steady_states(net, kappa, c);
  cert.multistable = cert.states.stable_count() >= 2;
  return cert;
}

}  // namespace bistab
