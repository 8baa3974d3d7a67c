#pragma once

#include "bistab/network.hpp"

#include <array>
#include <limits>
#include <vector>

namespace bistab {

using Kappa = std::array<double, 2>;
using State = std::vector<double>;

/// Positive steady states of one compatibility class, ascending in the
/// pivot coordinate.
struct SteadyStateSet {
  std::vector<State> states;
  /// The nonzero Jacobian eigenvalue at each state.
  std::vector<double> eigenvalue;
  std::vector<bool> stable;
  /// |eigenvalue| below the stability threshold.
  std::vector<bool> degenerate;
  /// Max relative residual of the augmented steady-state system.
  std::vector<double> residuals;
  /// Range of the pivot coordinate on which every x_k is positive.
  double segment_lo = 0.0;
  double segment_hi = std::numeric_limits<double>::infinity();
  /// Species used as the free coordinate (first with N_i1 != 0).
  SpeciesIndex pivot = 0;

  std::size_t size() const noexcept { return states.size(); }
  std::size_t stable_count() const;
};

/// All positive steady states with W x = c, where the rows of W are the
/// conservation rows of the network (ordered by species, pivot skipped).
/// Throws PreconditionError for non-proportional columns, a wrong c length
/// or nonpositive rate constants.
SteadyStateSet enumerate_steady_states(const BiNetwork& net, const Kappa& kappa, const std::vector<double>& c);

/// grad(phi) . u at x, the only eigenvalue of the rank-one Jacobian that can
/// be nonzero.
double jacobian_eigenvalue(const BiNetwork& net, const Kappa& kappa, const State& x);

/// max(k1 x^alpha_1, |lambda| k2 x^alpha_2): the scale of the stability threshold.
double monomial_scale(const BiNetwork& net, const Kappa& kappa, const State& x);

/// Right-hand side of the mass-action system at x.
State vector_field(const BiNetwork& net, const Kappa& kappa, const State& x);

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  /// A coordinate left [1e-12, 1e12]; the samples stop there.
  bool blew_up = false;
  /// The last two step-halvings agreed to the requested tolerance at t_end.
  bool converged = false;
  std::size_t steps = 0;

  const State& final_state() const { return states.back(); }
};

struct SimulateOptions {
  double rel_tol = 1e-6;
  std::size_t initial_steps = 64;
  std::size_t max_steps = std::size_t{1} << 22;
  /// Upper bound on the number of stored samples.
  std::size_t max_samples = 1001;
};

/// Classical RK4 on a uniform grid; the step count is doubled until two
/// successive runs agree at t_end.
Trajectory simulate(const BiNetwork& net, const Kappa& kappa, const State& x0, double t_end,
                    const SimulateOptions& options = {});

struct Certification {
  bool multistable = false;
  SteadyStateSet states;
};

/// At least two non-degenerate stable steady states in the class.
Certification certify_multistable(const BiNetwork& net, const Kappa& kappa, const std::vector<double>& c);

}  // namespace bistab
