#pragma once

#include "bistab/criterion.hpp"
#include "bistab/gfunction.hpp"
#include "bistab/verifier.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bistab {

/// Shifts taken straight from the constructive proof, before perturbation,
/// with the probe points at which the proof asserts a sign of dg/dz.
struct ProofConstruction {
  std::vector<double> d;
  std::vector<double> probes;
  std::vector<int> probe_signs;
  /// Built on the z -> -z image and mapped back.
  bool mirrored = false;
};

ProofConstruction proof_construction(const IndexPartition& part, const Verdict& verdict);

struct WitnessOptions {
  std::uint64_t seed = 1;
  int max_attempts = 20;
};

/// Proof shifts, distinctness perturbation and level choice. The result has
/// at least two non-degenerate negative-slope solutions of g = K.
GeometryParams construct_geometry(const IndexPartition& part, const Verdict& verdict, const Rational& lambda,
                                  const WitnessOptions& options = {}, int attempt = 0);

struct Witness {
  Kappa kappa{1.0, 1.0};
  /// Totals of the conservation rows.
  std::vector<double> c;
  std::vector<State> steady_states;
  std::vector<bool> stable;
  /// The z value of each steady state.
  std::vector<double> z;
  GeometryParams geometry;
};

/// Maps level-set solutions to rate constants, totals and states. Passive
/// species receive shifts that keep them positive at every root, which
/// adds them to geometry.bounded_passive.
Witness backmap(GeometryParams gp, const IndexPartition& part, const BiNetwork& net, const RootReport& report);

/// End to end: structure, verdict, geometry, back-map and an independent
/// check by the verifier. Throws PreconditionError when the network is not
/// multistable and ConstructionFailed when every attempt fails.
Witness make_witness(const BiNetwork& net, const WitnessOptions& options = {});

/// The geometry whose level set reproduces the steady states of (kappa, c),
/// gauged with mu_p = 0 at the pivot. Empty when a species that the
/// reactions leave unchanged has a nonpositive value, so the class has no
/// positive point.
std::optional<GeometryParams> geometry_from_parameters(const BiNetwork& net, const IndexPartition& part,
                                                       const Kappa& kappa, const std::vector<double>& c);

/// x(z) under the parameterization of gp.
State state_at(const BiNetwork& net, const GeometryParams& gp, double z);

}  // namespace bistab
