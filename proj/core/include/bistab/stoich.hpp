#pragma once

#include "bistab/network.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace bistab {

using Rational = boost::rational<std::int64_t>;

/// Exact stoichiometric data of a bi-reaction network.
struct StoichData {
  /// s x 2 matrix, N[i][j] = beta_ij - alpha_ij.
  std::vector<std::array<std::int64_t, 2>> N;
  /// (s-1) x s conservation-law rows; empty unless rank_ok.
  std::vector<std::vector<Rational>> W;
  /// Column-2 / column-1 ratio; set iff the columns are proportional.
  std::optional<Rational> lambda;
  /// rank(N) == 1.
  bool rank_ok = false;
  /// First species with N[i][0] != 0; the conservation rows are written
  /// relative to it. Equals 0 whenever species 1 changes in reaction 1.
  SpeciesIndex pivot = 0;

  std::size_t species_count() const noexcept { return N.size(); }
  /// Row indices of W in order: every species except the pivot.
  std::vector<SpeciesIndex> conserved_species() const;
};

StoichData stoich_data(const BiNetwork& net);

/// Conservation rows h_i = N_i1 x_p - N_p1 x_i for i != p (p = pivot).
/// With p = 0 these are exactly the rows of the augmented steady-state
/// system, so c_{i-1} is the total of row i-1. Requires sd.rank_ok.
std::vector<std::vector<Rational>> conservation_rows(const StoichData& sd);

/// Converts totals of rows that are nonzero multiples of the conservation
/// rows (same order) into totals of the conservation rows themselves.
/// Throws PreconditionError when a row is not such a multiple.
std::vector<double> canonical_totals(const StoichData& sd, const std::vector<std::vector<Rational>>& rows,
                                     const std::vector<double>& totals);

enum class IndexSet : std::uint8_t { s1, s2, s3, s4, s5 };

std::string_view to_string(IndexSet set);

/// Species with a_i > 0 and gamma_i = 0: constant on every compatibility
/// class but still present in the steady-state monomial ratio.
struct FoldedSpecies {
  SpeciesIndex index;
  /// alpha_i1 - alpha_i2 (nonzero).
  std::int64_t exponent;
};

/// Sign classification of the species.
struct IndexPartition {
  /// S1..S5, each sorted ascending.
  std::array<std::vector<SpeciesIndex>, 5> sets;
  std::vector<IndexSet> membership;
  /// a_i = |alpha_i1 - alpha_i2|.
  std::vector<std::int64_t> a;
  /// gamma_i = |beta_i1 - alpha_i1|.
  std::vector<std::int64_t> gamma;
  /// sign(beta_i1 - alpha_i1): the direction x_i moves along the reaction
  /// vector (0 for species that reaction 1 leaves unchanged).
  std::vector<int> orientation;
  /// True once S5 has been split into passive and folded species.
  bool reduced = false;
  /// a_i = 0: no contribution to g, but x_i still moves with z.
  std::vector<SpeciesIndex> passive;
  std::vector<FoldedSpecies> folded;

  const std::vector<SpeciesIndex>& S(int k) const { return sets.at(static_cast<std::size_t>(k - 1)); }
  std::vector<SpeciesIndex>& S(int k) { return sets.at(static_cast<std::size_t>(k - 1)); }
  std::size_t species_count() const noexcept { return membership.size(); }
  /// Species carrying a g-term (member of S1..S4).
  bool is_active(SpeciesIndex i) const { return membership.at(i) != IndexSet::s5; }
  std::size_t active_count() const;

  bool operator==(const IndexPartition&) const = default;
};

/// Raw classification from the coefficients; S5 collects every species with
/// alpha_i1 = alpha_i2 or beta_i1 = alpha_i1.
IndexPartition partition_indices(const BiNetwork& net);

enum class ApplicabilityStatus : std::uint8_t {
  ok,
  lambda_nonnegative,
  degenerate_constant_g,
  not_one_dimensional,
};

std::string_view to_string(ApplicabilityStatus status);

struct Applicability {
  ApplicabilityStatus status = ApplicabilityStatus::ok;
  bool ok() const noexcept { return status == ApplicabilityStatus::ok; }
};

/// Splits S5 into passive species (a_i = 0) and folded constant species
/// (a_i > 0, gamma_i = 0), leaving S5 empty. Requires sd.rank_ok.
std::pair<IndexPartition, Applicability> reduce_s5(const BiNetwork& net, const StoichData& sd);

/// stoich_data + reduce_s5, with the rank check folded into the status.
struct Structure {
  StoichData stoich;
  IndexPartition partition;
  Applicability applicability;
};

Structure analyze_structure(const BiNetwork& net);

}  // namespace bistab
