#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bistab {

/// Species index into BiNetwork::species (0-based).
using SpeciesIndex = std::size_t;
using Coefficient = long long;

/// One irreversible reaction. Coefficients absent from a map are zero.
struct Reaction {
  std::map<SpeciesIndex, Coefficient> reactants;
  std::map<SpeciesIndex, Coefficient> products;
  std::optional<std::string> label;

  Coefficient reactant(SpeciesIndex i) const;
  Coefficient product(SpeciesIndex i) const;

  bool operator==(const Reaction&) const = default;
};

/// A network with exactly two reactions over species.size() species.
struct BiNetwork {
  std::vector<std::string> species;
  Reaction r1;
  Reaction r2;

  std::size_t species_count() const noexcept { return species.size(); }
  const Reaction& reaction(std::size_t j) const { return j == 0 ? r1 : r2; }

  /// Reactant coefficient of species i in reaction j (j = 0 or 1).
  Coefficient alpha(SpeciesIndex i, std::size_t j) const { return reaction(j).reactant(i); }
  /// Product coefficient of species i in reaction j.
  Coefficient beta(SpeciesIndex i, std::size_t j) const { return reaction(j).product(i); }
  /// Stoichiometric matrix entry beta_ij - alpha_ij.
  Coefficient net_change(SpeciesIndex i, std::size_t j) const { return beta(i, j) - alpha(i, j); }

  bool operator==(const BiNetwork&) const = default;
};

/// Checks the model invariants and throws InvalidNetwork on the first
/// violation: indices in range, nonnegative coefficients, reactant side
/// different from product side, every species used by some reaction.
void validate(const BiNetwork& net);

}  // namespace bistab
