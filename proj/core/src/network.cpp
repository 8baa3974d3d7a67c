#include "bistab/network.hpp"

#include "bistab/errors.hpp"

#include <string>

namespace bistab {

namespace {

Coefficient lookup(const std::map<SpeciesIndex, Coefficient>& side, SpeciesIndex i) {
  auto it = side.find(i);
  return it == side.end() ? 0 : it->second;
}

// Side equality ignoring explicit zero entries.
bool same_complex(const std::map<SpeciesIndex, Coefficient>& lhs,
                  const std::map<SpeciesIndex, Coefficient>& rhs, std::size_t species) {
  for (SpeciesIndex i = 0; i < species; ++i) {
    if (lookup(lhs, i) != lookup(rhs, i)) return false;
  }
  return true;
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

Coefficient Reaction::reactant(SpeciesIndex i) const { return lookup(reactants, i); }
Coefficient Reaction::product(SpeciesIndex i) const { return lookup(products, i); }

void validate(const BiNetwork& net) {
  const std::size_t s = net.species_count();
  if (s == 0) throw InvalidNetwork("network has no species");

  for (std::size_t j = 0; j < 2; ++j) {
    const Reaction& r = net.reaction(j);
    for (const auto* side : {&r.reactants, &r.products}) {
      for (const auto& [index, coef] : *side) {
        if (index >= s) {
          throw InvalidNetwork("reaction " + std::to_string(j + 1) + " references species index " +
                               std::to_string(index) + " but only " + std::to_string(s) +
                               " species are declared");
        }
        if (coef < 0) {
          throw InvalidNetwork("negative coefficient for species " + net.species[index]);
        }
      }
    }
    if (same_complex(r.reactants, r.products, s)) {
      throw InvalidNetwork("reaction " + std::to_string(j + 1) +
                           ": reactant side equals product side");
    }
  }

  for (SpeciesIndex i = 0; i < s; ++i) {
    if (net.alpha(i, 0) == 0 && net.beta(i, 0) == 0 && net.alpha(i, 1) == 0 &&
        net.beta(i, 1) == 0) {
      throw InvalidNetwork("species " + net.species[i] + " does not occur in either reaction");
    }
  }
}

}  // namespace bistab
