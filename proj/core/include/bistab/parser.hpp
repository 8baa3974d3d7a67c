#pragma once

#include "bistab/network.hpp"

#include <string>
#include <string_view>

namespace bistab {

/// Parses the two-reaction text format:
///
///     # comment
///     [label:] [n] A + [n] B -> [n] C + ...
///
/// Reactions are separated by newlines or ';'. A side consisting of the
/// single token `0` is the empty complex. Species are numbered in order of
/// first appearance. Throws ParseError with a 1-based line/column.
BiNetwork parse_network(std::string_view text);

/// Canonical text: one reaction per line, single spaces, coefficient 1
/// elided, terms in species order.
std::string serialize_network(const BiNetwork& net);

/// Renders a single side ("2 X1 + X2", or "0" when empty).
std::string format_complex(const BiNetwork& net, const std::map<SpeciesIndex, Coefficient>& side);

}  // namespace bistab
