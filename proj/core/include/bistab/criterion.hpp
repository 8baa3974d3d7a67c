#pragma once

#include "bistab/stoich.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bistab {

/// Which branch of the coefficient criterion decided the verdict.
enum class TheoremCase : std::uint8_t { a, b1, b2, b3, b4, c1, c2, c_other_pair, d, not_applicable };

std::string_view to_string(TheoremCase c);

struct Verdict {
  bool multistable = false;
  TheoremCase theorem_case = TheoremCase::not_applicable;
  /// Species indices of the S1* / S2* subset for cases b3, b4, c1, c2.
  std::optional<std::vector<SpeciesIndex>> cert_subset;
  /// Human-readable instance of the inequality that was tested, e.g.
  /// "sum_S1(a)=3 > min_S4(a)=1".
  std::string cert_inequality;
  /// The integers of that inequality, left to right.
  std::vector<std::int64_t> cert_values;
  /// True when the certificate is stated on the S2/S3 side (the z -> -z
  /// image of the S1/S4 statement): case a second disjunct, b2, b4, c2.
  bool mirrored = false;
};

/// Decides multistability from the reduced partition.
Verdict decide(const IndexPartition& part, const Applicability& app);

/// Finds a subset of `values` whose sum lies strictly between lo and hi.
/// Returns positions into `values`, lexicographically smallest by position
/// among all qualifying subsets; the empty subset qualifies iff lo < 0 < hi.
std::optional<std::vector<std::size_t>> subset_in_open_interval(std::span<const std::int64_t> values,
                                                                std::int64_t lo, std::int64_t hi);

}  // namespace bistab
