#include "bistab/criterion.hpp"

#include "bistab/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bistab {

namespace {

std::int64_t sum_a(const IndexPartition& part, const std::vector<SpeciesIndex>& set) {
  std::int64_t total = 0;
  for (SpeciesIndex i : set) total += part.a[i];
  return total;
}

std::int64_t min_a(const IndexPartition& part, const std::vector<SpeciesIndex>& set) {
  std::int64_t m = part.a.at(set.front());
  for (SpeciesIndex i : set) m = std::min(m, part.a[i]);
  return m;
}

std::string set_name(int k) { return "S" + std::to_string(k); }

// sum_{S_sum} a > min_{S_min} a
Verdict sum_exceeds_min(const IndexPartition& part, int sum_set, int min_set, TheoremCase c, bool mirrored) {
  const std::int64_t lhs = sum_a(part, part.S(sum_set));
  const std::int64_t rhs = min_a(part, part.S(min_set));
  Verdict v;
  v.theorem_case = c;
  v.multistable = lhs > rhs;
  v.mirrored = mirrored;
  v.cert_values = {lhs, rhs};
  std::ostringstream text;
  text << "sum_" << set_name(sum_set) << "(a)=" << lhs << (v.multistable ? " > " : " <= ") << "min_"
       << set_name(min_set) << "(a)=" << rhs;
  v.cert_inequality = text.str();
  return v;
}

// sum_{S_outer} a > sum_{subset of S_inner} a > min_{S_outer} a
Verdict subset_between(const IndexPartition& part, int inner_set, int outer_set, TheoremCase c, bool mirrored) {
  const auto& inner = part.S(inner_set);
  const std::int64_t hi = sum_a(part, part.S(outer_set));
  const std::int64_t lo = min_a(part, part.S(outer_set));
  std::vector<std::int64_t> values;
  values.reserve(inner.size());
  for (SpeciesIndex i : inner) values.push_back(part.a[i]);

  Verdict v;
  v.theorem_case = c;
  v.mirrored = mirrored;
  const std::string star = set_name(inner_set) + "*";
  std::ostringstream text;
  if (lo < hi) {
    if (auto picked = subset_in_open_interval(values, lo, hi)) {
      std::vector<SpeciesIndex> subset;
      std::int64_t mid = 0;
      for (std::size_t k : *picked) {
        subset.push_back(inner[k]);
        mid += values[k];
      }
      v.multistable = true;
      v.cert_subset = std::move(subset);
      v.cert_values = {hi, mid, lo};
      text << "sum_" << set_name(outer_set) << "(a)=" << hi << " > sum_" << star << "(a)=" << mid << " > min_"
           << set_name(outer_set) << "(a)=" << lo;
      v.cert_inequality = text.str();
      return v;
    }
  }
  v.multistable = false;
  v.cert_values = {hi, lo};
  text << "no subset " << star << " of " << set_name(inner_set) << " with sum_" << set_name(outer_set)
       << "(a)=" << hi << " > sum_" << star << "(a) > min_" << set_name(outer_set) << "(a)=" << lo;
  v.cert_inequality = text.str();
  return v;
}

}  // namespace

std::string_view to_string(TheoremCase c) {
  switch (c) {
    case TheoremCase::a: return "a";
    case TheoremCase::b1: return "b1";
    case TheoremCase::b2: return "b2";
    case TheoremCase::b3: return "b3";
    case TheoremCase::b4: return "b4";
    case TheoremCase::c1: return "c1";
    case TheoremCase::c2: return "c2";
    case TheoremCase::c_other_pair: return "c_other_pair";
    case TheoremCase::d: return "d";
    case TheoremCase::not_applicable: return "not_applicable";
  }
  return "?";
}

Verdict decide(const IndexPartition& part, const Applicability& app) {
  if (!app.ok()) {
    Verdict v;
    v.theorem_case = TheoremCase::not_applicable;
    v.cert_inequality = "not applicable: " + std::string(to_string(app.status));
    return v;
  }

  const bool n1 = !part.S(1).empty();
  const bool n2 = !part.S(2).empty();
  const bool n3 = !part.S(3).empty();
  const bool n4 = !part.S(4).empty();
  const int count = int(n1) + int(n2) + int(n3) + int(n4);

  switch (count) {
    case 4: {
      Verdict first = sum_exceeds_min(part, 1, 4, TheoremCase::a, false);
      if (first.multistable) return first;
      Verdict second = sum_exceeds_min(part, 2, 3, TheoremCase::a, true);
      if (second.multistable) return second;
      first.cert_inequality += " and " + second.cert_inequality;
      first.cert_values.insert(first.cert_values.end(), second.cert_values.begin(), second.cert_values.end());
      return first;
    }
    case 3:
      if (!n2) return sum_exceeds_min(part, 1, 4, TheoremCase::b1, false);
      if (!n1) return sum_exceeds_min(part, 2, 3, TheoremCase::b2, true);
      if (!n4) return subset_between(part, 2, 3, TheoremCase::b3, false);
      return subset_between(part, 1, 4, TheoremCase::b4, true);
    case 2:
      if (n2 && n3) return subset_between(part, 2, 3, TheoremCase::c1, false);
      if (n1 && n4) return subset_between(part, 1, 4, TheoremCase::c2, true);
      {
        Verdict v;
        v.theorem_case = TheoremCase::c_other_pair;
        v.cert_inequality = "nonempty pair is neither {S2,S3} nor {S1,S4}";
        return v;
      }
    case 1: {
      Verdict v;
      v.theorem_case = TheoremCase::d;
      v.cert_inequality = "only one of S1..S4 is nonempty";
      return v;
    }
    default:
      throw PreconditionError("decide: no active species despite applicable status");
  }
}

std::optional<std::vector<std::size_t>> subset_in_open_interval(std::span<const std::int64_t> values,
                                                                std::int64_t lo, std::int64_t hi) {
  if (lo >= hi) throw PreconditionError("subset_in_open_interval: requires lo < hi");
  const std::size_t n = values.size();
  for (std::int64_t v : values) {
    if (v <= 0) throw PreconditionError("subset_in_open_interval: values must be positive");
  }
  if (lo < 0 && 0 < hi) return std::vector<std::size_t>{};

  const std::int64_t total = std::accumulate(values.begin(), values.end(), std::int64_t{0});
  const auto width = static_cast<std::size_t>(total + 1);
  // reach[k][t]: some subset of positions k..n-1 sums to t.
  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(width, 0));
  reach[n][0] = 1;
  for (std::size_t k = n; k-- > 0;) {
    const auto v = static_cast<std::size_t>(values[k]);
    for (std::size_t t = 0; t < width; ++t) {
      reach[k][t] = reach[k + 1][t] || (t >= v && reach[k + 1][t - v]);
    }
  }

  auto completes = [&](std::size_t from, std::int64_t base) {
    for (std::size_t t = 0; t < width; ++t) {
      if (!reach[from][t]) continue;
      const std::int64_t sum = base + static_cast<std::int64_t>(t);
      if (lo < sum && sum < hi) return true;
    }
    return false;
  };

  // Greedy walk in lexicographic order: a proper prefix sorts first, so stop
  // as soon as the running sum qualifies; otherwise take the smallest next
  // position from which a qualifying completion is still reachable.
  std::vector<std::size_t> chosen;
  std::int64_t sum = 0;
  std::size_t next = 0;
  while (true) {
    bool extended = false;
    for (std::size_t k = next; k < n; ++k) {
      if (completes(k + 1, sum + values[k])) {
        chosen.push_back(k);
        sum += values[k];
        next = k + 1;
        extended = true;
        break;
      }
    }
    if (!extended) return std::nullopt;
    if (lo < sum && sum < hi) return chosen;
  }
}

}  // namespace bistab
