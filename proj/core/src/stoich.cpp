#include "bistab/stoich.hpp"

#include "bistab/errors.hpp"

#include <cstdlib>
#include <string>

namespace bistab {

std::vector<SpeciesIndex> StoichData::conserved_species() const {
  std::vector<SpeciesIndex> out;
  for (SpeciesIndex i = 0; i < N.size(); ++i) {
    if (i != pivot) out.push_back(i);
  }
  return out;
}

StoichData stoich_data(const BiNetwork& net) {
  const std::size_t s = net.species_count();
  StoichData sd;
  sd.N.resize(s);
  for (SpeciesIndex i = 0; i < s; ++i) {
    sd.N[i] = {net.net_change(i, 0), net.net_change(i, 1)};
  }

  bool found = false;
  for (SpeciesIndex i = 0; i < s; ++i) {
    if (sd.N[i][0] != 0) {
      sd.pivot = i;
      found = true;
      break;
    }
  }
  if (!found) return sd;

  const Rational lambda(sd.N[sd.pivot][1], sd.N[sd.pivot][0]);
  for (SpeciesIndex i = 0; i < s; ++i) {
    if (Rational(sd.N[i][1]) != lambda * sd.N[i][0]) return sd;
  }
  if (lambda == Rational(0)) return sd;  // column 2 zero: excluded by validate()

  sd.lambda = lambda;
  sd.rank_ok = true;
  sd.W = conservation_rows(sd);
  return sd;
}

std::vector<std::vector<Rational>> conservation_rows(const StoichData& sd) {
  if (!sd.rank_ok) throw PreconditionError("conservation_rows: stoichiometric subspace is not one-dimensional");
  const std::size_t s = sd.species_count();
  const SpeciesIndex p = sd.pivot;
  std::vector<std::vector<Rational>> rows;
  rows.reserve(s - 1);
  for (SpeciesIndex i : sd.conserved_species()) {
    std::vector<Rational> row(s, Rational(0));
    row[p] = Rational(sd.N[i][0]);
    row[i] = Rational(-sd.N[p][0]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> canonical_totals(const StoichData& sd, const std::vector<std::vector<Rational>>& rows,
                                     const std::vector<double>& totals) {
  const auto W = conservation_rows(sd);
  if (rows.size() != W.size() || totals.size() != W.size()) {
    throw PreconditionError("canonical_totals: expected " + std::to_string(W.size()) + " rows");
  }
  std::vector<double> out;
  for (std::size_t r = 0; r < W.size(); ++r) {
    if (rows[r].size() != W[r].size()) throw PreconditionError("canonical_totals: row has the wrong length");
    std::optional<Rational> factor;
    bool proportional = true;
    for (std::size_t k = 0; k < W[r].size() && proportional; ++k) {
      const Rational given = rows[r][k];
      const Rational want = W[r][k];
      if (given == Rational(0) || want == Rational(0)) {
        proportional = given == want;
        continue;
      }
      const Rational f = want / given;
      proportional = !factor || *factor == f;
      factor = f;
    }
    if (!proportional || !factor) {
      throw PreconditionError("canonical_totals: row " + std::to_string(r + 1) + " is not a multiple of the conservation row");
    }
    out.push_back(boost::rational_cast<double>(*factor) * totals[r]);
  }
  return out;
}

std::string_view to_string(IndexSet set) {
  switch (set) {
    case IndexSet::s1: return "S1";
    case IndexSet::s2: return "S2";
    case IndexSet::s3: return "S3";
    case IndexSet::s4: return "S4";
    case IndexSet::s5: return "S5";
  }
  return "?";
}

std::string_view to_string(ApplicabilityStatus status) {
  switch (status) {
    case ApplicabilityStatus::ok: return "ok";
    case ApplicabilityStatus::lambda_nonnegative: return "lambda_nonnegative";
    case ApplicabilityStatus::degenerate_constant_g: return "degenerate_constant_g";
    case ApplicabilityStatus::not_one_dimensional: return "not_one_dimensional";
  }
  return "?";
}

std::size_t IndexPartition::active_count() const {
  std::size_t n = 0;
  for (int k = 1; k <= 4; ++k) n += S(k).size();
  return n;
}

IndexPartition partition_indices(const BiNetwork& net) {
  const std::size_t s = net.species_count();
  IndexPartition part;
  part.membership.resize(s);
  part.a.resize(s);
  part.gamma.resize(s);
  part.orientation.resize(s);
  for (SpeciesIndex i = 0; i < s; ++i) {
    const Coefficient a1 = net.alpha(i, 0);
    const Coefficient a2 = net.alpha(i, 1);
    const Coefficient b1 = net.beta(i, 0);
    part.a[i] = std::llabs(a1 - a2);
    part.gamma[i] = std::llabs(b1 - a1);
    part.orientation[i] = (b1 > a1) - (b1 < a1);

    IndexSet set = IndexSet::s5;
    if (a1 != a2 && b1 != a1) {
      if (a1 > a2) {
        set = b1 > a1 ? IndexSet::s1 : IndexSet::s3;
      } else {
        set = b1 < a1 ? IndexSet::s2 : IndexSet::s4;
      }
    }
    part.membership[i] = set;
    part.sets[static_cast<std::size_t>(set)].push_back(i);
  }
  return part;
}

std::pair<IndexPartition, Applicability> reduce_s5(const BiNetwork& net, const StoichData& sd) {
  if (!sd.rank_ok) throw PreconditionError("reduce_s5: stoichiometric subspace is not one-dimensional");
  IndexPartition part = partition_indices(net);
  for (SpeciesIndex i : part.S(5)) {
    if (part.a[i] == 0) {
      part.passive.push_back(i);
    } else {
      part.folded.push_back({i, net.alpha(i, 0) - net.alpha(i, 1)});
    }
  }
  part.S(5).clear();
  part.reduced = true;

  Applicability app;
  if (*sd.lambda > Rational(0)) {
    app.status = ApplicabilityStatus::lambda_nonnegative;
  } else if (part.active_count() == 0) {
    app.status = ApplicabilityStatus::degenerate_constant_g;
  }
  return {std::move(part), app};
}

Structure analyze_structure(const BiNetwork& net) {
  Structure st;
  st.stoich = stoich_data(net);
  if (!st.stoich.rank_ok) {
    st.partition = partition_indices(net);
    st.applicability.status = ApplicabilityStatus::not_one_dimensional;
    return st;
  }
  auto [part, app] = reduce_s5(net, st.stoich);
  st.partition = std::move(part);
  st.applicability = app;
  return st;
}

}  // namespace bistab
