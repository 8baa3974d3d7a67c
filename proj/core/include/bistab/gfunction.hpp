#pragma once

#include "bistab/stoich.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace bistab {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double z) const noexcept { return lo < z && z < hi; }
  bool empty() const noexcept { return !(lo < hi); }
  bool bounded() const noexcept;
  double width() const noexcept { return hi - lo; }
};

/// Parameters of the level-set problem g(z) = K.
///
/// Each species i with x_i = (beta_i1 - alpha_i1)(z + mu_i) carries a shift
/// d_i = mu_i for S1, S4 and d_i = -mu_i for S2, S3. Passive species use the
/// same convention keyed on their orientation: d_i = mu_i when x_i grows
/// with z, d_i = -mu_i otherwise. Entries for folded species are ignored.
struct GeometryParams {
  std::vector<double> d;
  double K = 0.0;
  Rational lambda{-1};
  /// Sum over folded species of (alpha_i1 - alpha_i2) ln x_i; the full
  /// steady-state condition reads g(z) + folded_offset = ln(-lambda k2/k1).
  double folded_offset = 0.0;
  /// Passive species whose shift bounds the domain. Empty for geometries
  /// built before the back-map assigns them.
  std::vector<SpeciesIndex> bounded_passive;
  /// x_i of species that neither reaction vector moves (N_i1 = 0), indexed
  /// by species; empty means 1 for all of them.
  std::vector<double> fixed_x;
};

/// Domain of g: L = max over S1 u S4 of -d_i, R = min over S2 u S3 of d_i,
/// further narrowed by any passive species listed in gp.bounded_passive.
Interval domain_interval(const GeometryParams& gp, const IndexPartition& part);

double eval_g(const GeometryParams& gp, const IndexPartition& part, double z);
double eval_dg(const GeometryParams& gp, const IndexPartition& part, double z);
double eval_d2g(const GeometryParams& gp, const IndexPartition& part, double z);

enum class LimitKind : std::uint8_t { finite, pos_inf, neg_inf, indeterminate };

struct Limit {
  LimitKind kind = LimitKind::finite;
  double value = 0.0;  // meaningful for finite limits

  bool is_infinite() const noexcept { return kind == LimitKind::pos_inf || kind == LimitKind::neg_inf; }
  /// +-inf or the finite value; NaN when indeterminate.
  double as_double() const noexcept;
};

struct BoundaryLimits {
  Limit g_left;
  Limit dg_left;
  Limit g_right;
  Limit dg_right;
};

BoundaryLimits boundary_limits(const GeometryParams& gp, const IndexPartition& part);

struct CriticalPoint {
  double z;
  /// Bracket in which dg/dz changes sign (degenerate for touching roots).
  double lo;
  double hi;
  /// dg/dz touches zero without changing sign (or cannot be resolved).
  bool multiple = false;
};

/// Roots of dg/dz in the open domain, ascending.
std::vector<CriticalPoint> critical_points(const GeometryParams& gp, const IndexPartition& part);

/// Maximal open sub-interval on which g is strictly monotone.
struct MonotonePiece {
  double lo;
  double hi;
  /// +1 increasing, -1 decreasing.
  int direction;
  /// Value (or limit) of g at lo+ and hi-.
  double g_lo;
  double g_hi;
};

std::vector<MonotonePiece> monotone_pieces(const GeometryParams& gp, const IndexPartition& part);

struct LevelRoot {
  double z;
  /// Sign of dg/dz at z: +1, -1, or 0 for a root at a critical point.
  int slope;
  double dg;
  /// |dg| < 1e-8, or the root sits on a critical value.
  bool degenerate = false;
  /// Sign-change certificate: g - K has sign sign_lo at lo and sign_hi at hi.
  double lo;
  double hi;
  int sign_lo;
  int sign_hi;
};

struct RootReport {
  std::vector<LevelRoot> roots;
  /// dg vanishes identically (all g-terms cancel); no roots are reported.
  bool g_constant = false;

  std::size_t count_slope(int sign, bool include_degenerate = false) const;
};

/// All solutions of g(z) = K in the domain, ascending.
RootReport solve_level(const GeometryParams& gp, const IndexPartition& part, double K);

struct LevelChoice {
  double K = 0.0;
  /// Number of decreasing pieces whose open range contains K.
  std::size_t negative_crossings = 0;
  /// Width of the level range K was taken from (infinite when unbounded).
  double range_width = 0.0;
};

/// Number of decreasing pieces whose open value range contains K.
std::size_t count_negative_crossings(const std::vector<MonotonePiece>& pieces, double K);

/// Scans the level ranges delimited by the piece end values and returns the
/// midpoint of a range with the most negative-slope crossings; ties prefer
/// finite ranges, then wider ones. Ranges narrower than
/// min_width * (1 + |level|) are skipped.
LevelChoice best_level(const std::vector<MonotonePiece>& pieces, double min_width = 1e-9);

}  // namespace bistab
