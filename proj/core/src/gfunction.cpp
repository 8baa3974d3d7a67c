#include "bistab/gfunction.hpp"

#include "bistab/errors.hpp"
#include "bistab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bistab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateSlope = 1e-8;

int sign_of(double v) { return (v > 0) - (v < 0); }

// One logarithmic term w * ln(gamma * u(z)) with u = z + d (orientation +1)
// or u = d - z (orientation -1). Passive domain bounds have w = 0.
struct Term {
  double d;
  double w;
  int orientation;
  double log_gamma;
  bool active;

  double u(double z) const { return orientation > 0 ? z + d : d - z; }
  // Pole of the term in z.
  double pole() const { return orientation > 0 ? -d : d; }
};

class GFunction {
 public:
  GFunction(const GeometryParams& gp, const IndexPartition& part) {
    const std::size_t s = part.species_count();
    if (gp.d.size() != s) {
      throw PreconditionError("geometry has " + std::to_string(gp.d.size()) + " shifts for " +
                              std::to_string(s) + " species");
    }
    for (SpeciesIndex i = 0; i < s; ++i) {
      const IndexSet set = part.membership[i];
      if (set == IndexSet::s5) continue;
      Term t;
      t.d = gp.d[i];
      const double a = static_cast<double>(part.a[i]);
      t.w = (set == IndexSet::s1 || set == IndexSet::s3) ? a : -a;
      t.orientation = (set == IndexSet::s1 || set == IndexSet::s4) ? 1 : -1;
      t.log_gamma = std::log(static_cast<double>(part.gamma[i]));
      t.active = true;
      terms_.push_back(t);
    }
    for (SpeciesIndex i : gp.bounded_passive) {
      const int o = part.orientation.at(i);
      if (o == 0) continue;
      terms_.push_back({gp.d.at(i), 0.0, o, 0.0, false});
    }
    for (const Term& t : terms_) {
      if (t.orientation > 0) {
        domain_.lo = std::max(domain_.lo, -t.d);
      } else {
        domain_.hi = std::min(domain_.hi, t.d);
      }
    }
  }

  const Interval& domain() const { return domain_; }

  void require_inside(double z) const {
    if (!domain_.contains(z)) {
      std::ostringstream msg;
      msg << "z = " << z << " outside the domain (" << domain_.lo << ", " << domain_.hi << ")";
      throw DomainError(msg.str());
    }
  }

  double g(double z) const {
    double acc = 0.0;
    for (const Term& t : terms_) {
      if (t.active) acc += t.w * (t.log_gamma + std::log(t.u(z)));
    }
    return acc;
  }

  double dg(double z) const {
    double acc = 0.0;
    for (const Term& t : terms_) {
      if (t.active) acc += t.w * t.orientation / t.u(z);
    }
    return acc;
  }

  double dg_scale(double z) const {
    double acc = 0.0;
    for (const Term& t : terms_) {
      if (t.active) acc += std::fabs(t.w / t.u(z));
    }
    return acc;
  }

  double d2g(double z) const {
    double acc = 0.0;
    for (const Term& t : terms_) {
      if (t.active) {
        const double u = t.u(z);
        acc -= t.w / (u * u);
      }
    }
    return acc;
  }

  // Limit of g (and dg) at one end of the domain. `left` selects L+.
  struct EndLimit {
    Limit g;
    Limit dg;
    bool cancelled = false;  // attaining g-terms with zero net weight
  };

  EndLimit end_limit(bool left) const {
    const double edge = left ? domain_.lo : domain_.hi;
    const int facing = left ? 1 : -1;
    EndLimit out;
    if (std::isinf(edge)) {
      // Every term faces the other way; u ~ |z| for all of them.
      double net = 0.0;
      double finite = 0.0;
      for (const Term& t : terms_) {
        if (!t.active) continue;
        net += t.w;
        finite += t.w * t.log_gamma;
      }
      out.dg = {LimitKind::finite, 0.0};
      if (net > 0) {
        out.g = {LimitKind::pos_inf, 0.0};
      } else if (net < 0) {
        out.g = {LimitKind::neg_inf, 0.0};
      } else {
        out.g = {LimitKind::finite, finite};
      }
      return out;
    }

    double net = 0.0;
    bool any_attaining = false;
    double g_rest = 0.0;
    double dg_rest = 0.0;
    for (const Term& t : terms_) {
      const bool attains = t.orientation == facing && t.pole() == edge;
      if (!t.active) continue;
      if (attains) {
        any_attaining = true;
        net += t.w;
        g_rest += t.w * t.log_gamma;
      } else {
        const double u = t.u(edge);
        g_rest += t.w * (t.log_gamma + std::log(u));
        dg_rest += t.w * t.orientation / u;
      }
    }
    if (net != 0.0) {
      // w ln u -> -inf * sign(w); the derivative w*orientation/u -> sign(w*orientation) inf.
      out.g = {net > 0 ? LimitKind::neg_inf : LimitKind::pos_inf, 0.0};
      out.dg = {net * facing > 0 ? LimitKind::pos_inf : LimitKind::neg_inf, 0.0};
      return out;
    }
    out.cancelled = any_attaining;
    out.g = {LimitKind::finite, g_rest};
    out.dg = {LimitKind::finite, dg_rest};
    return out;
  }

  std::vector<CriticalPoint> critical_points() const {
    if (domain_.empty()) return {};
    // dg = sum_j w_j / (z - p_j) over distinct poles.
    std::map<double, double> poles;
    for (const Term& t : terms_) {
      if (t.active) poles[t.pole()] += t.w;
    }
    std::vector<std::pair<double, double>> pw;
    for (const auto& [p, w] : poles) {
      if (w != 0.0) pw.emplace_back(p, w);
    }
    if (pw.size() < 2) return {};

    double center = 0.0;
    for (const auto& e : pw) center += e.first;
    center /= static_cast<double>(pw.size());
    double half = 0.0;
    for (const auto& e : pw) half = std::max(half, std::fabs(e.first - center));
    if (half == 0.0) half = 1.0;

    std::vector<long double> q(pw.size());
    std::vector<long double> w(pw.size());
    for (std::size_t j = 0; j < pw.size(); ++j) {
      q[j] = (static_cast<long double>(pw[j].first) - center) / half;
      w[j] = pw[j].second;
    }

    // Numerator P(t) = sum_j w_j prod_{k != j} (t - q_k).
    Polynomial numerator;
    for (std::size_t j = 0; j < q.size(); ++j) {
      Polynomial term({w[j]});
      for (std::size_t k = 0; k < q.size(); ++k) {
        if (k != j) term *= Polynomial::linear(-q[k], 1.0L);
      }
      numerator += term;
    }
    if (numerator.degree() <= 0) return {};

    const Evaluator product_form = [&q, &w](long double t) {
      long double value = 0.0L;
      long double scale = 0.0L;
      for (std::size_t j = 0; j < q.size(); ++j) {
        long double prod = w[j];
        for (std::size_t k = 0; k < q.size(); ++k) {
          if (k != j) prod *= (t - q[k]);
        }
        value += prod;
        scale += std::fabs(prod);
      }
      return ScaledValue{value, scale};
    };

    long double t_lo = std::isinf(domain_.lo) ? 0.0L : (static_cast<long double>(domain_.lo) - center) / half;
    long double t_hi = std::isinf(domain_.hi) ? 0.0L : (static_cast<long double>(domain_.hi) - center) / half;
    if (std::isinf(domain_.lo) || std::isinf(domain_.hi)) {
      const auto& c = numerator.coefficients();
      long double bound = 0.0L;
      for (std::size_t k = 0; k + 1 < c.size(); ++k) bound = std::max(bound, std::fabs(c[k] / c.back()));
      bound += 1.0L;
      if (std::isinf(domain_.lo)) t_lo = -bound - 1.0L;
      if (std::isinf(domain_.hi)) t_hi = bound + 1.0L;
    }
    if (!(t_lo < t_hi)) return {};

    std::vector<CriticalPoint> out;
    for (const IsolatedRoot& r : isolate_real_roots(numerator, t_lo, t_hi, product_form)) {
      const double z = static_cast<double>(center + half * r.x);
      if (!domain_.contains(z)) continue;
      CriticalPoint cp;
      cp.z = z;
      cp.lo = std::max(domain_.lo, static_cast<double>(center + half * r.lo));
      cp.hi = std::min(domain_.hi, static_cast<double>(center + half * r.hi));
      cp.multiple = r.multiple;
      out.push_back(cp);
    }
    return out;
  }

  // A point strictly inside (lo, hi) for sampling the sign of dg.
  static double interior_point(double lo, double hi, double fraction) {
    if (std::isinf(lo) && std::isinf(hi)) return 0.0;
    if (std::isinf(lo)) return hi - std::max(1.0, std::fabs(hi));
    if (std::isinf(hi)) return lo + std::max(1.0, std::fabs(lo));
    return lo + (hi - lo) * fraction;
  }

  int direction_on(double lo, double hi) const {
    for (double f : {0.5, 0.25, 0.75, 0.1, 0.9}) {
      const double z = interior_point(lo, hi, f);
      if (!(lo < z && z < hi)) continue;
      const double v = dg(z);
      if (std::fabs(v) > 1e-14 * dg_scale(z)) return sign_of(v);
    }
    return 0;
  }

  std::vector<MonotonePiece> monotone_pieces() const {
    std::vector<MonotonePiece> pieces;
    if (domain_.empty()) return pieces;
    std::vector<double> cuts{domain_.lo};
    for (const CriticalPoint& cp : critical_points()) {
      if (!cp.multiple) cuts.push_back(cp.z);
    }
    cuts.push_back(domain_.hi);

    const EndLimit left = end_limit(true);
    const EndLimit right = end_limit(false);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      MonotonePiece piece;
      piece.lo = cuts[k];
      piece.hi = cuts[k + 1];
      piece.direction = direction_on(piece.lo, piece.hi);
      piece.g_lo = k == 0 ? left.g.as_double() : g(piece.lo);
      piece.g_hi = k + 2 == cuts.size() ? right.g.as_double() : g(piece.hi);
      if (piece.direction == 0) piece.direction = sign_of(piece.g_hi - piece.g_lo);
      pieces.push_back(piece);
    }
    // Adjacent pieces with the same direction come from sign-preserving
    // roots that the isolation reported as simple; merge them.
    std::vector<MonotonePiece> merged;
    for (const MonotonePiece& p : pieces) {
      if (!merged.empty() && merged.back().direction == p.direction) {
        merged.back().hi = p.hi;
        merged.back().g_hi = p.g_hi;
      } else {
        merged.push_back(p);
      }
    }
    return merged;
  }

  // Root of g - K on the open piece, whose end signs are known.
  LevelRoot bisect(const MonotonePiece& piece, double K) const {
    const int s_lo = sign_of(piece.g_lo - K);
    const int s_hi = sign_of(piece.g_hi - K);
    double lo = piece.lo;
    double hi = piece.hi;
    if (std::isinf(lo)) {
      double step = std::max(1.0, std::fabs(hi));
      double x = hi - step;
      while (sign_of(g(x) - K) != s_lo) {
        hi = x;
        step *= 2.0;
        x = hi - step;
        if (std::isinf(x)) throw ConstructionFailed("level root escapes to -infinity");
      }
      lo = x;
    } else if (std::isinf(hi)) {
      double step = std::max(1.0, std::fabs(lo));
      double x = lo + step;
      while (sign_of(g(x) - K) != s_hi) {
        lo = x;
        step *= 2.0;
        x = lo + step;
        if (std::isinf(x)) throw ConstructionFailed("level root escapes to +infinity");
      }
      hi = x;
    }
    for (int it = 0; it < 400; ++it) {
      const double mid = lo + (hi - lo) / 2;
      if (mid <= lo || mid >= hi) break;
      const int s = sign_of(g(mid) - K);
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == s_lo ? lo : hi) = mid;
    }
    LevelRoot root;
    root.z = lo == hi ? lo : lo + (hi - lo) / 2;
    root.lo = lo;
    root.hi = hi;
    root.sign_lo = s_lo;
    root.sign_hi = s_hi;
    root.dg = dg(root.z);
    root.slope = piece.direction;
    root.degenerate = std::fabs(root.dg) < kDegenerateSlope;
    return root;
  }

  RootReport solve(double K) const {
    RootReport report;
    if (domain_.empty()) return report;
    const auto pieces = monotone_pieces();
    bool all_flat = true;
    for (const Term& t : terms_) {
      if (t.active && t.w != 0.0) all_flat = false;
    }
    if (all_flat || (pieces.size() == 1 && pieces[0].direction == 0)) {
      report.g_constant = true;
      return report;
    }

    const double tol = 1e-12 * std::max(1.0, std::fabs(K));
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const MonotonePiece& p = pieces[k];
      if (k > 0 && std::fabs(p.g_lo - K) <= tol) {
        LevelRoot r;
        r.z = r.lo = r.hi = p.lo;
        r.dg = dg(p.lo);
        r.slope = 0;
        r.degenerate = true;
        r.sign_lo = r.sign_hi = 0;
        report.roots.push_back(r);
      }
      const double a = p.g_lo - K;
      const double b = p.g_hi - K;
      if (std::fabs(a) <= tol || std::fabs(b) <= tol) continue;
      if (sign_of(a) * sign_of(b) < 0) report.roots.push_back(bisect(p, K));
    }
    return report;
  }

 private:
  std::vector<Term> terms_;
  Interval domain_;
};

}  // namespace

bool Interval::bounded() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }

double Limit::as_double() const noexcept {
  switch (kind) {
    case LimitKind::finite: return value;
    case LimitKind::pos_inf: return kInf;
    case LimitKind::neg_inf: return -kInf;
    case LimitKind::indeterminate: break;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Interval domain_interval(const GeometryParams& gp, const IndexPartition& part) {
  return GFunction(gp, part).domain();
}

double eval_g(const GeometryParams& gp, const IndexPartition& part, double z) {
  GFunction g(gp, part);
  g.require_inside(z);
  return g.g(z);
}

double eval_dg(const GeometryParams& gp, const IndexPartition& part, double z) {
  GFunction g(gp, part);
  g.require_inside(z);
  return g.dg(z);
}

double eval_d2g(const GeometryParams& gp, const IndexPartition& part, double z) {
  GFunction g(gp, part);
  g.require_inside(z);
  return g.d2g(z);
}

BoundaryLimits boundary_limits(const GeometryParams& gp, const IndexPartition& part) {
  GFunction g(gp, part);
  if (g.domain().empty()) throw PreconditionError("boundary_limits: empty domain");
  BoundaryLimits out;
  auto fill = [](const auto& end, Limit& gl, Limit& dgl) {
    if (end.cancelled) {
      gl = {LimitKind::indeterminate, 0.0};
      dgl = {LimitKind::indeterminate, 0.0};
    } else {
      gl = end.g;
      dgl = end.dg;
    }
  };
  fill(g.end_limit(true), out.g_left, out.dg_left);
  fill(g.end_limit(false), out.g_right, out.dg_right);
  return out;
}

std::vector<CriticalPoint> critical_points(const GeometryParams& gp, const IndexPartition& part) {
  return GFunction(gp, part).critical_points();
}

std::vector<MonotonePiece> monotone_pieces(const GeometryParams& gp, const IndexPartition& part) {
  return GFunction(gp, part).monotone_pieces();
}

RootReport solve_level(const GeometryParams& gp, const IndexPartition& part, double K) {
  return GFunction(gp, part).solve(K);
}

std::size_t RootReport::count_slope(int sign, bool include_degenerate) const {
  return static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [&](const LevelRoot& r) {
    return r.slope == sign && (include_degenerate || !r.degenerate);
  }));
}

std::size_t count_negative_crossings(const std::vector<MonotonePiece>& pieces, double K) {
  std::size_t n = 0;
  for (const MonotonePiece& p : pieces) {
    if (p.direction < 0 && p.g_hi < K && K < p.g_lo) ++n;
  }
  return n;
}

LevelChoice best_level(const std::vector<MonotonePiece>& pieces, double min_width) {
  std::vector<double> levels;
  for (const MonotonePiece& p : pieces) {
    if (std::isfinite(p.g_lo)) levels.push_back(p.g_lo);
    if (std::isfinite(p.g_hi)) levels.push_back(p.g_hi);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  LevelChoice best;
  bool have = false;
  auto consider = [&](double K, double width) {
    const std::size_t n = count_negative_crossings(pieces, K);
    const bool better = !have || n > best.negative_crossings ||
                        (n == best.negative_crossings &&
                         (std::isinf(best.range_width) ? std::isfinite(width) || false
                                                       : std::isfinite(width) && width > best.range_width));
    if (better) {
      best = {K, n, width};
      have = true;
    }
  };

  if (levels.empty()) {
    consider(0.0, kInf);
    return best;
  }
  consider(levels.front() - std::max(1.0, std::fabs(levels.front())), kInf);
  consider(levels.back() + std::max(1.0, std::fabs(levels.back())), kInf);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const double mid = levels[k] + (levels[k + 1] - levels[k]) / 2;
    const double width = levels[k + 1] - levels[k];
    if (width < min_width * (1.0 + std::fabs(mid))) continue;
    consider(mid, width);
  }
  return best;
}

}  // namespace bistab
