#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace bistab {

/// Dense real polynomial with coefficients in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<long double> coefficients);

  static Polynomial linear(long double c0, long double c1) { return Polynomial({c0, c1}); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<long double>& coefficients() const noexcept { return coef_; }

  long double operator()(long double x) const;
  /// Horner value and the sum of absolute term magnitudes at x.
  std::pair<long double, long double> evaluate_with_scale(long double x) const;

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(long double k);
  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
  friend Polynomial operator*(Polynomial lhs, long double k) { return lhs *= k; }

  Polynomial pow(unsigned exponent) const;

 private:
  void trim();
  std::vector<long double> coef_;
};

/// A function value with the magnitude against which "zero" is judged.
struct ScaledValue {
  long double value;
  long double scale;
};

using Evaluator = std::function<ScaledValue(long double)>;

struct IsolatedRoot {
  long double x;
  /// Final bisection bracket; lo == hi == x for roots hit at a partition point.
  long double lo;
  long double hi;
  /// Touching (even multiplicity) or otherwise unresolved multiple root.
  bool multiple = false;
};

struct RootOptions {
  /// |value| <= zero_tolerance * scale counts as zero at partition points.
  long double zero_tolerance = 1e-12L;
  int max_bisections = 200;
};

/// All real roots of p in the closed interval [lo, hi], ascending. The
/// interval is split at the real roots of p' (found recursively), on each
/// piece p is monotone and any sign change is refined by bisection. When
/// `eval` is given it replaces Horner evaluation of p itself for every sign
/// decision; it must describe the same function up to a positive factor.
std::vector<IsolatedRoot> isolate_real_roots(const Polynomial& p, long double lo, long double hi,
                                             const Evaluator& eval = {}, const RootOptions& options = {});

/// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must have
/// strictly opposite signs.
IsolatedRoot bisect_sign_change(const Evaluator& f, long double lo, long double hi, int max_iterations = 200);

}  // namespace bistab
