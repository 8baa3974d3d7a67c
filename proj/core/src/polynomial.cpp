#include "bistab/polynomial.hpp"

#include "bistab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bistab {

Polynomial::Polynomial(std::vector<long double> coefficients) : coef_(std::move(coefficients)) { trim(); }

void Polynomial::trim() {
  while (!coef_.empty() && coef_.back() == 0.0L) coef_.pop_back();
}

long double Polynomial::operator()(long double x) const {
  long double acc = 0.0L;
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<long double, long double> Polynomial::evaluate_with_scale(long double x) const {
  long double acc = 0.0L;
  long double mag = 0.0L;
  const long double ax = std::fabs(x);
  for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) {
    acc = acc * x + *it;
    mag = mag * ax + std::fabs(*it);
  }
  return {acc, mag};
}

Polynomial Polynomial::derivative() const {
  if (coef_.size() <= 1) return {};
  std::vector<long double> d(coef_.size() - 1);
  for (std::size_t k = 1; k < coef_.size(); ++k) d[k - 1] = coef_[k] * static_cast<long double>(k);
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coef_.size() > coef_.size()) coef_.resize(rhs.coef_.size(), 0.0L);
  for (std::size_t k = 0; k < rhs.coef_.size(); ++k) coef_[k] += rhs.coef_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (coef_.empty() || rhs.coef_.empty()) {
    coef_.clear();
    return *this;
  }
  std::vector<long double> out(coef_.size() + rhs.coef_.size() - 1, 0.0L);
  for (std::size_t i = 0; i < coef_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coef_.size(); ++j) out[i + j] += coef_[i] * rhs.coef_[j];
  }
  coef_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(long double k) {
  for (auto& c : coef_) c *= k;
  trim();
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result({1.0L});
  for (unsigned k = 0; k < exponent; ++k) result *= *this;
  return result;
}

namespace {

int sign_of(long double v) { return (v > 0) - (v < 0); }

std::vector<IsolatedRoot> isolate(const Polynomial& p, long double lo, long double hi, const Evaluator& eval,
                                  const RootOptions& options) {
  const int deg = p.degree();
  if (deg < 0) throw PreconditionError("isolate_real_roots: zero polynomial");
  if (deg == 0) return {};

  const Evaluator horner = [&p](long double x) {
    auto [v, s] = p.evaluate_with_scale(x);
    return ScaledValue{v, s};
  };
  const Evaluator& f = eval ? eval : horner;

  std::vector<long double> points{lo};
  if (deg >= 2) {
    RootOptions inner = options;
    // Extra partition points are harmless, missing ones are not.
    inner.zero_tolerance = std::max(options.zero_tolerance, 1e-10L);
    for (const auto& r : isolate(p.derivative(), lo, hi, {}, inner)) {
      if (r.x > lo && r.x < hi && r.x > points.back()) points.push_back(r.x);
    }
  }
  if (hi > points.back()) points.push_back(hi);

  std::vector<ScaledValue> values;
  std::vector<int> signs;
  values.reserve(points.size());
  for (long double x : points) {
    ScaledValue v = f(x);
    values.push_back(v);
    const bool zero = std::fabs(v.value) <= options.zero_tolerance * v.scale;
    signs.push_back(zero ? 0 : sign_of(v.value));
  }

  std::vector<IsolatedRoot> roots;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (signs[k] == 0) {
      const bool interior = k > 0 && k + 1 < points.size();
      roots.push_back({points[k], points[k], points[k], interior});
    }
    if (k + 1 < points.size() && signs[k] * signs[k + 1] < 0) {
      roots.push_back(bisect_sign_change(f, points[k], points[k + 1], options.max_bisections));
    }
  }
  return roots;
}

}  // namespace

std::vector<IsolatedRoot> isolate_real_roots(const Polynomial& p, long double lo, long double hi,
                                             const Evaluator& eval, const RootOptions& options) {
  if (!(lo <= hi)) throw PreconditionError("isolate_real_roots: requires lo <= hi");
  return isolate(p, lo, hi, eval, options);
}

IsolatedRoot bisect_sign_change(const Evaluator& f, long double lo, long double hi, int max_iterations) {
  int s_lo = sign_of(f(lo).value);
  for (int it = 0; it < max_iterations; ++it) {
    const long double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const int s_mid = sign_of(f(mid).value);
    if (s_mid == 0) return {mid, mid, mid, false};
    if (s_mid == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo + (hi - lo) / 2, lo, hi, false};
}

}  // namespace bistab
