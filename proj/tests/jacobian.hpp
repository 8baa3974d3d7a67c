#pragma once

#include <bistab/bistab.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace bistab::testing {

using Float50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                              boost::multiprecision::et_off>;

struct JacobianSpectrum {
  /// The eigenvalue of largest magnitude (real part).
  double dominant = 0.0;
  /// Largest magnitude among the remaining s-1 eigenvalues.
  double rest = 0.0;
};

/// Eigenvalues of the full s x s mass-action Jacobian at x, assembled
/// entrywise as J_ik = sum_j N_ij k_j alpha_kj x^alpha_j / x_k and solved in
/// 50-digit arithmetic.
inline JacobianSpectrum full_jacobian_spectrum(const BiNetwork& net, const Kappa& kappa, const State& x) {
  using Matrix = Eigen::Matrix<Float50, Eigen::Dynamic, Eigen::Dynamic>;
  const auto s = static_cast<Eigen::Index>(net.species_count());
  std::vector<Float50> rate(2);
  for (std::size_t j = 0; j < 2; ++j) {
    Float50 m = kappa[j];
    for (SpeciesIndex k = 0; k < net.species_count(); ++k) {
      m *= boost::multiprecision::pow(Float50(x[k]), static_cast<int>(net.alpha(k, j)));
    }
    rate[j] = m;
  }
  Matrix J = Matrix::Zero(s, s);
  for (Eigen::Index i = 0; i < s; ++i) {
    for (Eigen::Index k = 0; k < s; ++k) {
      Float50 acc = 0;
      for (std::size_t j = 0; j < 2; ++j) {
        const auto ui = static_cast<SpeciesIndex>(i), uk = static_cast<SpeciesIndex>(k);
        acc += Float50(net.net_change(ui, j)) * rate[j] * Float50(net.alpha(uk, j)) / Float50(x[uk]);
      }
      J(i, k) = acc;
    }
  }
  Eigen::EigenSolver<Matrix> solver(J, false);
  const auto& ev = solver.eigenvalues();
  std::vector<std::pair<double, double>> mags;  // (|lambda|, Re lambda)
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const double re = static_cast<double>(ev(k).real());
    const double im = static_cast<double>(ev(k).imag());
    mags.emplace_back(std::hypot(re, im), re);
  }
  std::sort(mags.begin(), mags.end());
  JacobianSpectrum out;
  out.dominant = mags.back().second;
  out.rest = mags.size() > 1 ? mags[mags.size() - 2].first : 0.0;
  return out;
}

}  // namespace bistab::testing
