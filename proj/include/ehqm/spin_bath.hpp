#pragma once

// Spin bath of N spin-1/2 with H_B = alpha S_z and h_B = S_z + N/2.
// Level m = 0..N has multiplicity C(N, m), energy alpha (m - N/2) and
// h_B eigenvalue m. Thermal weights are accumulated in log space.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehqm {

/// k_B / hbar in ns^-1 K^-1 (CODATA 2018: k_B = 1.380649e-23 J/K,
/// hbar = 1.054571817e-34 J s).
inline constexpr double kBoltzmannOverHbar = 1.380649e-23 / 1.054571817e-34 * 1e-9;

/// alpha is quoted in ps^-1; internal frequencies are ns^-1.
inline constexpr double kPsInvToNsInv = 1000.0;

/// Inverse temperature in ns. Throws for T <= 0.
inline double beta_from_temperature(double temperature_K) {
  if (!(temperature_K > 0.0))
    throw std::invalid_argument("beta_from_temperature: temperature must be > 0 K, got " +
                                std::to_string(temperature_K));
  return 1.0 / (kBoltzmannOverHbar * temperature_K);
}

inline double log_binomial(int n, int m) {
  return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

class SpinBath {
 public:
  /// beta in ns; +infinity selects the zero-temperature limit.
  SpinBath(int n_spins, double alpha_ns_inv, double beta_ns)
      : n_spins_(n_spins), alpha_(alpha_ns_inv), beta_(beta_ns) {
    if (n_spins < 0) throw std::invalid_argument("SpinBath: n_spins must be >= 0");
    if (!(std::isfinite(alpha_ns_inv) && alpha_ns_inv >= 0.0))
      throw std::invalid_argument("SpinBath: alpha must be finite and >= 0");
    if (!(beta_ns >= 0.0)) throw std::invalid_argument("SpinBath: beta must be >= 0");
    compute_weights();
  }

  static SpinBath from_temperature(int n_spins, double alpha_ns_inv, double temperature_K) {
    return {n_spins, alpha_ns_inv, beta_from_temperature(temperature_K)};
  }

  static SpinBath zero_temperature(int n_spins, double alpha_ns_inv) {
    return {n_spins, alpha_ns_inv, std::numeric_limits<double>::infinity()};
  }

  int n_spins() const { return n_spins_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  /// Dimensionless beta * alpha; infinite at T = 0 unless alpha = 0.
  double beta_alpha() const { return (alpha_ == 0.0) ? 0.0 : beta_ * alpha_; }
  int levels() const { return n_spins_ + 1; }

  /// Thermal weights p_m = C(N,m) e^{-beta alpha m} / Z, m = 0..N.
  const std::vector<double>& weights() const { return weights_; }

  /// log Z with Z = sum_m C(N,m) e^{-beta alpha m} (energies shifted by alpha N/2).
  double log_partition() const { return log_z_; }

  /// nu_m = alpha (m - N/2).
  double energy(int m) const { return alpha_ * (m - 0.5 * n_spins_); }

  double mean_occupation() const {
    double acc = 0.0;
    for (int m = 0; m <= n_spins_; ++m) acc += m * weights_[m];
    return acc;
  }

 private:
  void compute_weights() {
    const double ba = beta_alpha();
    std::vector<double> logw(levels());
    for (int m = 0; m <= n_spins_; ++m) {
      const double boltz = (m == 0) ? 0.0 : -ba * m;
      logw[m] = log_binomial(n_spins_, m) + boltz;
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    weights_.resize(logw.size());
    double sum = 0.0;
    for (std::size_t m = 0; m < logw.size(); ++m) {
      weights_[m] = std::exp(logw[m] - top);
      sum += weights_[m];
    }
    for (double& w : weights_) w /= sum;
    log_z_ = top + std::log(sum);
  }

  int n_spins_;
  double alpha_;
  double beta_;
  std::vector<double> weights_;
  double log_z_ = 0.0;
};

/// Alias for the list of thermal weights.
inline const std::vector<double>& thermal_weights(const SpinBath& b) { return b.weights(); }

}  // namespace ehqm
