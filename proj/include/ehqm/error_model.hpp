#pragma once

// Systematic pulse errors:
//   Omega'_j = (1 + eps_j) e^{i zeta_j} Omega_j,   delta' = (1 + kappa) delta.
// Only zeta0 - zeta1 is observable; the common phase is absorbed into |e>.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ehqm/lambda_core.hpp"

namespace ehqm {

struct ErrorParams {
  double epsilon0 = 0.0;
  double epsilon1 = 0.0;
  double zeta0 = 0.0;
  double zeta1 = 0.0;
  double kappa = 0.0;

  /// eps0 = eps1 = kappa = value, no phase errors.
  static ErrorParams symmetric(double value) { return {value, value, 0.0, 0.0, value}; }

  /// Equal amplitude errors and equal phases leave the dark/bright pair unchanged.
  bool preserves_axis() const { return epsilon0 == epsilon1 && zeta0 == zeta1; }

  void validate() const {
    if (!(1.0 + epsilon0 > 0.0) || !(1.0 + epsilon1 > 0.0))
      throw std::invalid_argument("ErrorParams: 1 + epsilon_j must be > 0 (got eps0=" +
                                  std::to_string(epsilon0) + ", eps1=" +
                                  std::to_string(epsilon1) + ")");
    if (!std::isfinite(zeta0) || !std::isfinite(zeta1) || !std::isfinite(kappa))
      throw std::invalid_argument("ErrorParams: zeta and kappa must be finite");
  }
};

struct EffectiveParams {
  double omega_p;
  double theta_p;
  double phi_p;
  double delta_p;

  LambdaParams as_lambda() const { return {omega_p, delta_p, theta_p, phi_p}; }
  DarkBright states() const { return bright_dark_states(theta_p, phi_p); }
};

inline EffectiveParams apply_errors(const LambdaParams& p, const ErrorParams& e) {
  e.validate();
  const double a0 = 1.0 + e.epsilon0;
  const double a1 = 1.0 + e.epsilon1;
  const double s = std::sin(0.5 * p.theta());
  const double c = std::cos(0.5 * p.theta());

  EffectiveParams out{};
  out.omega_p = std::sqrt(a0 * a0 * s * s + a1 * a1 * c * c) * p.omega();
  out.delta_p = (1.0 + e.kappa) * p.delta();

  // e^{i phi'} tan(theta'/2) = (a0/a1) e^{i(zeta0-zeta1)} e^{i phi} tan(theta/2).
  // The modulus is taken through atan2 so theta = pi needs no special case.
  out.theta_p = (a0 == a1) ? p.theta() : 2.0 * std::atan2(a0 * s, a1 * c);
  out.phi_p = (e.zeta0 == e.zeta1) ? p.phi() : wrap_phase(p.phi() + e.zeta0 - e.zeta1);
  return out;
}

}  // namespace ehqm
