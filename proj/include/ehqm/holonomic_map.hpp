#pragma once

// Environment-assisted holonomic map.
//
// For a bath with [H_B, h_B] = 0 the reduced dynamics over the pulse is the
// unital channel
//   rho -> sum_m A'_m rho A'_m^dagger,
//   A'_m = sqrt(p_m) exp(-i H_{delta' + gamma m}(omega', theta', phi') tau0),
// where tau0 is the ideal cyclic time. All C(N, m) degenerate bath states at
// level m give the same sub-unitary, so the N+1 binomially weighted operators
// are exact.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ehqm/error_model.hpp"
#include "ehqm/lambda_core.hpp"
#include "ehqm/spin_bath.hpp"

namespace ehqm {

/// |psi> = cos(vartheta/2)|d> + e^{i xi} sin(vartheta/2)|b> with the ideal
/// dark and bright states.
struct InputState {
  double vartheta = 0.0;
  double xi = 0.0;

  ThreeLevelState vector(const DarkBright& db) const {
    return std::cos(0.5 * vartheta) * db.dark +
           std::polar(std::sin(0.5 * vartheta), xi) * db.bright;
  }
};

class HolonomicChannel {
 public:
  HolonomicChannel(const LambdaParams& params, const ErrorParams& errors, const SpinBath& bath,
                   double gamma)
      : params_(params),
        errors_(errors),
        effective_(apply_errors(params, errors)),
        ideal_states_(bright_dark_states(params)),
        weights_(bath.weights()),
        gamma_(gamma),
        tau0_(params.tau0()),
        delta0_(params.delta0()),
        chi_(params.chi()),
        ideal_gate_(ideal_gate(params)) {
    if (!std::isfinite(gamma)) throw std::invalid_argument("HolonomicChannel: gamma must be finite");
    const int levels = bath.levels();
    unitaries_.reserve(levels);
    survival_.reserve(levels);
    for (int m = 0; m < levels; ++m) {
      const double d = effective_detuning(m);
      unitaries_.push_back(propagator(effective_.omega_p, effective_.theta_p, effective_.phi_p, d,
                                      tau0_));
      survival_.push_back(bright_survival_amplitude(effective_.omega_p, d, tau0_, delta0_));
    }
  }

  const LambdaParams& params() const { return params_; }
  const ErrorParams& errors() const { return errors_; }
  const EffectiveParams& effective() const { return effective_; }
  const DarkBright& ideal_states() const { return ideal_states_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<ThreeLevelOperator>& unitary_factors() const { return unitaries_; }
  const ThreeLevelOperator& ideal() const { return ideal_gate_; }
  double gamma() const { return gamma_; }
  double tau0() const { return tau0_; }
  double chi() const { return chi_; }
  int size() const { return static_cast<int>(weights_.size()); }

  /// delta' + gamma m.
  double effective_detuning(int m) const { return effective_.delta_p + gamma_ * m; }

  /// Cyclic time of the error-affected bath-free pulse. Diagnostic only; the
  /// channel always runs for the ideal tau0.
  double error_cyclic_time() const {
    const double om = effective_.omega_p;
    const double d = effective_.delta_p;
    return 2.0 * std::numbers::pi / std::sqrt(d * d + 4.0 * om * om);
  }

  ThreeLevelOperator kraus_operator(int m) const { return std::sqrt(weights_.at(m)) * unitaries_.at(m); }

  /// <b| A'_m / sqrt(p_m) |b> from the closed form.
  complex survival_amplitude(int m) const { return survival_.at(m); }

  ThreeLevelOperator apply(const ThreeLevelOperator& rho) const {
    ThreeLevelOperator out = ThreeLevelOperator::Zero();
    for (int m = 0; m < size(); ++m)
      out += weights_[m] * (unitaries_[m] * rho * unitaries_[m].adjoint());
    return out;
  }

  /// max |sum_m A'^dagger A' - I|.
  double completeness_error() const {
    ThreeLevelOperator acc = ThreeLevelOperator::Zero();
    for (int m = 0; m < size(); ++m) acc += weights_[m] * (unitaries_[m].adjoint() * unitaries_[m]);
    return (acc - ThreeLevelOperator::Identity()).cwiseAbs().maxCoeff();
  }

  /// max |sum_m A' A'^dagger - I|.
  double unitality_error() const {
    ThreeLevelOperator acc = ThreeLevelOperator::Zero();
    for (int m = 0; m < size(); ++m) acc += weights_[m] * (unitaries_[m] * unitaries_[m].adjoint());
    return (acc - ThreeLevelOperator::Identity()).cwiseAbs().maxCoeff();
  }

 private:
  LambdaParams params_;
  ErrorParams errors_;
  EffectiveParams effective_;
  DarkBright ideal_states_;
  std::vector<double> weights_;
  double gamma_;
  double tau0_;
  double delta0_;
  double chi_;
  ThreeLevelOperator ideal_gate_;
  std::vector<ThreeLevelOperator> unitaries_;
  std::vector<complex> survival_;
};

inline HolonomicChannel build_channel(const LambdaParams& p, const ErrorParams& e, const SpinBath& b,
                                      double gamma) {
  return {p, e, b, gamma};
}

/// F(psi) = (sum_m |<psi| U(C)^dagger A'_m |psi>|^2)^{1/2} from the 3x3 Kraus
/// matrices. Valid for any error setting.
inline double state_fidelity_direct(const HolonomicChannel& ch, const InputState& s) {
  const ThreeLevelState psi = s.vector(ch.ideal_states());
  const ThreeLevelState target = ch.ideal() * psi;
  double acc = 0.0;
  for (int m = 0; m < ch.size(); ++m) {
    const complex overlap = target.dot(ch.unitary_factors()[m] * psi);
    acc += ch.weights()[m] * std::norm(overlap);
  }
  return std::sqrt(std::min(acc, 1.0));
}

/// Closed-form reduction when |b'> = |b>:
///   F^2 = sum_m p_m |cos^2(vartheta/2) - e^{i chi} sin^2(vartheta/2) a_m|^2
/// with a_m the bright-state survival amplitude of level m.
inline double state_fidelity_analytic(const HolonomicChannel& ch, double vartheta) {
  if (!ch.errors().preserves_axis())
    throw std::logic_error(
        "state_fidelity_analytic: requires eps0 == eps1 and zeta0 == zeta1");
  const double c2 = std::pow(std::cos(0.5 * vartheta), 2);
  const double s2 = std::pow(std::sin(0.5 * vartheta), 2);
  const complex phase = std::polar(1.0, ch.chi());
  double acc = 0.0;
  for (int m = 0; m < ch.size(); ++m)
    acc += ch.weights()[m] * std::norm(c2 - phase * s2 * ch.survival_amplitude(m));
  return std::sqrt(std::min(acc, 1.0));
}

/// Dispatches to the closed form when the errors preserve the rotation axis
/// (where F is independent of xi), otherwise to the matrix path.
inline double state_fidelity(const HolonomicChannel& ch, const InputState& s) {
  if (ch.errors().preserves_axis()) return state_fidelity_analytic(ch, s.vartheta);
  return state_fidelity_direct(ch, s);
}

/// sin-weighted average over vartheta_k = k pi / (n - 1), k = 0..n-1.
/// With n_xi > 1 each vartheta is additionally averaged over
/// xi_j = 2 pi j / n_xi; the default samples xi = 0 only.
inline double average_fidelity(const HolonomicChannel& ch, int n_states, int n_xi = 1) {
  if (n_states < 3) throw std::invalid_argument("average_fidelity: n_states must be >= 3");
  if (n_xi < 1) throw std::invalid_argument("average_fidelity: n_xi must be >= 1");
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < n_states; ++k) {
    const double vartheta = k * std::numbers::pi / (n_states - 1);
    const double w = std::sin(vartheta);
    double f = 0.0;
    for (int j = 0; j < n_xi; ++j)
      f += state_fidelity(ch, {vartheta, 2.0 * std::numbers::pi * j / n_xi});
    num += w * f / n_xi;
    den += w;
  }
  return num / den;
}

}  // namespace ehqm
