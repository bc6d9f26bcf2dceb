#pragma once

// Off-resonant Lambda system driven by a square pulse pair.
//
// Basis ordering everywhere in this library is {|0>, |1>, |e>}. Frequencies are
// in ns^-1, times in ns, hbar = 1.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace ehqm {

using complex = std::complex<double>;
using ThreeLevelState = Eigen::Vector3cd;
using ThreeLevelOperator = Eigen::Matrix3cd;

inline constexpr int kLevel0 = 0;
inline constexpr int kLevel1 = 1;
inline constexpr int kLevelE = 2;

inline double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

/// Ideal control parameters of the pulse pair.
///
/// Rabi frequencies are Omega_0 = omega e^{i phi} sin(theta/2) and
/// Omega_1 = -omega cos(theta/2).
class LambdaParams {
 public:
  LambdaParams(double omega, double delta, double theta, double phi)
      : omega_(omega), delta_(delta), theta_(theta), phi_(wrap_phase(phi)) {
    if (!(std::isfinite(omega) && omega > 0.0))
      throw std::invalid_argument("LambdaParams: omega must be finite and > 0, got " +
                                  std::to_string(omega));
    if (!std::isfinite(delta))
      throw std::invalid_argument("LambdaParams: delta must be finite");
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw std::invalid_argument("LambdaParams: theta must lie in [0, pi], got " +
                                  std::to_string(theta));
    if (!std::isfinite(phi))
      throw std::invalid_argument("LambdaParams: phi must be finite");
  }

  double omega() const { return omega_; }
  double delta() const { return delta_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// Gap of the {b, e} block, sqrt(delta^2 + 4 omega^2).
  double delta0() const { return std::sqrt(delta_ * delta_ + 4.0 * omega_ * omega_); }
  /// Cyclic run time 2 pi / delta0.
  double tau0() const { return 2.0 * std::numbers::pi / delta0(); }
  /// Gate phase chi = delta tau0 / 2.
  double chi() const { return 0.5 * delta_ * tau0(); }
  /// Rotation angle of the holonomic gate about n.
  double rotation_angle() const { return std::numbers::pi - chi(); }

  complex rabi0() const { return omega_ * std::polar(1.0, phi_) * std::sin(0.5 * theta_); }
  complex rabi1() const { return complex(-omega_ * std::cos(0.5 * theta_), 0.0); }

 private:
  double omega_;
  double delta_;
  double theta_;
  double phi_;
};

/// Dark and bright states of a (theta, phi) pair.
struct DarkBright {
  ThreeLevelState dark;
  ThreeLevelState bright;
};

inline DarkBright bright_dark_states(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  DarkBright out;
  out.dark << complex(c, 0.0), std::polar(s, phi), complex(0.0, 0.0);
  out.bright << std::polar(s, -phi), complex(-c, 0.0), complex(0.0, 0.0);
  return out;
}

inline DarkBright bright_dark_states(const LambdaParams& p) {
  return bright_dark_states(p.theta(), p.phi());
}

inline ThreeLevelState excited_state() { return ThreeLevelState::Unit(kLevelE); }

/// Parameters diagonalizing the {b, e} block
///   [[0, omega], [omega, D]]
/// with D the effective detuning. eta is taken in (0, pi) so that
/// cos(eta) = D / big_delta for either sign of D.
struct DiagonalizationParams {
  double eta;
  double sigma;
  double big_delta;
};

inline DiagonalizationParams diagonalize_block(double omega, double effective_detuning) {
  const double d = effective_detuning;
  return {std::atan2(2.0 * omega, d), 0.5 * d, std::sqrt(d * d + 4.0 * omega * omega)};
}

/// (D)|e><e| + omega (|e><b| + |b><e|) for the bright state of (theta, phi).
inline ThreeLevelOperator sub_hamiltonian(double omega, double theta, double phi,
                                          double effective_detuning) {
  const ThreeLevelState b = bright_dark_states(theta, phi).bright;
  const ThreeLevelState e = excited_state();
  ThreeLevelOperator h = effective_detuning * (e * e.adjoint());
  h += omega * (e * b.adjoint() + b * e.adjoint());
  return h;
}

inline ThreeLevelOperator sub_hamiltonian(const LambdaParams& p, double effective_detuning) {
  return sub_hamiltonian(p.omega(), p.theta(), p.phi(), effective_detuning);
}

/// Matrix elements of exp(-i H t) on the {b, e} block. The block is a
/// rotation: exp(-i sigma t) [cos(x) - i sin(x) (omega sx' - (D/2) sz') * 2/Delta]
/// with x = Delta t / 2.
struct BlockPropagator {
  complex bb;
  complex be;  // equals eb
  complex ee;
};

inline BlockPropagator block_propagator(double omega, double effective_detuning, double t) {
  const DiagonalizationParams dp = diagonalize_block(omega, effective_detuning);
  const double x = 0.5 * dp.big_delta * t;
  const double cos_eta = effective_detuning / dp.big_delta;
  const double sin_eta = 2.0 * omega / dp.big_delta;
  const complex phase = std::polar(1.0, -dp.sigma * t);
  const double c = std::cos(x);
  const double s = std::sin(x);
  return {phase * complex(c, cos_eta * s), phase * complex(0.0, -sin_eta * s),
          phase * complex(c, -cos_eta * s)};
}

/// exp(-i H t) in closed form. Identity on the dark state.
inline ThreeLevelOperator propagator(double omega, double theta, double phi,
                                     double effective_detuning, double t) {
  if (t < 0.0) throw std::invalid_argument("propagator: t must be >= 0");
  const DarkBright db = bright_dark_states(theta, phi);
  const ThreeLevelState& d = db.dark;
  const ThreeLevelState& b = db.bright;
  const ThreeLevelState e = excited_state();
  const BlockPropagator u = block_propagator(omega, effective_detuning, t);
  ThreeLevelOperator out = d * d.adjoint();
  out += u.bb * (b * b.adjoint());
  out += u.be * (b * e.adjoint() + e * b.adjoint());
  out += u.ee * (e * e.adjoint());
  return out;
}

inline ThreeLevelOperator propagator(const LambdaParams& p, double effective_detuning, double t) {
  return propagator(p.omega(), p.theta(), p.phi(), effective_detuning, t);
}

/// <b| exp(-i H tau0) |b> for a pulse of duration tau0 = 2 pi / delta0:
///   e^{-i Sigma' tau0} (cos(pi Delta'/delta0) + i cos(eta') sin(pi Delta'/delta0)).
inline complex bright_survival_amplitude(double omega_eff, double effective_detuning,
                                         double tau0, double delta0) {
  if (!(delta0 > 0.0))
    throw std::invalid_argument("bright_survival_amplitude: delta0 must be > 0");
  const DiagonalizationParams dp = diagonalize_block(omega_eff, effective_detuning);
  const double arg = std::numbers::pi * dp.big_delta / delta0;
  // cos(eta) straight from D / Delta' so D = 0 never divides.
  const double cos_eta = effective_detuning / dp.big_delta;
  return std::polar(1.0, -dp.sigma * tau0) * complex(std::cos(arg), cos_eta * std::sin(arg));
}

/// Ideal holonomic gate |d><d| - e^{-i chi} |b><b|. The |e> level is completed
/// with the phase -e^{-i chi}, which is the cyclic limit of the error-free
/// propagator.
inline ThreeLevelOperator ideal_gate(const LambdaParams& p) {
  const DarkBright db = bright_dark_states(p);
  const complex minus_phase = -std::polar(1.0, -p.chi());
  const ThreeLevelState e = excited_state();
  ThreeLevelOperator u = db.dark * db.dark.adjoint();
  u += minus_phase * (db.bright * db.bright.adjoint());
  u += minus_phase * (e * e.adjoint());
  return u;
}

/// Max-norm distance of U^dagger U from the identity.
inline double unitarity_error(const ThreeLevelOperator& u) {
  return (u.adjoint() * u - ThreeLevelOperator::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace ehqm
