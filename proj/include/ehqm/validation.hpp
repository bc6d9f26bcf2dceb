#pragma once

// Closed-form channel vs brute-force oracle, run on a seeded random grid.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ehqm/holonomic_map.hpp"
#include "ehqm/oracle.hpp"
#include "ehqm/reproduce.hpp"

namespace ehqm {

struct RandomCase {
  LambdaParams params;
  ErrorParams errors;
  oracle::PulseSpec pulse;
  oracle::BathSpec bath_spec;
  SpinBath bath;
  double gamma;
  double vartheta;
  double xi;
};

/// Random parameters spanning general (axis-tilting) errors. alpha is kept
/// O(1) ns^-1 so the dense oracle stays well conditioned; beta alpha covers
/// the same range as the physical runs.
inline RandomCase random_case(std::mt19937_64& rng, int n_spins) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto uni = [&](double a, double b) { return a + (b - a) * u01(rng); };
  const double omega = uni(0.2, 3.0);
  const double delta = uni(-4.0, 4.0);
  const double theta = uni(0.0, std::numbers::pi);
  const double phi = uni(0.0, 2.0 * std::numbers::pi);
  const ErrorParams e{uni(-0.3, 0.3), uni(-0.3, 0.3), uni(-0.5, 0.5), uni(-0.5, 0.5), uni(-0.3, 0.3)};
  const double alpha = uni(0.1, 5.0);
  const double beta = uni(0.0, 5.0) / alpha;
  return {LambdaParams(omega, delta, theta, phi),
          e,
          oracle::PulseSpec{omega, delta, theta, phi, e.epsilon0, e.epsilon1, e.zeta0, e.zeta1, e.kappa},
          oracle::BathSpec{n_spins, alpha, beta},
          SpinBath(n_spins, alpha, beta),
          uni(0.0, 5.0),
          uni(0.0, std::numbers::pi),
          uni(0.0, 2.0 * std::numbers::pi)};
}

struct ValidationReport {
  double max_trace_distance = 0.0;
  double max_completeness = 0.0;
  double max_unitality = 0.0;
  double max_survival_mismatch = 0.0;
  double max_collapse_mismatch = 0.0;
  double max_cyclic_mismatch = 0.0;
  double max_path_mismatch = 0.0;
  int cases = 0;
};

/// Output state of the closed-form channel for the oracle's input.
inline ThreeLevelOperator channel_output(const HolonomicChannel& ch, const InputState& s) {
  const ThreeLevelState psi = s.vector(ch.ideal_states());
  return ch.apply(psi * psi.adjoint());
}

inline ValidationReport run_validation(unsigned seed = 20190101u, int cases_per_n = 15) {
  std::mt19937_64 rng(seed);
  ValidationReport rep;
  for (int n = 0; n <= 8; ++n) {
    for (int c = 0; c < cases_per_n; ++c) {
      const RandomCase rc = random_case(rng, n);
      const HolonomicChannel ch(rc.params, rc.errors, rc.bath, rc.gamma);
      const Eigen::Matrix3cd brute =
          oracle::full_evolution(rc.pulse, rc.bath_spec, rc.gamma, rc.vartheta, rc.xi);
      rep.max_trace_distance = std::max(
          rep.max_trace_distance, oracle::trace_distance(channel_output(ch, {rc.vartheta, rc.xi}), brute));
      rep.max_completeness = std::max(rep.max_completeness, ch.completeness_error());
      rep.max_unitality = std::max(rep.max_unitality, ch.unitality_error());
      if (n <= 4 && c < 3) {
        const Eigen::Matrix3cd product = oracle::full_evolution(rc.pulse, rc.bath_spec, rc.gamma,
                                                                rc.vartheta, rc.xi, oracle::BathBasis::kProduct);
        rep.max_collapse_mismatch =
            std::max(rep.max_collapse_mismatch, oracle::trace_distance(product, brute));
      }
      ++rep.cases;
    }
  }

  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const LambdaParams ideal(1.0, 2.0, std::numbers::pi / 2.0, 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double om = 10.0 * (1.0 - u01(rng));  // (0, 10]
    const double d = -10.0 + 20.0 * u01(rng);
    const complex closed = bright_survival_amplitude(om, d, ideal.tau0(), ideal.delta0());
    const complex r0 = om * std::sin(0.5 * ideal.theta());
    const complex r1 = -om * std::cos(0.5 * ideal.theta());
    const Eigen::Vector3cd b = oracle::bright_from_rabi(r0, r1);
    const oracle::DenseOperator u = oracle::expm_hermitian(oracle::lambda_hamiltonian(r0, r1, d), ideal.tau0());
    rep.max_survival_mismatch = std::max(rep.max_survival_mismatch, std::abs(b.dot(u * b) - closed));
  }

  for (int i = 0; i < 50; ++i) {
    const double om = 0.1 + 3.0 * u01(rng);
    const double d = -5.0 + 10.0 * u01(rng);
    const double t = oracle::find_cyclic_time(om, -om * 0.5, d);
    const double om_eff = std::abs(complex(om, -om * 0.5));
    rep.max_cyclic_mismatch =
        std::max(rep.max_cyclic_mismatch,
                 std::abs(t - 2.0 * std::numbers::pi / std::sqrt(d * d + 4.0 * om_eff * om_eff)));
  }

  for (double eps : {0.0, 0.1, 0.15, 0.2}) {
    for (double gamma : {0.0, 1.3, 2.8, 6.0}) {
      const HolonomicChannel ch(ideal, ErrorParams::symmetric(eps), SpinBath::from_temperature(20, 15000.0, 50.0),
                                gamma);
      for (int k = 0; k < 30; ++k) {
        const double vt = k * std::numbers::pi / 29.0;
        rep.max_path_mismatch = std::max(
            rep.max_path_mismatch, std::abs(state_fidelity_analytic(ch, vt) - state_fidelity_direct(ch, {vt, 0.7})));
      }
    }
  }
  return rep;
}

inline std::vector<Check> validation_checks(const ValidationReport& r) {
  auto sci = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return std::string(buf);
  };
  return {
      {"channel vs system(x)bath evolution, " + std::to_string(r.cases) + " cases (trace distance)",
       sci(r.max_trace_distance), "< 1e-10", r.max_trace_distance < 1e-10},
      {"collapsed vs product bath basis (trace distance)", sci(r.max_collapse_mismatch), "< 1e-10",
       r.max_collapse_mismatch < 1e-10},
      {"Kraus completeness", sci(r.max_completeness), "< 1e-12", r.max_completeness < 1e-12},
      {"Kraus unitality", sci(r.max_unitality), "< 1e-12", r.max_unitality < 1e-12},
      {"bright survival amplitude vs dense exponential (1000 pairs)", sci(r.max_survival_mismatch), "< 1e-10",
       r.max_survival_mismatch < 1e-10},
      {"cyclic time search vs 2 pi / Delta'", sci(r.max_cyclic_mismatch), "< 1e-9", r.max_cyclic_mismatch < 1e-9},
      {"analytic vs matrix fidelity path", sci(r.max_path_mismatch), "< 1e-12", r.max_path_mismatch < 1e-12},
  };
}

}  // namespace ehqm
