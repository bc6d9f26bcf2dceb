#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ehqm/holonomic_map.hpp"
#include "ehqm/oracle.hpp"
#include "ehqm/validation.hpp"

using namespace ehqm;
using std::numbers::pi;

namespace {

const LambdaParams kReference(1.0, 2.0, pi / 2, 0.0);
constexpr double kAlpha = 15.0 * kPsInvToNsInv;

SpinBath default_bath(double temperature = 50.0, int n = 20) {
  return SpinBath::from_temperature(n, kAlpha, temperature);
}

}  // namespace

TEST(BuildChannel, ErrorFreeUncoupledIsIdealGate) {
  const HolonomicChannel ch(kReference, {}, default_bath(), 0.0);
  ASSERT_EQ(ch.size(), 21);
  for (const auto& u : ch.unitary_factors()) EXPECT_LT((u - ch.ideal()).cwiseAbs().maxCoeff(), 1e-14);
  for (int k = 0; k < 30; ++k) EXPECT_NEAR(state_fidelity(ch, {k * pi / 29, 0.3}), 1.0, 1e-14);
  EXPECT_NEAR(average_fidelity(ch, 30), 1.0, 1e-14);
}

TEST(BuildChannel, UncoupledFactorsAreIdentical) {
  const HolonomicChannel ch(kReference, {0.1, -0.05, 0.2, 0.0, 0.1}, default_bath(), 0.0);
  for (const auto& u : ch.unitary_factors())
    EXPECT_LT((u - ch.unitary_factors().front()).cwiseAbs().maxCoeff(), 0.0 + 1e-300);
}

TEST(BuildChannel, ZeroTemperatureKeepsOnlyGroundKraus) {
  const HolonomicChannel ch(kReference, ErrorParams::symmetric(0.1), SpinBath::zero_temperature(20, kAlpha), 2.8);
  EXPECT_EQ(ch.weights()[0], 1.0);
  const ThreeLevelOperator a0 = ch.kraus_operator(0);
  const ThreeLevelOperator u0 = propagator(1.1, pi / 2, 0.0, 2.2, kReference.tau0());
  EXPECT_LT((a0 - u0).cwiseAbs().maxCoeff(), 1e-15);
  for (int m = 1; m < ch.size(); ++m) EXPECT_EQ(ch.kraus_operator(m).cwiseAbs().maxCoeff(), 0.0);
}

TEST(BuildChannel, RunsForIdealCycleTime) {
  const HolonomicChannel ch(kReference, ErrorParams::symmetric(0.1), default_bath(), 2.8);
  EXPECT_DOUBLE_EQ(ch.tau0(), kReference.tau0());
  EXPECT_NEAR(ch.error_cyclic_time(), 2 * pi / std::sqrt(4.84 + 4.84), 1e-14);
  EXPECT_NEAR(ch.error_cyclic_time(), 2.0195, 1e-4);
  EXPECT_DOUBLE_EQ(ch.effective_detuning(5), 2.2 + 2.8 * 5);
}

TEST(BuildChannel, CompletenessAndUnitality) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const RandomCase rc = random_case(rng, static_cast<int>(rng() % 30));
    const HolonomicChannel ch(rc.params, rc.errors, rc.bath, rc.gamma);
    EXPECT_LT(ch.completeness_error(), 1e-12);
    EXPECT_LT(ch.unitality_error(), 1e-12);
    EXPECT_NEAR(ch.apply(ThreeLevelOperator::Identity()).trace().real(), 3.0, 1e-12);
  }
}

TEST(StateFidelity, DarkStateIsProtected) {
  for (double eps : {0.05, 0.2, 0.4}) {
    for (double gamma : {0.0, 1.0, 2.8, 7.0}) {
      for (double temp : {10.0, 50.0, 300.0}) {
        const HolonomicChannel ch(kReference, ErrorParams::symmetric(eps), default_bath(temp), gamma);
        EXPECT_NEAR(state_fidelity(ch, {0.0, 0.0}), 1.0, 1e-12);
        EXPECT_NEAR(state_fidelity_direct(ch, {0.0, 1.0}), 1.0, 1e-12);
      }
    }
  }
}

TEST(StateFidelity, BrightStateTwoRoutes) {
  const HolonomicChannel ch(kReference, ErrorParams::symmetric(0.1), default_bath(), 0.0);
  const double analytic = state_fidelity_analytic(ch, pi);
  const double direct = state_fidelity_direct(ch, {pi, 0.0});
  EXPECT_NEAR(analytic, direct, 1e-12);
  // Hand reduction: F = |a - (-e^{-i chi})| overlap with the survival amplitude.
  const complex a = bright_survival_amplitude(1.1, 2.2, kReference.tau0(), kReference.delta0());
  EXPECT_NEAR(analytic, std::abs(std::polar(1.0, kReference.chi()) * a), 1e-14);
  EXPECT_LT(analytic, 1.0);
}

TEST(StateFidelity, AnalyticMatchesDirectAndIgnoresXi) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    const double eps = -0.3 + 0.6 * u(rng);
    const ErrorParams e{eps, eps, 0.0, 0.0, -0.3 + 0.6 * u(rng)};
    const LambdaParams p(0.2 + 2 * u(rng), -3 + 6 * u(rng), pi * u(rng), 2 * pi * u(rng));
    const HolonomicChannel ch(p, e, SpinBath(static_cast<int>(u(rng) * 25), 1e4, 5e-4 * u(rng)), 5 * u(rng));
    for (int k = 0; k < 12; ++k) {
      const double vt = k * pi / 11;
      const double ref = state_fidelity_direct(ch, {vt, 0.0});
      EXPECT_NEAR(state_fidelity_analytic(ch, vt), ref, 1e-12);
      for (double xi : {0.4, 1.9, 3.3, 5.8}) EXPECT_NEAR(state_fidelity_direct(ch, {vt, xi}), ref, 1e-12);
    }
  }
}

TEST(StateFidelity, GeneralErrorsUseMatrixPath) {
  const HolonomicChannel ch(kReference, {0.2, 0.0, 0.3, 0.0, 0.1}, default_bath(), 1.0);
  EXPECT_THROW(state_fidelity_analytic(ch, 1.0), std::logic_error);
  const double f = state_fidelity(ch, {1.0, 0.5});
  EXPECT_DOUBLE_EQ(f, state_fidelity_direct(ch, {1.0, 0.5}));
  EXPECT_GT(f, 0.0);
  EXPECT_LE(f, 1.0);
  // Axis tilt: the dark state is no longer protected and xi matters.
  EXPECT_LT(state_fidelity(ch, {0.0, 0.0}), 1.0 - 1e-6);
  EXPECT_GT(std::abs(state_fidelity(ch, {1.0, 0.5}) - state_fidelity(ch, {1.0, 2.5})), 1e-6);
}

TEST(StateFidelity, MatchesUhlmannFormForPureInput) {
  // F(psi)^2 = <psi| U^dagger rho U |psi> with rho the channel output.
  const HolonomicChannel ch(kReference, {0.12, -0.04, 0.2, 0.05, 0.07}, default_bath(300.0), 2.0);
  for (double vt : {0.3, 1.2, 2.5}) {
    const InputState s{vt, 0.8};
    const ThreeLevelState psi = s.vector(ch.ideal_states());
    const ThreeLevelOperator rho = ch.apply(psi * psi.adjoint());
    const ThreeLevelState target = ch.ideal() * psi;
    const double f2 = target.dot(rho * target).real();
    EXPECT_NEAR(state_fidelity(ch, s), std::sqrt(f2), 1e-13);
  }
}

TEST(AverageFidelity, RejectsTooFewStates) {
  const HolonomicChannel ch(kReference, {}, default_bath(), 0.0);
  EXPECT_THROW(average_fidelity(ch, 2), std::invalid_argument);
  EXPECT_THROW(average_fidelity(ch, 10, 0), std::invalid_argument);
}

TEST(AverageFidelity, EndpointsCarryNoWeight) {
  const HolonomicChannel ch(kReference, ErrorParams::symmetric(0.15), default_bath(), 1.7);
  for (int n : {3, 5, 30, 61}) {
    double num = 0.0, den = 0.0;
    for (int k = 1; k < n - 1; ++k) {
      const double vt = k * pi / (n - 1);
      num += std::sin(vt) * state_fidelity(ch, {vt, 0.0});
      den += std::sin(vt);
    }
    EXPECT_NEAR(average_fidelity(ch, n), num / den, 1e-14);
  }
}

TEST(AverageFidelity, BathFreeErrorBaseline) {
  // Frozen from a scipy.linalg.expm evaluation of the full 3x3 Kraus matrices.
  const double expected[] = {0.9879164555436745, 0.9735233733135917, 0.9546946387193178};
  const double eps[] = {0.1, 0.15, 0.2};
  for (int i = 0; i < 3; ++i) {
    const HolonomicChannel ch(kReference, ErrorParams::symmetric(eps[i]), default_bath(), 0.0);
    EXPECT_NEAR(average_fidelity(ch, 30), expected[i], 1e-12);
  }
}

TEST(AverageFidelity, CoupledReferencePoint) {
  const HolonomicChannel ch(kReference, ErrorParams::symmetric(0.1), default_bath(), 2.8);
  EXPECT_NEAR(average_fidelity(ch, 30), 0.9743336337129843, 1e-12);
  const HolonomicChannel ch2(kReference, ErrorParams::symmetric(0.2), default_bath(), 2.75);
  EXPECT_NEAR(average_fidelity(ch2, 30), 0.9742352687376468, 1e-12);
}

TEST(AverageFidelity, XiAveragingIsNeutralForSymmetricErrors) {
  const HolonomicChannel ch(kReference, ErrorParams::symmetric(0.2), default_bath(), 2.75);
  EXPECT_NEAR(average_fidelity(ch, 30, 7), average_fidelity(ch, 30), 1e-14);
}

TEST(BuildChannel, MatchesFullSystemBathEvolution) {
  const LambdaParams p = kReference;
  const ErrorParams e = ErrorParams::symmetric(0.1);
  // Physical alpha makes the dense oracle ill-conditioned; beta alpha is kept.
  const double alpha = 3.0;
  const double beta = beta_from_temperature(50.0) * kAlpha / alpha;
  const HolonomicChannel ch(p, e, SpinBath(4, alpha, beta), 2.8);
  const oracle::PulseSpec pulse{1.0, 2.0, pi / 2, 0.0, 0.1, 0.1, 0.0, 0.0, 0.1};
  for (double vt : {0.0, 0.9, pi}) {
    const Eigen::Matrix3cd ref = oracle::full_evolution(pulse, {4, alpha, beta}, 2.8, vt, 0.4);
    EXPECT_LT(oracle::trace_distance(channel_output(ch, {vt, 0.4}), ref), 1e-10);
  }
}
