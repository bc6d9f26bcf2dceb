#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ehqm/oracle.hpp"

using namespace ehqm::oracle;
using std::numbers::pi;

namespace {

DenseOperator random_hermitian(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  DenseOperator a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = complex(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

double max_abs(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(ExpmHermitian, ZeroAndDiagonal) {
  EXPECT_LT(max_abs(expm_hermitian(DenseOperator::Zero(3, 3), 2.0) - DenseOperator::Identity(3, 3)), 1e-15);
  DenseOperator h = DenseOperator::Zero(3, 3);
  h(0, 0) = 0.5;
  h(1, 1) = -1.2;
  h(2, 2) = 3.0;
  const DenseOperator u = expm_hermitian(h, 0.7);
  for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(u(i, i) - std::polar(1.0, -h(i, i).real() * 0.7)), 1e-15);
}

TEST(ExpmHermitian, RejectsNonHermitian) {
  DenseOperator h = DenseOperator::Zero(2, 2);
  h(0, 1) = 1.0;
  EXPECT_THROW(expm_hermitian(h, 1.0), std::invalid_argument);
  EXPECT_THROW(expm_hermitian(DenseOperator::Zero(2, 3), 1.0), std::invalid_argument);
}

TEST(ExpmHermitian, AgreesWithTaylorAndIsUnitary) {
  std::mt19937_64 rng(1234);
  for (int n : {2, 3, 5, 10, 20, 40}) {
    for (int rep = 0; rep < 5; ++rep) {
      const DenseOperator h = random_hermitian(rng, n, 1.0);
      const double t = 0.1 + 3.0 * static_cast<double>(rep);
      const DenseOperator a = expm_hermitian(h, t);
      const DenseOperator b = expm_taylor(h, t);
      EXPECT_LT(max_abs(a - b), 1e-9) << "n=" << n;
      EXPECT_LT(max_abs(a.adjoint() * a - DenseOperator::Identity(n, n)), 1e-10);
    }
  }
}

TEST(FullEvolution, UncoupledBathIsUnitaryEvolution) {
  const PulseSpec pulse{1.0, 2.0, 1.1, 0.3, 0.1, -0.05, 0.2, 0.1, 0.1};
  const Eigen::Matrix3cd rho = full_evolution(pulse, {5, 2.0, 0.4}, 0.0, 1.3, 0.6);
  const Eigen::Vector3cd psi = input_vector(pulse, 1.3, 0.6);
  const DenseOperator u = expm_hermitian(lambda_hamiltonian(pulse.rabi0(), pulse.rabi1(), pulse.error_detuning()),
                                         pulse.ideal_tau());
  const Eigen::Vector3cd out = u * psi;
  EXPECT_LT(max_abs(rho - out * out.adjoint()), 1e-12);
}

TEST(FullEvolution, DensityMatrixProperties) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int n = 0; n <= 6; ++n) {
    const PulseSpec pulse{0.5 + uni(rng), -2 + 4 * uni(rng), pi * uni(rng), 2 * pi * uni(rng),
                          0.1, 0.1, 0.0, 0.0, 0.2};
    const double gamma = 3.0 * uni(rng);
    const Eigen::Matrix3cd rho = full_evolution(pulse, {n, 1.5, 0.7}, gamma, 2.0, 0.1);
    EXPECT_LT(max_abs(rho - rho.adjoint()), 1e-12);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(rho);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    const double purity = (rho * rho).trace().real();
    EXPECT_LE(purity, 1.0 + 1e-12);
    if (n > 0 && gamma > 0.1) {
      EXPECT_LT(purity, 1.0 - 1e-8);
    }
  }
}

TEST(FullEvolution, ZeroTemperatureStaysPure) {
  const PulseSpec pulse{1.0, 2.0, pi / 2, 0.0, 0.2, 0.2, 0.0, 0.0, 0.2};
  const Eigen::Matrix3cd rho = full_evolution(pulse, {6, 2.0, 200.0}, 2.8, 1.0, 0.0);
  EXPECT_NEAR((rho * rho).trace().real(), 1.0, 1e-12);
}

TEST(FullEvolution, CollapsedBasisMatchesProductBasis) {
  const PulseSpec pulse{1.0, 2.0, 0.8, 1.4, 0.15, 0.05, 0.3, -0.1, 0.1};
  for (int n = 1; n <= 4; ++n) {
    const BathSpec bath{n, 2.5, 0.9};
    const Eigen::Matrix3cd a = full_evolution(pulse, bath, 2.2, 1.7, 2.0, BathBasis::kCollapsed);
    const Eigen::Matrix3cd b = full_evolution(pulse, bath, 2.2, 1.7, 2.0, BathBasis::kProduct);
    EXPECT_LT(trace_distance(a, b), 1e-10) << "N=" << n;
  }
}

TEST(FullEvolution, RejectsOversizedBath) {
  const PulseSpec pulse{1.0, 2.0, 1.0, 0.0};
  EXPECT_THROW(full_evolution(pulse, {kMaxCollapsedSpins + 1, 1.0, 1.0}, 1.0, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(full_evolution(pulse, {kMaxProductSpins + 1, 1.0, 1.0}, 1.0, 0.0, 0.0, BathBasis::kProduct),
               std::invalid_argument);
}

TEST(FindCyclicTime, KnownCases) {
  // omega = 1, delta = 2: 2 pi / sqrt(8).
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(find_cyclic_time(r, -r, 2.0), 2 * pi / std::sqrt(8.0), 1e-9);
  EXPECT_NEAR(find_cyclic_time(r, -r, 2.0), 2.2214, 1e-4);
  // Resonant: Delta0 = 2 omega.
  EXPECT_NEAR(find_cyclic_time(1.0, 0.0, 0.0), pi, 1e-9);
  // Error-affected omega' = 1.1, delta' = 2.2.
  const double t = find_cyclic_time(1.1 * r, -1.1 * r, 2.2);
  EXPECT_NEAR(t, 2 * pi / std::sqrt(4.84 + 4.84), 1e-9);
  EXPECT_NEAR(t, 2.0195, 1e-4);
  EXPECT_GT(std::abs(t - 2 * pi / std::sqrt(8.0)), 0.1);
}

TEST(FindCyclicTime, RandomParameters) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int i = 0; i < 40; ++i) {
    const double om = 0.05 + 4 * uni(rng), th = pi * uni(rng), ph = 2 * pi * uni(rng), d = -8 + 16 * uni(rng);
    const complex r0 = om * std::polar(1.0, ph) * std::sin(th / 2);
    const complex r1 = -om * std::cos(th / 2);
    EXPECT_NEAR(find_cyclic_time(r0, r1, d), 2 * pi / std::sqrt(d * d + 4 * om * om), 1e-9);
  }
}

TEST(TraceDistance, Basics) {
  Eigen::Matrix3cd a = Eigen::Matrix3cd::Zero(), b = Eigen::Matrix3cd::Zero();
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  EXPECT_NEAR(trace_distance(a, b), 1.0, 1e-15);
  EXPECT_NEAR(trace_distance(a, a), 0.0, 1e-15);
}
