#pragma once

// Brute-force references for validating the closed-form channel. Nothing here
// calls into lambda_core / error_model / holonomic_map: Hamiltonians are built
// from the raw Rabi frequencies and exponentiated numerically.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ehqm::oracle {

using complex = std::complex<double>;
using DenseOperator = Eigen::MatrixXcd;

inline constexpr int kMaxCollapsedSpins = 12;
inline constexpr int kMaxProductSpins = 6;

inline double hermiticity_error(const DenseOperator& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// exp(-i H t) through the eigendecomposition of a Hermitian H.
inline DenseOperator expm_hermitian(const DenseOperator& h, double t) {
  if (h.rows() != h.cols()) throw std::invalid_argument("expm_hermitian: matrix must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (hermiticity_error(h) > 1e-12 * scale)
    throw std::invalid_argument("expm_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("expm_hermitian: eigensolver failed");
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(-i H t) by scaling and squaring of a truncated Taylor series. Works for
/// any square H; used as the second, independent route.
inline DenseOperator expm_taylor(const DenseOperator& h, double t) {
  const Eigen::Index n = h.rows();
  DenseOperator a = complex(0.0, -t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  a /= std::pow(2.0, squarings);

  DenseOperator result = DenseOperator::Identity(n, n);
  DenseOperator term = DenseOperator::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * a) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

/// Pulse-pair Hamiltonian assembled from the Rabi frequencies in the
/// {|0>, |1>, |e>} basis:
///   D |e><e| + sum_j (Omega_j |e><j| + conj(Omega_j) |j><e|).
inline DenseOperator lambda_hamiltonian(complex rabi0, complex rabi1, double detuning) {
  DenseOperator h = DenseOperator::Zero(3, 3);
  h(2, 2) = detuning;
  h(2, 0) = rabi0;
  h(0, 2) = std::conj(rabi0);
  h(2, 1) = rabi1;
  h(1, 2) = std::conj(rabi1);
  return h;
}

/// Raw pulse description (ideal controls plus systematic errors). The common
/// phase zeta1 is absorbed into the phase reference of |e>.
struct PulseSpec {
  double omega;
  double delta;
  double theta;
  double phi;
  double epsilon0 = 0.0;
  double epsilon1 = 0.0;
  double zeta0 = 0.0;
  double zeta1 = 0.0;
  double kappa = 0.0;

  complex ideal_rabi0() const { return omega * std::polar(1.0, phi) * std::sin(0.5 * theta); }
  complex ideal_rabi1() const { return -omega * std::cos(0.5 * theta); }
  complex rabi0() const { return (1.0 + epsilon0) * std::polar(1.0, zeta0 - zeta1) * ideal_rabi0(); }
  complex rabi1() const { return (1.0 + epsilon1) * ideal_rabi1(); }
  double error_detuning() const { return (1.0 + kappa) * delta; }
  double ideal_gap() const { return std::sqrt(delta * delta + 4.0 * omega * omega); }
  double ideal_tau() const { return 2.0 * std::numbers::pi / ideal_gap(); }
};

/// Bright state read off the coupling column: omega |b> = sum_j conj(Omega_j)|j>.
inline Eigen::Vector3cd bright_from_rabi(complex rabi0, complex rabi1) {
  Eigen::Vector3cd b(std::conj(rabi0), std::conj(rabi1), 0.0);
  return b / b.norm();
}

/// Dark state: orthogonal to the bright state inside span{|0>, |1>}.
inline Eigen::Vector3cd dark_from_rabi(complex rabi0, complex rabi1) {
  Eigen::Vector3cd d(-rabi1, rabi0, 0.0);
  return d / d.norm();
}

/// Thermal bath description for the oracle: N spins, splitting alpha, beta.
struct BathSpec {
  int n_spins;
  double alpha;
  double beta;
};

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Input |psi> = cos(vt/2)|d> + e^{i xi} sin(vt/2)|b> on the ideal pair. The
/// Rabi-derived vectors already carry the phase convention of |d>, |b>.
inline Eigen::Vector3cd input_vector(const PulseSpec& p, double vartheta, double xi) {
  const Eigen::Vector3cd d = dark_from_rabi(p.ideal_rabi0(), p.ideal_rabi1());
  const Eigen::Vector3cd b = bright_from_rabi(p.ideal_rabi0(), p.ideal_rabi1());
  return std::cos(0.5 * vartheta) * d + std::polar(std::sin(0.5 * vartheta), xi) * b;
}

/// Partial trace over the bath of a (3 * K) x (3 * K) operator ordered
/// system (x) bath.
inline Eigen::Matrix3cd partial_trace_bath(const DenseOperator& rho, int bath_dim) {
  Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < bath_dim; ++k) out(i, j) += rho(i * bath_dim + k, j * bath_dim + k);
  return out;
}

/// Basis used for the bath in full_evolution.
enum class BathBasis {
  kCollapsed,  // one representative per level m, weight C(N,m) e^{-beta alpha m} / Z
  kProduct,    // all 2^N spin configurations
};

/// rho(tau0) = Tr_B[ U (|psi><psi| (x) rho_beta) U^dagger ] with
/// H = H_L (x) 1 + 1 (x) H_B + gamma |e><e| (x) h_B, evolved by dense
/// exponentiation for the ideal run time.
inline Eigen::Matrix3cd full_evolution(const PulseSpec& pulse, const BathSpec& bath, double gamma,
                                       double vartheta, double xi,
                                       BathBasis basis = BathBasis::kCollapsed) {
  const int n = bath.n_spins;
  const int cap = basis == BathBasis::kCollapsed ? kMaxCollapsedSpins : kMaxProductSpins;
  if (n < 0 || n > cap)
    throw std::invalid_argument("full_evolution: n_spins " + std::to_string(n) +
                                " outside the brute-force cap " + std::to_string(cap));

  // Diagonal bath operators: H_B = alpha S_z, h_B = S_z + N/2, rho_beta.
  // Boltzmann factors are taken relative to the ground level before normalizing.
  std::vector<double> hb_diag;
  std::vector<double> coupling_diag;
  std::vector<double> rho_diag;
  if (basis == BathBasis::kCollapsed) {
    for (int m = 0; m <= n; ++m) {
      const double sz = m - 0.5 * n;
      hb_diag.push_back(bath.alpha * sz);
      coupling_diag.push_back(sz + 0.5 * n);
      rho_diag.push_back(binomial(n, m) * std::exp(-bath.beta * bath.alpha * (sz + 0.5 * n)));
    }
  } else {
    const int dim = 1 << n;
    for (int cfg = 0; cfg < dim; ++cfg) {
      double sz = 0.0;
      for (int s = 0; s < n; ++s) sz += ((cfg >> s) & 1) ? 0.5 : -0.5;
      hb_diag.push_back(bath.alpha * sz);
      coupling_diag.push_back(sz + 0.5 * n);
      rho_diag.push_back(std::exp(-bath.beta * bath.alpha * (sz + 0.5 * n)));
    }
  }
  double z = 0.0;
  for (double r : rho_diag) z += r;
  for (double& r : rho_diag) r /= z;

  const int kb = static_cast<int>(hb_diag.size());
  const int dim = 3 * kb;
  const DenseOperator hl = lambda_hamiltonian(pulse.rabi0(), pulse.rabi1(), pulse.error_detuning());

  DenseOperator h = DenseOperator::Zero(dim, dim);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < kb; ++k) h(i * kb + k, j * kb + k) += hl(i, j);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < kb; ++k) h(i * kb + k, i * kb + k) += hb_diag[k];
  for (int k = 0; k < kb; ++k) h(2 * kb + k, 2 * kb + k) += gamma * coupling_diag[k];

  const Eigen::Vector3cd psi = input_vector(pulse, vartheta, xi);
  DenseOperator rho0 = DenseOperator::Zero(dim, dim);
  const Eigen::Matrix3cd sys = psi * psi.adjoint();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < kb; ++k) rho0(i * kb + k, j * kb + k) = sys(i, j) * rho_diag[k];

  const DenseOperator u = expm_hermitian(h, pulse.ideal_tau());
  return partial_trace_bath(u * rho0 * u.adjoint(), kb);
}

/// Smallest t > 0 with <e| exp(-i H t) |b> = 0 for the bath-free Hamiltonian
/// with the given Rabi frequencies and detuning. Sign changes of
/// Im(<e|U|b> conj(<b|U|b>)) are bracketed on a fine scan and bisected; the
/// first root with vanishing leakage amplitude is returned.
inline double find_cyclic_time(complex rabi0, complex rabi1, double detuning) {
  const DenseOperator h = lambda_hamiltonian(rabi0, rabi1, detuning);
  const Eigen::Vector3cd b = bright_from_rabi(rabi0, rabi1);
  const Eigen::Vector3cd e(0.0, 0.0, 1.0);
  if (b.hasNaN()) throw std::invalid_argument("find_cyclic_time: both Rabi frequencies vanish");

  auto amplitudes = [&](double t) {
    const DenseOperator u = expm_hermitian(h, t);
    const Eigen::Vector3cd ub = u * b;
    return std::pair<complex, complex>{e.dot(ub), b.dot(ub)};
  };
  auto signed_fn = [&](double t) {
    const auto [leak, stay] = amplitudes(t);
    return std::imag(leak * std::conj(stay));
  };

  const double bound = 2.0 * h.norm();
  const double step = std::numbers::pi / (8.0 * bound);
  double lo = step;
  double flo = signed_fn(lo);
  for (int iter = 0; iter < 1000000; ++iter) {
    const double hi = lo + step;
    const double fhi = signed_fn(hi);
    if (flo == 0.0 || (flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b2 = hi, fa = flo;
      for (int k = 0; k < 200 && b2 - a > 1e-15 * b2; ++k) {
        const double mid = 0.5 * (a + b2);
        const double fm = signed_fn(mid);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b2 = mid;
        }
      }
      const double root = 0.5 * (a + b2);
      if (std::abs(amplitudes(root).first) < 1e-10) return root;
    }
    lo = hi;
    flo = fhi;
  }
  throw std::runtime_error("find_cyclic_time: no cyclic time found");
}

/// Trace distance (1/2) ||a - b||_1 for Hermitian a, b.
inline double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd diff = a - b;
  const Eigen::MatrixXcd herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace ehqm::oracle
