#pragma once

// gamma sweeps of the average fidelity, optimum location and CSV output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ehqm/error_model.hpp"
#include "ehqm/holonomic_map.hpp"
#include "ehqm/lambda_core.hpp"
#include "ehqm/spin_bath.hpp"

namespace ehqm {

inline constexpr const char* kVersion = "1.0.0";

/// Fixed 12-significant-digit formatting used for every emitted number.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Compact formatting for labels (e.g. "0.15").
inline std::string format_label_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

struct GammaGrid {
  double start = 0.0;
  double stop = 8.0;
  double step = 0.05;

  void validate() const {
    if (!(step > 0.0) || !std::isfinite(step))
      throw std::invalid_argument("gamma grid: step must be > 0");
    if (!std::isfinite(start) || !std::isfinite(stop) || stop < start)
      throw std::invalid_argument("gamma grid: need finite start <= stop");
  }

  /// start, start + step, ... up to stop (inclusive within half a step).
  std::vector<double> points() const {
    validate();
    const auto count = static_cast<long>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
};

/// One F_av(gamma) curve: an error setting on a given bath.
struct Curve {
  std::string label;
  ErrorParams errors;
  SpinBath bath;
  double temperature_K = std::numeric_limits<double>::quiet_NaN();
};

struct SweepConfig {
  LambdaParams params{1.0, 2.0, std::numbers::pi / 2.0, 0.0};
  std::vector<Curve> curves;
  GammaGrid grid;
  int n_states = 30;
  int n_xi = 1;
  int threads = 0;  // 0 selects hardware concurrency
  std::string output_path;

  void validate() const {
    if (curves.empty()) throw std::invalid_argument("sweep config: no curves");
    grid.validate();
    if (n_states < 3) throw std::invalid_argument("sweep config: n_states must be >= 3");
    if (n_xi < 1) throw std::invalid_argument("sweep config: n_xi must be >= 1");
    for (const Curve& c : curves) c.errors.validate();
  }
};

struct Optimum {
  double gamma = 0.0;
  double f_av = 0.0;
  /// Argmax sits on the first or last grid point; the true optimum may lie
  /// outside the scanned range.
  bool on_boundary = false;
};

struct CurveResult {
  std::string label;
  std::vector<double> f_av;
  Optimum global;
  /// Best interior local maximum of the grid, refined. This is the "nonzero"
  /// optimum when F_av(0) is the global maximum.
  std::optional<Optimum> interior;
};

struct SweepResult {
  std::vector<double> gammas;
  std::vector<CurveResult> curves;
  long channel_builds = 0;
};

struct GoldenResult {
  double x;
  double f;
  int evaluations;
};

/// Golden-section maximization of a unimodal f on [a, b] until the bracket is
/// narrower than tol.
inline GoldenResult golden_section_maximize(const std::function<double(double)>& f, double a,
                                            double b, double tol = 1e-4) {
  if (!(b > a)) throw std::invalid_argument("golden_section_maximize: need a < b");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  ++evals;
  if (fc > fx && fc >= fd) return {c, fc, evals};
  if (fd > fx) return {d, fd, evals};
  return {x, fx, evals};
}

/// F_av of one curve at one coupling.
inline double evaluate_f_av(const LambdaParams& p, const Curve& curve, double gamma, int n_states,
                            int n_xi = 1) {
  return average_fidelity(build_channel(p, curve.errors, curve.bath, gamma), n_states, n_xi);
}

namespace detail {

inline Optimum refine_at(const std::function<double(double)>& f, const std::vector<double>& gammas,
                         const std::vector<double>& values, std::size_t i, double tol) {
  const std::size_t last = gammas.size() - 1;
  Optimum opt{gammas[i], values[i], i == 0 || i == last};
  if (opt.on_boundary || gammas.size() < 3) return opt;
  const GoldenResult g = golden_section_maximize(f, gammas[i - 1], gammas[i + 1], tol);
  if (g.f > opt.f_av) {
    opt.gamma = g.x;
    opt.f_av = g.f;
  }
  return opt;
}

}  // namespace detail

/// Locate the grid argmax and the best interior local maximum, each refined by
/// golden-section search on its bracketing grid cell pair.
inline void locate_optima(const std::function<double(double)>& f, const std::vector<double>& gammas,
                          CurveResult& curve, double tol = 1e-4) {
  const std::vector<double>& v = curve.f_av;
  if (v.empty()) throw std::invalid_argument("locate_optima: empty curve");
  const auto best = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  curve.global = detail::refine_at(f, gammas, v, best, tol);

  std::optional<std::size_t> interior;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] >= v[i - 1] && v[i] >= v[i + 1] && (!interior || v[i] > v[*interior])) interior = i;
  }
  curve.interior.reset();
  if (interior) curve.interior = detail::refine_at(f, gammas, v, *interior, tol);
}

/// Evaluate every (curve, gamma) pair. Tasks are independent and results are
/// stored by index, so the output does not depend on the worker count.
inline SweepResult run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult result;
  result.gammas = cfg.grid.points();
  const std::size_t ng = result.gammas.size();
  const std::size_t nc = cfg.curves.size();
  std::vector<double> values(ng * nc);

  std::atomic<std::size_t> next{0};
  std::atomic<long> builds{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < values.size(); task = next++) {
      const std::size_t c = task / ng;
      const std::size_t g = task % ng;
      values[task] = evaluate_f_av(cfg.params, cfg.curves[c], result.gammas[g], cfg.n_states, cfg.n_xi);
      ++builds;
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(values.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
  }
  result.channel_builds = builds.load();

  for (std::size_t c = 0; c < nc; ++c) {
    CurveResult cr;
    cr.label = cfg.curves[c].label;
    cr.f_av.assign(values.begin() + static_cast<long>(c * ng), values.begin() + static_cast<long>((c + 1) * ng));
    const Curve& curve = cfg.curves[c];
    locate_optima(
        [&](double gamma) { return evaluate_f_av(cfg.params, curve, gamma, cfg.n_states, cfg.n_xi); },
        result.gammas, cr);
    result.curves.push_back(std::move(cr));
  }
  return result;
}

/// Grid sweep followed by refinement; one optimum per curve.
inline std::vector<Optimum> optimize_gamma(const SweepConfig& cfg) {
  const SweepResult r = run_sweep(cfg);
  std::vector<Optimum> out;
  for (const CurveResult& c : r.curves) out.push_back(c.global);
  return out;
}

inline void write_metadata(std::ostream& os, const SweepConfig& cfg) {
  const LambdaParams& p = cfg.params;
  os << "# ehqm " << kVersion << "\n";
  os << "# omega_ns_inv=" << format_number(p.omega()) << " delta_ns_inv=" << format_number(p.delta())
     << " theta_rad=" << format_number(p.theta()) << " phi_rad=" << format_number(p.phi()) << "\n";
  os << "# tau0_ns=" << format_number(p.tau0()) << " chi_rad=" << format_number(p.chi())
     << " rotation_angle_over_pi=" << format_number(p.rotation_angle() / std::numbers::pi) << "\n";
  os << "# gamma_start_ns_inv=" << format_number(cfg.grid.start)
     << " gamma_stop_ns_inv=" << format_number(cfg.grid.stop)
     << " gamma_step_ns_inv=" << format_number(cfg.grid.step) << " n_states=" << cfg.n_states
     << " n_xi=" << cfg.n_xi << "\n";
  for (const Curve& c : cfg.curves) {
    const ErrorParams& e = c.errors;
    os << "# curve " << c.label << ": epsilon0=" << format_number(e.epsilon0)
       << " epsilon1=" << format_number(e.epsilon1) << " zeta0_rad=" << format_number(e.zeta0)
       << " zeta1_rad=" << format_number(e.zeta1) << " kappa=" << format_number(e.kappa)
       << " n_spins=" << c.bath.n_spins()
       << " alpha_ps_inv=" << format_number(c.bath.alpha() / kPsInvToNsInv);
    if (!std::isnan(c.temperature_K)) os << " temperature_K=" << format_number(c.temperature_K);
    os << " beta_ns=" << format_number(c.bath.beta())
       << " beta_alpha=" << format_number(c.bath.beta_alpha()) << "\n";
  }
}

inline void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const SweepResult& r) {
  write_metadata(os, cfg);
  os << "gamma_ns_inv";
  for (const CurveResult& c : r.curves) os << ",f_av_" << c.label;
  os << "\n";
  for (std::size_t g = 0; g < r.gammas.size(); ++g) {
    os << format_number(r.gammas[g]);
    for (const CurveResult& c : r.curves) os << "," << format_number(c.f_av[g]);
    os << "\n";
  }
}

inline void write_optima_csv(std::ostream& os, const SweepConfig& cfg, const SweepResult& r) {
  write_metadata(os, cfg);
  os << "curve,gamma_star_ns_inv,f_av_star,boundary_flag,interior_gamma_ns_inv,interior_f_av,"
        "f_av_at_gamma0,beta_alpha\n";
  for (std::size_t i = 0; i < r.curves.size(); ++i) {
    const CurveResult& c = r.curves[i];
    os << c.label << "," << format_number(c.global.gamma) << "," << format_number(c.global.f_av) << ","
       << (c.global.on_boundary ? 1 : 0) << ",";
    if (c.interior)
      os << format_number(c.interior->gamma) << "," << format_number(c.interior->f_av);
    else
      os << "nan,nan";
    os << "," << format_number(c.f_av.front()) << "," << format_number(cfg.curves[i].bath.beta_alpha())
       << "\n";
  }
}

/// Writes the CSV to path, throwing with the path in the message on failure.
inline void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace ehqm
