#pragma once

// Baked-in configurations for the reference gamma sweeps, plus the checks
// comparing measured optima against the quoted values.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehqm/config.hpp"
#include "ehqm/sweep.hpp"

namespace ehqm {

enum class Figure { kFig1Left, kFig1Right, kFig2 };

inline Figure parse_figure(const std::string& name) {
  if (name == "fig1_left") return Figure::kFig1Left;
  if (name == "fig1_right") return Figure::kFig1Right;
  if (name == "fig2") return Figure::kFig2;
  throw std::invalid_argument("unknown figure '" + name + "' (expected fig1_left, fig1_right or fig2)");
}

inline std::string figure_name(Figure f) {
  switch (f) {
    case Figure::kFig1Left: return "fig1_left";
    case Figure::kFig1Right: return "fig1_right";
    case Figure::kFig2: return "fig2";
  }
  return "?";
}

inline SweepConfig figure_config(Figure f) {
  KeyValues kv{{"omega_ns_inv", "1"},      {"delta_ns_inv", "2"},       {"alpha_ps_inv", "15"},
               {"gamma_start_ns_inv", "0"}, {"gamma_stop_ns_inv", "8"}, {"gamma_step_ns_inv", "0.05"},
               {"n_states", "30"}};
  switch (f) {
    case Figure::kFig1Left:
      kv["symmetric_errors"] = "0.1,0.15,0.2";
      kv["n_spins"] = "20";
      kv["temperature_K"] = "50";
      break;
    case Figure::kFig1Right:
      kv["symmetric_errors"] = "0.1,0.15,0.2";
      kv["n_spins"] = "20";
      kv["temperature_K"] = "300";
      break;
    case Figure::kFig2:
      kv["symmetric_errors"] = "0.2";
      kv["n_spins"] = "16,22,28";
      kv["temperature_K"] = "50";
      break;
  }
  return build_sweep_config(kv);
}

struct Check {
  std::string name;
  std::string measured;
  std::string expected;
  bool pass;
  /// Reported only; not part of the exit status.
  bool informational = false;
};

namespace detail {

inline std::string pct(double x) { return format_label_number(std::round(x * 1e4) / 1e2) + "%"; }

inline std::string gamma_str(double g) { return format_label_number(std::round(g * 1e4) / 1e4); }

}  // namespace detail

/// gamma = 0 fidelities over the error range: extremes within 0.5 pp of the
/// quoted 98.6% / 95.5%, decreasing with the error size.
inline std::vector<Check> bath_free_checks(const SweepResult& r) {
  std::vector<double> f0;
  for (const CurveResult& c : r.curves) f0.push_back(c.f_av.front());
  const double hi = *std::max_element(f0.begin(), f0.end());
  const double lo = *std::min_element(f0.begin(), f0.end());
  bool decreasing = true;
  for (std::size_t i = 1; i < f0.size(); ++i) decreasing = decreasing && f0[i] < f0[i - 1];
  return {
      {"F_av(gamma=0) smallest error", detail::pct(hi), "98.6% +- 0.5 pp", std::abs(hi - 0.986) <= 0.005},
      {"F_av(gamma=0) largest error", detail::pct(lo), "95.5% +- 0.5 pp", std::abs(lo - 0.955) <= 0.005},
      {"F_av(gamma=0) decreasing in error", decreasing ? "yes" : "no", "yes", decreasing},
  };
}

/// Interior (nonzero-coupling) optimum of each curve. Missing interior maxima
/// fall back to the global grid optimum.
inline Optimum nonzero_optimum(const CurveResult& c) { return c.interior ? *c.interior : c.global; }

inline std::vector<Check> fig1_left_checks(const SweepResult& r) {
  std::vector<Check> out = bath_free_checks(r);
  for (const CurveResult& c : r.curves) {
    const Optimum o = nonzero_optimum(c);
    out.push_back({c.label + " gamma*", detail::gamma_str(o.gamma) + " ns^-1", "2.8 +- 0.2 ns^-1",
                   std::abs(o.gamma - 2.8) <= 0.2});
    out.push_back({c.label + " F_av(gamma*)", detail::pct(o.f_av), "[97.3, 97.4]% +- 0.5 pp",
                   o.f_av >= 0.973 - 0.005 && o.f_av <= 0.974 + 0.005});
  }
  return out;
}

/// The 300 K optimum is not quoted; only its separation from the 50 K optimum
/// is asserted.
inline std::vector<Check> fig1_right_checks(const SweepResult& r300, const SweepResult& r50, double step) {
  std::vector<Check> out;
  for (std::size_t i = 0; i < r300.curves.size(); ++i) {
    const Optimum hot = nonzero_optimum(r300.curves[i]);
    const Optimum cold = nonzero_optimum(r50.curves.at(i));
    out.push_back({r300.curves[i].label + " gamma*(300 K)", detail::gamma_str(hot.gamma) + " ns^-1",
                   "reported", true, true});
    out.push_back({r300.curves[i].label + " F_av(gamma*, 300 K)", detail::pct(hot.f_av), "reported",
                   true, true});
    out.push_back({r300.curves[i].label + " |gamma*(300 K) - gamma*(50 K)|",
                   detail::gamma_str(std::abs(hot.gamma - cold.gamma)) + " ns^-1",
                   "> " + detail::gamma_str(step) + " ns^-1", std::abs(hot.gamma - cold.gamma) > step});
  }
  return out;
}

inline std::vector<Check> fig2_checks(const SweepResult& r) {
  std::vector<Check> out;
  std::vector<double> g;
  for (const CurveResult& c : r.curves) {
    const Optimum o = nonzero_optimum(c);
    g.push_back(o.gamma);
    out.push_back({c.label + " gamma*", detail::gamma_str(o.gamma) + " ns^-1",
                   "[2.74, 2.80] +- 0.05 ns^-1", o.gamma >= 2.74 - 0.05 && o.gamma <= 2.80 + 0.05});
  }
  const double lo = *std::min_element(g.begin(), g.end());
  const double hi = *std::max_element(g.begin(), g.end());
  double mean = 0.0;
  for (double x : g) mean += x / static_cast<double>(g.size());
  const double spread = (hi - lo) / mean;
  out.push_back({"gamma* spread over N", detail::pct(spread), "< 3%", spread < 0.03});
  return out;
}

}  // namespace ehqm
