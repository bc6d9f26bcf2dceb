#pragma once

// Flat key = value configuration. Physical quantities carry their unit in the
// key name. List-valued keys (symmetric_errors, n_spins, temperature_K) expand
// into one curve per combination.

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ehqm/sweep.hpp"

namespace ehqm {

using KeyValues = std::map<std::string, std::string>;

inline const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> keys = {
      "omega_ns_inv",       "delta_ns_inv",      "theta_rad",         "phi_rad",
      "epsilon0",           "epsilon1",          "zeta0_rad",         "zeta1_rad",
      "kappa",              "symmetric_errors",  "n_spins",           "alpha_ps_inv",
      "temperature_K",      "gamma_start_ns_inv", "gamma_stop_ns_inv", "gamma_step_ns_inv",
      "gamma_ns_inv",       "n_states",          "n_xi",              "threads",
      "output"};
  return keys;
}

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline void check_known_key(const std::string& key) {
  for (const std::string& k : known_config_keys())
    if (k == key) return;
  throw std::invalid_argument("unknown config key '" + key + "'");
}

/// Parses "key = value" lines; '#' starts a comment.
inline KeyValues parse_config_text(const std::string& text, const std::string& origin = "<config>") {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    try {
      check_known_key(key);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

inline double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
  }
  if (trim(value.substr(used)) != "")
    throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
  return x;
}

inline int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_double(key, value);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + value + "'");
  return static_cast<int>(x);
}

inline std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
  return out;
}

namespace detail {

inline double get_or(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_double(key, it->second);
}

inline std::string error_label(const ErrorParams& e) {
  if (e.epsilon0 == e.epsilon1 && e.epsilon0 == e.kappa && e.zeta0 == e.zeta1)
    return "eps_" + format_label_number(e.epsilon0);
  return "eps0_" + format_label_number(e.epsilon0) + "_eps1_" + format_label_number(e.epsilon1) +
         "_dzeta_" + format_label_number(e.zeta0 - e.zeta1) + "_kappa_" +
         format_label_number(e.kappa);
}

}  // namespace detail

/// Builds a sweep configuration. Defaults follow the fig1_left setup:
/// omega = 1 ns^-1, delta = 2 ns^-1, N = 20, alpha = 15 ps^-1, T = 50 K,
/// gamma in [0, 8] ns^-1 step 0.05, n_states = 30.
inline SweepConfig build_sweep_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) check_known_key(key);
  using detail::get_or;

  SweepConfig cfg;
  cfg.params = LambdaParams(get_or(kv, "omega_ns_inv", 1.0), get_or(kv, "delta_ns_inv", 2.0),
                            get_or(kv, "theta_rad", std::numbers::pi / 2.0),
                            get_or(kv, "phi_rad", 0.0));

  std::vector<ErrorParams> errors;
  if (const auto it = kv.find("symmetric_errors"); it != kv.end()) {
    for (const char* k : {"epsilon0", "epsilon1", "zeta0_rad", "zeta1_rad", "kappa"})
      if (kv.contains(k))
        throw std::invalid_argument(std::string("config: symmetric_errors conflicts with ") + k);
    for (double v : parse_list(it->first, it->second)) errors.push_back(ErrorParams::symmetric(v));
  } else {
    errors.push_back({get_or(kv, "epsilon0", 0.0), get_or(kv, "epsilon1", 0.0),
                      get_or(kv, "zeta0_rad", 0.0), get_or(kv, "zeta1_rad", 0.0),
                      get_or(kv, "kappa", 0.0)});
  }

  std::vector<int> spins{20};
  if (const auto it = kv.find("n_spins"); it != kv.end()) {
    spins.clear();
    for (double v : parse_list(it->first, it->second)) {
      if (v != std::floor(v) || v < 0) throw std::invalid_argument("config: n_spins must be integers >= 0");
      spins.push_back(static_cast<int>(v));
    }
  }
  std::vector<double> temps{50.0};
  if (const auto it = kv.find("temperature_K"); it != kv.end()) temps = parse_list(it->first, it->second);
  const double alpha = get_or(kv, "alpha_ps_inv", 15.0) * kPsInvToNsInv;

  for (const ErrorParams& e : errors) {
    e.validate();
    for (int n : spins) {
      for (double t : temps) {
        std::string label = detail::error_label(e);
        if (spins.size() > 1) label += "_N_" + std::to_string(n);
        if (temps.size() > 1) label += "_T_" + format_label_number(t) + "K";
        cfg.curves.push_back({label, e, SpinBath::from_temperature(n, alpha, t), t});
      }
    }
  }

  if (const auto it = kv.find("gamma_ns_inv"); it != kv.end()) {
    const double g = parse_double(it->first, it->second);
    cfg.grid = {g, g, 1.0};
  } else {
    cfg.grid = {get_or(kv, "gamma_start_ns_inv", 0.0), get_or(kv, "gamma_stop_ns_inv", 8.0),
                get_or(kv, "gamma_step_ns_inv", 0.05)};
  }
  if (const auto it = kv.find("n_states"); it != kv.end()) cfg.n_states = parse_int(it->first, it->second);
  if (const auto it = kv.find("n_xi"); it != kv.end()) cfg.n_xi = parse_int(it->first, it->second);
  if (const auto it = kv.find("threads"); it != kv.end()) cfg.threads = parse_int(it->first, it->second);
  if (const auto it = kv.find("output"); it != kv.end()) cfg.output_path = it->second;
  cfg.validate();
  return cfg;
}

}  // namespace ehqm
