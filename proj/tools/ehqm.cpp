// Command-line front end: sweep, optimize, reproduce, validate, fidelity.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehqm/ehqm.hpp"

namespace {

using namespace ehqm;

/// Registers one --<key> option per config key on a subcommand.
struct ConfigOptions {
  std::string config_path;
  std::map<std::string, std::string> overrides;

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config_path, "key = value configuration file");
    for (const std::string& key : known_config_keys()) app->add_option("--" + key, overrides[key]);
  }

  SweepConfig load() const {
    KeyValues kv;
    if (!config_path.empty()) kv = load_config_file(config_path);
    for (const auto& [k, v] : overrides)
      if (!v.empty()) kv[k] = v;
    return build_sweep_config(kv);
  }
};

int print_checks(const std::string& title, const std::vector<Check>& checks) {
  int failures = 0;
  std::printf("%s\n", title.c_str());
  for (const Check& c : checks) {
    const char* tag = c.informational ? "INFO" : (c.pass ? "PASS" : "FAIL");
    std::printf("  [%s] %-55s measured %-16s expected %s\n", tag, c.name.c_str(), c.measured.c_str(),
                c.expected.c_str());
    if (!c.pass && !c.informational) ++failures;
  }
  return failures;
}

void print_optima(const SweepConfig& cfg, const SweepResult& r) {
  std::printf("%-24s %14s %12s %9s %14s %12s %12s\n", "curve", "gamma*", "F_av*", "boundary",
              "interior_g*", "interior_F*", "beta_alpha");
  for (std::size_t i = 0; i < r.curves.size(); ++i) {
    const CurveResult& c = r.curves[i];
    std::printf("%-24s %14.6f %12.8f %9s ", c.label.c_str(), c.global.gamma, c.global.f_av,
                c.global.on_boundary ? "yes" : "no");
    if (c.interior)
      std::printf("%14.6f %12.8f", c.interior->gamma, c.interior->f_av);
    else
      std::printf("%14s %12s", "-", "-");
    std::printf(" %12.6f\n", cfg.curves[i].bath.beta_alpha());
  }
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix + p.extension().string())).string();
}

int cmd_sweep(const ConfigOptions& opts) {
  const SweepConfig cfg = opts.load();
  const SweepResult r = run_sweep(cfg);
  if (cfg.output_path.empty()) {
    write_sweep_csv(std::cout, cfg, r);
  } else {
    write_file(cfg.output_path, [&](std::ostream& os) { write_sweep_csv(os, cfg, r); });
    write_file(sibling_path(cfg.output_path, "_optima"), [&](std::ostream& os) { write_optima_csv(os, cfg, r); });
    std::fprintf(stderr, "wrote %s\n", cfg.output_path.c_str());
  }
  return 0;
}

int cmd_optimize(const ConfigOptions& opts) {
  const SweepConfig cfg = opts.load();
  const SweepResult r = run_sweep(cfg);
  print_optima(cfg, r);
  if (!cfg.output_path.empty())
    write_file(cfg.output_path, [&](std::ostream& os) { write_optima_csv(os, cfg, r); });
  for (const CurveResult& c : r.curves)
    if (c.global.on_boundary)
      std::fprintf(stderr, "warning: %s: optimum on grid boundary (gamma = %g); it may lie outside the range\n",
                   c.label.c_str(), c.global.gamma);
  return 0;
}

int cmd_reproduce(const std::string& figure_arg, const std::string& outdir, int threads) {
  const Figure fig = parse_figure(figure_arg);
  SweepConfig cfg = figure_config(fig);
  cfg.threads = threads;
  const SweepResult r = run_sweep(cfg);

  std::filesystem::create_directories(outdir);
  const std::string name = figure_name(fig);
  const std::string sweep_path = (std::filesystem::path(outdir) / (name + ".csv")).string();
  const std::string optima_path = (std::filesystem::path(outdir) / (name + "_optima.csv")).string();
  write_file(sweep_path, [&](std::ostream& os) { write_sweep_csv(os, cfg, r); });
  write_file(optima_path, [&](std::ostream& os) { write_optima_csv(os, cfg, r); });
  std::printf("wrote %s and %s\n", sweep_path.c_str(), optima_path.c_str());
  std::printf("beta*alpha = %.6f  (k_B/hbar = %.5f ns^-1 K^-1)\n", cfg.curves.front().bath.beta_alpha(),
              kBoltzmannOverHbar);
  print_optima(cfg, r);

  std::vector<Check> checks;
  switch (fig) {
    case Figure::kFig1Left: checks = fig1_left_checks(r); break;
    case Figure::kFig2: checks = fig2_checks(r); break;
    case Figure::kFig1Right: {
      SweepConfig cold = figure_config(Figure::kFig1Left);
      cold.threads = threads;
      checks = fig1_right_checks(r, run_sweep(cold), cfg.grid.step);
      break;
    }
  }
  return print_checks("comparison with reference values:", checks) == 0 ? 0 : 1;
}

int cmd_validate(unsigned seed) {
  const ValidationReport rep = run_validation(seed);
  return print_checks("oracle validation:", validation_checks(rep)) == 0 ? 0 : 1;
}

int cmd_fidelity(const ConfigOptions& opts) {
  const SweepConfig cfg = opts.load();
  const double gamma = cfg.grid.start;
  for (const Curve& curve : cfg.curves) {
    const HolonomicChannel ch = build_channel(cfg.params, curve.errors, curve.bath, gamma);
    std::printf("curve %s  gamma = %s ns^-1  tau0 = %s ns  tau0' = %s ns  beta_alpha = %s\n",
                curve.label.c_str(), format_number(gamma).c_str(), format_number(ch.tau0()).c_str(),
                format_number(ch.error_cyclic_time()).c_str(), format_number(curve.bath.beta_alpha()).c_str());
    std::printf("  %-16s %s\n", "vartheta_rad", "F");
    for (int k = 0; k < cfg.n_states; ++k) {
      const double vt = k * std::numbers::pi / (cfg.n_states - 1);
      std::printf("  %-16s %s\n", format_number(vt).c_str(), format_number(state_fidelity(ch, {vt, 0.0})).c_str());
    }
    std::printf("  F_av = %s\n", format_number(average_fidelity(ch, cfg.n_states, cfg.n_xi)).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Environment-assisted holonomic map simulator"};
  app.set_version_flag("--version", std::string(ehqm::kVersion));
  app.require_subcommand(1);

  ConfigOptions sweep_opts, optimize_opts, fidelity_opts;
  auto* sweep = app.add_subcommand("sweep", "F_av over a gamma grid, written as CSV");
  sweep_opts.attach(sweep);
  auto* optimize = app.add_subcommand("optimize", "locate the optimal coupling per curve");
  optimize_opts.attach(optimize);
  auto* fidelity = app.add_subcommand("fidelity", "F(vartheta) table and F_av at gamma_ns_inv");
  fidelity_opts.attach(fidelity);

  std::string figure;
  std::string outdir = "results";
  int threads = 0;
  auto* reproduce = app.add_subcommand("reproduce", "rerun a reference sweep and compare");
  reproduce->add_option("figure", figure, "fig1_left | fig1_right | fig2")->required();
  reproduce->add_option("-o,--outdir", outdir, "output directory");
  reproduce->add_option("--threads", threads, "worker threads (0 = all cores)");

  unsigned seed = 20190101u;
  auto* validate = app.add_subcommand("validate", "closed-form channel vs brute-force oracle");
  validate->add_option("--seed", seed, "random grid seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return cmd_sweep(sweep_opts);
    if (*optimize) return cmd_optimize(optimize_opts);
    if (*fidelity) return cmd_fidelity(fidelity_opts);
    if (*reproduce) return cmd_reproduce(figure, outdir, threads);
    if (*validate) return cmd_validate(seed);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
