#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ohmic/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Damped quantum oscillator in an Ohmic bath: wavepackets, Brownian width, fringes"};

  std::string scenario;
  std::string config_file;
  std::string mode = "exact";
  ohmic::RunConfig cfg;
  double z = 0.0;
  double sigma = 0.0;
  double r = 0.0;

  app.add_option("scenario", scenario, "fig1|fig2|fig3|fig3-text|width|evolve|interfere|validate")
      ->required();
  app.add_option("--eta", cfg.eta, "damping rate (units of omega0)");
  app.add_option("--temperature", cfg.temperature, "bath temperature (units of hbar omega0 / k)");
  app.add_option("--omega-cut", cfg.omega_cut, "bath cutoff (units of omega)");
  auto* z_opt = app.add_option("--z", z, "displacement of the second packet");
  auto* r_opt = app.add_option("--r", r, "sigma0 / sigma");
  auto* sigma_opt = app.add_option("--sigma", sigma, "initial packet width")->excludes(r_opt);
  app.add_option("--times", cfg.times, "times (units of 1/omega0)")->delimiter(',');
  app.add_option("--grid-points", cfg.grid_points, "grid size (0 = automatic)");
  app.add_option("--sigma-xi-mode", mode, "exact|estimate")->check(CLI::IsMember({"exact", "estimate"}));
  app.add_option("--seed", cfg.seed, "oracle RNG seed");
  app.add_option("--out", cfg.out, "output CSV (metrics JSON alongside)");
  app.add_option("--config", config_file, "JSON config; overrides flags");
  app.add_flag("--quick", cfg.quick, "reduced validate suite");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.scenario = ohmic::parse_scenario(scenario);
    cfg.sigma_xi_mode = mode == "exact" ? ohmic::WidthMode::exact : ohmic::WidthMode::estimate;
    if (z_opt->count() > 0) cfg.z = z;
    if (r_opt->count() > 0) cfg.r = r;
    if (sigma_opt->count() > 0) cfg.sigma = sigma;
    if (!config_file.empty()) {
      ohmic::apply_json_file(cfg, config_file);
    }
    return ohmic::run(cfg, std::cerr);
  } catch (const ohmic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
