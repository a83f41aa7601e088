#include "ohmic/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>

#include "json.hpp"
#include "ohmic/bath.hpp"
#include "ohmic/errors.hpp"
#include "ohmic/interference.hpp"
#include "ohmic/io.hpp"
#include "ohmic/oracle.hpp"
#include "ohmic/wavepacket.hpp"

namespace ohmic {

using nlohmann::json;

Scenario parse_scenario(const std::string& name) {
  if (name == "fig1") return Scenario::fig1;
  if (name == "fig2") return Scenario::fig2;
  if (name == "fig3") return Scenario::fig3;
  if (name == "fig3-text") return Scenario::fig3_text;
  if (name == "width") return Scenario::width;
  if (name == "evolve") return Scenario::evolve;
  if (name == "interfere") return Scenario::interfere;
  if (name == "validate") return Scenario::validate;
  throw ConfigError("scenario: unknown value '" + name +
                    "' (expected fig1|fig2|fig3|fig3-text|width|evolve|interfere|validate)");
}

std::string to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::fig1: return "fig1";
    case Scenario::fig2: return "fig2";
    case Scenario::fig3: return "fig3";
    case Scenario::fig3_text: return "fig3-text";
    case Scenario::width: return "width";
    case Scenario::evolve: return "evolve";
    case Scenario::interfere: return "interfere";
    case Scenario::validate: return "validate";
  }
  return "unknown";
}

RunConfig default_config(Scenario scenario) {
  RunConfig c;
  c.scenario = scenario;
  return c;
}

namespace {

constexpr double kSigma0 = std::numbers::sqrt2 / 2.0;  // sqrt(hbar / 2 M omega0)

bool is_density_scenario(Scenario s) {
  return s == Scenario::fig3 || s == Scenario::fig3_text || s == Scenario::interfere;
}

bool is_wave_scenario(Scenario s) { return s == Scenario::fig2 || s == Scenario::evolve; }

std::string default_out(Scenario s) { return to_string(s) + ".csv"; }

}  // namespace

RunConfig resolve(RunConfig c) {
  SystemParams params;
  try {
    params = derive_params(c.eta, c.temperature, c.omega_cut);
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }

  if (c.sigma && c.r) {
    throw ConfigError("sigma, r: give at most one of them");
  }
  if (c.sigma && !(*c.sigma > 0.0)) {
    throw ConfigError("sigma: must be > 0");
  }
  if (c.r && !(*c.r > 0.0)) {
    throw ConfigError("r: must be > 0");
  }
  if (!c.sigma && !c.r) {
    c.r = (c.scenario == Scenario::fig3 || c.scenario == Scenario::fig3_text) ? 16.0 : 1.0;
  }
  if (c.r) {
    c.sigma = kSigma0 / *c.r;
  } else {
    c.r = kSigma0 / *c.sigma;
  }

  if (!c.z) {
    c.z = (c.scenario == Scenario::fig3_text ? 3.0 : 5.0) * kSigma0;
  }
  if (is_density_scenario(c.scenario) && *c.z == 0.0) {
    throw ConfigError("z: must be nonzero for two-packet interference");
  }

  if (c.times.empty()) {
    if (c.scenario == Scenario::fig1 || c.scenario == Scenario::width) {
      for (int i = 0; i <= 200; ++i) {
        c.times.push_back(0.25 * i);
      }
    } else if (c.scenario != Scenario::validate) {
      for (double wt : {0.0, 0.5, 1.5, 3.5}) {
        c.times.push_back(wt * std::numbers::pi / params.omega);
      }
    }
  }
  for (double t : c.times) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
      throw ConfigError("times: every time must be finite and >= 0");
    }
  }
  if (c.grid_points != 0 && c.grid_points < 16) {
    throw ConfigError("grid_points: must be 0 (automatic) or >= 16");
  }
  if (c.out.empty() && c.scenario != Scenario::validate) {
    c.out = default_out(c.scenario);
  }
  return c;
}

void apply_json_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open " + path);
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  const auto number = [](const json& node, const char* key, const char* section) {
    if (!node.at(key).is_number()) {
      throw ConfigError(std::string(section) + "." + key + ": must be a number");
    }
    return node.at(key).get<double>();
  };
  if (doc.contains("system")) {
    const auto& s = doc["system"];
    if (s.contains("eta")) config.eta = number(s, "eta", "system");
    if (s.contains("temperature")) config.temperature = number(s, "temperature", "system");
    if (s.contains("omega_cut")) config.omega_cut = number(s, "omega_cut", "system");
  }
  if (doc.contains("scenario")) {
    const auto& s = doc["scenario"];
    if (s.contains("name")) config.scenario = parse_scenario(s["name"].get<std::string>());
    if (s.contains("z")) config.z = number(s, "z", "scenario");
    if (s.contains("sigma")) {
      config.sigma = number(s, "sigma", "scenario");
      config.r.reset();
    }
    if (s.contains("r")) {
      config.r = number(s, "r", "scenario");
      config.sigma.reset();
    }
    if (s.contains("times")) config.times = s["times"].get<std::vector<double>>();
    if (s.contains("grid_points")) config.grid_points = s["grid_points"].get<std::size_t>();
    if (s.contains("sigma_xi_mode")) {
      const auto mode = s["sigma_xi_mode"].get<std::string>();
      if (mode != "exact" && mode != "estimate") {
        throw ConfigError("scenario.sigma_xi_mode: expected exact|estimate");
      }
      config.sigma_xi_mode = mode == "exact" ? WidthMode::exact : WidthMode::estimate;
    }
    if (s.contains("seed")) config.seed = s["seed"].get<std::uint64_t>();
    if (s.contains("out")) config.out = s["out"].get<std::string>();
  }
}

namespace {

std::vector<double> wave_grid(const GaussianWaveState& state, double z, std::size_t points) {
  const auto summary = packet_summary(state);
  const double half = std::abs(z) + 8.0 * std::max(summary.width, kSigma0);
  if (points != 0) {
    return uniform_grid(-half, half, points);
  }
  // Resolve the local wavenumber Im(B) - 2 Im(A) q across the packet.
  double k_max = 1.0;
  for (double q : {summary.center - 6.0 * summary.width, summary.center + 6.0 * summary.width}) {
    k_max = std::max(k_max, std::abs(state.B.imag() - 2.0 * state.A.imag() * q));
  }
  const auto n = static_cast<std::size_t>(std::ceil(40.0 * 2.0 * half * k_max / (2.0 * std::numbers::pi)));
  return uniform_grid(-half, half, std::max<std::size_t>(801, n + 1));
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

std::vector<Check> validation_checks(const SystemParams& params, bool quick, std::uint64_t seed) {
  std::vector<Check> checks;
  const auto add = [&](std::string name, double value, double tol) {
    checks.push_back({std::move(name), value, tol, value <= tol});
  };

  double worst = 0.0;
  for (double w : {0.5, 2.0, 7.3}) {
    for (double t : {1.0, 5.0}) {
      const auto closed = response_coeffs(params, w, t);
      const auto direct = oracle::convolution_response(params, w, t);
      const double scale = std::hypot(direct.b1, w * direct.b2);
      worst = std::max({worst, std::abs(closed.b1 - direct.b1) / scale,
                        w * std::abs(closed.b2 - direct.b2) / scale});
    }
  }
  add("response_coeffs vs numerical convolution (rel)", worst, 1e-8);

  const double z = 5.0 * kSigma0;
  const double sigma = kSigma0;
  const oracle::Grid grid{-12.0, 24.0 / 512.0, 512};
  const auto q = grid.points();
  const auto psi0 = initial_gaussian(z, sigma).sample(q);
  const std::vector<double> stepping_times =
      quick ? std::vector<double>{0.3} : std::vector<double>{0.3, 0.5 * std::numbers::pi / params.omega, 2.0};
  for (double t : stepping_times) {
    const auto exact = evolve_gaussian(params, z, sigma, t).sample(q);
    const double kinetic_limit = 0.5 * std::pow(std::numbers::pi / grid.dq, 2);
    const auto steps = static_cast<std::size_t>(std::ceil(t * kinetic_limit / 0.05));
    const auto stepped = oracle::numeric_propagate(params, grid, psi0, t, steps);
    add("closed form vs split-operator stepping, t=" + io::format_double(t),
        max_abs_diff(exact, stepped), 1e-6);
  }

  {
    const double t = 0.5 * std::numbers::pi / params.omega;
    const auto fine = uniform_grid(-6.0, 14.0, 4001);
    const auto psi_fine = initial_gaussian(z, sigma).sample(fine);
    std::vector<double> targets;
    for (double x = -4.0; x <= 4.0; x += 0.25) {
      targets.push_back(x);
    }
    const auto quad = oracle::quadrature_propagate(params, fine, psi_fine, t, targets);
    const auto exact = evolve_gaussian(params, z, sigma, t).sample(targets);
    add("closed form vs Green's function quadrature", max_abs_diff(exact, quad), 1e-6);
  }

  const auto bath = oracle::make_discrete_bath(params, 2000, seed);
  for (double t : {0.5, 10.0}) {
    const double reference = brownian_width(params, t);
    const double sum = oracle::discrete_brownian_width(params, bath, t);
    add("brownian_width vs discrete bath sum, t=" + io::format_double(t),
        std::abs(sum - reference) / reference, 1e-3);
  }
  {
    const double t = 10.0;
    const auto mc = oracle::mc_brownian_width(params, bath, t, quick ? 10000 : 100000);
    const double reference = brownian_width(params, t);
    add("Monte Carlo width within 3 standard errors, t=10",
        std::abs(mc.estimate - reference) / mc.std_error, 3.0);
  }
  if (params.temperature == 0.0) {
    const double t = 50.0 / params.eta;
    add("width at 50/eta vs equilibrium (rel)",
        std::abs(brownian_width(params, t) / equilibrium_width(params) - 1.0), 0.02);
  }
  return checks;
}

int run_validate(const RunConfig& c, const SystemParams& params, std::ostream& log,
                 std::vector<std::unique_ptr<io::AtomicFile>>& files) {
  const auto checks = validation_checks(params, c.quick, c.seed);
  json report = json::array();
  bool ok = true;
  for (const auto& check : checks) {
    log << (check.pass ? "PASS " : "FAIL ") << check.name << ": " << check.value
        << " (tolerance " << check.tolerance << ")\n";
    ok = ok && check.pass;
    report.push_back(
        {{"name", check.name}, {"value", check.value}, {"tolerance", check.tolerance}, {"pass", check.pass}});
  }
  if (!c.out.empty()) {
    auto file = std::make_unique<io::AtomicFile>(c.out);
    file->stream() << report.dump(2) << "\n";
    files.push_back(std::move(file));
  }
  return ok ? 0 : 1;
}

std::filesystem::path json_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".json");
  return p;
}

}  // namespace

int run(const RunConfig& config, std::ostream& log) {
  const RunConfig c = resolve(config);
  const SystemParams params = derive_params(c.eta, c.temperature, c.omega_cut);
  std::vector<std::unique_ptr<io::AtomicFile>> files;
  int status = 0;

  if (c.scenario == Scenario::fig1 || c.scenario == Scenario::width) {
    const auto curve = width_curve(params, c.times, c.sigma_xi_mode);
    auto file = std::make_unique<io::AtomicFile>(c.out);
    io::write_width_csv(file->stream(), params, curve, c.sigma_xi_mode);
    files.push_back(std::move(file));
    log << "wrote " << curve.times.size() << " width samples to " << c.out << "\n";
  } else if (is_wave_scenario(c.scenario)) {
    auto file = std::make_unique<io::AtomicFile>(c.out);
    auto& os = file->stream();
    os << "# " << io::kWavefunctionSchema << "\n";
    io::write_params_header(os, params);
    os << "# z=" << io::format_double(*c.z) << " sigma=" << io::format_double(*c.sigma)
       << " r=" << io::format_double(*c.r) << "\n";
    for (double t : c.times) {
      const auto state = evolve_gaussian(params, *c.z, *c.sigma, t);
      const auto grid = wave_grid(state, *c.z, c.grid_points);
      io::write_wavefunction_section(os, t, grid, state.sample(grid));
    }
    files.push_back(std::move(file));
    log << "wrote " << c.times.size() << " wavefunction sections to " << c.out << "\n";
  } else if (is_density_scenario(c.scenario)) {
    auto file = std::make_unique<io::AtomicFile>(c.out);
    auto& os = file->stream();
    os << "# " << io::kDensitySchema << "\n";
    io::write_params_header(os, params);
    os << "# z=" << io::format_double(*c.z) << " sigma=" << io::format_double(*c.sigma)
       << " r=" << io::format_double(*c.r)
       << " sigma_xi_mode=" << (c.sigma_xi_mode == WidthMode::exact ? "exact" : "estimate") << "\n";
    json summary = json::array();
    for (double t : c.times) {
      const double v = sigma_xi_sq(params, t, c.sigma_xi_mode);
      auto grid = interference_grid(params, *c.z, *c.sigma, t, v);
      if (c.grid_points != 0) {
        grid = uniform_grid(grid.front(), grid.back(), c.grid_points);
      }
      const auto profile = two_packet_density(params, *c.z, *c.sigma, t, grid, v);
      const auto envelope = two_packet_envelope(params, *c.z, *c.sigma, t, grid, v);
      io::write_density_section(os, profile, envelope);
      const auto m = fringe_metrics(profile, envelope);
      summary.push_back({{"t", t},
                         {"sigma_xi_sq", v},
                         {"sigma_theta_sq", profile.sigma_theta_sq},
                         {"wavenumber", m.wavenumber},
                         {"visibility", m.visibility},
                         {"fringe_count", m.fringe_count},
                         {"status", m.resolved ? "resolved" : "fringes-unresolved"}});
    }
    files.push_back(std::move(file));
    auto metrics = std::make_unique<io::AtomicFile>(json_path(c.out));
    metrics->stream() << summary.dump(2) << "\n";
    files.push_back(std::move(metrics));
    log << "wrote " << c.times.size() << " density sections to " << c.out << " and metrics to "
        << json_path(c.out).string() << "\n";
  } else {
    status = run_validate(c, params, log, files);
  }

  for (auto& file : files) {
    file->commit();
  }
  return status;
}

}  // namespace ohmic
