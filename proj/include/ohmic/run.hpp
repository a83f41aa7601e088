#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohmic/bath.hpp"

namespace ohmic {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Scenario { fig1, fig2, fig3, fig3_text, width, evolve, interfere, validate };

Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario scenario);

struct RunConfig {
  Scenario scenario = Scenario::fig1;

  // [system]
  double eta = 0.1;
  double temperature = 0.0;
  double omega_cut = 100.0;

  std::optional<double> z;        // defaults to 5 sigma0 (3 sigma0 for fig3-text)
  std::optional<double> sigma;    // initial packet width; exclusive with r
  std::optional<double> r;        // sigma0 / sigma
  std::vector<double> times;      // empty: scenario default
  std::size_t grid_points = 0;    // 0: automatic
  WidthMode sigma_xi_mode = WidthMode::exact;
  std::uint64_t seed = 20240101;
  std::string out;
  bool quick = false;
};

/// Defaults per scenario (eta = 0.1, z = 5 sigma0, four times at omega t = 0, pi/2,
/// 3 pi/2, 7 pi/2).
RunConfig default_config(Scenario scenario);

/// Fills scenario defaults into unset fields. Throws ConfigError naming the
/// offending field.
RunConfig resolve(RunConfig config);

/// Overrides fields from a JSON document with optional sections
/// {"system": {eta, temperature, omega_cut}, "scenario": {...}}.
void apply_json_file(RunConfig& config, const std::string& path);

/// Runs a scenario. Output files are written atomically; on failure none are
/// left behind. Returns the process exit status.
int run(const RunConfig& config, std::ostream& log);

}  // namespace ohmic
