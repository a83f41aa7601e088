#include "ohmic/params.hpp"

#include <cmath>
#include <string>

#include "ohmic/errors.hpp"

namespace ohmic {

SystemParams derive_params(double eta, double temperature, double omega_cut) {
  if (!(eta > 0.0)) {
    throw ParameterError("eta must be > 0, got " + std::to_string(eta));
  }
  if (eta >= 2.0) {
    throw ParameterError("overdamped: eta must be < 2 omega0 for a real shifted frequency, got " +
                         std::to_string(eta));
  }
  if (!(temperature >= 0.0)) {
    throw ParameterError("temperature must be >= 0, got " + std::to_string(temperature));
  }
  if (!(omega_cut > 1.0)) {
    throw ParameterError("omega_cut must be > 1 (units of omega), got " + std::to_string(omega_cut));
  }

  SystemParams p;
  p.eta = eta;
  p.temperature = temperature;
  p.omega_cut = omega_cut;
  p.omega = std::sqrt(p.omega0 * p.omega0 - 0.25 * eta * eta);
  p.sigma0_sq = p.hbar / (2.0 * p.mass * p.omega0);
  return p;
}

}  // namespace ohmic
