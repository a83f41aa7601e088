#include "ohmic/classical.hpp"

#include <cmath>
#include <numbers>

namespace ohmic {

TrajectoryCoeffs trajectory_coeffs(const SystemParams& params, double t) {
  const double w = params.omega;
  const double h = 0.5 * params.eta;
  const double decay = std::exp(-h * t);
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);

  TrajectoryCoeffs out;
  out.t = t;
  out.a1 = decay * (c + (h / w) * s);
  out.a2 = decay * s / w;
  out.a2_dot = decay * (c - (h / w) * s);
  // a1' = -omega0^2 a2 follows from the ODE with a1(0) = 1, a1'(0) = 0.
  out.a1_dot = -params.omega0 * params.omega0 * out.a2;
  return out;
}

TrajectoryCoeffs approx_coeffs(const SystemParams& params, double t) {
  const double decay = std::exp(-0.5 * params.eta * t);
  TrajectoryCoeffs out;
  out.t = t;
  out.a1 = decay * std::cos(params.omega * t);
  out.a2 = decay * std::sin(params.omega * t) / params.omega0;
  out.a2_dot = out.a1;
  out.a1_dot = -params.omega0 * params.omega0 * out.a2;
  return out;
}

ClassicalOrbit classical_orbit(const SystemParams& params, double z, double t) {
  const double wt = params.omega * t;
  ClassicalOrbit orbit;
  orbit.q_c = std::exp(-0.5 * params.eta * t) * z * std::cos(wt);
  orbit.k_c = z / (2.0 * params.sigma0_sq) * std::exp(0.5 * params.eta * t) * std::sin(wt);
  return orbit;
}

double a1_zero_time(const SystemParams& params, int n) {
  const double phase = std::numbers::pi - std::atan(2.0 * params.omega / params.eta);
  return (phase + n * std::numbers::pi) / params.omega;
}

double caustic_time(const SystemParams& params, int n) {
  return n * std::numbers::pi / params.omega;
}

}  // namespace ohmic
