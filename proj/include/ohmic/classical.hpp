#pragma once

#include "ohmic/params.hpp"

namespace ohmic {

/// Solutions of q'' + eta q' + omega0^2 q = 0 with initial data (1, 0) -> a1
/// and (0, 1) -> a2.
struct TrajectoryCoeffs {
  double t = 0.0;
  double a1 = 1.0;
  double a2 = 0.0;
  double a1_dot = 0.0;
  double a2_dot = 1.0;
};

TrajectoryCoeffs trajectory_coeffs(const SystemParams& params, double t);

/// Small-damping forms: a1 ~ e^{-eta t/2} cos(omega t),
/// omega0 a2 ~ e^{-eta t/2} sin(omega t), a2_dot ~ a1. Off by O(eta/omega0).
TrajectoryCoeffs approx_coeffs(const SystemParams& params, double t);

struct ClassicalOrbit {
  double q_c = 0.0;  // e^{-eta t/2} z cos(omega t)
  double k_c = 0.0;  // (z / 2 sigma0^2) e^{eta t/2} sin(omega t)
};

/// Orbit centre and wavenumber of a packet released at rest from z.
/// k_c carries the sign of sin(omega t); the packet's momentum points the
/// other way on the first half period (it moves toward the origin).
ClassicalOrbit classical_orbit(const SystemParams& params, double z, double t);

/// n-th exact zero of a1 (n = 0, 1, ...): omega t = pi - atan(2 omega / eta) + n pi.
double a1_zero_time(const SystemParams& params, int n);

/// n-th caustic (a2 = 0, n >= 1): t = n pi / omega.
double caustic_time(const SystemParams& params, int n);

}  // namespace ohmic
