#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ohmic/params.hpp"

namespace ohmic {

/// Coefficients of xi_j = b1 x_j0 + b2 xdot_j0 per unit coupling c_j / M.
/// Physical coefficients are these times c_j / M.
struct ResponseCoeffs {
  double omega_j = 0.0;
  double t = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// Response of the damped oscillator to the free motion of a bath mode:
///   b1 = -int_0^t G(t-s) cos(omega_j s) ds
///   b2 = -(1/omega_j) int_0^t G(t-s) sin(omega_j s) ds
/// with G(tau) = e^{-eta tau/2} sin(omega tau)/omega, in closed form.
ResponseCoeffs response_coeffs(const SystemParams& params, double omega_j, double t);

/// int_0^t G(tau) e^{-i omega_j tau} dtau. |.|^2 = b1^2 + omega_j^2 b2^2.
std::complex<double> response_transform(const SystemParams& params, double omega_j, double t);

/// coth(hbar omega_j / 2kT); exactly 1 at T = 0.
double thermal_factor(const SystemParams& params, double omega_j);

/// Spectral-density-weighted width contribution per unit frequency. The
/// bath masses and couplings cancel, leaving
///   (hbar eta omega_j / pi M) |response_transform|^2 coth(...).
double width_integrand(const SystemParams& params, double omega_j, double t);

struct QuadratureOptions {
  double rel_tol = 1e-8;
  unsigned max_depth = 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Brownian width with a sharp cutoff at params.cutoff_frequency(). Throws
/// QuadratureError (carrying the achieved estimate) when the tolerance is
/// not met.
QuadratureResult brownian_width_estimate(const SystemParams& params, double t,
                                         const QuadratureOptions& options = {});

double brownian_width(const SystemParams& params, double t,
                      const QuadratureOptions& options = {});

/// Panel boundaries used by brownian_width: resonance window omega +- 3 eta,
/// panel width <= pi / t elsewhere.
std::vector<double> quadrature_panels(const SystemParams& params, double t);

/// Low-temperature t -> infinity width
///   (hbar / 2 pi M omega) [pi/2 + atan(omega0^2 / (eta omega))].
/// Throws ParameterError for T > 0.
double equilibrium_width(const SystemParams& params);

/// sigma0^2 (1 - e^{-eta t}).
double approx_width(const SystemParams& params, double t);

enum class WidthMode { exact, estimate };

/// Dispatches to brownian_width (exact) or approx_width (estimate).
double sigma_xi_sq(const SystemParams& params, double t, WidthMode mode);

struct WidthCurve {
  std::vector<double> times;
  std::vector<double> sigma_xi_sq;
  double omega_cut = 0.0;
  double temperature = 0.0;
};

WidthCurve width_curve(const SystemParams& params, std::span<const double> times,
                       WidthMode mode = WidthMode::exact);

}  // namespace ohmic
