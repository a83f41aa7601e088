#pragma once

namespace ohmic {

// Natural units throughout: hbar = M = omega0 = 1.

struct SystemParams {
  double eta = 0.1;          // damping rate, units of omega0
  double omega0 = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  double temperature = 0.0;  // units of hbar*omega0/k; 0 is the low-temperature limit
  double omega_cut = 100.0;  // bath cutoff in units of the shifted frequency omega

  // derived
  double omega = 0.0;      // sqrt(omega0^2 - eta^2/4)
  double sigma0_sq = 0.0;  // hbar / (2 M omega0)

  /// Absolute cutoff frequency omega_cut * omega.
  double cutoff_frequency() const noexcept { return omega_cut * omega; }
};

/// Builds validated parameters in natural units.
/// Throws ParameterError for eta <= 0, eta >= 2 (overdamped), temperature < 0
/// or omega_cut <= 1.
SystemParams derive_params(double eta, double temperature = 0.0, double omega_cut = 100.0);

}  // namespace ohmic
