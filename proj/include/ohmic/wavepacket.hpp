#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ohmic/classical.hpp"
#include "ohmic/params.hpp"

namespace ohmic {

using cplx = std::complex<double>;

/// psi(q) = exp(-A q^2 + B q + C). Re(A) > 0.
struct GaussianWaveState {
  double t = 0.0;
  cplx A{0.5, 0.0};
  cplx B{0.0, 0.0};
  cplx C{0.0, 0.0};

  cplx operator()(double q) const { return std::exp(-A * q * q + B * q + C); }
  /// Closed-form integral of |psi|^2.
  double norm() const;
  std::vector<cplx> sample(std::span<const double> grid) const;
};

/// Normalized Gaussian of width sigma centred at z, zero mean momentum.
GaussianWaveState initial_gaussian(double z, double sigma);

/// Evolves any Gaussian under the effective Hamiltonian
/// e^{-eta t} P^2/2M + M omega0^2 e^{eta t} Q^2/2 by the exact Gaussian
/// integral against the Green's function:
///   D = a1 + 2i A0 a2 (hbar = M = 1)
///   A = e^{eta t} (2 A0 a2_dot - i a1_dot) / (2D),  B = B0 / D,
///   C = C0 + i a2 B0^2 / (2D) - log(D)/2.
/// Regular at caustics. log D is unwound continuously from t = 0.
GaussianWaveState propagate(const SystemParams& params, const GaussianWaveState& initial, double t);

/// A packet of width sigma released at rest from z, evolved to t.
GaussianWaveState evolve_gaussian(const SystemParams& params, double z, double sigma, double t);

/// G(q1, q0; t, 0). The square-root branch follows the continuous phase from
/// t -> 0+, picking up -pi/2 at every caustic. Throws CausticError when a2(t)
/// vanishes (|omega t - n pi| < 1e-9).
cplx greens_function(const SystemParams& params, double q1, double q0, double t);

struct PacketSummary {
  double center = 0.0;
  double width = 0.0;       // standard deviation of |psi|^2
  double wavenumber = 0.0;  // phase gradient at the centre
};

PacketSummary packet_summary(const GaussianWaveState& state);

/// Phase gradient of sampled amplitudes at the |psi|^2 centroid.
double extract_wavenumber(std::span<const double> grid, std::span<const cplx> psi);

/// Uniform grid of n points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);

}  // namespace ohmic
