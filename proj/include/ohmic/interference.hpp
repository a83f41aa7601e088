#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ohmic/bath.hpp"
#include "ohmic/params.hpp"
#include "ohmic/wavepacket.hpp"

namespace ohmic {

/// exp(-a q^2 + b q + c) with complex coefficients and Re(a) > 0.
struct ComplexGaussian {
  cplx a;
  cplx b;
  cplx c;

  cplx operator()(double q) const { return std::exp(-a * q * q + b * q + c); }
  cplx integral() const;
  /// Convolution with a normalized Gaussian of variance v >= 0.
  ComplexGaussian convolved(double v) const;
};

/// Real part of a sum of complex Gaussians. Densities of coherent Gaussian
/// superpositions are closed under Brownian convolution in this form.
using GaussianMixture = std::vector<ComplexGaussian>;

double evaluate(const GaussianMixture& mixture, double q);
double integral(const GaussianMixture& mixture);
GaussianMixture convolve(const GaussianMixture& mixture, double sigma_xi_sq);

/// |sum_k psi_k|^2 expanded into pairwise products.
GaussianMixture density_mixture(std::span<const GaussianWaveState> terms);

enum class Provenance { closed_form, numeric };

struct DensityProfile {
  double t = 0.0;
  std::vector<double> grid;
  std::vector<double> rho;
  double sigma_xi_sq = 0.0;
  double sigma_theta_sq = 0.0;
  Provenance provenance = Provenance::closed_form;
  /// Closed-form profiles only: interference / envelope without the
  /// coherence factor, and the log of that factor. Fringes stay measurable
  /// after they fall below the rounding level of rho.
  std::vector<double> contrast;
  double log_coherence = 0.0;
  /// Midpoint between the packet centres; visibility is read around it.
  double midpoint = 0.0;

  double trapezoid_integral() const;
};

/// Density of a coherent superposition convolved with the Brownian width,
/// in closed form. sigma_xi_sq = 0 returns |psi|^2.
DensityProfile convolve_density(std::span<const GaussianWaveState> terms, double sigma_xi_sq,
                                std::span<const double> grid);
DensityProfile convolve_density(const GaussianWaveState& state, double sigma_xi_sq,
                                std::span<const double> grid);

/// Brute-force trapezoid convolution of a sampled density (uniform grid).
DensityProfile convolve_density(const DensityProfile& sampled, double sigma_xi_sq);

/// Normalized superposition of two width-sigma packets centred at 0 and z.
std::vector<GaussianWaveState> two_packet_state(double z, double sigma);

/// sigma^2 (a1^2 + r^4 omega0^2 a2^2) + sigma_xi^2 with r = sigma0 / sigma.
double sigma_theta_sq(const SystemParams& params, double sigma, double t, double sigma_xi_sq);

/// |z| r^2 omega0 |a2| / (2 sigma_theta^2): coefficient of q in the cosine.
double fringe_wavenumber(const SystemParams& params, double z, double sigma, double t,
                         double sigma_xi_sq);

/// Two-packet density
///   C^2 (sigma/sigma_theta) [ e^{-q^2/2 st} + e^{-(q - a1 z)^2/2 st}
///     + 2 e^{-(q^2 + (q - a1 z)^2)/4 st} cos((2 z q - a1 z^2) r^2 omega0 a2 / 4 st)
///       e^{-z^2 sigma_xi^2 / (8 sigma^2 st)} ],  st = sigma_theta^2,
/// with C fixed by normalizing the initial superposition.
DensityProfile two_packet_density(const SystemParams& params, double z, double sigma, double t,
                                  std::span<const double> grid, double sigma_xi_sq);
DensityProfile two_packet_density(const SystemParams& params, double z, double sigma, double t,
                                  std::span<const double> grid, WidthMode mode);

/// The same density without the interference term.
DensityProfile two_packet_envelope(const SystemParams& params, double z, double sigma, double t,
                                   std::span<const double> grid, double sigma_xi_sq);

/// [-L, L] with L = |z| + 6 max(sigma, sigma_theta), at least 40 samples per
/// fringe at the predicted wavenumber and never fewer than min_points.
std::vector<double> interference_grid(const SystemParams& params, double z, double sigma, double t,
                                      double sigma_xi_sq, std::size_t min_points = 2001);

struct FringeMetrics {
  double wavenumber = 0.0;
  double visibility = 0.0;
  double fringe_count = 0.0;  // 2 k sigma_theta
  bool resolved = false;      // false: fewer than 2 interior extrema ("fringes-unresolved")
};

/// Fringe wavenumber from the mean spacing of interior zero crossings of
/// rho - rho_envelope (or of the stored contrast), visibility as
/// max |rho - rho_envelope| / rho_envelope near the midpoint.
FringeMetrics fringe_metrics(const DensityProfile& profile, const DensityProfile& envelope);

/// ln(1 + 8 sigma0^2 / z^2) / eta. Throws ParameterError for z = 0.
double visibility_efold_time(const SystemParams& params, double z);

/// ln(r^2 - 1) / eta. Non-positive for r <= sqrt(2) (no growth phase);
/// throws ParameterError for r <= 1.
double wavenumber_turnover_time(const SystemParams& params, double r);

}  // namespace ohmic
