#include "ohmic/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ohmic/classical.hpp"
#include "ohmic/errors.hpp"

namespace ohmic {

cplx ComplexGaussian::integral() const {
  return std::sqrt(std::numbers::pi / a) * std::exp(b * b / (4.0 * a) + c);
}

ComplexGaussian ComplexGaussian::convolved(double v) const {
  if (v == 0.0) {
    return *this;
  }
  const cplx den = 1.0 + 2.0 * a * v;
  return {a / den, b / den, c + b * b * v / (2.0 * den) - 0.5 * std::log(den)};
}

double evaluate(const GaussianMixture& mixture, double q) {
  cplx sum{0.0, 0.0};
  for (const auto& g : mixture) {
    sum += g(q);
  }
  return sum.real();
}

double integral(const GaussianMixture& mixture) {
  cplx sum{0.0, 0.0};
  for (const auto& g : mixture) {
    sum += g.integral();
  }
  return sum.real();
}

GaussianMixture convolve(const GaussianMixture& mixture, double sigma_xi_sq) {
  if (!(sigma_xi_sq >= 0.0)) {
    throw ParameterError("sigma_xi_sq must be >= 0");
  }
  GaussianMixture out;
  out.reserve(mixture.size());
  for (const auto& g : mixture) {
    out.push_back(g.convolved(sigma_xi_sq));
  }
  return out;
}

GaussianMixture density_mixture(std::span<const GaussianWaveState> terms) {
  GaussianMixture out;
  out.reserve(terms.size() * terms.size());
  for (const auto& k : terms) {
    for (const auto& l : terms) {
      out.push_back({std::conj(k.A) + l.A, std::conj(k.B) + l.B, std::conj(k.C) + l.C});
    }
  }
  return out;
}

double DensityProfile::trapezoid_integral() const {
  double sum = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    sum += 0.5 * (grid[i] - grid[i - 1]) * (rho[i] + rho[i - 1]);
  }
  return sum;
}

DensityProfile convolve_density(std::span<const GaussianWaveState> terms, double sigma_xi_sq,
                                std::span<const double> grid) {
  if (terms.empty()) {
    throw ParameterError("convolve_density: empty superposition");
  }
  const auto mixture = convolve(density_mixture(terms), sigma_xi_sq);
  DensityProfile out;
  out.t = terms.front().t;
  out.grid.assign(grid.begin(), grid.end());
  out.rho.reserve(grid.size());
  for (double q : grid) {
    out.rho.push_back(evaluate(mixture, q));
  }
  out.sigma_xi_sq = sigma_xi_sq;
  out.sigma_theta_sq = 1.0 / (4.0 * terms.front().A.real()) + sigma_xi_sq;
  out.provenance = Provenance::closed_form;
  double center_sum = 0.0;
  for (const auto& term : terms) {
    center_sum += packet_summary(term).center;
  }
  out.midpoint = center_sum / static_cast<double>(terms.size());
  return out;
}

DensityProfile convolve_density(const GaussianWaveState& state, double sigma_xi_sq,
                                std::span<const double> grid) {
  return convolve_density(std::span<const GaussianWaveState>(&state, 1), sigma_xi_sq, grid);
}

DensityProfile convolve_density(const DensityProfile& sampled, double sigma_xi_sq) {
  if (!(sigma_xi_sq >= 0.0)) {
    throw ParameterError("sigma_xi_sq must be >= 0");
  }
  DensityProfile out = sampled;
  out.provenance = Provenance::numeric;
  out.contrast.clear();
  out.log_coherence = 0.0;
  out.sigma_xi_sq = sampled.sigma_xi_sq + sigma_xi_sq;
  out.sigma_theta_sq = sampled.sigma_theta_sq + sigma_xi_sq;
  if (sigma_xi_sq == 0.0) {
    return out;
  }
  const std::size_t n = sampled.grid.size();
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * sigma_xi_sq);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double h = j == 0       ? 0.5 * (sampled.grid[1] - sampled.grid[0])
                       : j == n - 1 ? 0.5 * (sampled.grid[n - 1] - sampled.grid[n - 2])
                                    : 0.5 * (sampled.grid[j + 1] - sampled.grid[j - 1]);
      const double d = sampled.grid[i] - sampled.grid[j];
      sum += h * sampled.rho[j] * std::exp(-d * d / (2.0 * sigma_xi_sq));
    }
    out.rho[i] = norm * sum;
  }
  return out;
}

std::vector<GaussianWaveState> two_packet_state(double z, double sigma) {
  std::vector<GaussianWaveState> terms{initial_gaussian(0.0, sigma), initial_gaussian(z, sigma)};
  const double norm = 2.0 + 2.0 * std::exp(-z * z / (8.0 * sigma * sigma));
  for (auto& term : terms) {
    term.C -= 0.5 * std::log(norm);
  }
  return terms;
}

double sigma_theta_sq(const SystemParams& params, double sigma, double t, double sigma_xi_sq) {
  const auto c = trajectory_coeffs(params, t);
  const double r2 = params.sigma0_sq / (sigma * sigma);
  const double w0a2 = params.omega0 * c.a2;
  return sigma * sigma * (c.a1 * c.a1 + r2 * r2 * w0a2 * w0a2) + sigma_xi_sq;
}

double fringe_wavenumber(const SystemParams& params, double z, double sigma, double t,
                         double sigma_xi_sq) {
  const auto c = trajectory_coeffs(params, t);
  const double r2 = params.sigma0_sq / (sigma * sigma);
  return std::abs(z) * r2 * params.omega0 * std::abs(c.a2) /
         (2.0 * sigma_theta_sq(params, sigma, t, sigma_xi_sq));
}

namespace {

struct TwoPacketParts {
  std::vector<double> direct;
  std::vector<double> cross;
  std::vector<double> contrast;
  double log_coherence = 0.0;
  double sigma_theta_sq = 0.0;
  double midpoint = 0.0;
};

TwoPacketParts two_packet_parts(const SystemParams& params, double z, double sigma, double t,
                                std::span<const double> grid, double sigma_xi_sq) {
  if (!(sigma > 0.0)) {
    throw ParameterError("sigma must be > 0");
  }
  if (!(t >= 0.0)) {
    throw ParameterError("t must be >= 0");
  }
  if (!(sigma_xi_sq >= 0.0)) {
    throw ParameterError("sigma_xi_sq must be >= 0");
  }
  const auto c = trajectory_coeffs(params, t);
  const double s2 = sigma * sigma;
  const double r2 = params.sigma0_sq / s2;
  const double st = sigma_theta_sq(params, sigma, t, sigma_xi_sq);
  const double overlap = std::exp(-z * z / (8.0 * s2));
  const double c_sq = 1.0 / (std::sqrt(2.0 * std::numbers::pi * s2) * (2.0 + 2.0 * overlap));
  const double scale = c_sq * sigma / std::sqrt(st);
  const double log_coherence = -z * z * sigma_xi_sq / (8.0 * s2 * st);
  const double coherence = std::exp(log_coherence);
  const double shift = c.a1 * z;
  const double phase_rate = r2 * params.omega0 * c.a2 / (4.0 * st);

  TwoPacketParts parts;
  parts.sigma_theta_sq = st;
  parts.midpoint = 0.5 * shift;
  parts.log_coherence = log_coherence;
  parts.direct.reserve(grid.size());
  parts.cross.reserve(grid.size());
  parts.contrast.reserve(grid.size());
  for (double q : grid) {
    const double d = q - shift;
    parts.direct.push_back(scale * (std::exp(-q * q / (2.0 * st)) + std::exp(-d * d / (2.0 * st))));
    const double phase = (2.0 * z * q - shift * z) * phase_rate;
    parts.cross.push_back(scale * 2.0 * std::exp(-(q * q + d * d) / (4.0 * st)) *
                          std::cos(phase) * coherence);
    // cross / direct without the factors that underflow
    parts.contrast.push_back(std::cos(phase) / std::cosh((q * q - d * d) / (4.0 * st)));
  }
  return parts;
}

}  // namespace

DensityProfile two_packet_density(const SystemParams& params, double z, double sigma, double t,
                                  std::span<const double> grid, double sigma_xi_sq) {
  auto parts = two_packet_parts(params, z, sigma, t, grid, sigma_xi_sq);
  DensityProfile out;
  out.t = t;
  out.grid.assign(grid.begin(), grid.end());
  out.rho.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.rho[i] = parts.direct[i] + parts.cross[i];
  }
  out.contrast = std::move(parts.contrast);
  out.log_coherence = parts.log_coherence;
  out.sigma_xi_sq = sigma_xi_sq;
  out.sigma_theta_sq = parts.sigma_theta_sq;
  out.midpoint = parts.midpoint;
  out.provenance = Provenance::closed_form;
  return out;
}

DensityProfile two_packet_density(const SystemParams& params, double z, double sigma, double t,
                                  std::span<const double> grid, WidthMode mode) {
  return two_packet_density(params, z, sigma, t, grid, sigma_xi_sq(params, t, mode));
}

DensityProfile two_packet_envelope(const SystemParams& params, double z, double sigma, double t,
                                   std::span<const double> grid, double sigma_xi_sq) {
  auto parts = two_packet_parts(params, z, sigma, t, grid, sigma_xi_sq);
  DensityProfile out;
  out.t = t;
  out.grid.assign(grid.begin(), grid.end());
  out.rho = std::move(parts.direct);
  out.sigma_xi_sq = sigma_xi_sq;
  out.sigma_theta_sq = parts.sigma_theta_sq;
  out.midpoint = parts.midpoint;
  out.provenance = Provenance::closed_form;
  return out;
}

std::vector<double> interference_grid(const SystemParams& params, double z, double sigma, double t,
                                      double sigma_xi_sq, std::size_t min_points) {
  const double st = sigma_theta_sq(params, sigma, t, sigma_xi_sq);
  const double half = std::abs(z) + 6.0 * std::max(sigma, std::sqrt(st));
  const double k = std::max(fringe_wavenumber(params, z, sigma, t, sigma_xi_sq),
                            std::abs(z) / (2.0 * params.sigma0_sq));
  const double fringes = 2.0 * half * k / (2.0 * std::numbers::pi);
  const auto n = std::max(min_points, static_cast<std::size_t>(std::ceil(40.0 * fringes)) + 1);
  return uniform_grid(-half, half, n);
}

FringeMetrics fringe_metrics(const DensityProfile& profile, const DensityProfile& envelope) {
  const std::size_t n = profile.grid.size();
  if (envelope.grid.size() != n || profile.rho.size() != n || envelope.rho.size() != n || n < 3) {
    throw ParameterError("fringe_metrics: profile and envelope must share a grid of >= 3 points");
  }
  const bool closed = profile.contrast.size() == n;
  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) {
    residual[i] = closed ? profile.contrast[i] : profile.rho[i] - envelope.rho[i];
  }

  const double env_max = *std::max_element(envelope.rho.begin(), envelope.rho.end());
  const auto significant = [&](std::size_t i) { return envelope.rho[i] >= 1e-3 * env_max; };

  std::vector<double> crossings;
  std::size_t extrema = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!significant(i)) {
      continue;
    }
    if ((residual[i] > residual[i - 1] && residual[i] > residual[i + 1]) ||
        (residual[i] < residual[i - 1] && residual[i] < residual[i + 1])) {
      ++extrema;
    }
    if (i + 2 < n && significant(i + 1) &&
        ((residual[i] < 0.0 && residual[i + 1] >= 0.0) ||
         (residual[i] > 0.0 && residual[i + 1] <= 0.0))) {
      const double frac = residual[i] / (residual[i] - residual[i + 1]);
      crossings.push_back(profile.grid[i] + frac * (profile.grid[i + 1] - profile.grid[i]));
    }
  }

  FringeMetrics m;
  m.resolved = extrema >= 2 && crossings.size() >= 2;
  if (m.resolved) {
    const double spacing =
        (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
    m.wavenumber = std::numbers::pi / spacing;
    m.fringe_count = 2.0 * m.wavenumber * std::sqrt(profile.sigma_theta_sq);
  }

  double half_width = std::sqrt(profile.sigma_theta_sq);
  if (m.resolved) {
    half_width = std::max(half_width, std::numbers::pi / m.wavenumber);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(profile.grid[i] - profile.midpoint) > half_width) {
      continue;
    }
    if (closed) {
      m.visibility = std::max(m.visibility, std::abs(residual[i]));
    } else if (envelope.rho[i] > 0.0) {
      m.visibility = std::max(m.visibility, std::abs(residual[i]) / envelope.rho[i]);
    }
  }
  if (closed) {
    m.visibility *= std::exp(profile.log_coherence);
  }
  m.visibility = std::min(m.visibility, 1.0);
  return m;
}

double visibility_efold_time(const SystemParams& params, double z) {
  if (z == 0.0) {
    throw ParameterError("visibility_efold_time requires z != 0");
  }
  return std::log1p(8.0 * params.sigma0_sq / (z * z)) / params.eta;
}

double wavenumber_turnover_time(const SystemParams& params, double r) {
  if (!(r > 1.0)) {
    throw ParameterError("no growth phase (r <= 1, the minimum-uncertainty case)");
  }
  return std::log(r * r - 1.0) / params.eta;
}

}  // namespace ohmic
