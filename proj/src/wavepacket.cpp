#include "ohmic/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ohmic/errors.hpp"

namespace ohmic {

double GaussianWaveState::norm() const {
  // |psi|^2 = exp(-2 Re(A) q^2 + 2 Re(B) q + 2 Re(C))
  const double a = 2.0 * A.real();
  return std::sqrt(std::numbers::pi / a) * std::exp(B.real() * B.real() / a + 2.0 * C.real());
}

std::vector<cplx> GaussianWaveState::sample(std::span<const double> grid) const {
  std::vector<cplx> out;
  out.reserve(grid.size());
  for (double q : grid) {
    out.push_back((*this)(q));
  }
  return out;
}

GaussianWaveState initial_gaussian(double z, double sigma) {
  if (!(sigma > 0.0)) {
    throw ParameterError("sigma must be > 0");
  }
  const double s2 = sigma * sigma;
  GaussianWaveState psi;
  psi.t = 0.0;
  psi.A = 1.0 / (4.0 * s2);
  psi.B = z / (2.0 * s2);
  psi.C = -z * z / (4.0 * s2) - 0.25 * std::log(2.0 * std::numbers::pi * s2);
  return psi;
}

namespace {

cplx d_factor(const SystemParams& params, cplx a0, double t) {
  const auto c = trajectory_coeffs(params, t);
  return c.a1 + cplx{0.0, 2.0} * a0 * c.a2;
}

// log D(t) on the branch continuous from log D(0) = 0. arg D increases
// monotonically (its rate is 2 Re(A0) e^{-eta t} / |D|^2), so a negative
// principal increment means the true step wrapped past pi.
cplx unwound_log_d(const SystemParams& params, cplx a0, double t) {
  const auto steps =
      static_cast<std::size_t>(std::ceil(t * params.omega * 32.0 / std::numbers::pi)) + 1;
  double phase = 0.0;
  cplx prev{1.0, 0.0};
  cplx current = prev;
  for (std::size_t k = 1; k <= steps; ++k) {
    current = d_factor(params, a0, t * static_cast<double>(k) / static_cast<double>(steps));
    double step = std::arg(current / prev);
    if (step < 0.0) {
      step += 2.0 * std::numbers::pi;
    }
    phase += step;
    prev = current;
  }
  return {std::log(std::abs(current)), phase};
}

}  // namespace

GaussianWaveState propagate(const SystemParams& params, const GaussianWaveState& initial, double t) {
  if (!(t >= 0.0)) {
    throw ParameterError("t must be >= 0");
  }
  if (initial.t != 0.0) {
    throw ParameterError("propagate: the Green's function runs from t = 0; initial.t must be 0");
  }
  if (!(initial.A.real() > 0.0)) {
    throw ParameterError("initial state is not normalizable (Re A <= 0)");
  }
  const auto c = trajectory_coeffs(params, t);
  const cplx i{0.0, 1.0};
  const cplx a0 = initial.A;
  const cplx d = c.a1 + 2.0 * i * a0 * c.a2;

  GaussianWaveState out;
  out.t = t;
  out.A = std::exp(params.eta * t) * (2.0 * a0 * c.a2_dot - i * c.a1_dot) / (2.0 * d);
  out.B = initial.B / d;
  out.C = initial.C + i * c.a2 * initial.B * initial.B / (2.0 * d) -
          0.5 * unwound_log_d(params, a0, t);
  return out;
}

GaussianWaveState evolve_gaussian(const SystemParams& params, double z, double sigma, double t) {
  return propagate(params, initial_gaussian(z, sigma), t);
}

cplx greens_function(const SystemParams& params, double q1, double q0, double t) {
  if (!(t > 0.0)) {
    throw ParameterError("greens_function requires t > 0");
  }
  const double half_periods = params.omega * t / std::numbers::pi;
  const double nearest = std::round(half_periods);
  if (nearest >= 1.0 && std::abs(params.omega * t - nearest * std::numbers::pi) < 1e-9) {
    const double t_caustic = nearest * std::numbers::pi / params.omega;
    const double nearest_valid = t < t_caustic ? t_caustic - 1e-6 : t_caustic + 1e-6;
    std::ostringstream msg;
    msg.precision(12);
    msg << "greens_function: t=" << t << " is a caustic (a2 = 0 at omega t = " << nearest
        << " pi); nearest valid t is " << nearest_valid;
    throw CausticError(msg.str(), nearest_valid);
  }

  const auto c = trajectory_coeffs(params, t);
  const double passed = std::floor(half_periods);
  const double magnitude = std::sqrt(1.0 / (2.0 * std::numbers::pi * std::abs(c.a2)));
  const cplx prefactor = std::polar(magnitude, -0.25 * std::numbers::pi - 0.5 * std::numbers::pi * passed);
  const double phase = (c.a1 * q0 * q0 + c.a2_dot * std::exp(params.eta * t) * q1 * q1 -
                        2.0 * q0 * q1) /
                       (2.0 * c.a2);
  return prefactor * std::polar(1.0, phase);
}

PacketSummary packet_summary(const GaussianWaveState& state) {
  const double ar = state.A.real();
  PacketSummary s;
  s.center = state.B.real() / (2.0 * ar);
  s.width = std::sqrt(1.0 / (4.0 * ar));
  s.wavenumber = state.B.imag() - 2.0 * state.A.imag() * s.center;
  return s;
}

double extract_wavenumber(std::span<const double> grid, std::span<const cplx> psi) {
  if (grid.size() != psi.size() || grid.size() < 5) {
    throw ParameterError("extract_wavenumber: need matching grid and samples, >= 5 points");
  }
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double h = grid[i] - grid[i - 1];
    const double p0 = std::norm(psi[i - 1]);
    const double p1 = std::norm(psi[i]);
    mass += 0.5 * h * (p0 + p1);
    first += 0.5 * h * (p0 * grid[i - 1] + p1 * grid[i]);
  }
  const double center = first / mass;

  std::size_t i = 1;
  while (i + 2 < grid.size() && grid[i] < center) {
    ++i;
  }
  if (i + 1 >= grid.size()) {
    i = grid.size() - 2;
  }
  const double h_left = grid[i] - grid[i - 1];
  const double h_right = grid[i + 1] - grid[i];
  const double left = std::arg(psi[i] * std::conj(psi[i - 1])) / h_left;
  const double right = std::arg(psi[i + 1] * std::conj(psi[i])) / h_right;
  // Exact for a quadratic phase: slopes sit at the interval midpoints.
  const double curvature = (right - left) / (0.5 * (h_left + h_right));
  const double mid_right = grid[i] + 0.5 * h_right;
  return right + curvature * (center - mid_right);
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) {
    throw ParameterError("uniform_grid needs at least 2 points");
  }
  std::vector<double> g(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + h * static_cast<double>(i);
  }
  g.back() = hi;
  return g;
}

}  // namespace ohmic
