#include "ohmic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <fftw3.h>

#include "ohmic/errors.hpp"

namespace ohmic::oracle {
namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (a == b) {
    return 0.0;
  }
  // Seed with a few fixed panels so symmetric integrands cannot fool the
  // first error estimate.
  constexpr int kSeedPanels = 8;
  double sum = 0.0;
  const double h = (b - a) / kSeedPanels;
  for (int i = 0; i < kSeedPanels; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == kSeedPanels ? b : lo + h;
    const double flo = f(lo);
    const double fmid = f(0.5 * (lo + hi));
    const double fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    sum += simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol / kSeedPanels, max_depth);
  }
  return sum;
}

ResponseCoeffs convolution_response(const SystemParams& params, double omega_j, double t,
                                    double tol) {
  const double w = params.omega;
  const auto green = [&](double tau) {
    return std::exp(-0.5 * params.eta * tau) * std::sin(w * tau) / w;
  };
  ResponseCoeffs out;
  out.omega_j = omega_j;
  out.t = t;
  out.b1 = -adaptive_simpson([&](double s) { return green(t - s) * std::cos(omega_j * s); }, 0.0,
                             t, tol);
  out.b2 = -adaptive_simpson([&](double s) { return green(t - s) * std::sin(omega_j * s); }, 0.0,
                             t, tol) /
           omega_j;
  return out;
}

DiscreteBath make_discrete_bath(const SystemParams& params, std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw ParameterError("discrete bath needs at least 2 oscillators");
  }
  DiscreteBath bath;
  bath.n_oscillators = n;
  bath.seed = seed;
  const double step = params.cutoff_frequency() / static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double w = step * static_cast<double>(k);
    // Trapezoid on [0, cutoff]; the omega = 0 node carries no oscillator.
    const double weight = k == n ? 0.5 * step : step;
    const double m = 1.0;
    bath.frequencies.push_back(w);
    bath.weights.push_back(weight);
    bath.masses.push_back(m);
    bath.couplings.push_back(
        std::sqrt(2.0 * params.eta * params.mass * m * w * w / std::numbers::pi * weight));
  }
  return bath;
}

namespace {

struct OscillatorTerms {
  std::vector<double> position;  // b_j1 * sd(x_j0)
  std::vector<double> velocity;  // b_j2 * sd(xdot_j0)
};

OscillatorTerms oscillator_terms(const SystemParams& params, const DiscreteBath& bath, double t) {
  OscillatorTerms terms;
  terms.position.reserve(bath.n_oscillators);
  terms.velocity.reserve(bath.n_oscillators);
  for (std::size_t j = 0; j < bath.n_oscillators; ++j) {
    const double w = bath.frequencies[j];
    const double m = bath.masses[j];
    const double scale = bath.couplings[j] / params.mass;
    const auto rc = response_coeffs(params, w, t);
    const double thermal = thermal_factor(params, w);
    const double sd_x = std::sqrt(params.hbar / (2.0 * m * w) * thermal);
    const double sd_v = std::sqrt(params.hbar * w / (2.0 * m) * thermal);
    terms.position.push_back(scale * rc.b1 * sd_x);
    terms.velocity.push_back(scale * rc.b2 * sd_v);
  }
  return terms;
}

}  // namespace

std::vector<double> oscillator_widths(const SystemParams& params, const DiscreteBath& bath,
                                      double t) {
  const auto terms = oscillator_terms(params, bath, t);
  std::vector<double> widths(bath.n_oscillators);
  for (std::size_t j = 0; j < widths.size(); ++j) {
    widths[j] = terms.position[j] * terms.position[j] + terms.velocity[j] * terms.velocity[j];
  }
  return widths;
}

double discrete_brownian_width(const SystemParams& params, const DiscreteBath& bath, double t) {
  const auto widths = oscillator_widths(params, bath, t);
  double sum = 0.0;
  for (double w : widths) {
    sum += w;
  }
  return sum;
}

std::vector<double> sample_brownian_displacements(const SystemParams& params,
                                                  const DiscreteBath& bath, double t,
                                                  std::size_t samples) {
  const auto terms = oscillator_terms(params, bath, t);
  std::mt19937_64 rng(bath.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> xi(samples);
  for (auto& value : xi) {
    double sum = 0.0;
    for (std::size_t j = 0; j < bath.n_oscillators; ++j) {
      const double x0 = normal(rng);
      const double v0 = normal(rng);
      sum += terms.position[j] * x0 + terms.velocity[j] * v0;
    }
    value = sum;
  }
  return xi;
}

MonteCarloWidth mc_brownian_width(const SystemParams& params, const DiscreteBath& bath, double t,
                                  std::size_t samples) {
  if (samples < 2) {
    throw ParameterError("mc_brownian_width needs at least 2 samples");
  }
  const auto xi = sample_brownian_displacements(params, bath, t, samples);
  // The mean of xi is zero by symmetry, so Var = E[xi^2].
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xi) {
    const double x2 = x * x;
    m2 += x2;
    m4 += x2 * x2;
  }
  const auto n = static_cast<double>(samples);
  m2 /= n;
  m4 /= n;
  MonteCarloWidth out;
  out.estimate = m2;
  out.std_error = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  return out;
}

double ks_normal_statistic(std::span<const double> samples, double variance) {
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  const double scale = 1.0 / std::sqrt(2.0 * variance);
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-sorted[i] * scale);
    d = std::max({d, std::abs(cdf - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(i + 1) / n - cdf)});
  }
  return d;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = at(i);
  }
  return out;
}

namespace {

class FftPlan {
 public:
  explicit FftPlan(std::size_t n)
      : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(size, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(size, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(data_);
  }

  cplx* data() { return reinterpret_cast<cplx*>(data_); }
  void forward() { fftw_execute(forward_); }
  void backward() {
    fftw_execute(backward_);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      data()[i] *= inv;
    }
  }

 private:
  std::size_t n_;
  fftw_complex* data_;
  fftw_plan forward_;
  fftw_plan backward_;
};

}  // namespace

std::vector<cplx> numeric_propagate(const SystemParams& params, const Grid& grid,
                                    std::span<const cplx> psi0, double t_final, std::size_t steps) {
  if (grid.n < 16) {
    throw StepSizeError("numeric_propagate: grid needs at least 16 points");
  }
  if (psi0.size() != grid.n) {
    throw StepSizeError("numeric_propagate: psi0 size does not match the grid");
  }
  if (steps == 0 || !(t_final >= 0.0)) {
    throw StepSizeError("numeric_propagate: need steps >= 1 and t_final >= 0");
  }
  const std::size_t n = grid.n;
  const double dt = t_final / static_cast<double>(steps);
  const double k_nyquist = std::numbers::pi / grid.dq;
  const double q_max = std::max(std::abs(grid.at(0)), std::abs(grid.at(n - 1)));
  const double kinetic_phase = 0.5 * k_nyquist * k_nyquist * dt / params.mass;
  const double potential_phase =
      0.5 * params.mass * params.omega0 * params.omega0 * std::exp(params.eta * t_final) * q_max *
      q_max * dt;
  if (kinetic_phase >= 0.1 || potential_phase >= 0.1) {
    throw StepSizeError("numeric_propagate: phase advance per step " +
                        std::to_string(std::max(kinetic_phase, potential_phase)) +
                        " rad >= 0.1; increase steps");
  }

  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * grid.dq);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<double>(j);
    k[j] = (j < (n + 1) / 2 ? jj : jj - static_cast<double>(n)) * dk;
  }

  FftPlan fft(n);
  cplx* psi = fft.data();
  std::copy(psi0.begin(), psi0.end(), psi);

  // At least 8 points per wavelength: negligible weight above k_nyquist / 4.
  fft.forward();
  double total = 0.0;
  double fast = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    total += std::norm(psi[j]);
    if (std::abs(k[j]) > 0.25 * k_nyquist) {
      fast += std::norm(psi[j]);
    }
  }
  if (fast > 1e-6 * total) {
    throw StepSizeError("numeric_propagate: grid under-resolves psi0 (< 8 points per wavelength)");
  }
  fft.backward();

  std::vector<double> q2(n);
  for (std::size_t i = 0; i < n; ++i) {
    q2[i] = grid.at(i) * grid.at(i);
  }
  for (std::size_t s = 0; s < steps; ++s) {
    const double t_mid = (static_cast<double>(s) + 0.5) * dt;
    const double kinetic = std::exp(-params.eta * t_mid) / (2.0 * params.mass) / params.hbar;
    const double potential = 0.5 * params.mass * params.omega0 * params.omega0 *
                             std::exp(params.eta * t_mid) / params.hbar;
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] *= std::polar(1.0, -potential * q2[i] * 0.5 * dt);
    }
    fft.forward();
    for (std::size_t j = 0; j < n; ++j) {
      psi[j] *= std::polar(1.0, -kinetic * params.hbar * params.hbar * k[j] * k[j] * dt);
    }
    fft.backward();
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] *= std::polar(1.0, -potential * q2[i] * 0.5 * dt);
    }
  }
  return {psi, psi + n};
}

std::vector<cplx> quadrature_propagate(const SystemParams& params, std::span<const double> grid,
                                       std::span<const cplx> psi0, double t,
                                       std::span<const double> targets) {
  if (grid.size() != psi0.size() || grid.size() < 2) {
    throw ParameterError("quadrature_propagate: grid and psi0 must match (>= 2 points)");
  }
  std::vector<double> weights(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double h = 0.5 * (grid[i] - grid[i - 1]);
    weights[i - 1] += h;
    weights[i] += h;
  }
  std::vector<cplx> out;
  out.reserve(targets.size());
  for (double q : targets) {
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sum += weights[i] * psi0[i] * greens_function(params, q, grid[i], t);
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace ohmic::oracle
