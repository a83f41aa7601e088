#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ohmic/bath.hpp"
#include "ohmic/params.hpp"
#include "ohmic/wavepacket.hpp"

// Brute-force validators. None of these share code paths with the closed
// forms they check.

namespace ohmic::oracle {

/// Adaptive Simpson quadrature to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

/// b1, b2 by direct numerical convolution (adaptive Simpson).
ResponseCoeffs convolution_response(const SystemParams& params, double omega_j, double t,
                                    double tol = 1e-12);

struct DiscreteBath {
  std::size_t n_oscillators = 0;
  std::vector<double> frequencies;  // strictly increasing over (0, cutoff]
  std::vector<double> weights;      // trapezoid weights d omega
  std::vector<double> masses;
  std::vector<double> couplings;    // c_j with c_j^2 = (2 eta M m_j omega_j^2 / pi) weight_j
  std::uint64_t seed = 0;
};

DiscreteBath make_discrete_bath(const SystemParams& params, std::size_t n, std::uint64_t seed);

/// Per-oscillator widths sigma_j^2 at time t.
std::vector<double> oscillator_widths(const SystemParams& params, const DiscreteBath& bath, double t);

/// sum_j sigma_j^2.
double discrete_brownian_width(const SystemParams& params, const DiscreteBath& bath, double t);

/// Brownian displacements xi = sum_j (b_j1 x_j0 + b_j2 xdot_j0) for thermal
/// initial conditions drawn from the bath seed.
std::vector<double> sample_brownian_displacements(const SystemParams& params,
                                                  const DiscreteBath& bath, double t,
                                                  std::size_t samples);

struct MonteCarloWidth {
  double estimate = 0.0;
  double std_error = 0.0;
};

MonteCarloWidth mc_brownian_width(const SystemParams& params, const DiscreteBath& bath, double t,
                                  std::size_t samples);

/// Kolmogorov-Smirnov distance between samples and N(0, variance).
double ks_normal_statistic(std::span<const double> samples, double variance);

/// Uniform periodic grid for the split-operator stepper.
struct Grid {
  double q_min = -10.0;
  double dq = 0.05;
  std::size_t n = 400;

  double at(std::size_t i) const { return q_min + dq * static_cast<double>(i); }
  std::vector<double> points() const;
};

/// Strang splitting of e^{-eta t} P^2/2M + M omega0^2 e^{eta t} Q^2/2 with
/// coefficients at each step midpoint. Throws StepSizeError before stepping
/// if the phase advance per step reaches 0.1 rad or the grid has fewer
/// than 16 points.
std::vector<cplx> numeric_propagate(const SystemParams& params, const Grid& grid,
                                    std::span<const cplx> psi0, double t_final, std::size_t steps);

/// Trapezoid quadrature of int psi0(q0) G(q, q0; t) dq0 over the sample grid.
std::vector<cplx> quadrature_propagate(const SystemParams& params, std::span<const double> grid,
                                       std::span<const cplx> psi0, double t,
                                       std::span<const double> targets);

}  // namespace ohmic::oracle
