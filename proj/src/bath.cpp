#include "ohmic/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ohmic/errors.hpp"

namespace ohmic {
namespace {

using cplx = std::complex<double>;

// (e^{x t} - 1) / x, continuous through x = 0.
cplx expm1_over(cplx x, double t) {
  const cplx xt = x * t;
  if (std::abs(xt) < 1e-4) {
    return t * (1.0 + xt / 2.0 + xt * xt / 6.0 + xt * xt * xt / 24.0);
  }
  return (std::exp(xt) - 1.0) / x;
}

}  // namespace

std::complex<double> response_transform(const SystemParams& params, double omega_j, double t) {
  // G(tau) = (e^{p+ tau} - e^{p- tau}) / (2 i omega), p+- = -eta/2 +- i omega.
  const double w = params.omega;
  const cplx p_plus{-0.5 * params.eta, w};
  const cplx p_minus{-0.5 * params.eta, -w};
  const cplx drive{0.0, omega_j};
  return (expm1_over(p_plus - drive, t) - expm1_over(p_minus - drive, t)) / cplx{0.0, 2.0 * w};
}

ResponseCoeffs response_coeffs(const SystemParams& params, double omega_j, double t) {
  if (!(omega_j > 0.0)) {
    throw ParameterError("omega_j must be > 0");
  }
  if (!(t >= 0.0)) {
    throw ParameterError("t must be >= 0");
  }
  // int_0^t G(t-s) e^{i omega_j s} ds = e^{i omega_j t} K.
  const cplx conv = std::polar(1.0, omega_j * t) * response_transform(params, omega_j, t);
  ResponseCoeffs out;
  out.omega_j = omega_j;
  out.t = t;
  out.b1 = -conv.real();
  out.b2 = -conv.imag() / omega_j;
  return out;
}

double thermal_factor(const SystemParams& params, double omega_j) {
  if (params.temperature == 0.0) {
    return 1.0;
  }
  // k = 1, temperature in units of hbar omega0 / k.
  const double x = params.hbar * omega_j / (2.0 * params.temperature * params.hbar * params.omega0);
  return 1.0 / std::tanh(x);
}

double width_integrand(const SystemParams& params, double omega_j, double t) {
  if (!(omega_j > 0.0)) {
    throw ParameterError("omega_j must be > 0");
  }
  if (t == 0.0) {
    return 0.0;
  }
  const double k2 = std::norm(response_transform(params, omega_j, t));
  return params.hbar * params.eta * omega_j / (std::numbers::pi * params.mass) * k2 *
         thermal_factor(params, omega_j);
}

std::vector<double> quadrature_panels(const SystemParams& params, double t) {
  const double cutoff = params.cutoff_frequency();
  std::vector<double> marks{0.0, params.omega - 3.0 * params.eta, params.omega + 3.0 * params.eta,
                            cutoff};
  std::erase_if(marks, [&](double x) { return x < 0.0 || x > cutoff; });
  marks.push_back(0.0);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  const double max_width = t > 0.0 ? std::min(std::numbers::pi / t, 5.0) : 5.0;
  std::vector<double> edges{marks.front()};
  for (std::size_t i = 1; i < marks.size(); ++i) {
    const double lo = marks[i - 1];
    const double hi = marks[i];
    const auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / max_width));
    for (std::size_t k = 1; k <= pieces; ++k) {
      edges.push_back(k == pieces ? hi : lo + (hi - lo) * static_cast<double>(k) / pieces);
    }
  }
  return edges;
}

QuadratureResult brownian_width_estimate(const SystemParams& params, double t,
                                         const QuadratureOptions& options) {
  if (!(t >= 0.0)) {
    throw ParameterError("t must be >= 0");
  }
  QuadratureResult result;
  if (t == 0.0) {
    return result;
  }

  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](double w) { return width_integrand(params, w, t); };
  const auto edges = quadrature_panels(params, t);
  const double panel_tol = 0.1 * options.rel_tol;
  for (std::size_t i = 1; i < edges.size(); ++i) {
    double err = 0.0;
    result.value += gauss_kronrod<double, 21>::integrate(f, edges[i - 1], edges[i],
                                                         options.max_depth, panel_tol, &err);
    result.error_estimate += err;
  }

  if (!(result.error_estimate <= options.rel_tol * std::abs(result.value)) ||
      !std::isfinite(result.value)) {
    throw QuadratureError("brownian_width: tolerance " + std::to_string(options.rel_tol) +
                              " not met at t=" + std::to_string(t) + ", achieved error " +
                              std::to_string(result.error_estimate),
                          result.value, result.error_estimate);
  }
  return result;
}

double brownian_width(const SystemParams& params, double t, const QuadratureOptions& options) {
  return brownian_width_estimate(params, t, options).value;
}

double equilibrium_width(const SystemParams& params) {
  if (params.temperature > 0.0) {
    throw ParameterError(
        "equilibrium_width is the low-temperature limit; use brownian_width for T > 0");
  }
  const double w = params.omega;
  const double w0 = params.omega0;
  return params.hbar / (2.0 * std::numbers::pi * params.mass * w) *
         (0.5 * std::numbers::pi + std::atan(w0 * w0 / (params.eta * w)));
}

double approx_width(const SystemParams& params, double t) {
  return params.sigma0_sq * (1.0 - std::exp(-params.eta * t));
}

double sigma_xi_sq(const SystemParams& params, double t, WidthMode mode) {
  return mode == WidthMode::exact ? brownian_width(params, t) : approx_width(params, t);
}

WidthCurve width_curve(const SystemParams& params, std::span<const double> times, WidthMode mode) {
  WidthCurve curve;
  curve.times.assign(times.begin(), times.end());
  curve.omega_cut = params.omega_cut;
  curve.temperature = params.temperature;
  curve.sigma_xi_sq.reserve(times.size());
  for (double t : times) {
    curve.sigma_xi_sq.push_back(sigma_xi_sq(params, t, mode));
  }
  return curve;
}

}  // namespace ohmic
