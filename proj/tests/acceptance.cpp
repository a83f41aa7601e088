// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ohmic/bath.hpp"
#include "ohmic/classical.hpp"
#include "ohmic/interference.hpp"
#include "ohmic/oracle.hpp"
#include "ohmic/run.hpp"
#include "ohmic/wavepacket.hpp"

using namespace ohmic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_s <= 0.0 || elapsed < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %s | %s | runtime %.2f s", pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), elapsed);
  if (limit_s > 0.0) std::printf(" (limit %.0f s)", limit_s);
  std::printf("\n");
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

FringeMetrics metrics_at(const SystemParams& p, double z, double sigma, double t, WidthMode mode) {
  const double xi2 = sigma_xi_sq(p, t, mode);
  const auto grid = interference_grid(p, z, sigma, t, xi2);
  return fringe_metrics(two_packet_density(p, z, sigma, t, grid, xi2),
                        two_packet_envelope(p, z, sigma, t, grid, xi2));
}

// Sections of "# t=" blocks from a density or wavefunction CSV: (q, column) pairs.
std::vector<std::pair<std::vector<double>, std::vector<double>>> csv_sections(
    const std::filesystem::path& path, std::size_t column) {
  std::ifstream in(path);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# t=", 0) == 0) {
      out.emplace_back();
      continue;
    }
    if (line.empty() || line[0] == '#' || line[0] == 'q' || out.empty()) continue;
    std::istringstream fields(line);
    std::string f;
    std::vector<double> row;
    while (std::getline(fields, f, ',')) row.push_back(std::strtod(f.c_str(), nullptr));
    out.back().first.push_back(row[0]);
    out.back().second.push_back(row[column]);
  }
  return out;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

}  // namespace

int main() {
  const auto p = derive_params(0.1);
  const double s0 = std::sqrt(p.sigma0_sq);

  criterion(1, "equilibrium width", 10.0, [&] {
    const double t = 50.0 / p.eta;
    const double quad = brownian_width(p, t);
    const double eq = equilibrium_width(p);
    const double rel = std::abs(quad / eq - 1.0);
    const double ratio = eq / p.sigma0_sq;
    return Outcome{rel < 0.02 && std::abs(ratio - 0.970) < 5e-4,
                   fmt("sigma_xi^2(500)=%.6f, closed form=%.6f (%.4f sigma0^2, expect 0.970), "
                       "rel diff %.2e < 2e-2",
                       quad, eq, ratio, rel)};
  });

  criterion(2, "ground-state coincidence", 1.0, [&] {
    const double d1 = std::abs(equilibrium_width(derive_params(0.01)) / p.sigma0_sq - 1.0);
    const double d2 = std::abs(equilibrium_width(derive_params(0.001)) / p.sigma0_sq - 1.0);
    return Outcome{d1 < 0.015 && d2 < 0.002,
                   fmt("eta=0.01: %.2e < 1.5e-2; eta=0.001: %.2e < 2e-3", d1, d2)};
  });

  criterion(3, "propagator equivalence", 60.0, [&] {
    const double z = 5.0 * s0;
    const oracle::Grid grid{-12.0, 24.0 / 512.0, 512};
    const auto q = grid.points();
    const auto psi0 = initial_gaussian(z, s0).sample(q);
    const auto fine = uniform_grid(-8.0, 12.0, 4001);
    const auto psi_fine = initial_gaussian(z, s0).sample(fine);
    double worst = 0.0;
    std::string parts;
    for (double wt : {0.3, std::numbers::pi / 2.0, 2.0}) {
      const double t = wt / p.omega;
      const auto closed = evolve_gaussian(p, z, s0, t).sample(q);
      const double kinetic = 0.5 * std::pow(std::numbers::pi / grid.dq, 2);
      const auto steps = static_cast<std::size_t>(std::ceil(t * kinetic / 0.05));
      const double e_step = max_abs_diff(closed, oracle::numeric_propagate(p, grid, psi0, t, steps));
      const double e_quad =
          max_abs_diff(closed, oracle::quadrature_propagate(p, fine, psi_fine, t, q));
      const std::vector<cplx> from_quad = oracle::quadrature_propagate(p, fine, psi_fine, t, q);
      const double e_cross =
          max_abs_diff(from_quad, oracle::numeric_propagate(p, grid, psi0, t, steps));
      worst = std::max({worst, e_step, e_quad, e_cross});
      parts += fmt("wt=%.4f: step %.1e quad %.1e cross %.1e; ", wt, e_step, e_quad, e_cross);
    }
    return Outcome{worst < 1e-6, parts + fmt("max %.2e < 1e-6", worst)};
  });

  criterion(4, "wavelength decay in psi", 10.0, [&] {
    const double z = 5.0 * s0;
    std::vector<double> t, logk;
    for (int n = 0; n <= 4; ++n) {
      const double tn = a1_zero_time(p, n);
      const auto s = evolve_gaussian(p, z, s0, tn);
      const auto c = packet_summary(s).center;
      const auto grid = uniform_grid(c - 8.0, c + 8.0, 4001);
      t.push_back(tn);
      logk.push_back(std::log(std::abs(extract_wavenumber(grid, s.sample(grid)))));
    }
    const double slope = fit_slope(t, logk);
    const double rel = std::abs(slope / (p.eta / 2.0) - 1.0);
    return Outcome{rel < 0.03, fmt("fitted exponent %.6f vs eta/2=%.6f, rel %.2e < 3e-2", slope,
                                   p.eta / 2.0, rel)};
  });

  criterion(5, "r=1 fringe wavenumber does not decay", 30.0, [&] {
    const double z = 5.0 * s0;
    std::vector<double> k;
    bool ok = true;
    for (int n = 0; n < 3; ++n) {
      const auto m = metrics_at(p, z, s0, a1_zero_time(p, n), WidthMode::exact);
      ok = ok && m.resolved;
      k.push_back(m.wavenumber);
    }
    ok = ok && k[1] <= k[0] && k[2] <= k[1];
    return Outcome{ok, fmt("k at first three a1=0 times: %.6f, %.6f, %.6f (non-increasing)", k[0],
                           k[1], k[2])};
  });

  criterion(6, "r=16 wavenumber growth and turnover", 120.0, [&] {
    const double z = 5.0 * s0;
    const double sigma = s0 / 16.0;
    const double predicted = wavenumber_turnover_time(p, 16.0);
    std::vector<double> t, k;
    bool resolved = true;
    for (int n = 0; a1_zero_time(p, n) <= 2.0 * predicted; ++n) {
      const double tn = a1_zero_time(p, n);
      const auto m = metrics_at(p, z, sigma, tn, WidthMode::estimate);
      resolved = resolved && m.resolved;
      t.push_back(tn);
      k.push_back(m.wavenumber);
    }
    const auto peak = std::max_element(k.begin(), k.end()) - k.begin();
    const double turnover = t[peak];
    std::vector<double> tg, lk;
    for (std::size_t i = 0; i < t.size() && t[i] <= 0.5 * turnover; ++i) {
      tg.push_back(t[i]);
      lk.push_back(std::log(k[i]));
    }
    const double slope = fit_slope(tg, lk);
    const double rel = std::abs(slope / (p.eta / 2.0) - 1.0);
    const double offset = std::abs(turnover - predicted);
    const double window = std::numbers::pi / p.omega;
    return Outcome{resolved && rel < 0.15 && offset <= window,
                   fmt("growth exponent %.5f vs %.5f (rel %.3f < 0.15) over %zu times; turnover "
                       "%.3f vs %.3f (|diff| %.3f <= %.3f)",
                       slope, p.eta / 2.0, rel, tg.size(), turnover, predicted, offset, window)};
  });

  criterion(7, "visibility e-fold time", 60.0, [&] {
    const double sigma = s0 / 16.0;
    bool ok = true;
    std::string parts;
    for (double zr : {3.0, 5.0}) {
      const double z = zr * s0;
      std::vector<double> t{0.0}, v{metrics_at(p, z, sigma, 0.0, WidthMode::estimate).visibility};
      for (int n = 0; v.back() > std::exp(-1.0) && n < 50; ++n) {
        t.push_back(a1_zero_time(p, n));
        v.push_back(metrics_at(p, z, sigma, t.back(), WidthMode::estimate).visibility);
      }
      const std::size_t j = t.size() - 1;
      double crossing = std::numeric_limits<double>::quiet_NaN();
      if (j > 0 && v[j] <= std::exp(-1.0)) {
        const double f = (std::log(v[j - 1]) + 1.0) / (std::log(v[j - 1]) - std::log(v[j]));
        crossing = t[j - 1] + f * (t[j] - t[j - 1]);
      }
      const double predicted = visibility_efold_time(p, z);
      const double rel = std::abs(crossing / predicted - 1.0);
      ok = ok && rel < 0.2;
      parts += fmt("z=%.0f sigma0: crossing %.3f vs %.4f (rel %.3f); ", zr, crossing, predicted, rel);
    }
    return Outcome{ok, parts + "tolerance 0.2"};
  });

  criterion(8, "oracle statistics", 120.0, [&] {
    const auto bath = oracle::make_discrete_bath(p, 2000, 20240101);
    bool ok = true;
    std::string parts;
    for (double t : {0.5, 10.0, 30.0}) {
      const auto mc = oracle::mc_brownian_width(p, bath, t, 100000);
      const double ref = brownian_width(p, t);
      const double nse = std::abs(mc.estimate - ref) / mc.std_error;
      const auto xi = oracle::sample_brownian_displacements(p, bath, t, 20000);
      const double ks = oracle::ks_normal_statistic(xi, oracle::discrete_brownian_width(p, bath, t)) *
                        std::sqrt(static_cast<double>(xi.size()));
      ok = ok && nse <= 3.0 && ks < 1.63;
      parts += fmt("t=%.1f: %.4f vs %.4f (%.2f SE), KS sqrt(n)D=%.3f; ", t, mc.estimate, ref, nse, ks);
    }
    return Outcome{ok, parts + "limits 3 SE, KS 1.63 (1% level)"};
  });

  criterion(9, "normalization", 0.0, [&] {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ohmic_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    double worst_rho = 0.0;
    double worst_psi = 0.0;
    std::size_t profiles = 0;
    for (auto scenario : {Scenario::fig3, Scenario::fig3_text, Scenario::interfere}) {
      for (auto mode : {WidthMode::exact, WidthMode::estimate}) {
        RunConfig c;
        c.scenario = scenario;
        c.sigma_xi_mode = mode;
        c.out = (dir / "density.csv").string();
        std::ostringstream log;
        run(c, log);
        for (const auto& [q, rho] : csv_sections(c.out, 1)) {
          worst_rho = std::max(worst_rho, std::abs(trapezoid(q, rho) - 1.0));
          ++profiles;
        }
      }
    }
    RunConfig c;
    c.scenario = Scenario::fig2;
    c.out = (dir / "wave.csv").string();
    std::ostringstream log;
    run(c, log);
    for (const auto& [q, abs2] : csv_sections(c.out, 3)) {
      worst_psi = std::max(worst_psi, std::abs(trapezoid(q, abs2) - 1.0));
    }
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> time(0.0, 100.0), width(0.02, 2.0);
    for (int i = 0; i < 1000; ++i) {
      const auto s = evolve_gaussian(p, 5.0 * s0, width(rng), time(rng));
      worst_psi = std::max(worst_psi, std::abs(s.norm() - 1.0));
    }
    fs::remove_all(dir);
    return Outcome{profiles > 0 && worst_rho <= 1e-6 && worst_psi <= 1e-9,
                   fmt("%zu emitted density profiles: max |int rho - 1| %.2e <= 1e-6; states: max "
                       "|norm - 1| %.2e <= 1e-9",
                       profiles, worst_rho, worst_psi)};
  });

  criterion(10, "convolution identity", 10.0, [&] {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> ar(0.2, 2.0), ai(-1.5, 1.5), b(-2.0, 2.0), c(-0.5, 0.5),
        var(0.0, 0.5);
    std::uniform_int_distribution<int> count(1, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      GaussianMixture m;
      for (int k = 0, n = count(rng); k < n; ++k) {
        m.push_back({cplx(ar(rng), ai(rng)), cplx(b(rng), b(rng)), cplx(c(rng), c(rng))});
      }
      auto iterated = m;
      double total = 0.0;
      for (int j = 0, n = count(rng); j < n; ++j) {
        const double v = var(rng);
        iterated = convolve(iterated, v);
        total += v;
      }
      const auto single = convolve(m, total);
      for (double q = -4.0; q <= 4.0; q += 0.1) {
        worst = std::max(worst, std::abs(evaluate(iterated, q) - evaluate(single, q)));
      }
    }
    return Outcome{worst < 1e-9, fmt("100 random mixtures: max diff %.2e < 1e-9", worst)};
  });

  criterion(11, "cutoff insensitivity", 30.0, [&] {
    std::vector<double> times;
    for (double t = 0.5; t <= 50.0 + 1e-9; t += 0.25) times.push_back(t);
    const auto mid = width_curve(derive_params(0.1, 0.0, 100.0), times, WidthMode::exact);
    double worst = 0.0;
    double worst_rel = 0.0;
    for (double cut : {50.0, 200.0}) {
      const auto other = width_curve(derive_params(0.1, 0.0, cut), times, WidthMode::exact);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double d = std::abs(other.sigma_xi_sq[i] - mid.sigma_xi_sq[i]);
        worst = std::max(worst, d / p.sigma0_sq);
        worst_rel = std::max(worst_rel, d / mid.sigma_xi_sq[i]);
      }
    }
    return Outcome{worst < 0.05,
                   fmt("max |diff| of sigma_xi^2/sigma0^2 %.4f < 0.05 (pointwise relative %.3f, "
                       "informational)",
                       worst, worst_rel)};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures);
  return failures == 0 ? 0 : 1;
}
