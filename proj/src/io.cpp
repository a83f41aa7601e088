#include "ohmic/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace ohmic::io {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return {buf, result.ptr};
}

void write_params_header(std::ostream& os, const SystemParams& params) {
  os << "# eta=" << format_double(params.eta) << " omega0=" << format_double(params.omega0)
     << " omega=" << format_double(params.omega)
     << " temperature=" << format_double(params.temperature)
     << " omega_cut=" << format_double(params.omega_cut)
     << " sigma0_sq=" << format_double(params.sigma0_sq) << " units=hbar=M=omega0=1\n";
}

void write_width_csv(std::ostream& os, const SystemParams& params, const WidthCurve& curve,
                     WidthMode mode) {
  os << "# " << kWidthSchema << "\n";
  write_params_header(os, params);
  os << "# sigma_xi_mode=" << (mode == WidthMode::exact ? "exact" : "estimate")
     << " time_axis=omega0*t\n";
  os << "t,sigma_xi_sq,sigma_xi_sq_over_sigma0_sq\n";
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    os << format_double(curve.times[i]) << ',' << format_double(curve.sigma_xi_sq[i]) << ','
       << format_double(curve.sigma_xi_sq[i] / params.sigma0_sq) << '\n';
  }
}

void write_wavefunction_section(std::ostream& os, double t, std::span<const double> grid,
                                std::span<const cplx> psi) {
  os << "# t=" << format_double(t) << "\n";
  os << "q,re_psi,im_psi,abs2_psi\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << format_double(grid[i]) << ',' << format_double(psi[i].real()) << ','
       << format_double(psi[i].imag()) << ',' << format_double(std::norm(psi[i])) << '\n';
  }
}

void write_density_section(std::ostream& os, const DensityProfile& profile,
                           const DensityProfile& envelope) {
  os << "# t=" << format_double(profile.t) << " sigma_xi_sq=" << format_double(profile.sigma_xi_sq)
     << " sigma_theta_sq=" << format_double(profile.sigma_theta_sq) << "\n";
  os << "q,rho,rho_envelope\n";
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    os << format_double(profile.grid[i]) << ',' << format_double(profile.rho[i]) << ','
       << format_double(envelope.rho[i]) << '\n';
  }
}

struct AtomicFile::Impl {
  std::ofstream out;
};

AtomicFile::AtomicFile(std::filesystem::path target)
    : target_(std::move(target)), impl_(std::make_unique<Impl>()) {
  temp_ = target_;
  temp_ += ".partial";
  impl_->out.open(temp_, std::ios::binary | std::ios::trunc);
  if (!impl_->out) {
    throw std::runtime_error("cannot open " + temp_.string() + " for writing");
  }
}

AtomicFile::~AtomicFile() {
  if (impl_ && impl_->out.is_open()) {
    impl_->out.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

std::ostream& AtomicFile::stream() { return impl_->out; }

void AtomicFile::commit() {
  impl_->out.flush();
  if (!impl_->out) {
    throw std::runtime_error("write to " + temp_.string() + " failed");
  }
  impl_->out.close();
  std::filesystem::rename(temp_, target_);
}

}  // namespace ohmic::io
