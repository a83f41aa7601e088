#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ohmic/bath.hpp"
#include "ohmic/interference.hpp"
#include "ohmic/params.hpp"
#include "ohmic/wavepacket.hpp"

namespace ohmic::io {

// CSV schemas. The first comment line names the schema and its version.
inline constexpr const char* kWidthSchema = "ohmic-width v1";
inline constexpr const char* kWavefunctionSchema = "ohmic-wavefunction v1";
inline constexpr const char* kDensitySchema = "ohmic-density v1";

/// Shortest round-trip decimal representation.
std::string format_double(double value);

void write_params_header(std::ostream& os, const SystemParams& params);

/// Columns: t, sigma_xi_sq, sigma_xi_sq_over_sigma0_sq
void write_width_csv(std::ostream& os, const SystemParams& params, const WidthCurve& curve,
                     WidthMode mode);

/// One section per time, opened by "# t=<value>". Columns: q, re_psi, im_psi, abs2_psi
void write_wavefunction_section(std::ostream& os, double t, std::span<const double> grid,
                                std::span<const cplx> psi);

/// One section per time. Columns: q, rho, rho_envelope
void write_density_section(std::ostream& os, const DensityProfile& profile,
                           const DensityProfile& envelope);

/// Writes go to a sibling temporary file that replaces the target only on
/// commit(); an uncommitted writer removes its temporary on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path target);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ostream& stream();
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ohmic::io
