#pragma once

#include <cstdint>
#include <string>

#include "qfc/dispersion.hpp"
#include "qfc/jsa.hpp"
#include "qfc/spatial.hpp"
#include "qfc/spectra.hpp"

namespace qfc::io {

/// Material files: `# material v1` key-value form (axis, coefficients,
/// t_ref_kelvin, valid_window_um, source), or `# tabulated-index v1` with
/// two columns (lambda_um, n).
DispersionModel load_material(const std::string& path);
void save_material(const std::string& path, const DispersionModel& model);

/// `# spectral-amplitude v1`: three columns (omega_rad_s, re, im).
SpectralAmplitude load_spectral_amplitude(const std::string& path);
void save_spectral_amplitude(const std::string& path, const SpectralAmplitude& a);

/// `# transverse-profile v1`: first row x samples (um), first column y samples (um).
TransverseProfile load_profile(const std::string& path);
void save_profile(const std::string& path, const TransverseProfile& p);

/// `# jsa v1`: both grids, the normalization, then row-major (re, im) entries.
JointSpectralAmplitude load_jsa(const std::string& path);
void save_jsa(const std::string& path, const JointSpectralAmplitude& jsa);

/// FNV-1a 64-bit content digest, hex-encoded (manifest entries).
std::string file_digest(const std::string& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace qfc::io
