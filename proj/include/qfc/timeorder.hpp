#pragma once

#include <utility>
#include <vector>

#include "qfc/jsa.hpp"
#include "qfc/schmidt.hpp"
#include "qfc/types.hpp"

namespace qfc {

/// Frequency-domain Green function of the conversion dynamics: the unitary
/// map from the field amplitudes at the waveguide entrance to the exit,
/// assembled as [[uaa, uac], [uca, ucc]] over (input-grid, output-grid)
/// quadrature-weighted amplitude vectors. uca(l, k) maps input sample k to
/// output sample l.
struct GreenFunction {
  FrequencyGrid input_grid, output_grid;
  Matrixcd uaa, uac, uca, ucc;
  int slice_count = 0;
  double pump_scale = 0.0;

  double unitarity_residual() const;
};

/// z-ordered composition of slice unitaries for the full conversion dynamics.
/// pump_scale multiplies the pump amplitude implied by spec.pump_peak_power_w,
/// so at small drive the effective angle is pump_scale times the analytic
/// theta. slices = 1 reproduces the analytic (non-time-ordered) map exactly;
/// use >= 50 for converged time-ordered results.
GreenFunction propagate(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                        const FrequencyGrid& output_grid, double pump_scale, int slices);

/// Top converted-mode efficiency s_0^2 of the uca block, without assembling
/// the full Green function.
double converted_efficiency(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                            const FrequencyGrid& output_grid, double pump_scale,
                            int slices);

/// Schmidt structure of the converted block: per-mode conversion amplitudes
/// s_j in [0, 1] (efficiencies s_j^2) with paired orthonormal modes.
struct RigorousSchmidt {
  Arrayd amplitudes;
  std::vector<SpectralAmplitude> input_modes;
  std::vector<SpectralAmplitude> output_modes;
};

RigorousSchmidt rigorous_schmidt(const GreenFunction& gf, int max_modes = 16);

struct ScanResult {
  double best_scale = 0.0;
  double best_efficiency = 0.0;
};

/// Golden-section maximization of s_0^2(pump_scale). The range must bracket an
/// interior maximum (efficiency rises then falls); tolerance 1e-3 in efficiency.
ScanResult max_efficiency_scan(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                               const FrequencyGrid& output_grid,
                               std::pair<double, double> scale_range, int slices);

}  // namespace qfc
