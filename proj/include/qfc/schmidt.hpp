#pragma once

#include <vector>

#include "qfc/jsa.hpp"
#include "qfc/spectra.hpp"
#include "qfc/types.hpp"

namespace qfc {

/// Schmidt decomposition G = sum_j kappa_j phi_j(w_i) psi_j(w_o).
/// kappas holds the full singular spectrum (sum kappa^2 = 1); mode functions
/// are materialized for the first max_modes pairs only and are L2-orthonormal
/// under the grid quadrature.
struct SchmidtData {
  Arrayd kappas;
  std::vector<SpectralAmplitude> input_modes;
  std::vector<SpectralAmplitude> output_modes;
  FrequencyGrid input_grid, output_grid;
};

SchmidtData schmidt_decompose(const JointSpectralAmplitude& jsa, int max_modes = 16);

/// Single-modeness summary K = (sum k^2)^2 / sum k^4; 1 for a separable JSA.
double schmidt_number(const SchmidtData& data);

}  // namespace qfc
