#pragma once

#include <vector>

#include "qfc/schmidt.hpp"
#include "qfc/spectra.hpp"
#include "qfc/types.hpp"

namespace qfc {

/// Diagonal ensemble of orthonormal input pulse modes with weights summing to 1.
struct InputState {
  std::vector<SpectralAmplitude> modes;
  Arrayd weights;

  void validate() const;
};

/// The device's accepted input mode phi_0. Sets *single_mode (when given) to
/// false if the device is not single-mode dominant (kappa_0^2 < 0.8).
SpectralAmplitude device_acceptance(const SchmidtData& device, bool* single_mode = nullptr);

/// Conversion probability per input mode m:
/// p_m = sum_j |<phi_j|chi_m>|^2 sin^2(kappa_j theta).
Arrayd selection_probabilities(const InputState& state, const SchmidtData& device,
                               double theta);

/// p_target * (1 - max_{m != target} p_m); 1 iff the target converts fully and
/// nothing else does.
double selectivity(const InputState& state, const SchmidtData& device, double theta,
                   int target_index);

}  // namespace qfc
