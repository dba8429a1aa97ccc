#include "qfc/modematch.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfc {

void InputState::validate() const {
  if (modes.empty()) throw std::invalid_argument("input state has no modes");
  if (weights.size() != static_cast<Index>(modes.size()))
    throw std::invalid_argument("weights/modes size mismatch");
  if ((weights < 0).any() || std::abs(weights.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("weights must be nonnegative and sum to 1");
  for (size_t m = 1; m < modes.size(); ++m)
    if (!(modes[m].grid == modes[0].grid))
      throw std::invalid_argument("input modes live on different grids");
  for (size_t m = 0; m < modes.size(); ++m)
    for (size_t n = 0; n <= m; ++n) {
      const double target = (m == n) ? 1.0 : 0.0;
      if (std::abs(std::abs(overlap(modes[m], modes[n])) - target) > 1e-6) {
        std::ostringstream os;
        os << "input modes " << m << " and " << n << " are not orthonormal";
        throw std::invalid_argument(os.str());
      }
    }
}

SpectralAmplitude device_acceptance(const SchmidtData& device, bool* single_mode) {
  if (device.input_modes.empty())
    throw std::invalid_argument("device has no materialized modes");
  if (single_mode) *single_mode = device.kappas[0] * device.kappas[0] >= 0.8;
  return device.input_modes[0];
}

Arrayd selection_probabilities(const InputState& state, const SchmidtData& device,
                               double theta) {
  state.validate();
  if (!(state.modes[0].grid == device.input_grid))
    throw std::invalid_argument("input state grid does not match device input grid");

  Arrayd p(static_cast<Index>(state.modes.size()));
  for (size_t m = 0; m < state.modes.size(); ++m) {
    double pm = 0.0;
    for (size_t j = 0; j < device.input_modes.size(); ++j) {
      const double o2 = std::norm(overlap(device.input_modes[j], state.modes[m]));
      const double s = std::sin(device.kappas[static_cast<Index>(j)] * theta);
      pm += o2 * s * s;
    }
    p[static_cast<Index>(m)] = pm;
  }
  return p;
}

double selectivity(const InputState& state, const SchmidtData& device, double theta,
                   int target_index) {
  if (target_index < 0 || target_index >= static_cast<int>(state.modes.size()))
    throw std::out_of_range("selectivity target index out of range");
  const Arrayd p = selection_probabilities(state, device, theta);
  double worst_other = 0.0;
  for (Index m = 0; m < p.size(); ++m)
    if (m != target_index) worst_other = std::max(worst_other, p[m]);
  return p[target_index] * (1.0 - worst_other);
}

}  // namespace qfc
