#pragma once

#include <utility>

#include "qfc/jsa.hpp"
#include "qfc/schmidt.hpp"
#include "qfc/types.hpp"

namespace qfc {

enum class PumpedFieldRole { a, b };
enum class TransformKind { squeezer, beamsplitter };

/// 2x2 operator transform of one conversion flavour. For the beamsplitter the
/// matrix acts on (a, c); for the squeezer on (b, c^dag).
struct FlavorTransform {
  TransformKind kind;
  double parameter;
  Eigen::Matrix2cd matrix;
};

/// Pumping field a yields the squeezer flavour (pair production); pumping
/// field b yields the beamsplitter flavour (SFG/DFG).
TransformKind classify_flavor(PumpedFieldRole pumped);

FlavorTransform flavor_transform(TransformKind kind, double parameter);

/// Overall beamsplitter angle
///   theta = (2 d_eff pi^2 L N / c) sqrt(2 w_i w_o / (c eps0 n_p n_i n_o |int alpha|^2))
///           * sqrt(P_p / A_eff) * calibration,
/// with N the joint-spectrum normalization from build_jsa.
double coupling_theta(const ProcessSpec& spec, double normalization);

/// Per-mode conversion efficiencies eta_j = sin^2(kappa_j * theta).
Arrayd efficiencies(const Arrayd& kappas, double theta);

/// Peak pump power that drives theta to pi/2 (exact inverse of coupling_theta).
double required_pump_power(const ProcessSpec& spec, double normalization);

/// Duty-cycle average power P_peak * fwhm * rep_rate * shape_factor.
double average_power(double peak_power_w, double fwhm_duration_s, double rep_rate_hz,
                     double shape_factor = 1.0);

/// Beamsplitter action on a broadband-mode coefficient vector:
/// converted_j = -i sin(kappa_j theta) c_j, transmitted_j = cos(kappa_j theta) c_j.
std::pair<Arraycd, Arraycd> convert_state(const Arraycd& coefficients,
                                          const SchmidtData& data, double theta);

struct DeviceReport {
  double theta = 0.0;
  Arrayd kappas;
  Arrayd mode_efficiencies;
  double required_peak_power_w = 0.0;
  double average_power_w = 0.0;
  int selected_mode_index = 0;
};

DeviceReport device_report(const ProcessSpec& spec, const JointSpectralAmplitude& jsa,
                           const SchmidtData& schmidt);

}  // namespace qfc
