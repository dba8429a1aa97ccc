#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>

#include "qfc/types.hpp"

namespace qfc {

enum class Axis { ordinary, extraordinary };
enum class Flavor { sfg, dfg };
enum class WaveRole { pump, input, output };

const char* to_string(Axis a);
const char* to_string(Flavor f);

/// Refractive-index model for one crystal axis at a fixed temperature.
///
/// Three forms are supported:
///  - sellmeier: temperature-dependent two-resonance expansion
///        n^2 = c0 + c0t*f + sum_k (pk + pkt*f)/(lam^2 - (qk + qkt*f)^2) - r*lam^2
///    with lam in um and f = (T[C] - t0)*(T[C] + t1),
///  - fixed_index: constant n (coefficient "n"), dispersion-free,
///  - tabulated: cubic-spline interpolation of (lam_um, n) samples.
enum class ModelForm { sellmeier, fixed_index, tabulated };

struct DispersionModel {
  Axis axis = Axis::ordinary;
  ModelForm form = ModelForm::sellmeier;
  std::map<std::string, double> coefficients;
  double temperature_k = 463.15;
  std::pair<double, double> valid_window_um{0.4, 2.0};
  std::string source;

  // tabulated form only; spline curvatures are precomputed by tabulated_index()
  Arrayd table_lambda_um, table_n, table_curv;
};

struct WaveSpec {
  double center_wavelength_m = 0.0;
  Axis polarization_axis = Axis::ordinary;
  WaveRole role = WaveRole::input;

  void validate() const;
};

/// Congruent lithium niobate, extraordinary axis (Jundt 1997 fit).
DispersionModel lithium_niobate_extraordinary(double temperature_k = 463.15);
/// Congruent lithium niobate, ordinary axis (Edwards & Lawrence 1984 fit).
DispersionModel lithium_niobate_ordinary(double temperature_k = 463.15);
/// Dispersion-free stub with constant index n.
DispersionModel fixed_index(double n, Axis axis = Axis::ordinary);
/// Tabulated n(lambda) with natural cubic-spline interpolation.
DispersionModel tabulated_index(const Arrayd& lambda_um, const Arrayd& n, Axis axis,
                                std::string source = "tabulated");

double refractive_index(const DispersionModel& model, double wavelength_m);

/// Propagation constant beta = n(2*pi*c/omega) * omega / c.
double beta(const DispersionModel& model, double omega_rad_s);

/// Group velocity (d beta/d omega)^-1 by Richardson-extrapolated central differences.
double group_velocity(const DispersionModel& model, double omega_rad_s);

/// Pump wavelength on pump_model whose group velocity matches the input wave's,
/// found by bisection over window_m to 0.01 nm. Throws if the velocity gap does
/// not change sign across the window.
double find_gvm_pump(const WaveSpec& input, Axis pump_axis, const DispersionModel& pump_model,
                     const DispersionModel& input_model, std::pair<double, double> window_m);

/// Energy-conserving output wavelength: 1/lo = 1/li + 1/lp (SFG), 1/li - 1/lp (DFG).
double output_wavelength(Flavor flavor, double lambda_in_m, double lambda_pump_m);

/// Quasi-phasematching grating period. `direction` is the sign of the bare
/// mismatch combination, so the signed period `direction * period_m` cancels it;
/// phasematched = true means no poling is needed (signed period = +inf).
struct PolingResult {
  double period_m = std::numeric_limits<double>::infinity();
  int direction = 1;
  bool phasematched = false;

  double signed_period() const {
    return phasematched ? std::numeric_limits<double>::infinity()
                        : direction * period_m;
  }
};

PolingResult poling_period(Flavor flavor, double beta_p, double beta_i, double beta_o);

/// Phase mismatch including the grating contribution. poling_period_m is signed
/// (see PolingResult::signed_period); +/-inf means no poling.
double phase_mismatch(Flavor flavor, double omega_in, double omega_out,
                      const DispersionModel& pump_model, const DispersionModel& input_model,
                      const DispersionModel& output_model, double poling_period_m);

}  // namespace qfc
