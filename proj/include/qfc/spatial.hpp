#pragma once

#include <string>

#include "qfc/types.hpp"

namespace qfc {

/// Real transverse mode profile sampled on a uniform (x, y) grid,
/// normalized so that sum |f|^2 dx dy = 1. values(i, j) = f(x_i, y_j).
struct TransverseProfile {
  Arrayd x_m, y_m;
  Matrixd values;
  std::string label;

  double dx() const { return x_m[1] - x_m[0]; }
  double dy() const { return y_m[1] - y_m[0]; }
  double norm2() const { return values.array().square().sum() * dx() * dy(); }
  void normalize();
};

/// Elliptical Gaussian f ~ exp(-x^2/wx^2 - y^2/wy^2), normalized.
TransverseProfile gaussian_profile(const Arrayd& x_m, const Arrayd& y_m, double waist_x_m,
                                   double waist_y_m);

/// Effective interaction area 1/A = (sum f_p f_i conj(f_o) dx dy)^2, in m^2.
/// Returns +inf when the triple overlap vanishes (orthogonal profiles).
double effective_area(const TransverseProfile& pump, const TransverseProfile& input,
                      const TransverseProfile& output);

}  // namespace qfc
