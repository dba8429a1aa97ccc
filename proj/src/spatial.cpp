#include "qfc/spatial.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qfc {

namespace {

void check_uniform(const Arrayd& g, const char* name) {
  if (g.size() < 8) throw std::invalid_argument(std::string(name) + " grid too small");
  const double d = g[1] - g[0];
  if (!(d > 0)) throw std::invalid_argument(std::string(name) + " grid not increasing");
  for (Index i = 2; i < g.size(); ++i)
    if (std::abs((g[i] - g[i - 1]) - d) > 1e-9 * d)
      throw std::invalid_argument(std::string(name) + " grid not uniform");
}

}  // namespace

void TransverseProfile::normalize() {
  const double n = std::sqrt(norm2());
  if (!(n > 0)) throw std::domain_error("cannot normalize zero profile");
  values /= n;
}

TransverseProfile gaussian_profile(const Arrayd& x_m, const Arrayd& y_m, double waist_x_m,
                                   double waist_y_m) {
  check_uniform(x_m, "x");
  check_uniform(y_m, "y");
  if (!(waist_x_m > 0 && waist_y_m > 0))
    throw std::invalid_argument("waists must be positive");
  if (x_m[0] > -4.0 * waist_x_m || x_m[x_m.size() - 1] < 4.0 * waist_x_m ||
      y_m[0] > -4.0 * waist_y_m || y_m[y_m.size() - 1] < 4.0 * waist_y_m) {
    std::ostringstream os;
    os << "profile support (+-4 waists = " << 4.0 * waist_x_m << " x " << 4.0 * waist_y_m
       << " m) exceeds the spatial grids";
    throw std::domain_error(os.str());
  }

  TransverseProfile p{x_m, y_m, Matrixd(x_m.size(), y_m.size()), "gaussian"};
  for (Index i = 0; i < x_m.size(); ++i)
    for (Index j = 0; j < y_m.size(); ++j)
      p.values(i, j) = std::exp(-x_m[i] * x_m[i] / (waist_x_m * waist_x_m) -
                                y_m[j] * y_m[j] / (waist_y_m * waist_y_m));
  p.normalize();
  return p;
}

double effective_area(const TransverseProfile& pump, const TransverseProfile& input,
                      const TransverseProfile& output) {
  if (pump.x_m.size() != input.x_m.size() || pump.x_m.size() != output.x_m.size() ||
      pump.y_m.size() != input.y_m.size() || pump.y_m.size() != output.y_m.size() ||
      (pump.x_m - input.x_m).abs().maxCoeff() > 0 ||
      (pump.x_m - output.x_m).abs().maxCoeff() > 0 ||
      (pump.y_m - input.y_m).abs().maxCoeff() > 0 ||
      (pump.y_m - output.y_m).abs().maxCoeff() > 0)
    throw std::invalid_argument("effective_area requires identical spatial grids");

  const double overlap =
      (pump.values.array() * input.values.array() * output.values.array()).sum() *
      pump.dx() * pump.dy();
  // scale-free smallness test against the Cauchy-Schwarz-type bound
  const double bound = std::sqrt(pump.norm2() * input.norm2()) *
                       output.values.array().abs().maxCoeff();
  if (std::abs(overlap) < 1e-12 * bound)
    return std::numeric_limits<double>::infinity();
  return 1.0 / (overlap * overlap);
}

}  // namespace qfc
