#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qfc {

using Real = double;
using Complex = std::complex<double>;

using Arrayd = Eigen::ArrayXd;
using Arraycd = Eigen::ArrayXcd;
using Matrixd = Eigen::MatrixXd;
using Matrixcd = Eigen::MatrixXcd;
using Index = Eigen::Index;

namespace constants {
inline constexpr double c0 = 299792458.0;         // vacuum speed of light [m/s]
inline constexpr double eps0 = 8.8541878128e-12;  // vacuum permittivity [F/m]
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

inline constexpr Complex operator""_i(long double im) {
  return Complex{0.0, static_cast<double>(im)};
}

/// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace qfc
