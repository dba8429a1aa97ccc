#include "qfc/schmidt.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfc {

SchmidtData schmidt_decompose(const JointSpectralAmplitude& jsa, int max_modes) {
  const double qn = jsa.quad_norm();
  if (std::abs(qn - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "schmidt_decompose requires a normalized joint spectrum (quadrature norm "
       << qn << ")";
    throw std::invalid_argument(os.str());
  }

  const double dwi = jsa.input_grid.spacing_rad_s;
  const double dwo = jsa.output_grid.spacing_rad_s;
  // quadrature weighting makes the singular values discretization-independent
  Matrixcd weighted = jsa.values * std::sqrt(dwi * dwo);
  Eigen::BDCSVD<Matrixcd> svd(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtData data;
  data.input_grid = jsa.input_grid;
  data.output_grid = jsa.output_grid;
  data.kappas = svd.singularValues().array();

  const Index n_modes = std::min<Index>(max_modes, data.kappas.size());
  data.input_modes.reserve(n_modes);
  data.output_modes.reserve(n_modes);
  for (Index j = 0; j < n_modes; ++j) {
    Arraycd phi = svd.matrixU().col(j).array() / std::sqrt(dwi);
    Arraycd psi = svd.matrixV().col(j).array().conjugate() / std::sqrt(dwo);
    // rotate phi so its largest-magnitude sample is real positive; psi compensates
    Index imax = 0;
    phi.abs().maxCoeff(&imax);
    const Complex ph = phi[imax] / std::abs(phi[imax]);
    phi /= ph;
    psi *= ph;
    data.input_modes.push_back({jsa.input_grid, std::move(phi), "phi" + std::to_string(j)});
    data.output_modes.push_back({jsa.output_grid, std::move(psi), "psi" + std::to_string(j)});
  }
  return data;
}

double schmidt_number(const SchmidtData& data) {
  const double s2 = data.kappas.square().sum();
  const double s4 = data.kappas.square().square().sum();
  return s2 * s2 / s4;
}

}  // namespace qfc
