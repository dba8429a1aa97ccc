#include "qfc/timeorder.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qfc/conversion.hpp"

namespace qfc {

using constants::pi;

double GreenFunction::unitarity_residual() const {
  const Matrixcd iaa = Matrixcd::Identity(uaa.rows(), uaa.cols());
  const Matrixcd icc = Matrixcd::Identity(ucc.rows(), ucc.cols());
  const Matrixcd r11 = uaa.adjoint() * uaa + uca.adjoint() * uca - iaa;
  const Matrixcd r12 = uaa.adjoint() * uac + uca.adjoint() * ucc;
  const Matrixcd r22 = uac.adjoint() * uac + ucc.adjoint() * ucc - icc;
  return std::sqrt(r11.squaredNorm() + 2.0 * r12.squaredNorm() + r22.squaredNorm());
}

namespace {

// spectral-norm estimate of the entrywise-magnitude kernel (upper bound for
// the kernel at any z, since phases only lower the norm)
double kernel_norm_bound(const Matrixd& mag) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(mag.cols()).normalized();
  for (int it = 0; it < 12; ++it) {
    Eigen::VectorXd u = mag * v;
    const double n = (mag.transpose() * u).norm();
    if (n == 0.0) return 0.0;
    v = (mag.transpose() * u) / n;
  }
  return (mag * v).norm() * 1.05;  // small safety margin on the estimate
}

int taylor_order(double x, int slices) {
  // smallest K with slices * x^(K+1)/(K+1)! below budget
  const double budget = 1e-10;
  double term = x;
  for (int k = 1; k <= 24; ++k) {
    term *= x / (k + 1);
    if (slices * term <= budget) return k;
  }
  return 24;
}

struct SliceKernel {
  Matrixcd base;     // (No, Ni), slice-averaged magnitude profile * coef * quadrature
  Matrixcd phase0;   // e^{i dbeta z_first}
  Matrixcd step;     // e^{i dbeta dz}
};

// Horner application of the Taylor polynomial of exp(i dz [[0,Q^H],[Q,0]]) to
// the block columns (a; c).
void apply_exp(const Matrixcd& q, Complex idz, int order, Matrixcd& a, Matrixcd& c) {
  Matrixcd va = a, vc = c;
  for (int k = order; k >= 1; --k) {
    const Complex f = idz / static_cast<double>(k);
    Matrixcd ha = q.adjoint() * vc;
    Matrixcd hc = q * va;
    va = a + f * ha;
    vc = c + f * hc;
  }
  a.swap(va);
  c.swap(vc);
}

struct Propagation {
  Matrixcd uaa, uca, uac, ucc;
};

Propagation run(const ProcessSpec& spec, const FrequencyGrid& gi, const FrequencyGrid& go,
                double pump_scale, int slices, bool full) {
  if (slices < 1) throw std::invalid_argument("propagate needs at least one slice");
  spec.validate();

  const SpectralAmplitude alpha = pump_spectrum(spec, gi, go);
  const Matrixcd pump = pump_matrix(spec, gi, go, alpha);
  const Matrixd dbeta = mismatch_matrix(spec, gi, go);
  const double half_l = spec.length_m / 2.0;
  const Matrixd pm = dbeta.unaryExpr([half_l](double d) { return sinc(d * half_l); });
  const double n2 = (pump.array().abs2() * pm.array().square()).sum() *
                    gi.spacing_rad_s * go.spacing_rad_s;
  if (!(n2 > 0))
    throw std::domain_error("empty joint spectrum: cannot propagate");
  const double normalization = std::sqrt(n2);
  const double theta = coupling_theta(spec, normalization);
  const double coef = pump_scale * theta / (spec.length_m * normalization);

  const double dz = spec.length_m / slices;
  const double quad = std::sqrt(gi.spacing_rad_s * go.spacing_rad_s);

  // slice-averaged kernel: the z-average of e^{i dbeta z} over a slice is
  // dz-exact, sinc(dbeta dz/2) * e^{i dbeta z_mid}
  Matrixcd base = (pump.array() *
                   dbeta.unaryExpr([dz](double d) { return sinc(d * dz / 2.0); }).array() *
                   (coef * quad))
                      .matrix()
                      .transpose();
  const double z0 = -half_l + dz / 2.0;
  Matrixcd q = base.array() *
               dbeta.transpose().unaryExpr([z0](double d) {
                 return std::polar(1.0, d * z0);
               }).array();
  const Matrixcd step = dbeta.transpose().unaryExpr([dz](double d) {
    return std::polar(1.0, d * dz);
  });

  const double sig1 = kernel_norm_bound(base.cwiseAbs());
  const int nsub = std::max(1, static_cast<int>(std::ceil(sig1 * dz / 0.5)));
  const double x = sig1 * dz / nsub;
  const int order = taylor_order(x, slices * nsub);
  const Complex idz_sub = Complex(0.0, dz / nsub);

  Propagation p;
  p.uaa = Matrixcd::Identity(gi.count, gi.count);
  p.uca = Matrixcd::Zero(go.count, gi.count);
  if (full) {
    p.uac = Matrixcd::Zero(gi.count, go.count);
    p.ucc = Matrixcd::Identity(go.count, go.count);
  }

  for (int m = 0; m < slices; ++m) {
    for (int s = 0; s < nsub; ++s) {
      apply_exp(q, idz_sub, order, p.uaa, p.uca);
      if (full) apply_exp(q, idz_sub, order, p.uac, p.ucc);
    }
    if (m + 1 < slices) q.array() *= step.array();
  }
  return p;
}

}  // namespace

GreenFunction propagate(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                        const FrequencyGrid& output_grid, double pump_scale, int slices) {
  Propagation p = run(spec, input_grid, output_grid, pump_scale, slices, true);
  GreenFunction gf;
  gf.input_grid = input_grid;
  gf.output_grid = output_grid;
  gf.uaa = std::move(p.uaa);
  gf.uca = std::move(p.uca);
  gf.uac = std::move(p.uac);
  gf.ucc = std::move(p.ucc);
  gf.slice_count = slices;
  gf.pump_scale = pump_scale;

  const double res = gf.unitarity_residual();
  if (res > 1e-4) {
    std::ostringstream os;
    os << "propagation lost unitarity (residual " << res
       << "); increase the slice count";
    throw std::runtime_error(os.str());
  }
  return gf;
}

double converted_efficiency(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                            const FrequencyGrid& output_grid, double pump_scale,
                            int slices) {
  Propagation p = run(spec, input_grid, output_grid, pump_scale, slices, false);
  Eigen::BDCSVD<Matrixcd> svd(p.uca);
  const double s0 = svd.singularValues()(0);
  return s0 * s0;
}

RigorousSchmidt rigorous_schmidt(const GreenFunction& gf, int max_modes) {
  Eigen::BDCSVD<Matrixcd> svd(gf.uca, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double dwi = gf.input_grid.spacing_rad_s;
  const double dwo = gf.output_grid.spacing_rad_s;

  RigorousSchmidt r;
  r.amplitudes = svd.singularValues().array();
  const Index n_modes = std::min<Index>(max_modes, r.amplitudes.size());
  for (Index j = 0; j < n_modes; ++j) {
    // uca = sum_j s_j w_j x_j^H; a photon with envelope conj(x_j) converts with
    // amplitude s_j, so the input mode function is conj(x_j)
    Arraycd x = svd.matrixV().col(j).array();
    Arraycd w = svd.matrixU().col(j).array();
    Index imax = 0;
    x.abs().maxCoeff(&imax);
    const Complex p = std::conj(x[imax]) / std::abs(x[imax]);
    x *= p;
    w *= p;
    r.input_modes.push_back(
        {gf.input_grid, x.conjugate() / std::sqrt(dwi), "phi_rig" + std::to_string(j)});
    r.output_modes.push_back(
        {gf.output_grid, w / std::sqrt(dwo), "psi_rig" + std::to_string(j)});
  }
  return r;
}

ScanResult max_efficiency_scan(const ProcessSpec& spec, const FrequencyGrid& input_grid,
                               const FrequencyGrid& output_grid,
                               std::pair<double, double> scale_range, int slices) {
  double a = scale_range.first, b = scale_range.second;
  if (!(b > a)) throw std::invalid_argument("invalid scale range");
  auto f = [&](double s) {
    return converted_efficiency(spec, input_grid, output_grid, s, slices);
  };

  const double fa = f(a), fb = f(b);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  if (std::max(fc, fd) <= std::max(fa, fb)) {
    std::ostringstream os;
    os << "no interior efficiency maximum in scale range [" << a << ", " << b
       << "]: endpoint efficiencies " << fa << " and " << fb;
    throw std::runtime_error(os.str());
  }

  for (int it = 0; it < 60 && std::abs(fc - fd) > 1e-3 * 0.25; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? ScanResult{c, fc} : ScanResult{d, fd};
}

}  // namespace qfc
