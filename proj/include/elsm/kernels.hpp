#pragma once

#include "elsm/kupradze.hpp"
#include "elsm/types.hpp"

// Boundary kernels of the layer potentials, split against the logarithmic
// singularity so that a Nystrom rule with product-log weights can integrate
// them to high order.

namespace elsm {

// Traction parameters for which the double-layer kernel restricted to a smooth
// curve is only weakly singular: the Cauchy-type parts cancel identically and
// the split below stays bounded through coincidence. Also carries the
// coincidence constants of the splits.
struct PseudoStress {
  double mu_t = 0.0;
  double lambda_t = 0.0;
  double a = 0.0;      // single-layer log factor at coincidence: sl_log -> a I
  double psi0 = 0.0;   // transverse constant of sl_rest at coincidence
  double beta = 0.0;   // (mu + mu_t) psi0, mass of the curvature term
  complex phi_r0;      // isotropic constant of sl_rest at coincidence
};

PseudoStress pseudostress_params(const ElasticMedium& med);

// Plain kernel values sharing one set of radial factors:
//   sl = Gamma(x, y),
//   dl = [T_y Gamma(., x)]^T, pseudostress traction at y with unit normal ny.
// Throws std::domain_error when |x - y| < 1e-14.
struct LayerValues {
  Mat2c sl;
  Mat2c dl;
};

LayerValues layer_values(const Point2& x, const Point2& y, const Direction2& ny,
                         const ElasticMedium& med);

// Log splits of the same kernels,
//
//   K(x, y) = K_log(x, y) ln|x - y| + K_rest(x, y),
//
// where each part extends smoothly through x = y whenever both points lie on
// a smooth curve with normal ny at y. Quadrature weights exact for
// f(s) ln|s - t| consume K_log; K_rest takes plain weights.
struct LayerSplit {
  Mat2c sl_log;
  Mat2c sl_rest;
  Mat2c dl_log;
  Mat2c dl_rest;
};

LayerSplit layer_split(const Point2& x, const Point2& y, const Direction2& ny,
                       const ElasticMedium& med);

// Coincidence limits along a parameterized curve through x(t), given
// xp = x'(t), xpp = x''(t) and the unit normal n there: sl_log -> a I,
// dl_log -> 0, sl_rest picks up the tangent direction and dl_rest the
// curvature of the curve.
LayerSplit layer_split_diagonal(const Point2& xp, const Point2& xpp,
                                const Direction2& n, const ElasticMedium& med);

namespace detail {

// Scalar data behind the splits, exposed for cross-validation:
//   phi(r) = phi_l ln(r) + phi_r,   psi(r) = psi_l ln(r) + psi_r,
// d-members are r-derivatives of the individual parts, and psi_l_over_r keeps
// the bounded ratio psi_l / r.
struct SplitScalars {
  double phi_l = 0.0, dphi_l = 0.0;
  double psi_l = 0.0, dpsi_l = 0.0, psi_l_over_r = 0.0;
  complex phi_r, dphi_r, psi_r, dpsi_r;
};

// Power-series evaluation (small k_s r) and Hankel-based evaluation (moderate
// to large k_s r). Their validity ranges overlap on roughly k_s r in [0.3, 6];
// the unsuffixed entry point selects automatically.
SplitScalars split_scalars_series(const ElasticMedium& med, double rho);
SplitScalars split_scalars_far(const ElasticMedium& med, double rho);
SplitScalars split_scalars(const ElasticMedium& med, double rho);

}  // namespace detail

}  // namespace elsm
