#pragma once

#include "elsm/special.hpp"
#include "elsm/types.hpp"

namespace elsm {

// Radial factors of the fundamental tensor,
//
//   Gamma(x, y) = phi(r) I + psi(r) e e^T,   e = (x - y)/r,  r = |x - y|,
//
// together with their r-derivatives. psi/r is kept as a separate member: it
// stays bounded as r -> 0 while dphi and dpsi individually blow up, and the
// traction kernels consume it directly.
struct RadialFactors {
  complex phi{};
  complex psi{};
  complex dphi{};
  complex dpsi{};
  complex psi_over_r{};
};

RadialFactors radial_factors(const ElasticMedium& med, double r);

// Fundamental solution of the 2D time-harmonic Navier equation.
// Throws std::domain_error when r = |x - y| < 1e-14.
Mat2c kupradze_tensor(const Point2& x, const Point2& y, const ElasticMedium& med);

// Field at x of a point source located at y with polarization p.
Vec2c point_source(const Point2& x, const Point2& y, const Vec2c& p,
                   const ElasticMedium& med);

// Generalized surface traction of a displacement field w given its gradient,
// grad_w(i, j) = d_j w_i:
//
//   T w = (mu + mu_t) (grad w) n + lambda_t (div w) n
//         + mu_t (curl w) (n2, -n1)^T,     curl w = d_1 w_2 - d_2 w_1.
Vec2c traction(const Mat2c& grad_w, const Direction2& n, const ElasticMedium& med,
               double mu_t, double lambda_t);

// Traction choice used throughout the scattering formulation:
// mu_t = 0, lambda_t = lambda + mu.
Vec2c traction(const Mat2c& grad_w, const Direction2& n, const ElasticMedium& med);

// Closed form of the generalized traction applied to the columns of the
// fundamental tensor. e must be the unit vector pointing from the source
// point toward the traction point, n the unit normal at the traction point,
// rf the radial factors at their distance. Column j is T[Gamma(., y) e_j].
Mat2c traction_family_matrix(const Point2& e, const Point2& n,
                             const RadialFactors& rf, double mu, double mu_t,
                             double lambda_t);

// Traction at x (unit normal nx) of the columns of x -> Gamma(x, y), for the
// generalized traction with parameters (mu_t, lambda_t).
Mat2c traction_kernel_general(const Point2& x, const Direction2& nx,
                              const Point2& y, const ElasticMedium& med,
                              double mu_t, double lambda_t);

// Same with the default choice mu_t = 0, lambda_t = lambda + mu.
Mat2c traction_kernel(const Point2& x, const Direction2& nx, const Point2& y,
                      const ElasticMedium& med);

}  // namespace elsm
