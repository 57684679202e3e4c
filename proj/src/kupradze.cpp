#include "elsm/kupradze.hpp"

#include <cmath>
#include <stdexcept>

namespace elsm {

namespace {

constexpr complex kImagQuarter{0.0, 0.25};

}  // namespace

RadialFactors radial_factors(const ElasticMedium& med, double r) {
  const double ks = med.ks, kp = med.kp;
  const double zs = ks * r, zp = kp * r;
  const Hankel01 hs = hankel1_01(zs);
  const Hankel01 hp = hankel1_01(zp);
  const double w2 = med.omega * med.omega;

  // c1(k) = k H1(kr)/r and its r-derivative (k^2 H0 - 2 k H1 / r)/r.
  const complex c1s = ks * hs.h1 / r;
  const complex c1p = kp * hp.h1 / r;
  const complex dc1s = (ks * ks * hs.h0 - 2.0 * c1s) / r;
  const complex dc1p = (kp * kp * hp.h0 - 2.0 * c1p) / r;

  RadialFactors rf;
  rf.phi = kImagQuarter * (hs.h0 / med.mu - (c1s - c1p) / w2);
  rf.psi = kImagQuarter *
           ((-ks * ks * hs.h0 + 2.0 * c1s) - (-kp * kp * hp.h0 + 2.0 * c1p)) / w2;
  rf.dphi = kImagQuarter * (-ks * hs.h1 / med.mu - (dc1s - dc1p) / w2);
  rf.dpsi = kImagQuarter *
            ((ks * ks * ks * hs.h1 + 2.0 * dc1s) -
             (kp * kp * kp * hp.h1 + 2.0 * dc1p)) / w2;
  rf.psi_over_r = rf.psi / r;
  return rf;
}

Mat2c kupradze_tensor(const Point2& x, const Point2& y, const ElasticMedium& med) {
  const Point2 d = x - y;
  const double r = norm(d);
  if (!(r >= 1e-14)) {
    throw std::domain_error("kupradze_tensor: coincident points");
  }
  const Point2 e = (1.0 / r) * d;
  const RadialFactors rf = radial_factors(med, r);
  Mat2c g = outer(e, e);
  g(0, 0) = rf.phi + rf.psi * g(0, 0);
  g(0, 1) = rf.psi * g(0, 1);
  g(1, 0) = rf.psi * g(1, 0);
  g(1, 1) = rf.phi + rf.psi * g(1, 1);
  return g;
}

Vec2c point_source(const Point2& x, const Point2& y, const Vec2c& p,
                   const ElasticMedium& med) {
  return kupradze_tensor(x, y, med) * p;
}

Vec2c traction(const Mat2c& grad_w, const Direction2& n, const ElasticMedium& med,
               double mu_t, double lambda_t) {
  const complex div = grad_w(0, 0) + grad_w(1, 1);
  const complex curl = grad_w(1, 0) - grad_w(0, 1);
  const double m = med.mu + mu_t;
  Vec2c t;
  t.u1 = m * (grad_w(0, 0) * n.x1 + grad_w(0, 1) * n.x2) + lambda_t * div * n.x1 +
         mu_t * curl * n.x2;
  t.u2 = m * (grad_w(1, 0) * n.x1 + grad_w(1, 1) * n.x2) + lambda_t * div * n.x2 -
         mu_t * curl * n.x1;
  return t;
}

Vec2c traction(const Mat2c& grad_w, const Direction2& n, const ElasticMedium& med) {
  return traction(grad_w, n, med, 0.0, med.lambda + med.mu);
}

Mat2c traction_family_matrix(const Point2& e, const Point2& n,
                             const RadialFactors& rf, double mu, double mu_t,
                             double lambda_t) {
  const double en = dot(e, n);
  const double m = mu + mu_t;
  const Mat2c ee = outer(e, e);
  const Mat2c ne = outer(n, e);
  const Mat2c en_m = outer(e, n);
  const complex normal_grad = rf.dphi * en;
  const complex shear = rf.dpsi * en;
  const complex div_coef = lambda_t * (rf.dphi + rf.dpsi + rf.psi_over_r);
  const complex curl_coef = mu_t * (rf.dphi - rf.psi_over_r);

  Mat2c d;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      complex v = m * (shear * ee(i, j) +
                       rf.psi_over_r * (ne(i, j) + en_m(i, j) - 2.0 * en * ee(i, j)));
      v += div_coef * ne(i, j) + curl_coef * en_m(i, j);
      if (i == j) v += m * normal_grad - curl_coef * en;
      d(i, j) = v;
    }
  }
  return d;
}

Mat2c traction_kernel_general(const Point2& x, const Direction2& nx,
                              const Point2& y, const ElasticMedium& med,
                              double mu_t, double lambda_t) {
  const Point2 d = x - y;
  const double r = norm(d);
  if (!(r >= 1e-14)) {
    throw std::domain_error("traction_kernel: coincident points");
  }
  const Point2 e = (1.0 / r) * d;
  const Point2 n{nx.x1, nx.x2};
  return traction_family_matrix(e, n, radial_factors(med, r), med.mu, mu_t,
                                lambda_t);
}

Mat2c traction_kernel(const Point2& x, const Direction2& nx, const Point2& y,
                      const ElasticMedium& med) {
  return traction_kernel_general(x, nx, y, med, 0.0, med.lambda + med.mu);
}

}  // namespace elsm
