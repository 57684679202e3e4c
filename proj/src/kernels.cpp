#include "elsm/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace elsm {

namespace {

constexpr double euler_gamma = 0.57721566490153286061;

// Crossover on k_s r between the power-series and Hankel-based paths. Both
// hold well past either side; tests compare them on k_s r in [0.3, 6].
constexpr double series_cut = 1.5;

// The four power series in q = (z/2)^2 behind the small-argument splits, each
// with its k-weighted partner sum: d/dr q^k = 2 k q^k / r turns the partner
// into an r-derivative.
struct SeriesSums {
  double j0 = 1.0, j0k = 0.0;    // J0(z)
  double j1n = 0.5, j1nk = 0.0;  // J1(z)/z
  double w0 = 0.0, w0k = 0.0;    // sum_{k>=1} (-1)^{k+1} H_k q^k / (k!)^2
  double v1 = 1.0, v1k = 0.0;    // sum_{k>=0} (H_k + H_{k+1}) (-1)^k q^k / (k!(k+1)!)
};

SeriesSums series_sums(double q) {
  SeriesSums s;
  double t0 = 1.0;  // (-1)^k q^k / (k!)^2
  double t1 = 0.5;  // (-1)^k q^k / (k!(k+1)!) / 2
  double hk = 0.0;  // harmonic number H_k
  for (int k = 1; k <= 48; ++k) {
    t0 *= -q / (static_cast<double>(k) * k);
    t1 *= -q / (static_cast<double>(k) * (k + 1));
    hk += 1.0 / k;
    const double hk1 = hk + 1.0 / (k + 1);
    s.j0 += t0;
    s.j0k += k * t0;
    s.j1n += t1;
    s.j1nk += k * t1;
    const double w = -hk * t0;
    s.w0 += w;
    s.w0k += k * w;
    const double v = 2.0 * (hk + hk1) * t1;
    s.v1 += v;
    s.v1k += k * v;
    if ((std::abs(t0) + std::abs(t1)) * (hk + 2.0) < 1e-19) break;
  }
  return s;
}

// Per-wavenumber pieces: Bessel J parts and the log-free remainders of the
// Hankel functions,
//   H0(k r)          = (2i/pi) J0 ln(r) + h0r,
//   H1(k r) / (k r)  = (2i/pi) j1n ln(r) + h1nr - 2i / (pi (k r)^2),
// together with their r-derivatives. The 1/r^2 term never enters any kernel:
// it cancels between the two wavenumbers.
struct RegParts {
  double j0, dj0, j1n, dj1n;
  complex h0r, dh0r, h1nr, dh1nr;
};

RegParts reg_parts_series(double k, double rho) {
  const double z = k * rho;
  const SeriesSums s = series_sums(0.25 * z * z);
  const double two_over_rho = 2.0 / rho;
  const complex lg{1.0, (2.0 / pi) * (std::log(0.5 * k) + euler_gamma)};
  const complex two_i_pi{0.0, 2.0 / pi};
  const complex half_i_pi{0.0, 0.5 / pi};

  RegParts r;
  r.j0 = s.j0;
  r.dj0 = s.j0k * two_over_rho;
  r.j1n = s.j1n;
  r.dj1n = s.j1nk * two_over_rho;
  r.h0r = lg * s.j0 + two_i_pi * s.w0;
  r.dh0r = lg * r.dj0 + two_i_pi * (s.w0k * two_over_rho);
  r.h1nr = lg * s.j1n - half_i_pi * s.v1;
  r.dh1nr = lg * r.dj1n - half_i_pi * (s.v1k * two_over_rho);
  return r;
}

RegParts reg_parts_far(double k, double rho) {
  const double z = k * rho;
  const Hankel01 h = hankel1_01(z);
  const double lr = std::log(rho);
  const complex two_i_pi{0.0, 2.0 / pi};
  const complex h1n = h.h1 / z;

  RegParts r;
  r.j0 = h.h0.real();
  r.j1n = h.h1.real() / z;
  r.dj0 = -k * h.h1.real();
  r.dj1n = (r.j0 - 2.0 * r.j1n) / rho;
  r.h0r = h.h0 - two_i_pi * (r.j0 * lr);
  r.dh0r = -k * h.h1 - two_i_pi * (r.dj0 * lr + r.j0 / rho);
  r.h1nr = h1n + complex{0.0, 2.0 / (pi * z * z)} - two_i_pi * (r.j1n * lr);
  r.dh1nr = (h.h0 - 2.0 * h1n) / rho - complex{0.0, 4.0 / (pi * z * z * rho)} -
            two_i_pi * (r.dj1n * lr + r.j1n / rho);
  return r;
}

detail::SplitScalars combine(const ElasticMedium& med, const RegParts& s,
                             const RegParts& p, double rho) {
  const double w2 = med.omega * med.omega;
  const double ks2 = med.ks * med.ks, kp2 = med.kp * med.kp;
  const double c = 1.0 / (2.0 * pi);
  const complex iq{0.0, 0.25};

  detail::SplitScalars out;
  out.phi_l = -c * (s.j0 / med.mu - (ks2 * s.j1n - kp2 * p.j1n) / w2);
  out.dphi_l = -c * (s.dj0 / med.mu - (ks2 * s.dj1n - kp2 * p.dj1n) / w2);
  out.psi_l =
      (c / w2) * (ks2 * (s.j0 - 2.0 * s.j1n) - kp2 * (p.j0 - 2.0 * p.j1n));
  out.dpsi_l =
      (c / w2) * (ks2 * (s.dj0 - 2.0 * s.dj1n) - kp2 * (p.dj0 - 2.0 * p.dj1n));
  out.psi_l_over_r = out.psi_l / rho;
  out.phi_r = iq * (s.h0r / med.mu - (ks2 * s.h1nr - kp2 * p.h1nr) / w2);
  out.dphi_r = iq * (s.dh0r / med.mu - (ks2 * s.dh1nr - kp2 * p.dh1nr) / w2);
  out.psi_r = (iq / w2) *
              (-ks2 * s.h0r + kp2 * p.h0r + 2.0 * (ks2 * s.h1nr - kp2 * p.h1nr));
  out.dpsi_r = (iq / w2) * (-ks2 * s.dh0r + kp2 * p.dh0r +
                            2.0 * (ks2 * s.dh1nr - kp2 * p.dh1nr));
  return out;
}

// Curvature-weighted coincidence matrix of the double-layer smooth part:
// q_dn [ (mu + mu_t) a I + beta (I - 2 e e^T) ]. Symmetric, so it commutes
// with the final kernel transposition.
Mat2c jump_block(double q_dn, const Mat2c& ee, const ElasticMedium& med,
                 const PseudoStress& ps) {
  const double iso = (med.mu + ps.mu_t) * ps.a + ps.beta;
  Mat2c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m(i, j) = q_dn * ((i == j ? iso : 0.0) - 2.0 * ps.beta * ee(i, j).real());
  return m;
}

}  // namespace

namespace detail {

SplitScalars split_scalars_series(const ElasticMedium& med, double rho) {
  return combine(med, reg_parts_series(med.ks, rho),
                 reg_parts_series(med.kp, rho), rho);
}

SplitScalars split_scalars_far(const ElasticMedium& med, double rho) {
  return combine(med, reg_parts_far(med.ks, rho), reg_parts_far(med.kp, rho),
                 rho);
}

SplitScalars split_scalars(const ElasticMedium& med, double rho) {
  return med.ks * rho < series_cut ? split_scalars_series(med, rho)
                                   : split_scalars_far(med, rho);
}

}  // namespace detail

PseudoStress pseudostress_params(const ElasticMedium& med) {
  const double mu = med.mu, la = med.lambda;
  const double w2 = med.omega * med.omega;
  const double ks2 = med.ks * med.ks, kp2 = med.kp * med.kp;

  PseudoStress ps;
  ps.mu_t = mu * (mu + la) / (3.0 * mu + la);
  ps.lambda_t = (2.0 * mu + la) * (mu + la) / (3.0 * mu + la);
  const double c = 1.0 / (4.0 * pi);
  const double inv_mu = 1.0 / mu, inv_2ml = 1.0 / (2.0 * mu + la);
  ps.a = -c * (inv_mu + inv_2ml);
  ps.psi0 = c * (inv_mu - inv_2ml);
  ps.beta = (mu + ps.mu_t) * ps.psi0;

  // q -> 0 limits of the series path: j0 -> 1, j1n -> 1/2, w0 -> 0, v1 -> 1.
  const complex lgs{1.0, (2.0 / pi) * (std::log(0.5 * med.ks) + euler_gamma)};
  const complex lgp{1.0, (2.0 / pi) * (std::log(0.5 * med.kp) + euler_gamma)};
  const complex half_i_pi{0.0, 0.5 / pi};
  const complex h1nr0_s = 0.5 * lgs - half_i_pi;
  const complex h1nr0_p = 0.5 * lgp - half_i_pi;
  ps.phi_r0 =
      complex{0.0, 0.25} * (lgs / mu - (ks2 * h1nr0_s - kp2 * h1nr0_p) / w2);
  return ps;
}

LayerValues layer_values(const Point2& x, const Point2& y, const Direction2& ny,
                         const ElasticMedium& med) {
  const Point2 d = y - x;
  const double rho = norm(d);
  if (!(rho >= 1e-14)) {
    throw std::domain_error("layer_values: coincident points");
  }
  const Point2 e = (1.0 / rho) * d;
  const Point2 n{ny.x1, ny.x2};
  const PseudoStress ps = pseudostress_params(med);
  const RadialFactors rf = radial_factors(med, rho);

  LayerValues out;
  out.sl = outer(e, e);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.sl(i, j) = rf.psi * out.sl(i, j) + (i == j ? rf.phi : complex{});
  out.dl = transpose(
      traction_family_matrix(e, n, rf, med.mu, ps.mu_t, ps.lambda_t));
  return out;
}

LayerSplit layer_split(const Point2& x, const Point2& y, const Direction2& ny,
                       const ElasticMedium& med) {
  const Point2 d = y - x;
  const double rho = norm(d);
  if (!(rho >= 1e-14)) {
    throw std::domain_error("layer_split: coincident points");
  }
  const Point2 e = (1.0 / rho) * d;  // from x toward the traction point y
  const Point2 n{ny.x1, ny.x2};
  const PseudoStress ps = pseudostress_params(med);
  const double zs = med.ks * rho;
  const bool near = zs < series_cut;
  const detail::SplitScalars ss = near ? detail::split_scalars_series(med, rho)
                                       : detail::split_scalars_far(med, rho);
  const Mat2c ee = outer(e, e);

  LayerSplit out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double diag = i == j ? 1.0 : 0.0;
      out.sl_log(i, j) = ss.psi_l * ee(i, j) + diag * ss.phi_l;
      out.sl_rest(i, j) = ss.psi_r * ee(i, j) + diag * ss.phi_r;
    }
  }

  RadialFactors slot;
  slot.dphi = ss.dphi_l;
  slot.dpsi = ss.dpsi_l;
  slot.psi_over_r = ss.psi_l_over_r;
  out.dl_log = transpose(
      traction_family_matrix(e, n, slot, med.mu, ps.mu_t, ps.lambda_t));

  if (near) {
    // Grouped form: the 1/r parts of the slots cancel identically for the
    // pseudostress parameters, leaving the bounded curvature combination.
    const double q_dn = dot(n, d) / (rho * rho);
    slot.dphi = (ss.phi_l - ps.a) / rho + ss.dphi_r;
    slot.dpsi = ss.psi_l / rho + ss.dpsi_r;
    slot.psi_over_r = (ss.psi_r - ps.psi0) / rho;
    const Mat2c rest =
        traction_family_matrix(e, n, slot, med.mu, ps.mu_t, ps.lambda_t) +
        jump_block(q_dn, ee, med, ps);
    out.dl_rest = transpose(rest);
  } else {
    const double lr = std::log(rho);
    slot.dphi = ss.dphi_l * lr + ss.phi_l / rho + ss.dphi_r;
    slot.dpsi = ss.dpsi_l * lr + ss.psi_l / rho + ss.dpsi_r;
    slot.psi_over_r = (ss.psi_l * lr + ss.psi_r) / rho;
    const Mat2c full =
        traction_family_matrix(e, n, slot, med.mu, ps.mu_t, ps.lambda_t);
    out.dl_rest = transpose(full) - lr * out.dl_log;
  }
  return out;
}

LayerSplit layer_split_diagonal(const Point2& xp, const Point2& xpp,
                                const Direction2& n, const ElasticMedium& med) {
  const double sp = norm(xp);
  if (!(sp >= 1e-14)) {
    throw std::domain_error("layer_split_diagonal: zero tangent");
  }
  const Point2 t = (1.0 / sp) * xp;
  const Point2 nv{n.x1, n.x2};
  const PseudoStress ps = pseudostress_params(med);
  const Mat2c tt = outer(t, t);

  LayerSplit out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double diag = i == j ? 1.0 : 0.0;
      out.sl_log(i, j) = diag * ps.a;
      out.sl_rest(i, j) = ps.psi0 * tt(i, j) + diag * ps.phi_r0;
    }
  }
  const double q_dn = -dot(nv, xpp) / (2.0 * sp * sp);
  out.dl_rest = jump_block(q_dn, tt, med, ps);
  return out;
}

}  // namespace elsm
