#pragma once

#include <functional>

#include "elsm/types.hpp"

// Central-difference helpers shared by the test binaries.

namespace elsm_test {

using VecField = std::function<elsm::Vec2c(const elsm::Point2&)>;

// grad(i, j) = d_j w_i by second-order central differences.
inline elsm::Mat2c fd_gradient(const VecField& w, const elsm::Point2& x, double h) {
  const elsm::Vec2c f1p = w({x.x1 + h, x.x2});
  const elsm::Vec2c f1m = w({x.x1 - h, x.x2});
  const elsm::Vec2c f2p = w({x.x1, x.x2 + h});
  const elsm::Vec2c f2m = w({x.x1, x.x2 - h});
  elsm::Mat2c g;
  g(0, 0) = (f1p.u1 - f1m.u1) / (2.0 * h);
  g(0, 1) = (f2p.u1 - f2m.u1) / (2.0 * h);
  g(1, 0) = (f1p.u2 - f1m.u2) / (2.0 * h);
  g(1, 1) = (f2p.u2 - f2m.u2) / (2.0 * h);
  return g;
}

// mu Laplacian(w) + (lambda + mu) grad(div w) + omega^2 w at x, the Navier
// operator applied by finite differences (5-point Laplacian, nested central
// differences for grad div).
inline elsm::Vec2c fd_navier(const VecField& w, const elsm::Point2& x,
                             const elsm::ElasticMedium& med, double h) {
  using elsm::Point2;
  using elsm::Vec2c;
  const Vec2c c = w(x);
  const Vec2c e = w({x.x1 + h, x.x2});
  const Vec2c wv = w({x.x1 - h, x.x2});
  const Vec2c n = w({x.x1, x.x2 + h});
  const Vec2c s = w({x.x1, x.x2 - h});
  const double h2 = h * h;
  Vec2c lap;
  lap.u1 = (e.u1 + wv.u1 + n.u1 + s.u1 - 4.0 * c.u1) / h2;
  lap.u2 = (e.u2 + wv.u2 + n.u2 + s.u2 - 4.0 * c.u2) / h2;

  auto div_at = [&](const Point2& p) {
    const Vec2c a = w({p.x1 + h, p.x2});
    const Vec2c b = w({p.x1 - h, p.x2});
    const Vec2c u = w({p.x1, p.x2 + h});
    const Vec2c d = w({p.x1, p.x2 - h});
    return (a.u1 - b.u1 + u.u2 - d.u2) / (2.0 * h);
  };
  const elsm::complex gd1 =
      (div_at({x.x1 + h, x.x2}) - div_at({x.x1 - h, x.x2})) / (2.0 * h);
  const elsm::complex gd2 =
      (div_at({x.x1, x.x2 + h}) - div_at({x.x1, x.x2 - h})) / (2.0 * h);

  const double lm = med.lambda + med.mu;
  const double w2 = med.omega * med.omega;
  Vec2c r;
  r.u1 = med.mu * lap.u1 + lm * gd1 + w2 * c.u1;
  r.u2 = med.mu * lap.u2 + lm * gd2 + w2 * c.u2;
  return r;
}

}  // namespace elsm_test
