#include "elsm/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "elsm/kernels.hpp"
#include "elsm/kupradze.hpp"

namespace elsm {
namespace detail {
namespace {

// Coefficients of the cubic Lagrange basis for nodes 1/2, 3/2, 5/2, 7/2 in
// the monomial basis: l_j(v) = sum_q C[j][q] v^q.
const std::array<std::array<double, 4>, 4>& lagrange_coeffs() {
  static const std::array<std::array<double, 4>, 4> C = [] {
    std::array<std::array<double, 4>, 4> c{};
    const double node[4] = {0.5, 1.5, 2.5, 3.5};
    for (int j = 0; j < 4; ++j) {
      std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};
      double den = 1.0;
      int deg = 0;
      for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        std::array<double, 4> next{};
        for (int q = deg; q >= 0; --q) {
          next[q + 1] += poly[q];
          next[q] -= node[k] * poly[q];
        }
        ++deg;
        poly = next;
        den *= node[j] - node[k];
      }
      for (int q = 0; q < 4; ++q) c[j][q] = poly[q] / den;
    }
    return c;
  }();
  return C;
}

// int_0^t w^r ln|w| dw; the primitive vanishes at t = 0.
double log_power_primitive(int r, double t) {
  if (t == 0.0) return 0.0;
  const double rp = static_cast<double>(r) + 1.0;
  return std::pow(t, rp) * (std::log(std::abs(t)) - 1.0 / rp) / rp;
}

}  // namespace

std::array<double, 4> log_panel_moments(double u) {
  std::array<double, 4> m{};
  if (std::abs(u) < 8.0) {
    // shift to the singularity: v^q = (t + u)^q, t = v - u
    double F[4];
    for (int r = 0; r < 4; ++r)
      F[r] = log_power_primitive(r, 4.0 - u) - log_power_primitive(r, -u);
    static const double binom[4][4] = {
        {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
    for (int q = 0; q < 4; ++q) {
      double s = 0.0;
      double upow = 1.0;
      for (int r = q; r >= 0; --r) {
        s += binom[q][r] * upow * F[r];
        upow *= u;
      }
      m[q] = s;
    }
  } else {
    // ln|v - u| = ln|u| + ln|1 - v/u| with |v/u| <= 1/2 on the panel
    const double lu = std::log(std::abs(u));
    const double r = 4.0 / u;
    for (int q = 0; q < 4; ++q) {
      const double nq = std::pow(4.0, q + 1.0) / (q + 1.0);
      double sum = 0.0;
      double p = std::pow(4.0, q + 1.0);
      for (int j = 1; j < 200; ++j) {
        p *= r;
        const double term = p / (j * (q + static_cast<double>(j) + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
      }
      m[q] = nq * lu - sum;
    }
  }
  return m;
}

std::array<double, 4> log_panel_weights(double u, double h) {
  const auto& C = lagrange_coeffs();
  const auto m = log_panel_moments(u);
  const double lh = std::log(h);
  std::array<double, 4> w{};
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    for (int q = 0; q < 4; ++q)
      s += C[j][q] * (m[q] + lh * std::pow(4.0, q + 1.0) / (q + 1.0));
    w[j] = h * s;
  }
  return w;
}

std::array<double, 4> panel_basis(double v) {
  const auto& C = lagrange_coeffs();
  std::array<double, 4> l{};
  for (int j = 0; j < 4; ++j) {
    double s = 0.0;
    double vp = 1.0;
    for (int q = 0; q < 4; ++q) {
      s += C[j][q] * vp;
      vp *= v;
    }
    l[j] = s;
  }
  return l;
}

// -(2 pi / nhat) sum_{m=1}^{nhat-1} cos(m dt)/m - (pi/nhat^2) cos(nhat dt),
// by the Chebyshev three-term recurrence for cos(m dt).
double log_trig_weight(double dt, std::size_t nhat) {
  const double c1 = std::cos(dt);
  double prev = 1.0;
  double cur = c1;
  double sum = 0.0;
  for (std::size_t m = 1; m < nhat; ++m) {
    sum += cur / static_cast<double>(m);
    const double next = 2.0 * c1 * cur - prev;
    prev = cur;
    cur = next;
  }
  const double nh = static_cast<double>(nhat);
  return -(2.0 * pi / nh) * sum - (pi / (nh * nh)) * cur;
}

// (1 + 2 sum_{m=1}^{n/2-1} cos(m dt) + cos((n/2) dt)) / n.
double trig_basis(double dt, std::size_t n) {
  const std::size_t nhat = n / 2;
  const double c1 = std::cos(dt);
  double prev = 1.0;
  double cur = c1;
  double sum = 0.0;
  for (std::size_t m = 1; m < nhat; ++m) {
    sum += cur;
    const double next = 2.0 * c1 * cur - prev;
    prev = cur;
    cur = next;
  }
  return (1.0 + 2.0 * sum + cur) / static_cast<double>(n);
}

}  // namespace detail

namespace {

using detail::log_panel_weights;
using detail::panel_basis;

Mat2c combine(const Mat2c& dl, const Mat2c& sl, complex ieta) {
  Mat2c r = dl;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) -= ieta * sl(i, j);
  return r;
}

// Full kernel D - i eta S reconstructed from the stable split; usable at any
// separation above the coincidence guard.
Mat2c full_kernel(const Point2& x, const Point2& y, const Direction2& ny,
                  const ElasticMedium& med, complex ieta) {
  const LayerSplit sp = layer_split(x, y, ny, med);
  const double lr = std::log(norm(y - x));
  Mat2c k = combine(sp.dl_rest, sp.sl_rest, ieta);
  const Mat2c klog = combine(sp.dl_log, sp.sl_log, ieta);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k(i, j) += lr * klog(i, j);
  return k;
}

std::vector<std::size_t> node_segments(const BoundaryMesh& mesh) {
  std::vector<std::size_t> seg(mesh.size());
  for (std::size_t k = 0; k < mesh.segments.size(); ++k)
    for (std::size_t i = 0; i < mesh.segments[k].count; ++i)
      seg[mesh.segments[k].first + i] = k;
  return seg;
}

void put_block(Eigen::MatrixXcd& a, std::size_t i, std::size_t m,
               const Mat2c& b) {
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) a(2 * i + p, 2 * m + q) = b(p, q);
}

// Global-rule row on a periodic mesh. The factor ln(4 sin^2((t - tau)/2))
// of the kernel splits off into the trigonometric log weights; the smooth
// remainder, including ln(rho / (2 |sin((t - tau)/2)|)), takes the plain
// trapezoid weight stored on the mesh. Superalgebraically accurate on
// smooth loops.
void periodic_surface_row(const BoundarySystem& sys, const Point2& x,
                          double ts, std::size_t tnode,
                          Eigen::MatrixXcd& row) {
  const BoundaryMesh& mesh = sys.mesh;
  const ElasticMedium& med = sys.medium;
  const complex ieta(0.0, sys.eta);
  const MeshSegment& seg = mesh.segments[0];
  const std::size_t n = seg.count;
  const std::size_t nhat = n / 2;
  const double s0 =
      ts >= 0.0 ? ts : (static_cast<double>(tnode) + 0.5) * seg.h;
  const double t0 = 2.0 * pi * s0;
  Mat2c b;
  for (std::size_t m = 0; m < n; ++m) {
    const double dt = t0 - 2.0 * pi * (static_cast<double>(m) + 0.5) * seg.h;
    const double rw =
        tnode < n ? sys.log_weights[(tnode + n - m) % n]
                  : detail::log_trig_weight(dt, nhat);
    const double jac = mesh.weights[m] / seg.h;
    Mat2c klog, krest;
    double smooth_log;
    if (m == tnode) {
      const LayerSplit sp = layer_split_diagonal(
          mesh.deriv[m], mesh.deriv2[m], mesh.normals[m], med);
      klog = combine(sp.dl_log, sp.sl_log, ieta);
      krest = combine(sp.dl_rest, sp.sl_rest, ieta);
      smooth_log = std::log(jac / (2.0 * pi));
    } else {
      const LayerSplit sp =
          layer_split(x, mesh.nodes[m], mesh.normals[m], med);
      klog = combine(sp.dl_log, sp.sl_log, ieta);
      krest = combine(sp.dl_rest, sp.sl_rest, ieta);
      const double rho = norm(mesh.nodes[m] - x);
      smooth_log = std::log(rho / (2.0 * std::abs(std::sin(0.5 * dt))));
    }
    const double lw = rw * jac / (4.0 * pi);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        b(p, q) = lw * klog(p, q) +
                  mesh.weights[m] * (krest(p, q) + smooth_log * klog(p, q));
    put_block(row, 0, m, b);
  }
}

// Quadrature row of the combined kernel at an on-surface target: target point
// x on segment tseg at parameter ts (ts = -1 marks "target is node tnode").
// Writes the 2 x 2n row blocks into `row`.
void surface_row(const BoundarySystem& sys, const Point2& x,
                 std::size_t tseg, double ts, std::size_t tnode,
                 Eigen::MatrixXcd& row) {
  const BoundaryMesh& mesh = sys.mesh;
  if (mesh.periodic) {
    periodic_surface_row(sys, x, ts, tnode, row);
    return;
  }
  const ElasticMedium& med = sys.medium;
  const complex ieta(0.0, sys.eta);
  Mat2c b;
  for (std::size_t k = 0; k < mesh.segments.size(); ++k) {
    const MeshSegment& seg = mesh.segments[k];
    if (k != tseg) {
      for (std::size_t m = seg.first; m < seg.first + seg.count; ++m) {
        const Mat2c kf =
            full_kernel(x, mesh.nodes[m], mesh.normals[m], med, ieta);
        b = Mat2c{};
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) b(p, q) = mesh.weights[m] * kf(p, q);
        put_block(row, 0, m, b);
      }
      continue;
    }
    const double h = seg.h;
    const double s0 = ts >= 0.0
                          ? ts
                          : (static_cast<double>(tnode - seg.first) + 0.5) * h;
    for (std::size_t bp = 0; bp * 4 < seg.count; ++bp) {
      const std::array<double, 4> lam =
          log_panel_weights(s0 / h - 4.0 * static_cast<double>(bp), h);
      for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t m = seg.first + 4 * bp + j;
        const double jac = mesh.weights[m] / h;
        Mat2c klog, krest;
        double smooth_log;  // the regular remainder ln(rho/|ds|)
        if (m == tnode) {
          const LayerSplit sp = layer_split_diagonal(
              mesh.deriv[m], mesh.deriv2[m], mesh.normals[m], med);
          klog = combine(sp.dl_log, sp.sl_log, ieta);
          krest = combine(sp.dl_rest, sp.sl_rest, ieta);
          smooth_log = std::log(jac);
        } else {
          const LayerSplit sp =
              layer_split(x, mesh.nodes[m], mesh.normals[m], med);
          klog = combine(sp.dl_log, sp.sl_log, ieta);
          krest = combine(sp.dl_rest, sp.sl_rest, ieta);
          const double rho = norm(mesh.nodes[m] - x);
          const double ds =
              (static_cast<double>(m - seg.first) + 0.5) * h - s0;
          smooth_log = 0.5 * std::log(rho * rho / (ds * ds));
        }
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q)
            b(p, q) = lam[j] * jac * klog(p, q) +
                      mesh.weights[m] * (krest(p, q) + smooth_log * klog(p, q));
        put_block(row, 0, m, b);
      }
    }
  }
}

// Off-surface evaluation row; returns the smallest ratio of source distance
// to local mesh width encountered.
double evaluation_row(const BoundarySystem& sys, const Point2& x,
                      Eigen::MatrixXcd& row, std::size_t target_row) {
  const BoundaryMesh& mesh = sys.mesh;
  const complex ieta(0.0, sys.eta);
  double clearance = 1e300;
  for (std::size_t m = 0; m < mesh.size(); ++m) {
    const double rho = norm(mesh.nodes[m] - x);
    clearance = std::min(clearance, rho / mesh.weights[m]);
    const Mat2c kf =
        full_kernel(x, mesh.nodes[m], mesh.normals[m], sys.medium, ieta);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        row(target_row + p, 2 * m + q) = mesh.weights[m] * kf(p, q);
  }
  return clearance;
}

// Plain-rule error decays like exp(-2 pi clearance); below this the
// evaluation moves to the upsampled curve.
constexpr double kFineClearance = 3.0;

double coarse_clearance(const BoundaryMesh& mesh, const Point2& x) {
  double c = 1e300;
  for (std::size_t m = 0; m < mesh.size(); ++m)
    c = std::min(c, norm(mesh.nodes[m] - x) / mesh.weights[m]);
  return c;
}

// Density at the refined nodes by trigonometric interpolation.
Eigen::MatrixXcd refine_density(const BoundarySystem& sys,
                                const Eigen::MatrixXcd& phi) {
  const std::size_t n = sys.mesh.size();
  const std::size_t nf = sys.fine_nodes.size();
  Eigen::MatrixXcd fine = Eigen::MatrixXcd::Zero(2 * nf, phi.cols());
  for (std::size_t j = 0; j < nf; ++j)
    for (std::size_t m = 0; m < n; ++m) {
      const double w = sys.fine_basis[(j + nf - 4 * m) % nf];
      fine.row(2 * j) += w * phi.row(2 * m);
      fine.row(2 * j + 1) += w * phi.row(2 * m + 1);
    }
  return fine;
}

// Plain kernels against the upsampled curve.
void fine_evaluation_row(const BoundarySystem& sys, const Point2& x,
                         Eigen::MatrixXcd& row, std::size_t target_row) {
  const complex ieta(0.0, sys.eta);
  for (std::size_t m = 0; m < sys.fine_nodes.size(); ++m) {
    const Mat2c kf = full_kernel(x, sys.fine_nodes[m], sys.fine_normals[m],
                                 sys.medium, ieta);
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        row(target_row + p, 2 * m + q) = sys.fine_weights[m] * kf(p, q);
  }
}

}  // namespace

BoundarySystem assemble(const BoundaryMesh& mesh, const ElasticMedium& med) {
  return assemble(mesh, med, med.ks);
}

BoundarySystem assemble(const BoundaryMesh& mesh, const ElasticMedium& med,
                        double eta) {
  if (mesh.size() == 0)
    throw std::invalid_argument("assemble: empty mesh");
  if (eta == 0.0)
    throw std::invalid_argument("assemble: eta must be nonzero");
  BoundarySystem sys;
  sys.mesh = mesh;
  sys.medium = med;
  sys.eta = eta;
  const std::size_t n = mesh.size();
  sys.matrix.resize(2 * n, 2 * n);

  if (mesh.periodic) {
    if (mesh.segments.size() != 1 || mesh.segments[0].count != n ||
        n % 2 != 0)
      throw std::invalid_argument(
          "assemble: periodic mesh must be one segment of even count");
    sys.log_weights.resize(n);
    for (std::size_t k = 0; k < n; ++k)
      sys.log_weights[k] = detail::log_trig_weight(
          2.0 * pi * static_cast<double>(k) / static_cast<double>(n), n / 2);

    const std::size_t nf = 4 * n;
    sys.fine_basis.resize(nf);
    for (std::size_t k = 0; k < nf; ++k)
      sys.fine_basis[k] = detail::trig_basis(
          (static_cast<double>(k) - 1.5) * pi / (2.0 * static_cast<double>(n)),
          n);
    sys.fine_nodes.resize(nf);
    sys.fine_normals.reserve(nf);
    sys.fine_weights.resize(nf);
    for (std::size_t j = 0; j < nf; ++j) {
      Point2 xj{0.0, 0.0};
      Point2 dj{0.0, 0.0};
      for (std::size_t m = 0; m < n; ++m) {
        const double w = sys.fine_basis[(j + nf - 4 * m) % nf];
        xj = xj + w * mesh.nodes[m];
        dj = dj + w * mesh.deriv[m];
      }
      sys.fine_nodes[j] = xj;
      sys.fine_normals.emplace_back(-dj.x2, dj.x1);
      sys.fine_weights[j] = norm(dj) / static_cast<double>(nf);
    }
  }

  const std::vector<std::size_t> nseg = node_segments(mesh);
  Eigen::MatrixXcd row(2, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    surface_row(sys, mesh.nodes[i], nseg[i], -1.0, i, row);
    sys.matrix.middleRows(2 * i, 2) = row;
    sys.matrix(2 * i, 2 * i) += 0.5;
    sys.matrix(2 * i + 1, 2 * i + 1) += 0.5;
  }
  sys.lu.compute(sys.matrix);
  return sys;
}

Eigen::MatrixXcd solve_dirichlet(const BoundarySystem& sys,
                                 const Eigen::MatrixXcd& data) {
  if (data.rows() != sys.matrix.rows())
    throw std::invalid_argument("solve_dirichlet: data row count mismatch");
  Eigen::MatrixXcd phi = sys.lu.solve(data);
  const Eigen::MatrixXcd resid = data - sys.matrix * phi;
  phi += sys.lu.solve(resid);
  return phi;
}

double solve_residual(const BoundarySystem& sys, const Eigen::MatrixXcd& phi,
                      const Eigen::MatrixXcd& data) {
  const Eigen::MatrixXcd resid = sys.matrix * phi - data;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < data.cols(); ++k) {
    const double scale = data.col(k).lpNorm<Eigen::Infinity>();
    if (scale == 0.0) continue;
    worst = std::max(worst, resid.col(k).lpNorm<Eigen::Infinity>() / scale);
  }
  return worst;
}

Eigen::MatrixXcd evaluate_scattered(const BoundarySystem& sys,
                                    const Eigen::MatrixXcd& phi,
                                    const Point2& x) {
  return evaluate_scattered(sys, phi, std::vector<Point2>{x});
}

Eigen::MatrixXcd evaluate_scattered(const BoundarySystem& sys,
                                    const Eigen::MatrixXcd& phi,
                                    const std::vector<Point2>& points) {
  if (phi.rows() != sys.matrix.rows())
    throw std::invalid_argument(
        "evaluate_scattered: density row count mismatch");
  Eigen::MatrixXcd out(2 * points.size(), phi.cols());
  Eigen::MatrixXcd row(2, sys.matrix.cols());
  Eigen::MatrixXcd fine_row;
  Eigen::MatrixXcd fine_phi;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2& x = points[i];
    if (sys.mesh.periodic) {
      const double c = coarse_clearance(sys.mesh, x);
      if (c < 1.0)
        throw std::invalid_argument(
            "evaluate_scattered: point within one mesh width of the surface");
      if (c < kFineClearance) {
        if (fine_phi.size() == 0) {
          fine_phi = refine_density(sys, phi);
          fine_row.resize(2, 2 * sys.fine_nodes.size());
        }
        fine_evaluation_row(sys, x, fine_row, 0);
        out.middleRows(2 * i, 2) = fine_row * fine_phi;
        continue;
      }
    }
    const double clearance = evaluation_row(sys, x, row, 0);
    if (clearance < 1.0)
      throw std::invalid_argument(
          "evaluate_scattered: point within one mesh width of the surface");
    out.middleRows(2 * i, 2) = row * phi;
  }
  return out;
}

Eigen::MatrixXcd point_source_traces(const BoundaryMesh& mesh,
                                     const std::vector<Point2>& sources,
                                     const ElasticMedium& med) {
  Eigen::MatrixXcd traces(2 * mesh.size(), 2 * sources.size());
  for (std::size_t i = 0; i < mesh.size(); ++i)
    for (std::size_t j = 0; j < sources.size(); ++j) {
      const Mat2c g = kupradze_tensor(mesh.nodes[i], sources[j], med);
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) traces(2 * i + p, 2 * j + q) = g(p, q);
    }
  return traces;
}

Eigen::MatrixXcd scattered_matrix(const BoundarySystem& sys,
                                  const MeasurementLine& line) {
  const Eigen::MatrixXcd traces =
      point_source_traces(sys.mesh, line.points, sys.medium);
  const Eigen::MatrixXcd phi = solve_dirichlet(sys, -traces);
  return evaluate_scattered(sys, phi, line.points);
}

Eigen::MatrixXcd evaluate_on_surface(const BoundarySystem& sys,
                                     const Eigen::MatrixXcd& phi,
                                     std::size_t seg, double s) {
  const BoundaryMesh& mesh = sys.mesh;
  if (seg >= mesh.segments.size())
    throw std::invalid_argument("evaluate_on_surface: bad segment");
  const MeshSegment& ms = mesh.segments[seg];
  const double off = s / ms.h - 0.5;
  if (std::abs(off - std::round(off)) * ms.h < 1e-12)
    throw std::invalid_argument("evaluate_on_surface: target hits a node");
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("evaluate_on_surface: s outside (0, 1)");
  if (!mesh.point)
    throw std::invalid_argument("evaluate_on_surface: mesh lacks point map");

  const Point2 x = mesh.point(seg, s);
  Eigen::MatrixXcd row(2, sys.matrix.cols());
  surface_row(sys, x, seg, s, static_cast<std::size_t>(-1), row);
  Eigen::MatrixXcd val = row * phi;

  if (mesh.periodic) {
    // half-density jump, trigonometric interpolation of phi
    const double t = 2.0 * pi * s;
    std::vector<double> basis(ms.count);
    for (std::size_t j = 0; j < ms.count; ++j)
      basis[j] = detail::trig_basis(
          t - 2.0 * pi * (static_cast<double>(j) + 0.5) * ms.h, ms.count);
    for (Eigen::Index col = 0; col < phi.cols(); ++col)
      for (int p = 0; p < 2; ++p) {
        complex interp(0.0, 0.0);
        for (std::size_t j = 0; j < ms.count; ++j)
          interp += basis[j] * phi(2 * j + p, col);
        val(p, col) += 0.5 * interp;
      }
    return val;
  }

  // half-density jump, cubic interpolation of phi on the four nodes
  // centered at the target (no panel-edge extrapolation)
  const double sc = s / ms.h;
  const long long j0 = std::clamp(std::llround(sc) - 2, 0LL,
                                  static_cast<long long>(ms.count) - 4);
  const std::array<double, 4> l = panel_basis(sc - static_cast<double>(j0));
  for (Eigen::Index col = 0; col < phi.cols(); ++col)
    for (int p = 0; p < 2; ++p) {
      complex interp(0.0, 0.0);
      for (std::size_t j = 0; j < 4; ++j)
        interp += l[j] * phi(2 * (ms.first + j0 + j) + p, col);
      val(p, col) += 0.5 * interp;
    }
  return val;
}

double boundary_residual(const BoundarySystem& sys,
                         const Eigen::MatrixXcd& phi,
                         const std::function<Eigen::MatrixXcd(const Point2&)>& data) {
  double worst = 0.0;
  double scale = 0.0;
  auto probe = [&](std::size_t k, double s) {
    const Point2 x = sys.mesh.point(k, s);
    const Eigen::MatrixXcd d = data(x);
    if (d.rows() != 2 || d.cols() != phi.cols())
      throw std::invalid_argument("boundary_residual: data shape mismatch");
    const Eigen::MatrixXcd val = evaluate_on_surface(sys, phi, k, s);
    for (Eigen::Index col = 0; col < phi.cols(); ++col) {
      scale = std::max(scale, d.col(col).norm());
      worst = std::max(worst, (val.col(col) - d.col(col)).norm());
    }
  };
  if (sys.mesh.periodic) {
    // whole-loop coverage, capped at 256 inter-node probes
    const std::size_t count = sys.mesh.segments[0].count;
    const std::size_t stride = std::max<std::size_t>(1, count / 256);
    for (std::size_t m = 1; m < count; m += stride)
      probe(0, static_cast<double>(m) * sys.mesh.segments[0].h);
  } else {
    for (std::size_t k = 0; k < sys.mesh.segments.size(); ++k) {
      const MeshSegment& seg = sys.mesh.segments[k];
      for (std::size_t m = 1; m < seg.count; ++m) {
        const double s = static_cast<double>(m) * seg.h;
        if (s < 0.25 || s > 0.75) continue;
        probe(k, s);
      }
    }
  }
  if (scale == 0.0)
    throw std::invalid_argument("boundary_residual: vanishing data");
  return worst / scale;
}

double reciprocity_defect(const BoundarySystem& sys, const Point2& x,
                          const Point2& y) {
  const Eigen::MatrixXcd traces =
      point_source_traces(sys.mesh, {x, y}, sys.medium);
  const Eigen::MatrixXcd phi = solve_dirichlet(sys, -traces);
  // u_sc at x of the sources at y, and vice versa
  const Eigen::MatrixXcd at_x = evaluate_scattered(sys, phi, x);
  const Eigen::MatrixXcd at_y = evaluate_scattered(sys, phi, y);
  double worst = 0.0;
  double scale = 0.0;
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      const complex uxy = at_x(p, 2 + q);  // p . u_sc(x; y, q)
      const complex uyx = at_y(q, p);      // q . u_sc(y; x, p)
      worst = std::max(worst, std::abs(uxy - uyx));
      scale = std::max({scale, std::abs(uxy), std::abs(uyx)});
    }
  if (scale == 0.0) return 0.0;
  return worst / scale;
}

}  // namespace elsm
