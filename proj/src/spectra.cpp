#include "elsm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elsm {

complex gamma_branch(double k, double xi) {
  if (!(k > 0.0)) throw std::invalid_argument("gamma_branch: requires k > 0");
  const double d = (k - xi) * (k + xi);
  if (d >= 0.0) return complex(std::sqrt(d), 0.0);
  return complex(0.0, std::sqrt(-d));
}

ProjectionPair projection_matrices(double xi, const ElasticMedium& med) {
  const complex gp = gamma_branch(med.kp, xi);
  const complex gs = gamma_branch(med.ks, xi);
  const complex den = xi * xi + gp * gs;
  if (std::abs(den) < 1e-12) {
    throw std::domain_error("projection_matrices: Rayleigh denominator vanishes");
  }
  ProjectionPair pp;
  pp.p(0, 0) = xi * xi / den;
  pp.p(0, 1) = xi * gs / den;
  pp.p(1, 0) = xi * gp / den;
  pp.p(1, 1) = gp * gs / den;
  pp.s(0, 0) = gp * gs / den;
  pp.s(0, 1) = -xi * gs / den;
  pp.s(1, 0) = -xi * gp / den;
  pp.s(1, 1) = xi * xi / den;
  return pp;
}

Mat2c dtn_symbol(double xi, const ElasticMedium& med) {
  const complex gp = gamma_branch(med.kp, xi);
  const complex gs = gamma_branch(med.ks, xi);
  const complex den = xi * xi + gp * gs;
  if (std::abs(den) < 1e-12) {
    throw std::domain_error("dtn_symbol: Rayleigh denominator vanishes");
  }
  const double w2 = med.omega * med.omega;
  const complex i(0.0, 1.0);
  Mat2c m;
  m(0, 0) = i * w2 * gp / den;
  m(0, 1) = i * (-xi * w2 + xi * med.mu * den) / den;
  m(1, 0) = i * (xi * w2 - xi * med.mu * den) / den;
  m(1, 1) = i * w2 * gs / den;
  return m;
}

namespace {

struct QNode {
  double xi;
  double w;
};

// Midpoint nodes over [a, b] with spacing at most target_dxi.
void add_uniform(std::vector<QNode>& nodes, double a, double b,
                 double target_dxi) {
  if (!(b > a)) return;
  const int n = std::max(1, (int)std::ceil((b - a) / target_dxi));
  const double h = (b - a) / n;
  for (int j = 0; j < n; ++j) nodes.push_back({a + (j + 0.5) * h, h});
}

// Nodes over one side of a branch window, with the substitution xi = c + s*t^2
// (s = +-1) flattening the square-root kink at xi = c.
void add_branch_side(std::vector<QNode>& nodes, double c, double sgn,
                     double width, int count) {
  const double tmax = std::sqrt(width);
  const double dt = tmax / count;
  for (int j = 0; j < count; ++j) {
    const double t = (j + 0.5) * dt;
    nodes.push_back({c + sgn * t * t, 2.0 * t * dt});
  }
}

}  // namespace

std::vector<Vec2c> angular_spectrum_propagate(const LineField& line,
                                              const ElasticMedium& med,
                                              const std::vector<Point2>& targets,
                                              PropagationDiagnostics* diag,
                                              double edge_warn_threshold) {
  const int m = (int)line.values.size();
  if (m < 2 || !(line.spacing > 0.0)) {
    throw std::invalid_argument(
        "angular_spectrum_propagate: need at least two samples with positive "
        "spacing");
  }
  for (const Point2& t : targets) {
    if (!(t.x2 > line.height)) {
      throw std::domain_error(
          "angular_spectrum_propagate: target not above the line");
    }
  }

  double vmax = 0.0;
  for (const Vec2c& v : line.values) vmax = std::max(vmax, norm(v));
  PropagationDiagnostics d;
  if (vmax > 0.0) {
    d.edge_ratio =
        std::max(norm(line.values.front()), norm(line.values.back())) / vmax;
    d.window_warning = d.edge_ratio > edge_warn_threshold;
  }
  if (diag) *diag = d;

  std::vector<Vec2c> out(targets.size());
  if (vmax == 0.0) return out;

  // Spectral grid: uniform midpoint at 4x the natural conjugate resolution
  // (pushes the periodization images of the windowed field far out), with
  // square-root-graded refinement across the four branch points.
  const double nyquist = pi / line.spacing;
  const double window = m * line.spacing;
  const double dxi = 2.0 * pi / (4.0 * window);
  const double bw =
      std::min({0.4, 0.45 * med.kp, 0.45 * (med.ks - med.kp), 0.2 * nyquist});
  const int branch_nodes = 64;

  std::vector<QNode> nodes;
  nodes.reserve((size_t)(2.0 * nyquist / dxi) + 8 * branch_nodes + 16);
  const double cuts[2] = {med.kp, med.ks};
  // Positive half grid, mirrored below.
  double pos = 0.0;
  for (double c : cuts) {
    add_uniform(nodes, pos, c - bw, dxi);
    add_branch_side(nodes, c, -1.0, bw, branch_nodes);
    add_branch_side(nodes, c, 1.0, bw, branch_nodes);
    pos = c + bw;
  }
  add_uniform(nodes, pos, nyquist, dxi);
  const size_t half = nodes.size();
  for (size_t j = 0; j < half; ++j) nodes.push_back({-nodes[j].xi, nodes[j].w});

  const complex iu(0.0, 1.0);
  struct NodeData {
    Vec2c pu, su;  // projected spectral amplitudes
    complex gp, gs;
    double xi, w;
  };
  std::vector<NodeData> data(nodes.size());
  for (size_t q = 0; q < nodes.size(); ++q) {
    const double xi = nodes[q].xi;
    // uhat(xi) = spacing * sum_m values[m] exp(-i xi x_m)
    const complex rot = std::polar(1.0, -xi * line.spacing);
    complex phase = std::polar(1.0, -xi * line.x1_start);
    Vec2c uhat;
    for (int j = 0; j < m; ++j) {
      uhat.u1 += line.values[j].u1 * phase;
      uhat.u2 += line.values[j].u2 * phase;
      phase *= rot;
    }
    uhat.u1 *= line.spacing;
    uhat.u2 *= line.spacing;
    const ProjectionPair pr = projection_matrices(xi, med);
    NodeData& nd = data[q];
    nd.pu = pr.p * uhat;
    nd.su = pr.s * uhat;
    nd.gp = gamma_branch(med.kp, xi);
    nd.gs = gamma_branch(med.ks, xi);
    nd.xi = xi;
    nd.w = nodes[q].w;
  }

  for (size_t t = 0; t < targets.size(); ++t) {
    const double dz = targets[t].x2 - line.height;
    Vec2c acc;
    for (const NodeData& nd : data) {
      const complex ph = std::exp(iu * (nd.xi * targets[t].x1));
      const complex ep = std::exp(iu * nd.gp * dz) * ph * nd.w;
      const complex es = std::exp(iu * nd.gs * dz) * ph * nd.w;
      acc.u1 += ep * nd.pu.u1 + es * nd.su.u1;
      acc.u2 += ep * nd.pu.u2 + es * nd.su.u2;
    }
    out[t].u1 = acc.u1 / (2.0 * pi);
    out[t].u2 = acc.u2 / (2.0 * pi);
  }
  return out;
}

}  // namespace elsm
