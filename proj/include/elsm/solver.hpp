#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

#include "elsm/geometry.hpp"
#include "elsm/types.hpp"

// Nystrom discretization of the combined-field boundary integral equation for
// the Dirichlet problem above the meshed surface, and evaluation of the
// resulting scattered fields. The representation is
//
//   u(x) = int_Gamma [ D(x, y) - i eta S(x, y) ] phi(y) ds(y),   eta = k_s,
//
// with D the pseudostress double-layer kernel and S the fundamental tensor.
// Collocation at the nodes yields the second-kind system
// (I/2 + K_h) phi = data. The log singularity is integrated by product-log
// panel weights on graded meshes, and by the global trigonometric rule on
// periodic meshes, where smooth geometry makes the error superalgebraic.

namespace elsm {

namespace detail {

// Moments m_q(u) = int_0^4 v^q ln|v - u| dv for q = 0..3. Closed form for
// |u| < 8, geometric tail series beyond.
std::array<double, 4> log_panel_moments(double u);

// Weights w_j with  sum_j w_j f(j + 1/2) = int_0^4 f(v) ln|h (v - u)| h dv
// exactly for every cubic f: one 4-node panel of a mesh with spacing h whose
// target sits at offset u from the panel start, in units of h.
std::array<double, 4> log_panel_weights(double u, double h);

// Cubic Lagrange basis values at v for the panel nodes 1/2, 3/2, 5/2, 7/2.
std::array<double, 4> panel_basis(double v);

// Weight of node t_j in the global rule for periodic log integrals,
//   int_0^{2pi} ln(4 sin^2((t - tau)/2)) f(tau) dtau
//     ~ sum_j log_trig_weight(t - t_j, n/2) f(t_j),
// over n equispaced nodes (n even), exact for trigonometric polynomials of
// degree up to n/2.
double log_trig_weight(double dt, std::size_t nhat);

// Value at t of the degree-n/2 trigonometric interpolant through samples on
// the n equispaced nodes t_j (n even): sum_j trig_basis(t - t_j, n) f(t_j).
double trig_basis(double dt, std::size_t n);

}  // namespace detail

struct BoundarySystem {
  BoundaryMesh mesh;
  ElasticMedium medium;
  double eta = 0.0;  // imaginary coupling weight of the single layer
  Eigen::MatrixXcd matrix;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
  // node-difference table of log_trig_weight, index |i - j|; periodic only
  std::vector<double> log_weights;
  // Four-fold trigonometric upsampling of the curve. Near evaluation switches
  // to it, which turns the plain-rule error exp(-2 pi d / h) into
  // exp(-8 pi d / h) at distance d from the curve; at the clearance guard this
  // is below 1e-10. Periodic meshes only.
  std::vector<Point2> fine_nodes;
  std::vector<Direction2> fine_normals;
  std::vector<double> fine_weights;
  // trig_basis((k - 1.5) pi / (2n), n) indexed by k = (j - 4m) mod 4n, the
  // interpolation weight of coarse node m at fine node j
  std::vector<double> fine_basis;
};

// Dense collocation matrix and its factorization. Row/column pairs
// (2i, 2i + 1) carry the two displacement components at node i. eta must be
// nonzero; the overload without it uses the resonance-free default k_s.
BoundarySystem assemble(const BoundaryMesh& mesh, const ElasticMedium& med,
                        double eta);
BoundarySystem assemble(const BoundaryMesh& mesh, const ElasticMedium& med);

// Densities solving matrix * phi = data with one step of iterative
// refinement; data is 2n x k, one column per right-hand side.
Eigen::MatrixXcd solve_dirichlet(const BoundarySystem& sys,
                                 const Eigen::MatrixXcd& data);

// max over columns of ||matrix phi_k - data_k||_inf / ||data_k||_inf.
double solve_residual(const BoundarySystem& sys, const Eigen::MatrixXcd& phi,
                      const Eigen::MatrixXcd& data);

// Scattered field at an off-surface point, one 2-vector column per density
// column. Throws std::invalid_argument when x is closer to the surface than
// one local mesh width. On a periodic mesh, points within three mesh widths
// are integrated against the upsampled curve with a trigonometrically
// refined density, so every allowed evaluation is accurate to roughly 1e-9
// of the density scale; on panel meshes the plain rule degrades toward the
// guard and callers needing accuracy near the surface must refine the mesh.
Eigen::MatrixXcd evaluate_scattered(const BoundarySystem& sys,
                                    const Eigen::MatrixXcd& phi,
                                    const Point2& x);

// Scattered field at several points; rows (2i, 2i + 1) hold the value at
// points[i]. Refines the density once for all near points, so prefer this
// over a loop of single-point calls along a measurement line.
Eigen::MatrixXcd evaluate_scattered(const BoundarySystem& sys,
                                    const Eigen::MatrixXcd& phi,
                                    const std::vector<Point2>& points);

// Columns (2j, 2j + 1): the fundamental tensor columns Gamma(node, y_j) e_q
// stacked over all nodes. The Dirichlet data of point-source scattering is
// the negative of these traces.
Eigen::MatrixXcd point_source_traces(const BoundaryMesh& mesh,
                                     const std::vector<Point2>& sources,
                                     const ElasticMedium& med);

// Near-field matrix of the surface over a measurement line: the 2x2 block
// (i, j) holds the scattered field at line point i of unit point sources at
// line point j.
Eigen::MatrixXcd scattered_matrix(const BoundarySystem& sys,
                                  const MeasurementLine& line);

// Upper limit of the represented field at an off-node surface point: the
// half-density jump (cubic interpolation of phi on the four nearest nodes,
// trigonometric interpolation on periodic meshes) plus the singular
// quadrature of the kernels at the target point(seg, s). s must not hit a
// node.
Eigen::MatrixXcd evaluate_on_surface(const BoundarySystem& sys,
                                     const Eigen::MatrixXcd& phi,
                                     std::size_t seg, double s);

// Dirichlet defect max |u(x) - data(x)| / max |data(x)| at inter-node
// surface points: the graded plateau (central half) of each segment, or up
// to 256 probes around the whole loop of a periodic mesh. data(x) returns
// a 2 x phi.cols() block, one column per solve column.
double boundary_residual(const BoundarySystem& sys,
                         const Eigen::MatrixXcd& phi,
                         const std::function<Eigen::MatrixXcd(const Point2&)>& data);

// max |p . u_sc(x; y, q) - q . u_sc(y; x, p)| / max |u_sc| over the four
// unit-polarization pairs, for point-source scattering between x and y.
double reciprocity_defect(const BoundarySystem& sys, const Point2& x,
                          const Point2& y);

}  // namespace elsm
