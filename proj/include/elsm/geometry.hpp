#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "elsm/types.hpp"

namespace elsm {

// Rough surface given as a graph x2 = f(x1), constant beyond the truncation
// half-width. f_minus < f < f_plus are strict bounds; measurement lines must
// sit above f_plus.
struct SurfaceProfile {
  std::function<double(double)> height;
  std::function<double(double)> derivative;
  double f_minus{};
  double f_plus{};
  double truncation_halfwidth{};
};

// Built-in profiles 1-4. 1 is a compactly supported exponential bump, 2 a
// cubic B-spline bump, 3 and 4 are trigonometric and blended to the plane
// x2 = 0.5 over |x1| in [13, 15] with a smooth ramp so that they are exactly
// constant beyond 15. Throws std::invalid_argument for other ids.
SurfaceProfile example_profile(int id);

// Plane x2 = plane_height with a circular-arc dip: the lower arc of the
// circle of radius R about (0, sqrt(3)/2 R) between its two intersections
// with the plane. Larger R gives a wider, shallower-angled but deeper dip;
// the lowest point is (0, sqrt(3)/2 R - R).
struct AuxiliarySurface {
  double R{};
  double plane_height{};
  Point2 arc_center{};
  double chord_halfwidth{};  // |x1| of the circle/plane intersections
  double arc_halfangle{};    // arc extent from the downward vertical
};

// R must lie in (1, 1e3]: below that the arc does not dip under the plane,
// above it the arc is not densely meshable.
AuxiliarySurface fan_surface(double R);

// Horizontal measurement segment {|x1| <= a, x2 = b} sampled at n equispaced
// points including both endpoints. Requires n >= 2, a > 0.
struct MeasurementLine {
  double a{};
  double b{};
  std::size_t count{};
  std::vector<Point2> points;
};
MeasurementLine measurement_line(double a, double b, std::size_t n);

// Rectangular grid of sampling points, row-major with x2 varying slowest
// (lowest row first): points[r * cols + c].
struct SamplingGrid {
  std::pair<double, double> x1_range;
  std::pair<double, double> x2_range;
  double step_x1{};
  double step_x2{};
  std::size_t cols{};
  std::size_t rows{};
  std::vector<Point2> points;
};

// Default grid: x1 in [-5, 5] step 0.1, x2 in [0.09, 0.9] step 0.09,
// 101 x 10 = 1010 points, built from exact rationals so the bounds hold
// without roundoff slack.
SamplingGrid sampling_grid();
SamplingGrid sampling_grid(std::pair<double, double> x1_range, double step_x1,
                           std::pair<double, double> x2_range, double step_x2);

// One smooth piece of a discretized boundary: count staggered-midpoint nodes
// at parameters s = (i + 1/2) h, h = 1/count, s in [0, 1]. Node spacing is
// graded toward both segment ends (vanishing to fourth order), which tapers
// quadrature contributions at open window ends and clusters nodes at corners.
struct MeshSegment {
  std::size_t first{};
  std::size_t count{};  // multiple of 4
  double h{};
};

// Quadrature mesh of a surface restricted to a window. weights[i] is the
// plain midpoint weight h |x'(s_i)| (arclength measure); deriv/deriv2 are
// the parametric derivatives of the segment map at the node, used by the
// singular quadrature for tangents and curvature. Normals point upward,
// into the domain above the surface.
//
// A periodic mesh is a single segment with even count whose map wraps at
// s = 1 with all derivatives continuous; nodes are ungraded and the solver
// switches to the global trigonometric rule for the log singularity.
struct BoundaryMesh {
  std::vector<Point2> nodes;
  std::vector<Direction2> normals;
  std::vector<double> weights;
  std::pair<double, double> window;
  std::vector<MeshSegment> segments;
  std::vector<Point2> deriv;
  std::vector<Point2> deriv2;
  bool periodic = false;

  // Evaluates the segment map between nodes: point(k, s) is the surface
  // point of segment k at parameter s in [0, 1].
  std::function<Point2(std::size_t, double)> point;

  std::size_t size() const { return nodes.size(); }
};

// Meshes the profile graph over the window. The window must strictly contain
// [-truncation_halfwidth, truncation_halfwidth]; the recommended margin is
// several shear wavelengths. nodes_per_wavelength (>= 6) bounds the coarsest
// arclength spacing by (2 pi / k_s) / nodes_per_wavelength.
BoundaryMesh discretize(const SurfaceProfile& profile,
                        double nodes_per_wavelength,
                        std::pair<double, double> window,
                        const ElasticMedium& med);

// Same for the arc-dip surface: three segments (plane, arc, plane) meeting
// at the chord corners, each graded toward its ends. The window must
// strictly contain the chord.
BoundaryMesh discretize(const AuxiliarySurface& fan,
                        double nodes_per_wavelength,
                        std::pair<double, double> window,
                        const ElasticMedium& med);

// Windowed surface closed into the boundary of a compact scatterer: the
// graph plus a return path below the lowest surface point. The exterior
// Dirichlet problem for the closed curve is uniquely solvable and
// reciprocal, which the open windowed arc is not. Normals point out of
// the enclosed region, upward on the graph part.
//
// Both versions produce a single smooth periodic mesh that the solver
// integrates spectrally. The profile version requires the profile to be
// flat at the window ends (window strictly wider than the truncation).
// The fan version rounds the plane/arc corners over half a wavelength with
// the same C-infinity tangent-angle step used for the return path, which
// shifts the dip down by an R-independent fraction of a wavelength; it
// requires a window symmetric about 0 and strictly wider than the chord.
BoundaryMesh discretize_closed(const SurfaceProfile& profile,
                               double nodes_per_wavelength,
                               std::pair<double, double> window,
                               const ElasticMedium& med);
BoundaryMesh discretize_closed(const AuxiliarySurface& fan,
                               double nodes_per_wavelength,
                               std::pair<double, double> window,
                               const ElasticMedium& med);

}  // namespace elsm
