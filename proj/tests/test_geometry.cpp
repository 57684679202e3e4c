#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "elsm/geometry.hpp"
#include "support/quad.hpp"

using namespace elsm;

namespace {

const ElasticMedium kMed = make_medium(9.0, 3.0, 1.0);

double fd_slope(const SurfaceProfile& p, double x) {
  const double h = 1e-6;
  return (p.height(x + h) - p.height(x - h)) / (2.0 * h);
}

double second_difference(const SurfaceProfile& p, double x) {
  const double h = 1e-3;
  return (p.height(x - h) - 2.0 * p.height(x) + p.height(x + h)) / (h * h);
}

double total_weight(const BoundaryMesh& m) {
  double s = 0.0;
  for (double w : m.weights) s += w;
  return s;
}

const SurfaceProfile kFlat{[](double) { return 0.5; },
                           [](double) { return 0.0; }, 0.4, 0.6, 0.0};

const SurfaceProfile kSine{[](double x) { return 0.5 + 0.15 * std::sin(x); },
                           [](double x) { return 0.15 * std::cos(x); }, 0.3,
                           0.7, 0.0};

}  // namespace

TEST_CASE("example profiles match their formulas") {
  const SurfaceProfile p1 = example_profile(1);
  CHECK(std::abs(p1.height(0.0) - (0.5 + 0.8 * std::exp(-1.0))) < 1e-15);
  CHECK(p1.height(4.0) == 0.5);
  CHECK(p1.height(-4.0) == 0.5);
  CHECK(p1.height(7.3) == 0.5);
  CHECK(std::abs(p1.height(3.999999) - 0.5) < 1e-9);
  CHECK(p1.derivative(0.0) == 0.0);
  CHECK(p1.derivative(-5.0) == 0.0);
  CHECK(p1.truncation_halfwidth == 4.0);

  const SurfaceProfile p2 = example_profile(2);
  CHECK(std::abs(p2.height(0.0) - (0.5 + 2.0 / 3.0)) < 1e-15);
  CHECK(std::abs(p2.height(1.0) - (0.5 + 1.0 / 6.0)) < 1e-15);
  CHECK(std::abs(p2.height(-1.0) - (0.5 + 1.0 / 6.0)) < 1e-15);
  CHECK(p2.height(2.0) == 0.5);
  CHECK(p2.height(-3.1) == 0.5);

  const SurfaceProfile p3 = example_profile(3);
  CHECK(std::abs(p3.height(pi / 2.0) - 0.65) < 1e-15);
  CHECK(std::abs(p3.height(-7.0) - (0.5 + 0.15 * std::sin(-7.0))) < 1e-16);
  CHECK(p3.height(15.0) == 0.5);
  CHECK(p3.height(-22.0) == 0.5);
  CHECK(p3.derivative(16.5) == 0.0);

  const SurfaceProfile p4 = example_profile(4);
  CHECK(std::abs(p4.height(0.0) - 0.65) < 1e-15);
  CHECK(std::abs(p4.height(3.0) -
                 (0.5 + 0.18 * std::sin(3.0) + 0.15 * std::cos(1.5))) < 1e-16);
  CHECK(p4.height(17.0) == 0.5);

  CHECK_THROWS_AS(example_profile(0), std::invalid_argument);
  CHECK_THROWS_AS(example_profile(5), std::invalid_argument);
  CHECK_THROWS_AS(example_profile(-1), std::invalid_argument);
}

TEST_CASE("profile derivatives agree with difference quotients") {
  for (int id = 1; id <= 4; ++id) {
    const SurfaceProfile p = example_profile(id);
    for (const double x : {0.4, -1.3, 1.7, 2.6, -3.4, 7.9, 13.6, -14.3}) {
      const double want = fd_slope(p, x);
      CHECK(std::abs(p.derivative(x) - want) < 1e-7);
    }
  }
}

TEST_CASE("profiles respect their stated bounds") {
  for (int id = 1; id <= 4; ++id) {
    const SurfaceProfile p = example_profile(id);
    double max_slope = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double x = -25.0 + 50.0 * i / 2000.0;
      const double f = p.height(x);
      CHECK(f > p.f_minus);
      CHECK(f < p.f_plus);
      max_slope = std::max(max_slope, std::abs(p.derivative(x)));
    }
    CHECK(max_slope < 10.0);  // Lipschitz constant stays finite
  }
}

TEST_CASE("spline and blend junctions are twice differentiable") {
  const SurfaceProfile p2 = example_profile(2);
  for (const double k : {1.0, 2.0, -1.0, -2.0}) {
    const double e = 1e-6;
    CHECK(std::abs(p2.height(k - e) - p2.height(k + e)) < 2e-6);
    CHECK(std::abs(p2.derivative(k - e) - p2.derivative(k + e)) < 5e-6);
    CHECK(std::abs(second_difference(p2, k - 2e-3) -
                   second_difference(p2, k + 2e-3)) < 2e-2);
  }

  for (const int id : {3, 4}) {
    const SurfaceProfile p = example_profile(id);
    for (const double k : {13.0, 15.0, -13.0, -15.0}) {
      const double e = 1e-6;
      CHECK(std::abs(p.height(k - e) - p.height(k + e)) < 2e-6);
      CHECK(std::abs(p.derivative(k - e) - p.derivative(k + e)) < 5e-6);
      CHECK(std::abs(second_difference(p, k - 2e-3) -
                     second_difference(p, k + 2e-3)) < 5e-2);
    }
    // interior of the blend still within bounds, exact formula inside 13
    CHECK(p.height(12.99) != 0.5);
    CHECK(p.height(14.0) != 0.5);
  }
}

TEST_CASE("fan surface solves the circle plane intersection") {
  const AuxiliarySurface fan = fan_surface(100.0);
  CHECK(fan.plane_height == 0.5);
  CHECK(fan.arc_center.x1 == 0.0);
  CHECK(std::abs(fan.arc_center.x2 - 50.0 * std::sqrt(3.0)) < 1e-12);

  // chord from the right triangle center-plane-intersection
  const double dy = fan.arc_center.x2 - 0.5;
  const double chord = std::sqrt(100.0 * 100.0 - dy * dy);
  CHECK(std::abs(fan.chord_halfwidth - chord) < 1e-10);
  CHECK(std::abs(fan.chord_halfwidth - 50.856194709971) < 1e-9);

  // the arc endpoint parameterized by the half-angle lands on the plane
  CHECK(std::abs(fan.arc_center.x2 - 100.0 * std::cos(fan.arc_halfangle) - 0.5) <
        1e-12);
  // lowest point of the dip
  CHECK(std::abs((fan.arc_center.x2 - fan.R) - 100.0 * (std::sqrt(3.0) / 2.0 - 1.0)) <
        1e-12);

  // wide fans approach the asymptotic opening angle from above
  const AuxiliarySurface wide = fan_surface(1000.0);
  CHECK(wide.arc_halfangle > pi / 6.0);
  CHECK(wide.arc_halfangle - pi / 6.0 < 2e-3);

  CHECK_THROWS_AS(fan_surface(1.0), std::invalid_argument);
  CHECK_THROWS_AS(fan_surface(0.2), std::invalid_argument);
  CHECK_THROWS_AS(fan_surface(1000.5), std::invalid_argument);
}

TEST_CASE("measurement line sampling is exact at the ends") {
  const MeasurementLine line = measurement_line(10.0, 1.0, 401);
  CHECK(line.count == 401);
  CHECK(line.points.size() == 401);
  CHECK(line.points.front().x1 == -10.0);
  CHECK(line.points.back().x1 == 10.0);
  CHECK(line.points[200].x1 == 0.0);
  for (const Point2& q : line.points) CHECK(q.x2 == 1.0);
  for (std::size_t k = 1; k < line.count; ++k)
    CHECK(std::abs(line.points[k].x1 - line.points[k - 1].x1 - 0.05) < 1e-13);

  const MeasurementLine three = measurement_line(1.0, 1.0, 3);
  CHECK(three.points[0].x1 == -1.0);
  CHECK(three.points[1].x1 == 0.0);
  CHECK(three.points[2].x1 == 1.0);

  const MeasurementLine two = measurement_line(10.0, 1.0, 2);
  CHECK(two.points[0].x1 == -10.0);
  CHECK(two.points[1].x1 == 10.0);

  CHECK_THROWS_AS(measurement_line(10.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(measurement_line(0.0, 1.0, 5), std::invalid_argument);
}

TEST_CASE("default sampling grid has exact rational coordinates") {
  const SamplingGrid grid = sampling_grid();
  CHECK(grid.cols == 101);
  CHECK(grid.rows == 10);
  CHECK(grid.points.size() == 1010);
  CHECK(grid.points.front().x1 == -5.0);
  CHECK(grid.points.front().x2 == 0.09);
  CHECK(grid.points.back().x1 == 5.0);
  CHECK(grid.points.back().x2 == 0.9);
  for (const Point2& q : grid.points) {
    CHECK(q.x2 > 0.0);
    CHECK(q.x2 <= 0.9);
    CHECK(std::abs(q.x1) <= 5.0);
  }
  // row-major: x1 fastest
  CHECK(std::abs(grid.points[1].x1 - (-4.9)) < 1e-15);
  CHECK(grid.points[1].x2 == 0.09);
  CHECK(grid.points[101].x1 == -5.0);
  CHECK(std::abs(grid.points[101].x2 - 0.18) < 1e-15);
}

TEST_CASE("custom sampling grids cover their ranges") {
  const SamplingGrid single = sampling_grid({2.0, 2.0}, 0.5, {3.0, 3.0}, 0.5);
  CHECK(single.points.size() == 1);
  CHECK(single.points[0].x1 == 2.0);
  CHECK(single.points[0].x2 == 3.0);

  const SamplingGrid g = sampling_grid({0.0, 1.0}, 0.5, {0.0, 1.0}, 1.0);
  CHECK(g.cols == 3);
  CHECK(g.rows == 2);
  CHECK(g.points[4].x1 == 0.5);
  CHECK(g.points[4].x2 == 1.0);

  CHECK_THROWS_AS(sampling_grid({1.0, 0.0}, 0.5, {0.0, 1.0}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(sampling_grid({0.0, 1.0}, 0.0, {0.0, 1.0}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("profile meshes satisfy the discrete surface invariants") {
  const SurfaceProfile p1 = example_profile(1);
  const BoundaryMesh m = discretize(p1, 20.0, {-20.0, 20.0}, kMed);

  CHECK(m.segments.size() == 1);
  CHECK(m.segments[0].count == m.size());
  CHECK(m.segments[0].count % 4 == 0);
  CHECK(m.segments[0].h == 1.0 / static_cast<double>(m.size()));
  CHECK(m.normals.size() == m.size());
  CHECK(m.weights.size() == m.size());
  CHECK(m.deriv.size() == m.size());
  CHECK(m.deriv2.size() == m.size());
  CHECK(m.window.first == -20.0);
  CHECK(m.window.second == 20.0);

  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(std::abs(m.nodes[i].x2 - p1.height(m.nodes[i].x1)) < 1e-12);
    CHECK(std::abs(norm(Point2{m.normals[i].x1, m.normals[i].x2}) - 1.0) <
          1e-15);
    CHECK(m.normals[i].x2 > 0.0);
    // exact orthogonality to the parametric tangent
    CHECK(std::abs(m.normals[i].x1 * m.deriv[i].x1 +
                   m.normals[i].x2 * m.deriv[i].x2) <
          1e-14 * norm(m.deriv[i]));
    CHECK(m.weights[i] > 0.0);
    if (i > 0) CHECK(m.nodes[i].x1 > m.nodes[i - 1].x1);
    CHECK(m.nodes[i].x1 > -20.0);
    CHECK(m.nodes[i].x1 < 20.0);
  }

  // node spacing in the uniform middle region honors the density request
  const double lambda_s = 2.0 * pi / kMed.ks;
  for (std::size_t i = 1; i < m.size(); ++i)
    CHECK(norm(m.nodes[i] - m.nodes[i - 1]) < 1.01 * lambda_s / 20.0);

  // curvature carried by the parametric derivatives: kappa = f''/(1+f'^2)^1.5
  // inside the bump support, exactly zero on the flat tails
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = m.nodes[i].x1;
    const double cross =
        m.deriv[i].x1 * m.deriv2[i].x2 - m.deriv[i].x2 * m.deriv2[i].x1;
    const double speed = norm(m.deriv[i]);
    if (std::abs(x) < 3.5) {
      const double d = x * x - 16.0;
      const double up = -32.0 * x / (d * d);
      const double upp = -32.0 / (d * d) + 128.0 * x * x / (d * d * d);
      const double fp = 0.8 * std::exp(16.0 / d) * up;
      const double fpp = 0.8 * std::exp(16.0 / d) * (upp + up * up);
      const double kappa_want = fpp / std::pow(1.0 + fp * fp, 1.5);
      CHECK(std::abs(cross / (speed * speed * speed) - kappa_want) < 1e-7);
    } else if (std::abs(x) > 4.0) {
      CHECK(m.deriv[i].x2 == 0.0);
      CHECK(m.deriv2[i].x2 == 0.0);
      CHECK(cross == 0.0);
    }
  }

  CHECK_THROWS_AS(discretize(p1, 20.0, {-3.0, 3.0}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(p1, 20.0, {-4.0, 20.0}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(example_profile(3), 20.0, {-14.0, 14.0}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(p1, 5.9, {-20.0, 20.0}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(p1, 20.0, {2.0, -2.0}, kMed),
                  std::invalid_argument);
}

TEST_CASE("flat meshes are symmetric with exact arclength") {
  const BoundaryMesh m = discretize(kFlat, 10.0, {-10.0, 10.0}, kMed);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m.normals[i].x1 == 0.0);
    CHECK(m.normals[i].x2 == 1.0);
    CHECK(m.nodes[i].x2 == 0.5);
    CHECK(std::abs(m.weights[i] - m.weights[m.size() - 1 - i]) <
          1e-13 * m.weights[i]);
    CHECK(std::abs(m.nodes[i].x1 + m.nodes[m.size() - 1 - i].x1) < 1e-12);
  }
  CHECK(std::abs(total_weight(m) - 20.0) < 1e-11);

  const BoundaryMesh fine = discretize(kFlat, 640.0, {-10.0, 10.0}, kMed);
  CHECK(std::abs(total_weight(fine) - 20.0) < 1e-11);
}

TEST_CASE("mesh normals are orthogonal to the discrete tangent") {
  // dense mesh so the neighbor difference quotient itself is accurate
  const BoundaryMesh m =
      discretize(example_profile(1), 1e5, {-6.0, 6.0}, kMed);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    const Point2 chord = m.nodes[i + 1] - m.nodes[i - 1];
    const double t = (m.normals[i].x1 * chord.x1 + m.normals[i].x2 * chord.x2) /
                     norm(chord);
    worst = std::max(worst, std::abs(t));
  }
  MESSAGE("worst normal/discrete-tangent defect: ", worst);
  CHECK(worst < 1e-8);
}

TEST_CASE("mesh arclength matches adaptive quadrature") {
  const SurfaceProfile p3 = example_profile(3);
  auto len3 = [&p3](double x) {
    const double d = p3.derivative(x);
    return std::sqrt(1.0 + d * d);
  };
  const double oracle3 = elsm_test::adaptive_simpson(len3, -16.0, 16.0, 1e-12);
  const BoundaryMesh m3 = discretize(p3, 160.0, {-16.0, 16.0}, kMed);
  CHECK(std::abs(total_weight(m3) - oracle3) < 1e-6);

  const SurfaceProfile p1 = example_profile(1);
  auto len1 = [&p1](double x) {
    const double d = p1.derivative(x);
    return std::sqrt(1.0 + d * d);
  };
  const double oracle1 = elsm_test::adaptive_simpson(len1, -6.0, 6.0, 1e-12);
  const BoundaryMesh m1 = discretize(p1, 160.0, {-6.0, 6.0}, kMed);
  CHECK(std::abs(total_weight(m1) - oracle1) < 1e-6);

  // one period of the unblended sine
  auto lens = [](double x) {
    const double d = 0.15 * std::cos(x);
    return std::sqrt(1.0 + d * d);
  };
  const double oracle_s = elsm_test::adaptive_simpson(lens, -pi, pi, 1e-13);
  const BoundaryMesh ms = discretize(kSine, 640.0, {-pi, pi}, kMed);
  CHECK(std::abs(total_weight(ms) - oracle_s) < 1e-10);

  // doubling the density leaves the arclength invariant
  const BoundaryMesh ms2 = discretize(kSine, 1280.0, {-pi, pi}, kMed);
  CHECK(std::abs(total_weight(ms2) - total_weight(ms)) < 1e-10);
}

TEST_CASE("fan meshes cover the three pieces") {
  const AuxiliarySurface fan = fan_surface(100.0);
  const double lambda_s = 2.0 * pi / kMed.ks;
  const double W = fan.chord_halfwidth + 2.0 * lambda_s;
  const BoundaryMesh m = discretize(fan, 8.0, {-W, W}, kMed);

  REQUIRE(m.segments.size() == 3);
  std::size_t total = 0;
  for (const MeshSegment& seg : m.segments) {
    CHECK(seg.count % 4 == 0);
    CHECK(seg.first == total);
    total += seg.count;
  }
  CHECK(total == m.size());

  const Point2 c = fan.arc_center;
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m.weights[i] > 0.0);
    CHECK(m.normals[i].x2 > 0.0);
    if (i > 0) CHECK(m.nodes[i].x1 > m.nodes[i - 1].x1);
  }
  // left and right pieces lie on the plane, middle piece on the circle
  const MeshSegment& left = m.segments[0];
  const MeshSegment& arc = m.segments[1];
  const MeshSegment& right = m.segments[2];
  for (std::size_t i = left.first; i < left.first + left.count; ++i) {
    CHECK(m.nodes[i].x2 == 0.5);
    CHECK(m.nodes[i].x1 < -fan.chord_halfwidth);
    CHECK(m.normals[i].x1 == 0.0);
  }
  for (std::size_t i = right.first; i < right.first + right.count; ++i) {
    CHECK(m.nodes[i].x2 == 0.5);
    CHECK(m.nodes[i].x1 > fan.chord_halfwidth);
  }
  double min_x2 = 1e9;
  for (std::size_t i = arc.first; i < arc.first + arc.count; ++i) {
    CHECK(std::abs(norm(m.nodes[i] - c) - fan.R) < 1e-10);
    // normals point away from the circle center (upward into the domain)
    CHECK(std::abs(m.normals[i].x1 * (m.nodes[i].x1 - c.x1) +
                   m.normals[i].x2 * (m.nodes[i].x2 - c.x2) + fan.R) < 1e-10);
    // curvature of the dip equals 1/R; checked away from the graded tips,
    // where the parallel component of deriv2 dominates and the cross
    // product cancels catastrophically
    const std::size_t k = i - arc.first;
    if (4 * k >= arc.count && 4 * k < 3 * arc.count) {
      const double cross =
          m.deriv[i].x1 * m.deriv2[i].x2 - m.deriv[i].x2 * m.deriv2[i].x1;
      const double speed = norm(m.deriv[i]);
      CHECK(std::abs(cross / (speed * speed * speed) - 1.0 / fan.R) <
            1e-9 / fan.R);
    }
    min_x2 = std::min(min_x2, m.nodes[i].x2);
  }
  CHECK(min_x2 > c.x2 - fan.R - 1e-12);
  CHECK(min_x2 < c.x2 - fan.R + 0.05);

  // total arclength against the closed form
  const double exact =
      2.0 * (W - fan.chord_halfwidth) + 2.0 * fan.arc_halfangle * fan.R;
  CHECK(std::abs(total_weight(m) - exact) < 1e-10 * exact);

  CHECK_THROWS_AS(discretize(fan, 8.0, {-fan.chord_halfwidth, W}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(fan, 8.0, {-40.0, 40.0}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize(fan, 4.0, {-W, W}, kMed), std::invalid_argument);
}

TEST_CASE("closed profile meshes are smooth periodic loops") {
  const SurfaceProfile p1 = example_profile(1);
  const double lambda_s = 2.0 * pi / kMed.ks;
  const double W = p1.truncation_halfwidth + 4.0 * lambda_s;
  const BoundaryMesh m = discretize_closed(p1, 20.0, {-W, W}, kMed);

  CHECK(m.periodic);
  REQUIRE(m.segments.size() == 1);
  CHECK(m.segments[0].count == m.size());
  CHECK(m.size() % 2 == 0);
  CHECK(m.segments[0].first == 0);
  CHECK(m.segments[0].h == 1.0 / static_cast<double>(m.size()));

  // the parameterization closes
  REQUIRE(bool(m.point));
  CHECK(norm(m.point(0, 0.0) - m.point(0, 1.0)) < 1e-12);
  CHECK_THROWS_AS(m.point(1, 0.5), std::invalid_argument);

  double min_x2 = 1e9;
  double max_abs_x1 = 0.0;
  std::size_t on_graph = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(m.weights[i] > 0.0);
    CHECK(std::abs(norm(Point2{m.normals[i].x1, m.normals[i].x2}) - 1.0) <
          1e-15);
    // exact orthogonality and the uniform-parameter weight identity
    CHECK(std::abs(m.normals[i].x1 * m.deriv[i].x1 +
                   m.normals[i].x2 * m.deriv[i].x2) <
          1e-13 * norm(m.deriv[i]));
    CHECK(std::abs(m.weights[i] - m.segments[0].h * norm(m.deriv[i])) <
          1e-13 * m.weights[i]);
    min_x2 = std::min(min_x2, m.nodes[i].x2);
    max_abs_x1 = std::max(max_abs_x1, std::abs(m.nodes[i].x1));
    // inside the window and above the floor: these are graph nodes
    if (std::abs(m.nodes[i].x1) < W - 1.0 && m.nodes[i].x2 > 0.0) {
      CHECK(std::abs(m.nodes[i].x2 - p1.height(m.nodes[i].x1)) < 1e-12);
      CHECK(m.normals[i].x2 > 0.0);
      ++on_graph;
    }
  }
  CHECK(on_graph > m.size() / 4);
  // return path stays below the graph and within a wavelength of the window
  CHECK(min_x2 < 0.5 - 0.4 * lambda_s);
  CHECK(min_x2 > 0.5 - 2.0 * lambda_s);
  CHECK(max_abs_x1 > W);
  CHECK(max_abs_x1 < W + lambda_s);

  // perimeter against the converged value; the trapezoid sum of the loop
  // speed converges root-exponentially, so the density-doubled mesh agrees
  // only to the pre-asymptotic remainder
  CHECK(std::abs(total_weight(m) - 211.9230) < 1e-3);
  const BoundaryMesh m2 = discretize_closed(p1, 40.0, {-W, W}, kMed);
  CHECK(std::abs(total_weight(m2) - total_weight(m)) < 2e-4);

  // window ends must be flat in value and slope
  CHECK_THROWS_AS(discretize_closed(kSine, 20.0, {-pi, pi}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize_closed(p1, 20.0, {-3.0, W}, kMed),
                  std::invalid_argument);
  CHECK_THROWS_AS(discretize_closed(p1, 5.9, {-W, W}, kMed),
                  std::invalid_argument);
}

TEST_CASE("closed fan meshes append a smooth return path") {
  const AuxiliarySurface fan = fan_surface(30.0);
  const double lambda_s = 2.0 * pi / kMed.ks;
  const double W = fan.chord_halfwidth + 2.0 * lambda_s;
  const BoundaryMesh open = discretize(fan, 8.0, {-W, W}, kMed);
  const BoundaryMesh m = discretize_closed(fan, 8.0, {-W, W}, kMed);

  CHECK(!m.periodic);
  CHECK(m.segments.size() > open.segments.size());
  CHECK(m.size() > open.size());
  // the open mesh is a prefix
  for (std::size_t i = 0; i < open.size(); ++i)
    CHECK(norm(m.nodes[i] - open.nodes[i]) == 0.0);
  // return nodes never rise above the plane
  for (std::size_t i = open.size(); i < m.size(); ++i) {
    CHECK(m.nodes[i].x2 < fan.plane_height + 1e-12);
    CHECK(m.weights[i] > 0.0);
  }
  // segment chain is continuous and closes
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < m.segments.size(); ++k)
    worst = std::max(worst, norm(m.point(k, 1.0) - m.point(k + 1, 0.0)));
  CHECK(worst < 1e-12);
  CHECK(norm(m.point(m.segments.size() - 1, 1.0) - m.point(0, 0.0)) < 1e-12);
}
