#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elsm/kupradze.hpp"
#include "elsm/spectra.hpp"

using namespace elsm;

namespace {

const ElasticMedium kMed = make_medium(9.0, 3.0, 1.0);

double max_entry_diff(const Mat2c& a, const Mat2c& b) {
  double v = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v = std::max(v, std::abs(a(i, j) - b(i, j)));
  return v;
}

// Samples of a point-source field on a horizontal line.
LineField sample_point_source(const Point2& src, const Vec2c& p, double height,
                              double halfwidth, double spacing) {
  LineField lf;
  lf.height = height;
  lf.spacing = spacing;
  const int m = (int)std::round(2.0 * halfwidth / spacing) + 1;
  lf.x1_start = -halfwidth;
  lf.values.resize(m);
  for (int j = 0; j < m; ++j) {
    lf.values[j] =
        point_source({lf.x1_start + j * spacing, height}, src, p, kMed);
  }
  return lf;
}

}  // namespace

TEST_CASE("vertical wavenumber branch") {
  CHECK(gamma_branch(kMed.ks, 0.0) == complex(kMed.ks, 0.0));
  CHECK(std::abs(gamma_branch(kMed.ks, kMed.ks)) == 0.0);
  const complex inside = gamma_branch(kMed.ks, 0.3);
  CHECK(inside.imag() == 0.0);
  CHECK(inside.real() > 0.0);
  const complex outside = gamma_branch(kMed.ks, 2.0);
  CHECK(outside.real() == 0.0);
  CHECK(outside.imag() > 0.0);
  for (double xi = -3.0; xi <= 3.0; xi += 0.037) {
    const complex g = gamma_branch(kMed.kp, xi);
    CHECK(g.imag() >= 0.0);
    CHECK(std::abs(g * g - (kMed.kp * kMed.kp - xi * xi)) <
          1e-15 * std::max(1.0, xi * xi));
  }
  CHECK_THROWS_AS((void)gamma_branch(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("projections resolve the identity and annihilate each other") {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double xi = -2.0 + 4.0 * i / 199.0;
    const ProjectionPair pr = projection_matrices(xi, kMed);
    Mat2c sum;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) sum(a, b) = pr.p(a, b) + pr.s(a, b);
    worst = std::max(worst, max_entry_diff(sum, Mat2c::identity()));
    worst = std::max(worst, max_entry_diff(matmul(pr.p, pr.p), pr.p));
    worst = std::max(worst, max_entry_diff(matmul(pr.s, pr.s), pr.s));
    worst = std::max(worst, max_entry_diff(matmul(pr.p, pr.s), Mat2c{}));
    worst = std::max(worst, max_entry_diff(matmul(pr.s, pr.p), Mat2c{}));
  }
  MESSAGE("worst projection identity defect: " << worst);
  CHECK(worst < 1e-12);
}

TEST_CASE("projections at normal incidence") {
  const ProjectionPair pr = projection_matrices(0.0, kMed);
  CHECK(std::abs(pr.p(0, 0)) == 0.0);
  CHECK(std::abs(pr.p(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(pr.s(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(pr.s(1, 1)) == 0.0);
  CHECK(std::abs(pr.p(0, 1)) + std::abs(pr.p(1, 0)) == 0.0);
}

TEST_CASE("DtN symbol symmetry and normal-incidence value") {
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double xi = -2.0 + 4.0 * i / 199.0;
    const Mat2c m = dtn_symbol(xi, kMed);
    const Mat2c mn = dtn_symbol(-xi, kMed);
    Mat2c mt;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) mt(a, b) = mn(b, a);
    double scale = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) scale = std::max(scale, std::abs(m(a, b)));
    worst = std::max(worst, max_entry_diff(m, mt) / scale);
  }
  MESSAGE("worst DtN transpose defect: " << worst);
  CHECK(worst < 1e-12);

  const Mat2c m0 = dtn_symbol(0.0, kMed);
  const double w2 = kMed.omega * kMed.omega;
  CHECK(std::abs(m0(0, 0) - complex(0.0, w2 / kMed.ks)) < 1e-14);
  CHECK(std::abs(m0(1, 1) - complex(0.0, w2 / kMed.kp)) < 1e-14);
  CHECK(std::abs(m0(0, 1)) == 0.0);
  CHECK(std::abs(m0(1, 0)) == 0.0);
}

TEST_CASE("propagation reproduces a point-source field above the line") {
  const Point2 src{0.0, 0.2};
  const Vec2c p{complex(0.4, 0.1), complex(1.0, 0.0)};
  const LineField lf = sample_point_source(src, p, 1.0, 80.0, 0.25);
  const std::vector<Point2> targets = {
      {0.3, 1.8}, {-1.2, 2.5}, {2.0, 1.6}, {0.0, 3.0}, {-3.5, 2.0}};
  PropagationDiagnostics diag;
  const std::vector<Vec2c> got =
      angular_spectrum_propagate(lf, kMed, targets, &diag);
  double ref_max = 0.0, err = 0.0;
  for (size_t t = 0; t < targets.size(); ++t) {
    const Vec2c want = point_source(targets[t], src, p, kMed);
    ref_max = std::max(ref_max, norm(want));
    err = std::max(err, std::hypot(std::abs(got[t].u1 - want.u1),
                                   std::abs(got[t].u2 - want.u2)));
  }
  MESSAGE("point-source reproduction relative error: " << err / ref_max);
  CHECK(err / ref_max <= 1e-3);
  // The slowly decaying samples necessarily violate the negligible-edge
  // precondition, which must be reported.
  CHECK(diag.window_warning);
  CHECK(diag.edge_ratio > 1e-3);
}

TEST_CASE("propagation error decreases under refinement") {
  const Point2 src{0.5, 0.3};
  const Vec2c p{complex(0.0, 0.0), complex(1.0, 0.0)};
  const std::vector<Point2> targets = {{0.0, 2.0}, {1.5, 1.7}};
  auto run = [&](double halfwidth, double spacing) {
    const LineField lf = sample_point_source(src, p, 1.0, halfwidth, spacing);
    const std::vector<Vec2c> got =
        angular_spectrum_propagate(lf, kMed, targets);
    double err = 0.0;
    for (size_t t = 0; t < targets.size(); ++t) {
      const Vec2c want = point_source(targets[t], src, p, kMed);
      err = std::max(err, std::hypot(std::abs(got[t].u1 - want.u1),
                                     std::abs(got[t].u2 - want.u2)));
    }
    return err;
  };
  const double coarse = run(60.0, 0.5);
  const double fine = run(120.0, 0.25);
  MESSAGE("coarse error " << coarse << ", refined error " << fine);
  CHECK(fine < coarse);
}

TEST_CASE("zero samples propagate to zero without warnings") {
  LineField lf;
  lf.height = 1.0;
  lf.x1_start = -10.0;
  lf.spacing = 0.5;
  lf.values.assign(41, Vec2c{});
  PropagationDiagnostics diag;
  const std::vector<Vec2c> got =
      angular_spectrum_propagate(lf, kMed, {{0.0, 2.0}, {1.0, 1.5}}, &diag);
  for (const Vec2c& v : got) CHECK(norm(v) == 0.0);
  CHECK_FALSE(diag.window_warning);
  CHECK(diag.edge_ratio == 0.0);
}

TEST_CASE("a compactly concentrated field does not warn") {
  LineField lf;
  lf.height = 0.5;
  lf.x1_start = -35.0;
  lf.spacing = 0.25;
  const int m = 281;
  lf.values.resize(m);
  for (int j = 0; j < m; ++j) {
    const double x = lf.x1_start + j * lf.spacing;
    lf.values[j].u1 = std::exp(-x * x / 50.0);
  }
  PropagationDiagnostics diag;
  (void)angular_spectrum_propagate(lf, kMed, {{0.0, 1.0}}, &diag);
  CHECK_FALSE(diag.window_warning);
}

TEST_CASE("invalid propagation inputs are rejected") {
  LineField lf;
  lf.height = 1.0;
  lf.x1_start = -5.0;
  lf.spacing = 0.5;
  lf.values.assign(21, Vec2c{{1.0, 0.0}, {0.0, 0.0}});
  CHECK_THROWS_AS(
      (void)angular_spectrum_propagate(lf, kMed, {{0.0, 0.5}}),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)angular_spectrum_propagate(lf, kMed, {{0.0, 1.0}}),
      std::domain_error);
  LineField bad = lf;
  bad.values.resize(1);
  CHECK_THROWS_AS((void)angular_spectrum_propagate(bad, kMed, {{0.0, 2.0}}),
                  std::invalid_argument);
  bad = lf;
  bad.spacing = 0.0;
  CHECK_THROWS_AS((void)angular_spectrum_propagate(bad, kMed, {{0.0, 2.0}}),
                  std::invalid_argument);
}
