#include "elsm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace elsm {
namespace {

// Node-spacing ramp: vanishes to fourth order at 0, reaches 1 at 1 with
// three vanishing derivatives, so the composed speed is C^3 across the
// ramp/plateau seams.
double ramp(double t) {
  return t * t * t * t * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

double ramp_deriv(double t) {
  const double u = t * (1.0 - t);
  return 140.0 * u * u * u;
}

// int_0^u ramp; equals 1/2 at u = 1.
double ramp_integral(double u) {
  const double u4 = u * u * u * u;
  return u4 * u * (7.0 + u * (-14.0 + u * (10.0 - 2.5 * u)));
}

constexpr double kRampFraction = 0.25;

// Bijection G: [0,1] -> [0,1] with G' > 0 inside, G' vanishing to fourth
// order at both ends and constant on the middle half. Node spacing follows
// G', which tapers contributions at open ends and clusters nodes at corners.
struct Grading {
  double value;
  double deriv;
  double deriv2;
};

Grading grading(double s) {
  const double z = kRampFraction;
  const double mass = 1.0 - z;
  double v, d, d2;
  if (s < z) {
    const double t = s / z;
    v = z * ramp_integral(t);
    d = ramp(t);
    d2 = ramp_deriv(t) / z;
  } else if (s <= 1.0 - z) {
    v = 0.5 * z + (s - z);
    d = 1.0;
    d2 = 0.0;
  } else {
    const double t = (1.0 - s) / z;
    v = mass - z * ramp_integral(t);
    d = ramp(t);
    d2 = -ramp_deriv(t) / z;
  }
  return {v / mass, d / mass, d2 / mass};
}

// One-sided exponential and the C-infinity step built from it: 0 below 0,
// 1 above 1, strictly monotone between, every derivative vanishing at both
// ends. Ramps built from it keep blended profiles and the closure path
// smooth, which the periodic quadrature needs for spectral convergence.
double cinf_side(double s) { return s <= 0.0 ? 0.0 : std::exp(-1.0 / s); }

double cinf_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = cinf_side(s);
  const double b = cinf_side(1.0 - s);
  return a / (a + b);
}

double cinf_step_deriv(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double a = cinf_side(s);
  const double b = cinf_side(1.0 - s);
  const double da = a / (s * s);
  const double db = -b / ((1.0 - s) * (1.0 - s));
  const double sum = a + b;
  return (da * b - a * db) / (sum * sum);
}

// Wraps a globally defined profile so it coincides with the plane x2 = 0.5
// outside |x1| >= 15 and with the original formula inside |x1| <= 13.
SurfaceProfile blended_profile(std::function<double(double)> f,
                               std::function<double(double)> fp, double f_minus,
                               double f_plus) {
  auto height = [f](double x) {
    const double ax = std::abs(x);
    if (ax >= 15.0) return 0.5;
    if (ax <= 13.0) return f(x);
    const double t = (ax - 13.0) / 2.0;
    return 0.5 + (f(x) - 0.5) * (1.0 - cinf_step(t));
  };
  auto deriv = [f, fp](double x) {
    const double ax = std::abs(x);
    if (ax >= 15.0) return 0.0;
    if (ax <= 13.0) return fp(x);
    const double t = (ax - 13.0) / 2.0;
    const double sgn = x < 0.0 ? -1.0 : 1.0;
    return fp(x) * (1.0 - cinf_step(t)) -
           (f(x) - 0.5) * cinf_step_deriv(t) * sgn / 2.0;
  };
  return {height, deriv, f_minus, f_plus, 15.0};
}

double spline_bump(double x) {
  const double u = std::abs(x);
  if (u >= 2.0) return 0.0;
  if (u <= 1.0) return 0.5 * u * u * u - x * x + 2.0 / 3.0;
  return -u * u * u / 6.0 + x * x - 2.0 * u + 4.0 / 3.0;
}

double spline_bump_deriv(double x) {
  const double u = std::abs(x);
  if (u >= 2.0) return 0.0;
  const double sgn = x < 0.0 ? -1.0 : 1.0;
  if (u <= 1.0) return sgn * (1.5 * u * u - 2.0 * u);
  return sgn * (-0.5 * u * u + 2.0 * u - 2.0);
}

std::size_t segment_count(double max_speed, double lambda_s, double npw) {
  const double need = npw * max_speed / ((1.0 - kRampFraction) * lambda_s);
  const auto n = static_cast<std::size_t>(std::ceil(need / 4.0)) * 4;
  return std::max<std::size_t>(n, 8);
}

template <class FX, class FD1, class FD2>
void append_segment(BoundaryMesh& mesh, double t0, double t1, std::size_t n,
                    FX fx, FD1 fd1, FD2 fd2) {
  MeshSegment seg{mesh.nodes.size(), n, 1.0 / static_cast<double>(n)};
  const double len = t1 - t0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = (static_cast<double>(i) + 0.5) * seg.h;
    const Grading g = grading(s);
    const double tau = t0 + len * g.value;
    const Point2 x = fx(tau);
    const Point2 d1t = fd1(tau);
    const Point2 d2t = fd2(tau);
    const double c = len * g.deriv;
    const Point2 d1{d1t.x1 * c, d1t.x2 * c};
    const Point2 d2{d2t.x1 * c * c + d1t.x1 * len * g.deriv2,
                    d2t.x2 * c * c + d1t.x2 * len * g.deriv2};
    const double speed = norm(d1);
    mesh.nodes.push_back(x);
    // normal from the ungraded tangent: same direction, never degenerate
    mesh.normals.emplace_back(-d1t.x2, d1t.x1);
    mesh.weights.push_back(seg.h * speed);
    mesh.deriv.push_back(d1);
    mesh.deriv2.push_back(d2);
  }
  mesh.segments.push_back(seg);
}

void check_density(double npw) {
  if (!(npw >= 6.0))
    throw std::invalid_argument(
        "discretize: need at least 6 nodes per shear wavelength");
}

// Gauss-Legendre 8-point rule on [-1, 1], positive half.
constexpr std::array<double, 4> kGlX{0.1834346424956498, 0.5255324099163290,
                                     0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlW{0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

// Tangent-angle turn: the angle moves from 0 to phi over arclength L
// through the C-infinity step, so attaching pieces of matching entry and
// exit angles keeps the path smooth to all orders. Positions integrate the
// unit tangent; a prefix table plus one Gauss panel makes pos accurate to
// roundoff.
struct SmoothTurn {
  static constexpr int kTable = 256;
  double L = 0.0;
  double phi = 0.0;
  std::array<Point2, kTable + 1> prefix{};

  SmoothTurn(double len, double angle) : L(len), phi(angle) {
    prefix[0] = {0.0, 0.0};
    const double step = L / kTable;
    for (int i = 0; i < kTable; ++i)
      prefix[i + 1] = prefix[i] + piece(i * step, (i + 1) * step);
  }

  double theta(double xi) const { return phi * cinf_step(xi / L); }
  double dtheta(double xi) const {
    return phi * cinf_step_deriv(xi / L) / L;
  }
  Point2 tangent(double xi) const {
    const double t = theta(xi);
    return {std::cos(t), std::sin(t)};
  }
  Point2 piece(double u0, double u1) const {
    const double c = 0.5 * (u0 + u1);
    const double r = 0.5 * (u1 - u0);
    Point2 acc{0.0, 0.0};
    for (std::size_t j = 0; j < kGlX.size(); ++j) {
      const Point2 lo = tangent(c - r * kGlX[j]);
      const Point2 hi = tangent(c + r * kGlX[j]);
      acc.x1 += kGlW[j] * (lo.x1 + hi.x1);
      acc.x2 += kGlW[j] * (lo.x2 + hi.x2);
    }
    return {r * acc.x1, r * acc.x2};
  }
  Point2 pos(double xi) const {
    xi = std::clamp(xi, 0.0, L);
    const double step = L / kTable;
    const int i = std::min(static_cast<int>(xi / step), kTable - 1);
    return prefix[static_cast<std::size_t>(i)] + piece(i * step, xi);
  }
  Point2 end() const { return prefix[kTable]; }
};

// Rotation by -r pi/2, exact for r = 0..3.
Point2 rot_quarter(int r, Point2 p) {
  switch (r & 3) {
    case 0: return p;
    case 1: return {p.x2, -p.x1};
    case 2: return {-p.x1, -p.x2};
    default: return {-p.x2, p.x1};
  }
}

// Closed smooth loop: the profile graph over the window followed by a
// return path of four quarter turns and three straight runs (down, across
// at the bottom depth, up). The graph keeps its x parameterization; the
// return is unit speed. Because the four rotated copies of one turn cancel
// in displacement, a bottom run of exactly the window width closes the
// loop, and equal vertical runs set its depth.
struct ClosedLoop {
  struct Piece {
    int kind;  // 0 graph, 1 turn, 2 straight
    double len;
    Point2 start;
    int rot;   // quarter turns applied before this piece
  };

  std::function<double(double)> f, fp, fpp;
  double xL = 0.0;
  SmoothTurn turn;
  std::vector<Piece> pieces;
  double T = 0.0;

  ClosedLoop(const SurfaceProfile& profile, std::pair<double, double> window,
             double turn_len, double y_bot)
      : f(profile.height), fp(profile.derivative), xL(window.first),
        turn(turn_len, -0.5 * pi) {
    const auto& fpr = fp;
    fpp = [fpr](double x) {
      const double e = 1e-5;
      return (fpr(x + e) - fpr(x - e)) / (2.0 * e);
    };
    const double xR = window.second;
    const double level = f(xR);
    const Point2 d = turn.end();  // (a, -b) with a, b > 0
    // vertical run reaching the requested depth; the turns alone may
    // already overshoot it, in which case the bottom just sits deeper
    const double v = std::max(0.0, level - y_bot - (d.x1 - d.x2));
    Point2 at{xR, level};
    auto add = [&](int kind, double len, int rot) {
      pieces.push_back({kind, len, at, rot});
      if (kind == 1)
        at = at + rot_quarter(rot, turn.end());
      else if (kind == 2)
        at = at + len * rot_quarter(rot, Point2{1.0, 0.0});
      T += len;
    };
    add(0, xR - window.first, 0);  // placeholder start; graph start is (xL, level)
    pieces[0].start = {window.first, f(window.first)};
    add(1, turn.L, 0);
    if (v > 0.0) add(2, v, 1);
    add(1, turn.L, 1);
    add(2, xR - window.first, 2);
    add(1, turn.L, 2);
    if (v > 0.0) add(2, v, 3);
    add(1, turn.L, 3);
  }

  const Piece& locate(double& u) const {
    for (const Piece& p : pieces) {
      if (u <= p.len) return p;
      u -= p.len;
    }
    u = pieces.back().len;
    return pieces.back();
  }
  Point2 pos(double u) const {
    const Piece& p = locate(u);
    switch (p.kind) {
      case 0: return {xL + u, f(xL + u)};
      case 1: return p.start + rot_quarter(p.rot, turn.pos(u));
      default: return p.start + u * rot_quarter(p.rot, Point2{1.0, 0.0});
    }
  }
  Point2 d1(double u) const {
    const Piece& p = locate(u);
    switch (p.kind) {
      case 0: return {1.0, fp(xL + u)};
      case 1: return rot_quarter(p.rot, turn.tangent(u));
      default: return rot_quarter(p.rot, Point2{1.0, 0.0});
    }
  }
  Point2 d2(double u) const {
    const Piece& p = locate(u);
    switch (p.kind) {
      case 0: return {0.0, fpp(xL + u)};
      case 1: {
        const double t = turn.theta(u);
        const double dt = turn.dtheta(u);
        return rot_quarter(p.rot, Point2{-dt * std::sin(t), dt * std::cos(t)});
      }
      default: return {0.0, 0.0};
    }
  }
};

Point2 rotate(double a, Point2 p) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  return {c * p.x1 - s * p.x2, s * p.x1 + c * p.x2};
}

// Closed smooth loop for the auxiliary fan: plane runs joined to the exact
// dip arc through corner turns that smooth the plane/arc tangent jump, then
// the same four-quarter-turn return as the profile loop. Every piece is
// unit speed. Rounding displaces the path from the ideal intersection only
// within one corner length of the chord ends; because the C-infinity step
// satisfies step(1 - s) = 1 - step(s), the two corners' height changes
// cancel, and the left ascent absorbs the roundoff remainder.
struct FanLoop {
  struct Piece {
    int kind;  // 0 straight, 1 quarter turn, 2 corner turn, 3 arc
    double len;
    Point2 start;
    int rot;        // quarter turns applied before kinds 0, 1
    double theta0;  // entry tangent angle for kinds 2, 3
    Point2 center;  // circle center for kind 3
  };

  SmoothTurn quarter;
  SmoothTurn corner;
  double R = 0.0;
  std::vector<Piece> pieces;
  double T = 0.0;

  FanLoop(const AuxiliarySurface& fan, std::pair<double, double> window,
          double turn_len, double y_bot)
      : quarter(turn_len, -0.5 * pi),
        corner(turn_len, -fan.arc_halfangle),
        R(fan.R) {
    const double th = fan.arc_halfangle;
    const double ph = fan.plane_height;
    const Point2 ce = corner.end();
    const Point2 cbe = rotate(th, ce);
    const double upper = ce.x1 + cbe.x1 + 2.0 * R * std::sin(th);
    const double P = 0.5 * (window.second - window.first - upper);
    if (P <= 0.0)
      throw std::invalid_argument(
          "discretize_closed: window too tight for the rounded fan");
    const double dy_upper = ce.x2 + cbe.x2;
    const Point2 d = quarter.end();
    const double v = std::max(0.0, ph - y_bot - (d.x1 - d.x2));

    Point2 at{window.first, ph};
    auto add = [&](int kind, double len, int rot, double theta0) {
      Piece p{kind, len, at, rot, theta0, {0.0, 0.0}};
      switch (kind) {
        case 0:
          at = at + len * rot_quarter(rot, Point2{1.0, 0.0});
          break;
        case 1:
          at = at + rot_quarter(rot, quarter.end());
          break;
        case 2:
          at = at + rotate(theta0, corner.end());
          break;
        case 3: {
          p.center = p.start + R * Point2{-std::sin(theta0), std::cos(theta0)};
          const double a1 = theta0 + len / R;
          at = at + Point2{R * (std::sin(a1) - std::sin(theta0)),
                           R * (std::cos(theta0) - std::cos(a1))};
          break;
        }
      }
      pieces.push_back(p);
      T += len;
    };

    add(0, P, 0, 0.0);
    add(2, corner.L, 0, 0.0);
    add(3, 2.0 * th * R, 0, -th);
    add(2, corner.L, 0, th);
    add(0, P, 0, 0.0);
    add(1, quarter.L, 0, 0.0);
    if (v > 0.0) add(0, v, 1, 0.0);
    add(1, quarter.L, 1, 0.0);
    add(0, window.second - window.first, 2, 0.0);
    add(1, quarter.L, 2, 0.0);
    const double vl = std::max(0.0, v - dy_upper);
    if (vl > 0.0) add(0, vl, 3, 0.0);
    add(1, quarter.L, 3, 0.0);
  }

  const Piece& locate(double& u) const {
    for (const Piece& p : pieces) {
      if (u <= p.len) return p;
      u -= p.len;
    }
    u = pieces.back().len;
    return pieces.back();
  }
  Point2 pos(double u) const {
    const Piece& p = locate(u);
    switch (p.kind) {
      case 0: return p.start + u * rot_quarter(p.rot, Point2{1.0, 0.0});
      case 1: return p.start + rot_quarter(p.rot, quarter.pos(u));
      case 2: return p.start + rotate(p.theta0, corner.pos(u));
      default: {
        const double a = p.theta0 + u / R;
        return p.center + R * Point2{std::sin(a), -std::cos(a)};
      }
    }
  }
  Point2 d1(double u) const {
    const Piece& p = locate(u);
    switch (p.kind) {
      case 0: return rot_quarter(p.rot, Point2{1.0, 0.0});
      case 1: return rot_quarter(p.rot, quarter.tangent(u));
      case 2: return rotate(p.theta0, corner.tangent(u));
      default: {
        const double a = p.theta0 + u / R;
        return {std::cos(a), std::sin(a)};
      }
    }
  }
  Point2 d2(double u) const {
    const Piece& p = locate(u);
    switch (p.kind) {
      case 0: return {0.0, 0.0};
      case 1: {
        const double t = quarter.theta(u);
        const double dt = quarter.dtheta(u);
        return rot_quarter(p.rot, Point2{-dt * std::sin(t), dt * std::cos(t)});
      }
      case 2: {
        const double t = corner.theta(u);
        const double dt = corner.dtheta(u);
        return rotate(p.theta0, Point2{-dt * std::sin(t), dt * std::cos(t)});
      }
      default: {
        const double a = p.theta0 + u / R;
        return {-std::sin(a) / R, std::cos(a) / R};
      }
    }
  }
};

// Uniform staggered nodes on a smooth closed loop; the solver integrates
// these meshes with the global trigonometric rule.
template <class Loop>
BoundaryMesh periodic_mesh(std::shared_ptr<const Loop> loop, double spacing,
                           std::pair<double, double> window) {
  std::size_t n = static_cast<std::size_t>(std::ceil(loop->T / spacing));
  n += n % 2;
  n = std::max<std::size_t>(n, 16);

  BoundaryMesh mesh;
  mesh.window = window;
  mesh.periodic = true;
  const MeshSegment seg{0, n, 1.0 / static_cast<double>(n)};
  const double T = loop->T;
  for (std::size_t m = 0; m < n; ++m) {
    const double u = (static_cast<double>(m) + 0.5) * seg.h * T;
    const Point2 x = loop->pos(u);
    const Point2 du = loop->d1(u);
    const Point2 duu = loop->d2(u);
    mesh.nodes.push_back(x);
    mesh.normals.emplace_back(-du.x2, du.x1);
    mesh.deriv.push_back(T * du);
    mesh.deriv2.push_back((T * T) * duu);
    mesh.weights.push_back(seg.h * T * norm(du));
  }
  mesh.segments.push_back(seg);
  mesh.point = [loop, T](std::size_t k, double s) {
    if (k != 0)
      throw std::invalid_argument("BoundaryMesh::point: bad segment");
    return loop->pos(s * T);
  };
  return mesh;
}

void check_window(std::pair<double, double> window, double halfwidth,
                  const char* what) {
  if (!(window.first < window.second))
    throw std::invalid_argument("discretize: empty window");
  if (!(window.first < -halfwidth && window.second > halfwidth))
    throw std::invalid_argument(std::string("discretize: window must strictly "
                                            "contain the ") +
                                what);
}

}  // namespace

SurfaceProfile example_profile(int id) {
  switch (id) {
    case 1: {
      auto height = [](double x) {
        if (std::abs(x) >= 4.0) return 0.5;
        return 0.5 + 0.8 * std::exp(16.0 / (x * x - 16.0));
      };
      auto deriv = [](double x) {
        if (std::abs(x) >= 4.0) return 0.0;
        const double d = x * x - 16.0;
        return -25.6 * x * std::exp(16.0 / d) / (d * d);
      };
      return {height, deriv, 0.4, 0.85, 4.0};
    }
    case 2: {
      auto height = [](double x) { return 0.5 + spline_bump(x); };
      return {height, spline_bump_deriv, 0.4, 1.2, 2.0};
    }
    case 3: {
      auto f = [](double x) { return 0.5 + 0.15 * std::sin(x); };
      auto fp = [](double x) { return 0.15 * std::cos(x); };
      return blended_profile(f, fp, 0.3, 0.7);
    }
    case 4: {
      auto f = [](double x) {
        return 0.5 + 0.18 * std::sin(x) + 0.15 * std::cos(0.5 * x);
      };
      auto fp = [](double x) {
        return 0.18 * std::cos(x) - 0.075 * std::sin(0.5 * x);
      };
      return blended_profile(f, fp, 0.15, 0.85);
    }
    default:
      throw std::invalid_argument("example_profile: id must be 1, 2, 3, or 4");
  }
}

AuxiliarySurface fan_surface(double R) {
  if (!(R > 1.0))
    throw std::invalid_argument("fan_surface: R must exceed 1");
  if (!(R <= 1e3))
    throw std::invalid_argument("fan_surface: R above 1e3 is not meshable");
  const double plane = 0.5;
  const double cy = std::sqrt(3.0) / 2.0 * R;
  const double half_angle = std::acos((cy - plane) / R);
  return {R, plane, Point2{0.0, cy}, R * std::sin(half_angle), half_angle};
}

MeasurementLine measurement_line(double a, double b, std::size_t n) {
  if (n < 2) throw std::invalid_argument("measurement_line: need n >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("measurement_line: need a > 0");
  MeasurementLine line{a, b, n, {}};
  line.points.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) / static_cast<double>(n - 1);
    line.points.push_back({a * (2.0 * u - 1.0), b});
  }
  return line;
}

SamplingGrid sampling_grid() {
  SamplingGrid grid;
  grid.x1_range = {-5.0, 5.0};
  grid.x2_range = {0.09, 0.9};
  grid.step_x1 = 0.1;
  grid.step_x2 = 0.09;
  grid.cols = 101;
  grid.rows = 10;
  grid.points.reserve(grid.cols * grid.rows);
  for (std::size_t r = 0; r < grid.rows; ++r)
    for (std::size_t c = 0; c < grid.cols; ++c)
      grid.points.push_back({(static_cast<double>(c) - 50.0) / 10.0,
                             9.0 * (static_cast<double>(r) + 1.0) / 100.0});
  return grid;
}

SamplingGrid sampling_grid(std::pair<double, double> x1_range, double step_x1,
                           std::pair<double, double> x2_range, double step_x2) {
  if (!(x1_range.second >= x1_range.first) ||
      !(x2_range.second >= x2_range.first))
    throw std::invalid_argument("sampling_grid: empty range");
  if (!(step_x1 > 0.0) || !(step_x2 > 0.0))
    throw std::invalid_argument("sampling_grid: steps must be positive");
  SamplingGrid grid;
  grid.x1_range = x1_range;
  grid.x2_range = x2_range;
  grid.step_x1 = step_x1;
  grid.step_x2 = step_x2;
  grid.cols = static_cast<std::size_t>(
                  std::floor((x1_range.second - x1_range.first) / step_x1 +
                             1e-9)) +
              1;
  grid.rows = static_cast<std::size_t>(
                  std::floor((x2_range.second - x2_range.first) / step_x2 +
                             1e-9)) +
              1;
  grid.points.reserve(grid.cols * grid.rows);
  for (std::size_t r = 0; r < grid.rows; ++r)
    for (std::size_t c = 0; c < grid.cols; ++c)
      grid.points.push_back(
          {x1_range.first + static_cast<double>(c) * step_x1,
           x2_range.first + static_cast<double>(r) * step_x2});
  return grid;
}

BoundaryMesh discretize(const SurfaceProfile& profile,
                        double nodes_per_wavelength,
                        std::pair<double, double> window,
                        const ElasticMedium& med) {
  check_density(nodes_per_wavelength);
  check_window(window, profile.truncation_halfwidth, "flat-onset points");

  double max_slope2 = 0.0;
  const int probes = 4096;
  for (int i = 0; i <= probes; ++i) {
    const double x = window.first +
                     (window.second - window.first) * i / probes;
    const double fp = profile.derivative(x);
    max_slope2 = std::max(max_slope2, fp * fp);
  }
  const double lambda_s = 2.0 * pi / med.ks;
  const double len = window.second - window.first;
  const std::size_t n = segment_count(len * std::sqrt(1.0 + max_slope2),
                                      lambda_s, nodes_per_wavelength);

  // second derivative of the height from its analytic slope
  const auto& fp = profile.derivative;
  auto fpp = [&fp](double x) {
    const double e = 1e-5;
    return (fp(x + e) - fp(x - e)) / (2.0 * e);
  };

  BoundaryMesh mesh;
  mesh.window = window;
  append_segment(
      mesh, window.first, window.second, n,
      [&](double t) { return Point2{t, profile.height(t)}; },
      [&](double t) { return Point2{1.0, fp(t)}; },
      [&](double t) { return Point2{0.0, fpp(t)}; });
  mesh.point = [height = profile.height, window](std::size_t k, double s) {
    if (k != 0) throw std::invalid_argument("BoundaryMesh::point: bad segment");
    const double t =
        window.first + (window.second - window.first) * grading(s).value;
    return Point2{t, height(t)};
  };
  return mesh;
}

BoundaryMesh discretize(const AuxiliarySurface& fan,
                        double nodes_per_wavelength,
                        std::pair<double, double> window,
                        const ElasticMedium& med) {
  check_density(nodes_per_wavelength);
  check_window(window, fan.chord_halfwidth, "arc chord");

  const double lambda_s = 2.0 * pi / med.ks;
  const double npw = nodes_per_wavelength;
  const double plane = fan.plane_height;
  const Point2 c = fan.arc_center;
  const double R = fan.R;
  const double am = fan.arc_halfangle;

  auto plane_x = [plane](double t) { return Point2{t, plane}; };
  auto plane_d1 = [](double) { return Point2{1.0, 0.0}; };
  auto plane_d2 = [](double) { return Point2{0.0, 0.0}; };
  auto arc_x = [c, R](double a) {
    return Point2{c.x1 + R * std::sin(a), c.x2 - R * std::cos(a)};
  };
  auto arc_d1 = [R](double a) { return Point2{R * std::cos(a), R * std::sin(a)}; };
  auto arc_d2 = [R](double a) { return Point2{-R * std::sin(a), R * std::cos(a)}; };

  BoundaryMesh mesh;
  mesh.window = window;
  const double left_len = -fan.chord_halfwidth - window.first;
  const double right_len = window.second - fan.chord_halfwidth;
  append_segment(mesh, window.first, -fan.chord_halfwidth,
                 segment_count(left_len, lambda_s, npw), plane_x, plane_d1,
                 plane_d2);
  append_segment(mesh, -am, am, segment_count(2.0 * am * R, lambda_s, npw),
                 arc_x, arc_d1, arc_d2);
  append_segment(mesh, fan.chord_halfwidth, window.second,
                 segment_count(right_len, lambda_s, npw), plane_x, plane_d1,
                 plane_d2);
  mesh.point = [plane_x, arc_x, window, fan, am](std::size_t k, double s) {
    const double g = grading(s).value;
    switch (k) {
      case 0:
        return plane_x(window.first +
                       (-fan.chord_halfwidth - window.first) * g);
      case 1:
        return arc_x(-am + 2.0 * am * g);
      case 2:
        return plane_x(fan.chord_halfwidth +
                       (window.second - fan.chord_halfwidth) * g);
      default:
        throw std::invalid_argument("BoundaryMesh::point: bad segment");
    }
  };
  return mesh;
}

BoundaryMesh discretize_closed(const SurfaceProfile& profile,
                               double nodes_per_wavelength,
                               std::pair<double, double> window,
                               const ElasticMedium& med) {
  check_density(nodes_per_wavelength);
  check_window(window, profile.truncation_halfwidth, "flat-onset points");
  if (std::abs(profile.height(window.first) -
               profile.height(window.second)) > 1e-10 ||
      std::abs(profile.derivative(window.first)) > 1e-10 ||
      std::abs(profile.derivative(window.second)) > 1e-10)
    throw std::invalid_argument(
        "discretize_closed: profile must be flat at the window ends");

  double min_h = profile.height(window.first);
  double max_speed = 1.0;
  const int probes = 4096;
  for (int i = 0; i <= probes; ++i) {
    const double x =
        window.first + (window.second - window.first) * i / probes;
    min_h = std::min(min_h, profile.height(x));
    const double fp = profile.derivative(x);
    max_speed = std::max(max_speed, std::sqrt(1.0 + fp * fp));
  }
  const double lambda_s = 2.0 * pi / med.ks;
  auto loop = std::make_shared<const ClosedLoop>(
      profile, window, 0.5 * lambda_s, min_h - 0.5 * lambda_s);

  const double spacing = lambda_s / (nodes_per_wavelength * max_speed);
  return periodic_mesh(loop, spacing, window);
}

BoundaryMesh discretize_closed(const AuxiliarySurface& fan,
                               double nodes_per_wavelength,
                               std::pair<double, double> window,
                               const ElasticMedium& med) {
  check_density(nodes_per_wavelength);
  check_window(window, fan.chord_halfwidth, "chord");
  if (std::abs(window.first + window.second) > 1e-12)
    throw std::invalid_argument(
        "discretize_closed: fan window must be symmetric");

  const double lambda_s = 2.0 * pi / med.ks;
  const double min_h = std::min(fan.plane_height, fan.arc_center.x2 - fan.R);
  auto loop = std::make_shared<const FanLoop>(fan, window, 0.5 * lambda_s,
                                              min_h - 0.5 * lambda_s);
  return periodic_mesh(loop, lambda_s / nodes_per_wavelength, window);
}

}  // namespace elsm
