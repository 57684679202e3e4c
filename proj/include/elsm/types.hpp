#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

// Basic value types shared by every layer: points and directions in the plane,
// 2-component complex field values, 2x2 complex tensors, and the elastic medium.

namespace elsm {

using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }
inline double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }

// Unit vector; constructor normalizes and rejects near-zero input.
struct Direction2 {
    double x1 = 0.0;
    double x2 = 1.0;

    Direction2() = default;
    Direction2(double a, double b) {
        const double n = std::hypot(a, b);
        if (!(n > 1e-14))
            throw std::invalid_argument("Direction2: vector too short to normalize");
        x1 = a / n;
        x2 = b / n;
    }
};

inline double dot(Direction2 n, Point2 a) { return n.x1 * a.x1 + n.x2 * a.x2; }

// 2-component complex vector (displacement value at a point).
struct Vec2c {
    complex u1{0.0, 0.0};
    complex u2{0.0, 0.0};

    complex& operator[](int i) { return i == 0 ? u1 : u2; }
    const complex& operator[](int i) const { return i == 0 ? u1 : u2; }
};

inline Vec2c operator+(Vec2c a, Vec2c b) { return {a.u1 + b.u1, a.u2 + b.u2}; }
inline Vec2c operator-(Vec2c a, Vec2c b) { return {a.u1 - b.u1, a.u2 - b.u2}; }
inline Vec2c operator*(complex s, Vec2c a) { return {s * a.u1, s * a.u2}; }
inline complex dot_real(Point2 p, Vec2c v) { return p.x1 * v.u1 + p.x2 * v.u2; }
inline double norm(Vec2c v) { return std::sqrt(std::norm(v.u1) + std::norm(v.u2)); }

// 2x2 complex tensor, row-major: m[i][j] = component i of the field produced by
// a unit excitation in direction j.
struct Mat2c {
    std::array<std::array<complex, 2>, 2> m{};

    complex& operator()(int i, int j) { return m[i][j]; }
    const complex& operator()(int i, int j) const { return m[i][j]; }

    static Mat2c identity() {
        Mat2c r;
        r(0, 0) = r(1, 1) = complex(1.0, 0.0);
        return r;
    }
};

inline Mat2c operator+(Mat2c a, const Mat2c& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) += b(i, j);
    return a;
}

inline Mat2c operator-(Mat2c a, const Mat2c& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) -= b(i, j);
    return a;
}

inline Mat2c operator*(complex s, Mat2c a) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) *= s;
    return a;
}

inline Vec2c operator*(const Mat2c& a, Vec2c v) {
    return {a(0, 0) * v.u1 + a(0, 1) * v.u2, a(1, 0) * v.u1 + a(1, 1) * v.u2};
}

inline Mat2c matmul(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

// Real rank-one tensor u v^T promoted to complex entries.
inline Mat2c outer(Point2 u, Point2 v) {
    Mat2c r;
    r(0, 0) = u.x1 * v.x1;
    r(0, 1) = u.x1 * v.x2;
    r(1, 0) = u.x2 * v.x1;
    r(1, 1) = u.x2 * v.x2;
    return r;
}

inline Mat2c transpose(const Mat2c& a) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(j, i);
    return r;
}

inline double frobenius(const Mat2c& a) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// Homogeneous isotropic elastic medium with unit density.
// Wavenumbers: ks = omega/sqrt(mu), kp = omega/sqrt(2 mu + lambda); kp < ks always.
struct ElasticMedium {
    double lambda = 0.0;
    double mu = 0.0;
    double omega = 0.0;
    double ks = 0.0;
    double kp = 0.0;
};

inline ElasticMedium make_medium(double lambda, double mu, double omega) {
    if (!(mu > 0.0)) throw std::invalid_argument("make_medium: mu must be > 0");
    if (!(lambda + mu > 0.0)) throw std::invalid_argument("make_medium: lambda + mu must be > 0");
    if (!(omega > 0.0)) throw std::invalid_argument("make_medium: omega must be > 0");
    ElasticMedium m;
    m.lambda = lambda;
    m.mu = mu;
    m.omega = omega;
    m.ks = omega / std::sqrt(mu);
    m.kp = omega / std::sqrt(2.0 * mu + lambda);
    return m;
}

}  // namespace elsm
