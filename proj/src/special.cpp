#include "elsm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace elsm {
namespace {

constexpr long double pi_l = 3.141592653589793238462643383279502884197L;
constexpr long double euler_l = 0.577215664901532860606512090082402431042L;

// Double-double arithmetic (Dekker splitting, no FMA dependency). The
// ascending series below cancels through terms as large as exp(x), so the
// partial sums are carried at ~31 significant digits.
struct dd {
    double hi, lo;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline void veltkamp_split(double a, double& h, double& l) {
    double t = 134217729.0 * a;
    h = t - (t - a);
    l = a - h;
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double ah, al, bh, bl;
    veltkamp_split(a, ah, al);
    veltkamp_split(b, bh, bl);
    return {p, ((ah * bh - p) + ah * bl + al * bh) + al * bl};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_sub(dd a, dd b) { return dd_add(a, {-b.hi, -b.lo}); }

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div_d(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    dd s = two_sum(a.hi, -p.hi);
    double q2 = (s.hi + (s.lo + (a.lo - p.lo))) / b;
    return quick_two_sum(q1, q2);
}

inline dd dd_from_ld(long double v) {
    double h = static_cast<double>(v);
    return {h, static_cast<double>(v - static_cast<long double>(h))};
}

inline double dd_value(dd a) { return a.hi + a.lo; }

}  // namespace

namespace detail {

Hankel01 hankel01_series(double x) {
    const dd q = two_prod(0.5 * x, 0.5 * x);  // (x/2)^2, exact

    dd t0 = {1.0, 0.0};  // (-1)^k q^k / (k!)^2
    dd t1 = {1.0, 0.0};  // (-1)^k q^k / (k!(k+1)!)
    dd j0 = {1.0, 0.0};
    dd s1 = {1.0, 0.0};  // J1 = (x/2) * s1
    dd w0 = {0.0, 0.0};  // -sum_{k>=1} H_k t0_k
    dd v1 = {1.0, 0.0};  // sum_{k>=0} (H_k + H_{k+1}) t1_k
    dd hk = {1.0, 0.0};  // H_k for the current k (starts at H_1)

    const double kmin = 0.5 * x + 2.0;
    for (int k = 1; k <= 300; ++k) {
        const double kk = static_cast<double>(k);
        t0 = dd_div_d(dd_mul(t0, q), -kk * kk);
        t1 = dd_div_d(dd_mul(t1, q), -kk * (kk + 1.0));
        const dd hk1 = dd_add(hk, dd_div_d({1.0, 0.0}, kk + 1.0));
        j0 = dd_add(j0, t0);
        s1 = dd_add(s1, t1);
        w0 = dd_sub(w0, dd_mul(hk, t0));
        v1 = dd_add(v1, dd_mul(dd_add(hk, hk1), t1));
        hk = hk1;
        if (kk > kmin && std::fabs(t0.hi) < 1e-27 && std::fabs(t1.hi) < 1e-27) break;
    }

    const long double xl = static_cast<long double>(x);
    const dd L = dd_from_ld(logl(0.5L * xl) + euler_l);  // ln(x/2) + gamma
    const dd two_over_pi = dd_from_ld(2.0L / pi_l);
    const dd j1 = dd_mul_d(s1, 0.5 * x);

    const dd y0 = dd_mul(two_over_pi, dd_add(dd_mul(L, j0), w0));
    dd y1 = dd_mul(two_over_pi, dd_mul(L, j1));
    y1 = dd_sub(y1, dd_from_ld(2.0L / (pi_l * xl)));
    y1 = dd_sub(y1, dd_mul(v1, dd_from_ld(xl / (2.0L * pi_l))));

    return {complex(dd_value(j0), dd_value(y0)), complex(dd_value(j1), dd_value(y1))};
}

Hankel01 hankel01_asymptotic(double x) {
    const long double xl = static_cast<long double>(x);
    const long double xi = 1.0L / xl;
    const long double pref = sqrtl(2.0L / (pi_l * xl));

    Hankel01 out;
    for (int nu = 0; nu <= 1; ++nu) {
        // S = sum_k i^k a_k(nu) / x^k, truncated at the smallest term.
        long double sre = 1.0L, sim = 0.0L;
        long double tau = 1.0L;
        long double prev = 1e30L;
        for (int k = 1; k <= 400; ++k) {
            const long double num =
                static_cast<long double>(4 * nu * nu) -
                static_cast<long double>((2 * k - 1)) * static_cast<long double>((2 * k - 1));
            tau *= num * xi / (8.0L * static_cast<long double>(k));
            const long double mag = fabsl(tau);
            if (mag >= prev) break;
            prev = mag;
            switch (k & 3) {
                case 0: sre += tau; break;
                case 1: sim += tau; break;
                case 2: sre -= tau; break;
                case 3: sim -= tau; break;
            }
            if (mag < 1e-21L) break;
        }
        const long double chi = xl - static_cast<long double>(2 * nu + 1) * (pi_l * 0.25L);
        const long double c = cosl(chi), s = sinl(chi);
        const complex h(static_cast<double>(pref * (c * sre - s * sim)),
                        static_cast<double>(pref * (s * sre + c * sim)));
        (nu == 0 ? out.h0 : out.h1) = h;
    }
    return out;
}

}  // namespace detail

Hankel01 hankel1_01(double x) {
    if (!(x > 0.0)) throw std::domain_error("hankel1_01: requires x > 0");
    return x < detail::hankel_crossover ? detail::hankel01_series(x)
                                        : detail::hankel01_asymptotic(x);
}

complex hankel1(int order, double x) {
    if (order != 0 && order != 1)
        throw std::invalid_argument("hankel1: order must be 0 or 1");
    if (!(x > 0.0)) throw std::domain_error("hankel1: requires x > 0");
    const Hankel01 h = hankel1_01(x);
    return order == 0 ? h.h0 : h.h1;
}

}  // namespace elsm
