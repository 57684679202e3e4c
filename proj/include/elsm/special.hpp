#pragma once

#include "elsm/types.hpp"

// Hankel functions of the first kind, orders 0 and 1, for real positive
// argument. Relative accuracy is better than 1e-12 over (1e-8, 1e4]; the
// implementation switches from an ascending series (double-double arithmetic)
// to the large-argument expansion (long double) at x = 15.

namespace elsm {

struct Hankel01 {
    complex h0;  // H^(1)_0(x)
    complex h1;  // H^(1)_1(x)
};

// Both orders in one call; this is the form the layer-potential kernels use.
Hankel01 hankel1_01(double x);

// Single order, with argument validation per the public contract.
complex hankel1(int order, double x);

namespace detail {

// Branch internals, exposed so tests can probe the overlap window.
Hankel01 hankel01_series(double x);      // ascending series, used for x < 15
Hankel01 hankel01_asymptotic(double x);  // large-argument expansion, x >= 15

inline constexpr double hankel_crossover = 15.0;

}  // namespace detail

}  // namespace elsm
