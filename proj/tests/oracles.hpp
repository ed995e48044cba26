// Reference computations for tests. Deliberately naive: dense composite
// Simpson quadrature of analytic integrands, no FFTs, no library code.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

template <class F>
auto simpson(F&& f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    auto sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * (h / 3.0);
}

inline double peak(double x, double w) { return std::exp(-x * x / (2 * w * w)) / std::sqrt(w * std::sqrt(pi)); }

// Equal-weight bit-1 codeword sum_s g(q - alpha(2s - 1 - 2^n)), unnormalized.
inline double codeword_one(double q, int n, double alpha, double w) {
    const int count = 1 << n;
    double sum = 0.0;
    for (int s = 1; s <= count; ++s) sum += peak(q - alpha * (2 * s - 1 - count), w);
    return sum;
}

}  // namespace oracle
