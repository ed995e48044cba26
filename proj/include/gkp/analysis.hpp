#ifndef GKP_ANALYSIS_HPP
#define GKP_ANALYSIS_HPP

#include "gkp/grid.hpp"

namespace gkp {

/// Probability that a position measurement of a logical-`bit` state lands in
/// a cell of the other parity: cells [(m - 1/2) alpha, (m + 1/2) alpha), odd m
/// being wrong for bit 0 and even m for bit 1. Requires a normalized
/// position grid (1e-9).
double position_error_prob(const GridState& state, double alpha, int bit = 0);

/// (4 w / (sqrt(pi) alpha)) exp(-(alpha / w)^2 / 8); independent of n.
double position_error_bound(double width, double alpha);

/// Probability that the normalized difference (|0~> - |1~>) / ||.|| is found
/// in a momentum cell of width pi/alpha centred on an even multiple of
/// pi/alpha. Inputs are normalized momentum grids with a common spec.
double momentum_error_prob(const GridState& zero, const GridState& one, double alpha);

/// 1 / (pi 2^{n+1}).
double momentum_error_bound(int iterations);

struct ErfTail {
    double exact;       ///< int_x^inf exp(-t^2) dt by adaptive quadrature
    double asymptotic;  ///< exp(-x^2) / (2x)
    double fitted_c;    ///< C in exact = asymptotic (1 - C / x^2)
};

/// Tail of the Gaussian integral and its leading asymptotic term. x > 0.
ErfTail erf_tail(double x);

/// <(q^2 + p^2) / 2> of a normalized grid state (either quadrature).
double mean_energy(const GridState& state);

struct ErrorReport {
    double alpha;
    double delta;
    int iterations;
    double position_error;
    double position_bound;
    double momentum_error;
    double momentum_bound;
    double overlap01;    ///< |<0~|1~>|
    double mean_energy;  ///< of the protocol output |1~_n>
};

/// Builds |0~_n>, |1~_n> by the postselected protocol on the default grid and
/// evaluates every quantity above.
ErrorReport analyze(double alpha, double delta, int iterations);

}  // namespace gkp

#endif  // GKP_ANALYSIS_HPP
