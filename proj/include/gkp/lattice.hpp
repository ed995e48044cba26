#ifndef GKP_LATTICE_HPP
#define GKP_LATTICE_HPP

#include <vector>

#include "gkp/comb.hpp"

namespace gkp {

/// One delta spike of an ideal codeword.
struct LatticePoint {
    double position;
    int sign;
};

/// Ideal (delta-comb) codeword spikes, |s| <= cutoff:
///   bit 0, position: 2 alpha s
///   bit 1, position: 2 alpha (s - 1/2), s = 1-cutoff .. cutoff
///   bit 0, momentum: pi s / alpha
///   bit 1, momentum: pi s / alpha with sign (-1)^s
std::vector<LatticePoint> ideal_lattice(int bit, double alpha, Quadrature axis, int cutoff);

/// The n-iteration approximate codeword built directly, without running the
/// protocol: 2^n equal peaks at alpha(2s - 1 - 2^n), s = 1..2^n, for bit 1,
/// shifted by +alpha for bit 0. Normalized.
GaussianComb approximate_codeword(int bit, int iterations, double alpha, double width,
                                  Quadrature axis = Quadrature::position);

/// N in  psi = N / sqrt(2^n) * sum_s g(q - mu_s). Exact, close to 1 when width << alpha.
double codeword_normalization(int iterations, double alpha, double width);

/// Closed-form momentum wave function of the bit-1 position codeword,
///   (w / (2^n sqrt(pi)))^1/2 N exp(-(p w)^2 / 2) sin(2^n alpha p) / sin(alpha p),
/// with the removable singularities at p = k pi / alpha replaced by their
/// limit when |sin(alpha p)| < 1e-8.
double codeword_one_momentum(double p, int iterations, double alpha, double width, double normalization);

}  // namespace gkp

#endif  // GKP_LATTICE_HPP
