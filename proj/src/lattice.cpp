#include "gkp/lattice.hpp"

#include <cmath>

#include "gkp/errors.hpp"

namespace gkp {

std::vector<LatticePoint> ideal_lattice(int bit, double alpha, Quadrature axis, int cutoff) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (cutoff < 1) throw DomainError("lattice cutoff must be at least 1");
    if (bit != 0 && bit != 1) throw DomainError("logical bit must be 0 or 1");
    std::vector<LatticePoint> out;
    if (axis == Quadrature::position) {
        if (bit == 0) {
            for (int s = -cutoff; s <= cutoff; ++s) out.push_back({2.0 * alpha * s, 1});
        } else {
            for (int s = 1 - cutoff; s <= cutoff; ++s) out.push_back({2.0 * alpha * (s - 0.5), 1});
        }
    } else {
        for (int s = -cutoff; s <= cutoff; ++s) {
            const int sign = (bit == 1 && (s % 2 != 0)) ? -1 : 1;
            out.push_back({kPi * s / alpha, sign});
        }
    }
    return out;
}

GaussianComb approximate_codeword(int bit, int iterations, double alpha, double width, Quadrature axis) {
    if (bit != 0 && bit != 1) throw DomainError("logical bit must be 0 or 1");
    if (iterations < 0 || iterations > 24) throw DomainError("iteration count out of range");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    const long count = 1L << iterations;
    const double offset = bit == 0 ? alpha : 0.0;
    std::vector<Peak> peaks;
    peaks.reserve(static_cast<std::size_t>(count));
    if (iterations == 0) {
        peaks.push_back({offset, 1.0});
    } else {
        for (long s = 1; s <= count; ++s) {
            peaks.push_back({alpha * static_cast<double>(2 * s - 1 - count) + offset, 1.0});
        }
    }
    return normalize(GaussianComb(width, axis, std::move(peaks)));
}

double codeword_normalization(int iterations, double alpha, double width) {
    // The normalized codeword's common coefficient is N / sqrt(2^n).
    const double coeff = std::abs(approximate_codeword(1, iterations, alpha, width).peaks().front().coeff);
    return coeff * std::sqrt(std::ldexp(1.0, iterations));
}

double codeword_one_momentum(double p, int iterations, double alpha, double width, double normalization) {
    const double count = std::ldexp(1.0, iterations);
    const double prefactor = std::sqrt(width / (count * std::sqrt(kPi))) * normalization *
                             std::exp(-(p * width) * (p * width) / 2.0);
    const double denom = std::sin(alpha * p);
    double ratio = 0.0;
    if (std::abs(denom) < 1e-8) {
        // sin(M x)/sin(x) -> M (-1)^{(M-1) k} at x = k pi.
        const long k = std::lround(alpha * p / kPi);
        const long m = 1L << iterations;
        ratio = ((m - 1) * k) % 2 == 0 ? count : -count;
    } else {
        ratio = std::sin(count * alpha * p) / denom;
    }
    return prefactor * ratio;
}

}  // namespace gkp
