#ifndef GKP_SRC_FFT_HPP
#define GKP_SRC_FFT_HPP

#include <span>

#include "gkp/quadrature.hpp"

namespace gkp::detail {

/// In-place unnormalized DFT, X_m = sum_k x_k exp(sign * 2 pi i m k / N).
/// sign is -1 (forward) or +1 (backward). Thread-safe.
void dft_inplace(std::span<cplx> data, int sign);

/// exp(2 pi i * turns), reducing turns to [-1/2, 1/2] first.
inline cplx unit_phase(double turns) {
    return std::polar(1.0, 2.0 * kPi * (turns - std::nearbyint(turns)));
}

}  // namespace gkp::detail

#endif  // GKP_SRC_FFT_HPP
