#ifndef GKP_COMB_HPP
#define GKP_COMB_HPP

#include <optional>
#include <vector>

#include "gkp/quadrature.hpp"

namespace gkp {

struct Peak {
    double center;
    cplx coeff;
};

/// Exact superposition of equal-width Gaussian peaks along one quadrature.
///
/// Along its own axis x the wave function is
///
///     psi(x) = exp(i s D x) * sum_j c_j g(x - mu_j, width)
///
/// where g(x, w) = exp(-x^2 / 2w^2) / sqrt(w sqrt(pi)), D is the common
/// displacement applied along the conjugate quadrature (`dual_shift`) and
/// s = +1 for position combs, -1 for momentum combs. D is zero unless the
/// comb has been displaced along its dual axis.
///
/// Peaks are kept sorted by center; peaks closer than 1e-9 * width are merged
/// and coefficients below 1e-300 in magnitude are pruned. The squared norm is
/// computed once at construction.
class GaussianComb {
public:
    GaussianComb(double width, Quadrature axis, std::vector<Peak> peaks, double dual_shift = 0.0);

    double width() const noexcept { return width_; }
    Quadrature axis() const noexcept { return axis_; }
    const std::vector<Peak>& peaks() const noexcept { return peaks_; }
    double dual_shift() const noexcept { return dual_shift_; }
    double norm_squared() const noexcept { return norm_squared_; }

private:
    double width_;
    Quadrature axis_;
    std::vector<Peak> peaks_;
    double dual_shift_;
    double norm_squared_;
};

/// g(x, width): the normalized Gaussian used as the peak profile.
double gaussian(double x, double width);

/// Squeezed vacuum: one unit peak at the origin. width = 1 is the ground state.
GaussianComb squeezed_vacuum(double width, Quadrature axis = Quadrature::position);

/// Displacement along either quadrature. Along the comb's own axis this moves
/// the centers (psi(x) -> psi(x - amount)); along the dual axis it multiplies
/// by the matching plane-wave phase.
GaussianComb displace(const GaussianComb& comb, double amount, Quadrature axis);

/// <a|b>. Requires equal widths and the same axis. Conjugate symmetric bit for bit.
cplx overlap(const GaussianComb& a, const GaussianComb& b);

GaussianComb scale(const GaussianComb& comb, cplx factor);
GaussianComb normalize(const GaussianComb& comb);

/// wa * a + wb * b, or nullopt when every coefficient cancels.
std::optional<GaussianComb> superpose(cplx wa, const GaussianComb& a, cplx wb, const GaussianComb& b);

/// L2 norm of a - b, computed from coefficient differences so that nearly
/// identical states do not lose precision.
double distance(const GaussianComb& a, const GaussianComb& b);

/// Rotates the global phase so the leftmost peak coefficient is positive real.
GaussianComb with_canonical_phase(const GaussianComb& comb);

/// Wave-function amplitude at x along `axis` (the comb's own axis or its dual,
/// the latter through the analytic Fourier transform of each peak).
cplx eval(const GaussianComb& comb, double x, Quadrature axis);

}  // namespace gkp

#endif  // GKP_COMB_HPP
