#ifndef GKP_GRID_HPP
#define GKP_GRID_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gkp/comb.hpp"
#include "gkp/quadrature.hpp"

namespace gkp {

/// Uniform sampling x_k = origin + k * spacing, k = 0 .. size-1.
struct GridSpec {
    Quadrature axis = Quadrature::position;
    double origin = 0.0;
    double spacing = 1.0;
    std::size_t size = 0;

    double coordinate(std::size_t k) const noexcept { return origin + static_cast<double>(k) * spacing; }
    double extent() const noexcept { return static_cast<double>(size) * spacing; }

    bool operator==(const GridSpec&) const = default;
};

/// Sampled wave function on a power-of-two grid. Norms are Riemann sums,
/// sum |psi_k|^2 * spacing.
class GridState {
public:
    GridState(GridSpec spec, std::vector<cplx> amplitudes);

    const GridSpec& spec() const noexcept { return spec_; }
    Quadrature axis() const noexcept { return spec_.axis; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    const cplx& operator[](std::size_t k) const noexcept { return amplitudes_[k]; }
    double norm_squared() const noexcept;

private:
    GridSpec spec_;
    std::vector<cplx> amplitudes_;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Grid centered on zero with spacing alpha/64 wide enough to hold the
/// n-iteration codewords, i.e. at least [-alpha(2^n+6), alpha(2^n+6)), and
/// never shorter than 4096 points.
GridSpec default_grid_spec(double alpha, int iterations, Quadrature axis = Quadrature::position);

/// Pointwise evaluation of a comb on `spec` (own axis or dual axis). Throws
/// TruncationError if the window does not cover 8 peak widths beyond the
/// outermost peaks.
GridState to_grid(const GaussianComb& comb, const GridSpec& spec);

/// Continuous Fourier transform sampled on the dual grid,
/// psi~(p) = (2 pi)^-1/2 int psi(q) e^{-ipq} dq (and the inverse for momentum
/// input). The dual grid has spacing 2 pi / (size * spacing) and, unless
/// given, origin -size/2 * dual spacing. Exactly unitary.
GridState fourier(const GridState& state, std::optional<double> dual_origin = std::nullopt);

/// Same contract as the comb overload. Along the grid's own axis the amount
/// must be a whole number of cells (AlignmentError otherwise); mass pushed
/// out of the window raises TruncationError.
GridState displace(const GridState& state, double amount, Quadrature axis);

GridState normalize(const GridState& state);
GridState scale(const GridState& state, cplx factor);

/// sum conj(a_k) b_k * spacing; grids must share a spec.
cplx inner_product(const GridState& a, const GridState& b);
double max_abs_difference(const GridState& a, const GridState& b);
double l2_distance(const GridState& a, const GridState& b);

std::vector<double> density(const GridState& state);

struct Interval {
    double lower;
    double upper;
};

/// Integral of |psi|^2 over a union of disjoint intervals (clipped to the
/// window). The grid is treated as samples of its band-limited periodic
/// interpolant, whose density is integrated cell by cell on an 8x finer
/// grid. Small masses stay accurate relative to themselves.
double density_mass(const GridState& state, std::span<const Interval> intervals);

}  // namespace gkp

#endif  // GKP_GRID_HPP
