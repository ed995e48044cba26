#include "gkp/grid.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"
#include "gkp/errors.hpp"

namespace gkp {

namespace {

constexpr double kTruncationMass = 1e-12;
constexpr double kPeakMarginWidths = 8.0;
constexpr double kAlignmentTolerance = 1e-9;

void require_same_spec(const GridState& a, const GridState& b) {
    if (!(a.spec() == b.spec())) throw DomainError("grid states have different grid specs");
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

GridState::GridState(GridSpec spec, std::vector<cplx> amplitudes)
    : spec_(spec), amplitudes_(std::move(amplitudes)) {
    if (!(spec_.spacing > 0.0) || !std::isfinite(spec_.spacing)) throw DomainError("grid spacing must be positive");
    if (!std::isfinite(spec_.origin)) throw DomainError("grid origin must be finite");
    if (spec_.size != amplitudes_.size()) throw DomainError("grid size does not match amplitude count");
    if (!is_power_of_two(spec_.size)) throw DomainError("grid length must be a power of two");
}

double GridState::norm_squared() const noexcept {
    double sum = 0.0;
    for (const cplx& a : amplitudes_) sum += std::norm(a);
    return sum * spec_.spacing;
}

GridSpec default_grid_spec(double alpha, int iterations, Quadrature axis) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (iterations < 0 || iterations > 24) throw DomainError("iteration count out of range");
    const double spacing = alpha / 64.0;
    const double cells = 2.0 * 64.0 * (std::ldexp(1.0, iterations) + 6.0);
    std::size_t size = 4096;
    while (static_cast<double>(size) < cells) size *= 2;
    return GridSpec{axis, -static_cast<double>(size / 2) * spacing, spacing, size};
}

GridState to_grid(const GaussianComb& comb, const GridSpec& spec) {
    std::vector<cplx> amps(spec.size);
    for (std::size_t k = 0; k < spec.size; ++k) amps[k] = eval(comb, spec.coordinate(k), spec.axis);
    GridState grid(spec, std::move(amps));

    double lo = 0.0;
    double hi = 0.0;
    if (spec.axis == comb.axis()) {
        lo = comb.peaks().front().center - kPeakMarginWidths * comb.width();
        hi = comb.peaks().back().center + kPeakMarginWidths * comb.width();
    } else {
        lo = comb.dual_shift() - kPeakMarginWidths / comb.width();
        hi = comb.dual_shift() + kPeakMarginWidths / comb.width();
    }
    if (lo < spec.origin || hi > spec.origin + spec.extent()) {
        throw TruncationError("grid window does not cover the comb",
                              std::max(0.0, comb.norm_squared() - grid.norm_squared()));
    }
    return grid;
}

GridState fourier(const GridState& state, std::optional<double> dual_origin) {
    const GridSpec& in = state.spec();
    const std::size_t n = in.size;
    const double nd = static_cast<double>(n);
    const double dual_spacing = 2.0 * kPi / (nd * in.spacing);
    const double p0 = dual_origin.value_or(-static_cast<double>(n / 2) * dual_spacing);
    // Kernel exp(i s p x); s = -1 going to momentum, +1 coming back.
    const int s = in.axis == Quadrature::position ? -1 : 1;
    const double c = p0 / dual_spacing;
    const double t = in.origin / in.spacing;

    std::vector<cplx> work(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t k = 0; k < n; ++k) {
        work[k] *= detail::unit_phase(s * std::fmod(c * static_cast<double>(k), nd) / nd);
    }
    detail::dft_inplace(work, s);
    const cplx global = detail::unit_phase(s * std::fmod(c * t, nd) / nd) * (in.spacing / std::sqrt(2.0 * kPi));
    for (std::size_t m = 0; m < n; ++m) {
        work[m] *= global * detail::unit_phase(s * std::fmod(static_cast<double>(m) * t, nd) / nd);
    }
    return GridState(GridSpec{dual(in.axis), p0, dual_spacing, n}, std::move(work));
}

GridState displace(const GridState& state, double amount, Quadrature axis) {
    const GridSpec& spec = state.spec();
    if (amount == 0.0) return state;
    std::vector<cplx> out(state.size());
    if (axis != spec.axis) {
        // Momentum kick on a position grid is exp(+ibq); a position shift on a
        // momentum grid is exp(-iap).
        const double sign = spec.axis == Quadrature::position ? 1.0 : -1.0;
        for (std::size_t k = 0; k < state.size(); ++k) {
            out[k] = state[k] * std::polar(1.0, sign * amount * spec.coordinate(k));
        }
        return GridState(spec, std::move(out));
    }
    const double cells = amount / spec.spacing;
    const double rounded = std::nearbyint(cells);
    if (std::abs(cells - rounded) > kAlignmentTolerance * std::max(1.0, std::abs(cells))) {
        throw AlignmentError("grid displacement is not a whole number of cells");
    }
    const auto shift = static_cast<std::ptrdiff_t>(rounded);
    const auto n = static_cast<std::ptrdiff_t>(state.size());
    double lost = 0.0;
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        const std::ptrdiff_t dest = k + shift;
        if (dest >= 0 && dest < n) {
            out[static_cast<std::size_t>(dest)] = state[static_cast<std::size_t>(k)];
        } else {
            lost += std::norm(state[static_cast<std::size_t>(k)]) * spec.spacing;
        }
    }
    if (lost > kTruncationMass) throw TruncationError("displacement pushes the state out of the grid", lost);
    return GridState(spec, std::move(out));
}

GridState scale(const GridState& state, cplx factor) {
    std::vector<cplx> out(state.amplitudes().begin(), state.amplitudes().end());
    for (cplx& a : out) a *= factor;
    return GridState(state.spec(), std::move(out));
}

GridState normalize(const GridState& state) {
    const double n2 = state.norm_squared();
    if (!(n2 > 0.0)) throw DegenerateError("cannot normalize a zero grid state");
    return scale(state, 1.0 / std::sqrt(n2));
}

cplx inner_product(const GridState& a, const GridState& b) {
    require_same_spec(a, b);
    cplx sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::conj(a[k]) * b[k];
    return sum * a.spec().spacing;
}

double max_abs_difference(const GridState& a, const GridState& b) {
    require_same_spec(a, b);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

double l2_distance(const GridState& a, const GridState& b) {
    require_same_spec(a, b);
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += std::norm(a[k] - b[k]);
    return std::sqrt(sum * a.spec().spacing);
}

std::vector<double> density(const GridState& state) {
    std::vector<double> out(state.size());
    for (std::size_t k = 0; k < state.size(); ++k) out[k] = std::norm(state[k]);
    return out;
}

double density_mass(const GridState& state, std::span<const Interval> intervals) {
    const GridSpec& spec = state.spec();
    const std::size_t n = spec.size;
    const double x0 = spec.origin;
    const double x1 = x0 + spec.extent();

    // Trigonometric interpolant sampled kUpsample times finer. Integrating
    // locally keeps tiny masses accurate relative to themselves instead of
    // relative to the total mass.
    constexpr std::size_t kUpsample = 8;
    const std::size_t m = kUpsample * n;
    std::vector<cplx> coeffs(state.amplitudes().begin(), state.amplitudes().end());
    detail::dft_inplace(coeffs, -1);
    std::vector<cplx> fine(m, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t dest = j < n / 2 ? j : j + m - n;
        fine[dest] = coeffs[j] / static_cast<double>(n);
    }
    detail::dft_inplace(fine, 1);
    const double h = spec.spacing / static_cast<double>(kUpsample);

    // Degree-7 Lagrange stencil per fine cell; |psi|^2 is then a degree-14
    // polynomial there and 8-point Gauss-Legendre integrates it exactly.
    static constexpr double kNodes[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                         0.9602898564975363};
    static constexpr double kWeights[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                           0.1012285362903763};
    const auto mi = static_cast<long>(m);
    auto cell_mass = [&](long cell, double ta, double tb) {
        // ta, tb: positions inside the cell in units of h, 0 <= ta < tb <= 1.
        cplx stencil[8];
        for (int s = 0; s < 8; ++s) stencil[s] = fine[static_cast<std::size_t>((((cell - 3 + s) % mi) + mi) % mi)];
        const double mid = 0.5 * (ta + tb);
        const double half = 0.5 * (tb - ta);
        double acc = 0.0;
        for (int g = 0; g < 8; ++g) {
            const double t = mid + (g < 4 ? -1.0 : 1.0) * half * kNodes[g % 4] + 3.0;
            cplx v = 0.0;
            for (int s = 0; s < 8; ++s) {
                double w = 1.0;
                for (int r = 0; r < 8; ++r) {
                    if (r != s) w *= (t - r) / static_cast<double>(s - r);
                }
                v += w * stencil[s];
            }
            acc += kWeights[g % 4] * std::norm(v);
        }
        return acc * half * h;
    };

    double total = 0.0;
    for (const Interval& iv : intervals) {
        const double a = std::max(iv.lower, x0);
        const double b = std::min(iv.upper, x1);
        if (!(b > a)) continue;
        const double ua = (a - x0) / h;
        const double ub = (b - x0) / h;
        const auto first = static_cast<long>(std::floor(ua));
        const auto last = std::min(static_cast<long>(std::ceil(ub)) - 1, mi - 1);
        for (long c = first; c <= last; ++c) {
            const double ta = std::max(ua - static_cast<double>(c), 0.0);
            const double tb = std::min(ub - static_cast<double>(c), 1.0);
            if (tb > ta) total += cell_mass(c, ta, tb);
        }
    }
    return total;
}

}  // namespace gkp
