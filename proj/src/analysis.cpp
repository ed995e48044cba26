#include "gkp/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "gkp/errors.hpp"
#include "gkp/protocol.hpp"

namespace gkp {

namespace {

constexpr double kNormTolerance = 1e-9;

void require_normalized(const GridState& state) {
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) throw DomainError("grid state is not normalized");
}

// Cells of width `period` centred on (2m + parity) * period, m over the window.
std::vector<Interval> parity_cells(const GridSpec& spec, double period, int parity) {
    std::vector<Interval> cells;
    const double lo = spec.origin;
    const double hi = spec.origin + spec.extent();
    const auto first = static_cast<long>(std::floor(lo / period + 0.5)) - 1;
    const auto last = static_cast<long>(std::floor(hi / period + 0.5)) + 1;
    for (long m = first; m <= last; ++m) {
        if (((m % 2) + 2) % 2 != parity) continue;
        cells.push_back({(static_cast<double>(m) - 0.5) * period, (static_cast<double>(m) + 0.5) * period});
    }
    return cells;
}

// 15-point Gauss-Kronrod with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
double adaptive_gk15(const F& f, double a, double b, double tol, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = kKronrodWeights[7] * f(center);
    double gauss = kGaussWeights[3] * f(center);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[static_cast<std::size_t>(i)] * sum;
        if (i % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(i / 2)] * sum;
    }
    kronrod *= half;
    gauss *= half;
    if (depth <= 0 || std::abs(kronrod - gauss) <= std::max(tol, 1e-15 * std::abs(kronrod))) return kronrod;
    return adaptive_gk15(f, a, center, 0.5 * tol, depth - 1) + adaptive_gk15(f, center, b, 0.5 * tol, depth - 1);
}

}  // namespace

double position_error_prob(const GridState& state, double alpha, int bit) {
    if (state.axis() != Quadrature::position) throw DomainError("position error needs a position grid");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (bit != 0 && bit != 1) throw DomainError("logical bit must be 0 or 1");
    require_normalized(state);
    const auto cells = parity_cells(state.spec(), alpha, bit == 0 ? 1 : 0);
    return density_mass(state, cells);
}

double position_error_bound(double width, double alpha) {
    if (!(width > 0.0) || !(alpha > 0.0)) throw DomainError("width and alpha must be positive");
    const double ratio = alpha / width;
    return 4.0 * width / (std::sqrt(kPi) * alpha) * std::exp(-ratio * ratio / 8.0);
}

double momentum_error_prob(const GridState& zero, const GridState& one, double alpha) {
    if (zero.axis() != Quadrature::momentum || one.axis() != Quadrature::momentum) {
        throw DomainError("momentum error needs momentum grids");
    }
    if (!(zero.spec() == one.spec())) throw DomainError("momentum grids differ");
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    require_normalized(zero);
    require_normalized(one);
    std::vector<cplx> diff(zero.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = zero[k] - one[k];
    GridState minus(zero.spec(), std::move(diff));
    if (!(minus.norm_squared() > 1e-24)) throw DomainError("difference state is zero");
    minus = normalize(minus);
    const auto cells = parity_cells(minus.spec(), kPi / alpha, 0);
    return density_mass(minus, cells);
}

double momentum_error_bound(int iterations) {
    if (iterations < 1) throw DomainError("momentum bound needs at least one iteration");
    return 1.0 / (kPi * std::ldexp(2.0, iterations));
}

ErfTail erf_tail(double x) {
    if (!(x > 0.0)) throw DomainError("erf tail needs x > 0");
    // int_x^inf e^{-t^2} dt = e^{-x^2} int_0^inf e^{-2xs - s^2} ds; the scaled
    // integrand is negligible once 2xs + s^2 > 750.
    const auto scaled = [x](double s) { return std::exp(-2.0 * x * s - s * s); };
    const double upper = -x + std::sqrt(x * x + 750.0);
    const double guess = 1.0 / (2.0 * x);
    const double integral = adaptive_gk15(scaled, 0.0, upper, 1e-15 * guess, 30);
    const double prefactor = std::exp(-x * x);
    return {prefactor * integral, prefactor / (2.0 * x), x * x * (1.0 - 2.0 * x * integral)};
}

double mean_energy(const GridState& state) {
    require_normalized(state);
    const GridState other = fourier(state);
    const auto second_moment = [](const GridState& g) {
        double sum = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double x = g.spec().coordinate(k);
            sum += std::norm(g[k]) * x * x;
        }
        return sum * g.spec().spacing;
    };
    return 0.5 * (second_moment(state) + second_moment(other));
}

ErrorReport analyze(double alpha, double delta, int iterations) {
    ProtocolConfig config;
    config.alpha = alpha;
    config.delta = delta;
    config.iterations = iterations;
    config.bit = 1;
    validate(config);
    if (iterations < 1) throw DomainError("analysis needs at least one iteration");

    const GaussianComb one = prepare(config).state;
    const GaussianComb zero = displace(one, alpha, Quadrature::position);
    const GridSpec spec = default_grid_spec(alpha, iterations);
    const GridState one_q = to_grid(one, spec);
    const GridState zero_q = to_grid(zero, spec);

    ErrorReport report{};
    report.alpha = alpha;
    report.delta = delta;
    report.iterations = iterations;
    report.position_error = position_error_prob(normalize(zero_q), alpha, 0);
    report.position_bound = position_error_bound(delta, alpha);
    report.momentum_error = momentum_error_prob(normalize(fourier(zero_q)), normalize(fourier(one_q)), alpha);
    report.momentum_bound = momentum_error_bound(iterations);
    report.overlap01 = std::abs(overlap(zero, one));
    report.mean_energy = mean_energy(normalize(one_q));
    return report;
}

}  // namespace gkp
