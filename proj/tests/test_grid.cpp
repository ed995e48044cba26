#include <gtest/gtest.h>

#include <random>

#include "gkp/errors.hpp"
#include "gkp/grid.hpp"
#include "gkp/io.hpp"
#include "gkp/lattice.hpp"
#include "gkp/protocol.hpp"
#include "oracles.hpp"

using namespace gkp;

namespace {

const double kAlpha = std::sqrt(kPi / 2.0);

GridSpec window(double lo, double hi, std::size_t size, Quadrature axis = Quadrature::position) {
    return GridSpec{axis, lo, (hi - lo) / static_cast<double>(size), size};
}

std::vector<std::size_t> local_maxima(const GridState& g, double floor) {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k + 1 < g.size(); ++k) {
        const double d = std::norm(g[k]);
        if (d > floor && d > std::norm(g[k - 1]) && d >= std::norm(g[k + 1])) out.push_back(k);
    }
    return out;
}

}  // namespace

TEST(Grid, GroundStateNorm) {
    const GridState g = to_grid(squeezed_vacuum(1.0), window(-16, 16, 1024));
    EXPECT_NEAR(g.norm_squared(), 1.0, 1e-10);
}

TEST(Grid, RejectsNonPowerOfTwo) {
    EXPECT_THROW(GridState(window(-1, 1, 6), std::vector<cplx>(6)), DomainError);
    EXPECT_THROW(GridState(window(-1, 1, 8), std::vector<cplx>(4)), DomainError);
}

TEST(Grid, CodewordDensityPeaks) {
    const GaussianComb one = approximate_codeword(1, 3, kAlpha, 0.15);
    const GridSpec spec = default_grid_spec(kAlpha, 3);
    const GridState g = to_grid(one, spec);
    const auto peaks = local_maxima(g, 1e-3);
    ASSERT_EQ(peaks.size(), 8u);
    for (int s = 1; s <= 8; ++s) {
        EXPECT_NEAR(spec.coordinate(peaks[s - 1]), kAlpha * (2 * s - 9), 0.5 * spec.spacing);
    }
}

TEST(Grid, TruncationReported) {
    const GaussianComb one = approximate_codeword(1, 3, kAlpha, 0.15);
    try {
        to_grid(one, window(-4, 4, 512));
        FAIL() << "expected TruncationError";
    } catch (const TruncationError& e) {
        EXPECT_GT(e.lost_mass(), 0.3);
    }
}

TEST(Grid, MatchesPointwiseEval) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 10; ++i) {
        const GaussianComb c(0.3, Quadrature::position, {{u(rng), {u(rng), u(rng)}}, {2 + u(rng), 1.0}}, u(rng));
        const GridState g = to_grid(c, window(-8, 8, 512));
        double worst = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double q = g.spec().coordinate(k);
            worst = std::max(worst, std::abs(g[k] - eval(c, q, Quadrature::position)));
        }
        EXPECT_LT(worst, 1e-10);
    }
}

TEST(Fourier, GroundStateSelfDual) {
    const GridState p = fourier(to_grid(squeezed_vacuum(1.0), window(-16, 16, 1024)));
    EXPECT_EQ(p.axis(), Quadrature::momentum);
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double x = p.spec().coordinate(k);
        ASSERT_LT(std::abs(p[k] - std::pow(kPi, -0.25) * std::exp(-x * x / 2)), 1e-10);
    }
}

TEST(Fourier, SqueezedWidthReciprocal) {
    const double w = 0.15;
    const GridState p = fourier(to_grid(squeezed_vacuum(w), window(-4, 4, 1024)));
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double x = p.spec().coordinate(k);
        // Gaussian of width 1/w in momentum.
        ASSERT_LT(std::abs(p[k] - oracle::peak(x, 1.0 / w)), 1e-10);
    }
}

TEST(Fourier, CodewordMatchesClosedForm) {
    const double w = 0.15;
    const GridSpec spec = default_grid_spec(kAlpha, 3);
    ProtocolConfig cfg;
    const OutcomeRecord r = prepare(cfg);
    const GridState p = fourier(to_grid(r.state, spec));
    const double norm = codeword_normalization(3, kAlpha, w);
    double worst = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double x = p.spec().coordinate(k);
        worst = std::max(worst, std::abs(p[k] - codeword_one_momentum(x, 3, kAlpha, w, norm)));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Fourier, MatchesAnalyticDualEval) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 5; ++i) {
        const GaussianComb c(0.2, Quadrature::position, {{u(rng), {u(rng), u(rng)}}, {3 + u(rng), 1.0}}, 0.5 * u(rng));
        const GridState p = fourier(to_grid(c, default_grid_spec(kAlpha, 2)));
        double worst = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
            worst = std::max(worst, std::abs(p[k] - eval(c, p.spec().coordinate(k), Quadrature::momentum)));
        }
        EXPECT_LT(worst, 1e-6);
    }
}

TEST(Fourier, RoundTripAndUnitarity) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n01;
    for (std::size_t size : {64u, 256u, 2048u}) {
        std::vector<cplx> amps(size);
        for (auto& a : amps) a = {n01(rng), n01(rng)};
        const GridState g = normalize(GridState(window(-3.3, 5.1, size), amps));
        const GridState p = fourier(g, 0.37);
        EXPECT_NEAR(p.norm_squared(), 1.0, 1e-12);
        const GridState back = fourier(p, g.spec().origin);
        ASSERT_EQ(back.spec(), g.spec());
        EXPECT_LT(max_abs_difference(back, g), 1e-12);
    }
}

TEST(Displace, AlignedShiftIsExact) {
    const GridSpec spec = default_grid_spec(kAlpha, 2);
    const GaussianComb c = approximate_codeword(1, 2, kAlpha, 0.15);
    const GridState g = to_grid(c, spec);
    const GridState moved = displace(g, kAlpha, Quadrature::position);
    EXPECT_LT(max_abs_difference(moved, to_grid(displace(c, kAlpha, Quadrature::position), spec)), 1e-12);
    EXPECT_NEAR(moved.norm_squared(), g.norm_squared(), 1e-12);
    EXPECT_THROW(displace(g, 0.3 * spec.spacing, Quadrature::position), AlignmentError);
    EXPECT_THROW(displace(g, spec.spacing * static_cast<double>(spec.size / 2), Quadrature::position), TruncationError);
}

TEST(Displace, DualAxisIsPhase) {
    const GridSpec spec = default_grid_spec(kAlpha, 2);
    const GaussianComb c = approximate_codeword(1, 2, kAlpha, 0.15);
    for (double b : {0.3, -1.7}) {
        const GridState kicked = displace(to_grid(c, spec), b, Quadrature::momentum);
        EXPECT_LT(max_abs_difference(kicked, to_grid(displace(c, b, Quadrature::momentum), spec)), 1e-12);
        const GridState pm = fourier(to_grid(c, spec));
        const GridState shifted = displace(pm, b, Quadrature::position);
        const GridState expected = fourier(to_grid(displace(c, b, Quadrature::position), spec));
        EXPECT_LT(max_abs_difference(shifted, expected), 1e-10);
    }
}

TEST(DensityMass, UniformHalfPeriod) {
    const std::size_t n = 256;
    const GridSpec spec = window(0.0, 2.0, n);
    const GridState g(spec, std::vector<cplx>(n, cplx(1.0 / std::sqrt(2.0))));
    const Interval first_half[] = {{0.0, 1.0}};
    EXPECT_NEAR(density_mass(g, first_half), 0.5, 1e-14);
}

TEST(DensityMass, GaussianIntervalsAgainstErf) {
    const double w = 0.15;
    const GridState g = to_grid(squeezed_vacuum(w), default_grid_spec(kAlpha, 1));
    // |g|^2 is a normal density with standard deviation w / sqrt 2.
    auto cdf = [&](double x) { return 0.5 * std::erfc(-x / w); };
    for (auto [a, b] : {std::pair{-0.1, 0.05}, std::pair{0.2, 0.4}, std::pair{-1.0, 1.0}}) {
        const Interval iv[] = {{a, b}};
        EXPECT_NEAR(density_mass(g, iv), cdf(b) - cdf(a), 1e-13);
    }
    // Deep tail: accurate relative to its own size.
    const Interval tail[] = {{0.6, 10.0}};
    const double expected = 0.5 * std::erfc(0.6 / w);
    EXPECT_NEAR(density_mass(g, tail) / expected, 1.0, 1e-7);
}

TEST(Io, CsvLayout) {
    const GridState g = to_grid(squeezed_vacuum(1.0), window(-8, 8, 64));
    const std::string csv = grid_to_csv(g);
    EXPECT_EQ(csv.rfind("coordinate,re,im,density\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
}

TEST(Io, JsonRoundTrips) {
    const GaussianComb c(0.2, Quadrature::momentum, {{-1.0, {0.25, -1.0 / 3.0}}, {0.5, 1.0}}, 0.1);
    const GaussianComb back = comb_from_json(comb_to_json(c));
    EXPECT_EQ(back.width(), c.width());
    EXPECT_EQ(back.axis(), c.axis());
    EXPECT_EQ(back.dual_shift(), c.dual_shift());
    ASSERT_EQ(back.peaks().size(), 2u);
    EXPECT_EQ(back.peaks()[0].coeff, c.peaks()[0].coeff);
    const GridState g = to_grid(c, window(-10, 10, 128, Quadrature::momentum));
    const GridState gb = grid_from_json(grid_to_json(g));
    EXPECT_EQ(gb.spec(), g.spec());
    EXPECT_EQ(max_abs_difference(gb, g), 0.0);
    EXPECT_THROW(comb_from_json("{\"delta\": 1}"), ParseError);
}
