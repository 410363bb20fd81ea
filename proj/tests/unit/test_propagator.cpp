#include "amalgam/generators.hpp"
#include "amalgam/kernel.hpp"
#include "amalgam/propagator.hpp"

#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

using namespace amalgam;
using grid::cplx;

namespace {

double max_abs_diff(const grid::SampledField& a, const grid::SampledField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

} // namespace

TEST(Hsigma, OrderZeroIsL2) {
    auto g = grid::make_grid(1, 8.0, 128);
    verify::Rng rng(1);
    auto f = verify::random_field(g, rng);
    EXPECT_NEAR(propagator::hsigma_norm(f, 0.0).value, grid::lebesgue_norm(f, 2.0).value, 1e-12);
}

TEST(Hsigma, PureModeScalesByFrequencyPower) {
    auto g = grid::make_grid(1, 4.0, 64);
    double xi = g.frequency(5);
    auto f = grid::sample(g, [&](std::span<const double> x) { return std::polar(1.0, xi * x[0]); });
    auto r = propagator::hsigma_norm(f, 0.7);
    EXPECT_NEAR(r.value, std::pow(xi, 0.7) * grid::lebesgue_norm(f, 2.0).value, 1e-12);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Hsigma, GaussianClosedForm) {
    // ||f||^2 = (1/2pi) int |xi|^{2 sigma} 2pi e^{-xi^2} dxi = Gamma(sigma + 1/2)
    auto g = grid::make_grid(1, 16.0, 512);
    auto f = verify::gaussian(g, 1.0);
    auto r = propagator::hsigma_norm(f, 1.0);
    EXPECT_NEAR(r.value, std::sqrt(boost::math::tgamma(1.5)), 1e-9);
    EXPECT_FALSE(r.warnings.empty());
}

TEST(Hsigma, FractionalGaussianConvergesAtCuspRate) {
    // The Riemann sum of |xi|^{2 sigma} e^{-xi^2} has error of order dxi^{1 + 2 sigma}.
    for (double s : {0.2, 0.5}) {
        double exact = std::sqrt(boost::math::tgamma(s + 0.5));
        double previous = 1.0;
        for (double L : {16.0, 64.0, 256.0}) {
            auto g = grid::make_grid(1, L, static_cast<std::size_t>(32.0 * L));
            double err = std::abs(propagator::hsigma_norm(verify::gaussian(g, 1.0), s).value - exact);
            EXPECT_LE(err, std::pow(g.dxi(), 1.0 + 2.0 * s)) << "sigma " << s << " L " << L;
            EXPECT_LT(err, previous);
            previous = err;
        }
    }
}

TEST(Hsigma, MatchesDirectSpectralSum) {
    auto g = grid::make_grid(1, 6.0, 64);
    verify::Rng rng(5);
    auto f = verify::band_limited_random(g, rng, 10.0);
    double sigma = 0.35, acc = 0.0;
    for (std::size_t k = 0; k < g.N; ++k) {
        double xi = g.frequency(k);
        cplx c = 0.0;
        for (std::size_t j = 0; j < g.N; ++j) c += f.values[j] * std::polar(g.dx(), -xi * g.coordinate(j));
        if (xi != 0.0) acc += std::pow(std::abs(xi), 2.0 * sigma) * std::norm(c);
    }
    double expected = std::sqrt(acc * g.dxi() / (2.0 * oracle::pi));
    EXPECT_NEAR(propagator::hsigma_norm(f, sigma).value, expected, 1e-12 * expected);
}

TEST(Evolve, TimeZeroIsIdentity) {
    auto g = grid::make_grid(2, 4.0, 32);
    verify::Rng rng(2);
    auto f = verify::random_field(g, rng);
    EXPECT_LT(max_abs_diff(propagator::evolve(f, 0.0, 0.0), f), 1e-12);
}

TEST(Evolve, GaussianMatchesFresnelFormula) {
    for (int n : {1, 2}) {
        auto g = grid::make_grid(n, 24.0, n == 1 ? 1024 : 256);
        auto f = verify::gaussian(g, 1.0);
        auto u = propagator::evolve(f, 0.5, 0.0);
        double worst = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            auto idx = g.unravel(j);
            double r2 = 0.0;
            for (int a = 0; a < n; ++a) r2 += std::pow(g.coordinate(idx[a]), 2);
            worst = std::max(worst, std::abs(u.values[j] - oracle::fresnel_gaussian(n, 0.5, r2)));
        }
        EXPECT_LT(worst, 1e-8) << "n = " << n;
    }
}

TEST(Evolve, IsUnitaryAndReversible) {
    auto g = grid::make_grid(1, 8.0, 256);
    verify::Rng rng(3);
    auto f = verify::random_field(g, rng);
    auto u = propagator::evolve(f, 1.7, 0.0);
    EXPECT_NEAR(grid::lebesgue_norm(u, 2.0).value, grid::lebesgue_norm(f, 2.0).value, 1e-12);
    EXPECT_LT(max_abs_diff(propagator::evolve(u, -1.7, 0.0), f), 1e-12);
}

TEST(Evolve, RejectsSigmaAtHalfDimension) {
    auto g = grid::make_grid(1, 8.0, 64);
    EXPECT_THROW(propagator::evolve(grid::zeros(g), 1.0, 0.5), std::invalid_argument);
}

TEST(EvolveSeries, SingleInstantAtZeroIsIdentity) {
    auto g = grid::make_grid(1, 4.0, 64);
    verify::Rng rng(4);
    auto f = verify::random_field(g, rng);
    std::vector<double> t{0.0};
    auto stf = propagator::evolve_series(f, t, 0.0);
    ASSERT_EQ(stf.slices.size(), 1u);
    EXPECT_LT(max_abs_diff(stf.slices[0], f), 1e-12);
    EXPECT_EQ(stf.quadrature_weights(), std::vector<double>{1.0});
}

TEST(EvolveSeries, GaussianSupremumDecreases) {
    auto g = grid::make_grid(1, 128.0, 4096);
    auto f = verify::gaussian(g, 1.0);
    auto times = propagator::log_spaced_times(0.01, 10.0, 21);
    auto stf = propagator::evolve_series(f, times, 0.0);
    double prev = INFINITY;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double s = grid::lebesgue_norm(stf.slices[i], INFINITY).value;
        EXPECT_LE(s, prev * (1.0 + 1e-12)) << "t = " << times[i];
        EXPECT_NEAR(s, std::pow(1.0 + 4.0 * times[i] * times[i], -0.25), 1e-9);
        prev = s;
    }
}

TEST(Adjoint, SingleSliceAtZeroIsFractionalIntegral) {
    auto g = grid::make_grid(1, 8.0, 128);
    verify::Rng rng(6);
    auto f = verify::band_limited_random(g, rng, 8.0);
    grid::SpaceTimeField stf{g, {0.0}, {f}, {1.0}};
    auto a = propagator::adjoint_accumulate(stf, 0.3);
    auto b = propagator::evolve(f, 0.0, 0.3);
    EXPECT_LT(max_abs_diff(a, b), 1e-12);
}

TEST(Adjoint, DualityIdentityOnRandomTriples) {
    auto g = grid::make_grid(1, 8.0, 128);
    verify::Rng rng(2024);
    std::vector<double> times{-1.0, -0.25, 0.0, 0.5, 2.0};
    for (int trial = 0; trial < 100; ++trial) {
        auto f = verify::band_limited_random(g, rng, 12.0);
        auto F = verify::random_spacetime(g, times, rng);
        double sigma = 0.1 * (trial % 5);
        auto Tf = propagator::evolve_series(f, times, sigma);
        cplx lhs = propagator::inner_product(Tf, F);
        cplx rhs = propagator::inner_product(f, propagator::adjoint_accumulate(F, sigma));
        ASSERT_LT(std::abs(lhs - rhs), 1e-8 * std::abs(lhs)) << "trial " << trial;
    }
}

TEST(Adjoint, SymmetricInstantsCancelImaginaryPart) {
    auto g = grid::make_grid(1, 16.0, 256);
    auto f = verify::gaussian(g, 1.5);
    grid::SpaceTimeField stf{g, {-0.8, 0.8}, {f, f}, {1.0, 1.0}};
    auto a = propagator::adjoint_accumulate(stf, 0.0);
    double im = 0.0, re = 0.0;
    for (const auto& v : a.values) {
        im = std::max(im, std::abs(v.imag()));
        re = std::max(re, std::abs(v.real()));
    }
    EXPECT_LT(im, 1e-12 * re);
}

TEST(ZeroMode, HermiteGaussianHasNone) {
    auto g = grid::make_grid(1, 16.0, 256);
    EXPECT_LT(propagator::zero_mode_fraction(verify::hermite_gaussian(g)), 1e-20);
    EXPECT_GT(propagator::zero_mode_fraction(verify::gaussian(g)), 1e-3);
}
