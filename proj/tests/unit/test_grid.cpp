#include "amalgam/field_io.hpp"
#include "amalgam/generators.hpp"
#include "amalgam/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace amalgam;
using grid::cplx;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs_diff(const grid::SampledField& a, const grid::SampledField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

} // namespace

TEST(Grid, SpacingAndFrequencyStep) {
    auto g = grid::make_grid(1, 16.0, 1024);
    EXPECT_DOUBLE_EQ(g.dx(), 0.03125);
    auto g2 = grid::make_grid(2, 8.0, 64);
    EXPECT_EQ(g2.size(), 64u * 64u);
    EXPECT_DOUBLE_EQ(g2.dxi(), pi / 8.0);
}

TEST(Grid, RejectsNonPowerOfTwo) {
    EXPECT_THROW(grid::make_grid(1, 16.0, 1000), std::invalid_argument);
    EXPECT_THROW(grid::make_grid(4, 1.0, 8), std::invalid_argument);
    EXPECT_THROW(grid::make_grid(1, -1.0, 8), std::invalid_argument);
}

TEST(Grid, RejectsNonFiniteSamples) {
    auto g = grid::make_grid(1, 1.0, 8);
    auto f = grid::zeros(g);
    f.values[3] = cplx(std::nan(""), 0.0);
    EXPECT_THROW(f.validate(), std::invalid_argument);
}

TEST(Transform, MatchesDirectSumOracle) {
    auto g = grid::make_grid(1, 3.0, 32);
    verify::Rng rng(7);
    auto f = verify::random_field(g, rng);
    auto F = grid::transform(f, grid::Direction::forward);
    for (std::size_t k = 0; k < g.N; ++k) {
        double xi = g.frequency(k);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < g.N; ++j) acc += f.values[j] * std::polar(1.0, -xi * g.coordinate(j));
        acc *= g.dx();
        EXPECT_NEAR(std::abs(F.values[k] - acc), 0.0, 1e-12) << "slot " << k;
    }
}

TEST(Transform, GaussianHasGaussianSpectrum) {
    auto g = grid::make_grid(2, 12.0, 64);
    auto f = verify::gaussian(g, 1.0);
    auto F = grid::transform(f, grid::Direction::forward);
    for (std::size_t k = 0; k < g.size(); ++k) {
        auto idx = g.unravel(k);
        double xi0 = g.frequency(idx[0]), xi1 = g.frequency(idx[1]);
        double expected = 2.0 * pi * std::exp(-(xi0 * xi0 + xi1 * xi1) / 2.0);
        ASSERT_NEAR(std::abs(F.values[k] - expected), 0.0, 1e-12);
    }
}

TEST(Transform, RoundTripIsIdentity) {
    auto g = grid::make_grid(2, 4.0, 32);
    verify::Rng rng(3);
    auto f = verify::random_field(g, rng);
    auto back = grid::transform(grid::transform(f, grid::Direction::forward), grid::Direction::inverse);
    EXPECT_LT(max_abs_diff(f, back), 1e-12);
}

TEST(Transform, ConstantFieldIsSupportedAtZeroFrequency) {
    auto g = grid::make_grid(1, 2.0, 16);
    auto f = grid::sample(g, [](std::span<const double>) { return cplx(1.0); });
    auto F = grid::transform(f, grid::Direction::forward);
    for (std::size_t k = 0; k < g.N; ++k) {
        if (k == 0) EXPECT_NEAR(std::abs(F.values[k]), 2.0 * g.L, 1e-12);
        else EXPECT_LT(std::abs(F.values[k]), 1e-12);
    }
}

TEST(Transform, PureModeHasOneCoefficient) {
    auto g = grid::make_grid(1, 2.0, 16);
    std::size_t slot = 3;
    double xi = g.frequency(slot);
    auto f = grid::sample(g, [&](std::span<const double> x) { return std::polar(1.0, xi * x[0]); });
    auto F = grid::transform(f, grid::Direction::forward);
    for (std::size_t k = 0; k < g.N; ++k) {
        if (k == slot) EXPECT_GT(std::abs(F.values[k]), 1.0);
        else EXPECT_LT(std::abs(F.values[k]), 1e-12);
    }
}

TEST(Transform, ParsevalHolds) {
    auto g = grid::make_grid(1, 5.0, 128);
    verify::Rng rng(11);
    auto f = verify::random_field(g, rng);
    double l2 = grid::lebesgue_norm(f, 2.0).value;
    double s = grid::spectral_l2_norm(grid::transform(f, grid::Direction::forward));
    EXPECT_NEAR(l2, s, 1e-12 * l2);
}

TEST(LebesgueNorm, UnitCubeIndicator) {
    auto g = grid::make_grid(1, 4.0, 256);
    auto f = grid::sample(g, [](std::span<const double> x) { return cplx(x[0] >= 0.0 && x[0] < 1.0 ? 1.0 : 0.0); });
    EXPECT_NEAR(grid::lebesgue_norm(f, 2.0).value, 1.0, g.dx());
}

TEST(LebesgueNorm, ZeroFieldAndMaximum) {
    auto g = grid::make_grid(1, 1.0, 8);
    auto f = grid::zeros(g);
    EXPECT_EQ(grid::lebesgue_norm(f, 3.0).value, 0.0);
    f.values[2] = cplx(0.0, -5.0);
    EXPECT_EQ(grid::lebesgue_norm(f, INFINITY).value, 5.0);
}

TEST(LebesgueNorm, AgreesWithHalfResolutionForSmoothData) {
    auto fine = grid::make_grid(1, 10.0, 1024);
    auto coarse = grid::make_grid(1, 10.0, 512);
    auto fn = [](std::span<const double> x) { return cplx(std::exp(-x[0] * x[0]) * (1.0 + 0.5 * std::sin(3.0 * x[0]))); };
    double a = grid::lebesgue_norm(grid::sample(fine, fn), 3.0).value;
    double b = grid::lebesgue_norm(grid::sample(coarse, fn), 3.0).value;
    EXPECT_NEAR(a, b, 1e-3 * a);
}

TEST(MixedLebesgue, SingleSliceScalesByWeight) {
    auto g = grid::make_grid(1, 2.0, 32);
    verify::Rng rng(5);
    grid::SpaceTimeField stf{g, {0.0}, {verify::random_field(g, rng)}, {0.25}};
    double spatial = grid::lebesgue_norm(stf.slices[0], 3.0).value;
    EXPECT_NEAR(grid::mixed_lebesgue_norm(stf, 4.0, 3.0).value, std::pow(0.25, 0.25) * spatial, 1e-13);
}

TEST(MixedLebesgue, TimeConstantFieldOnUnitInterval) {
    auto g = grid::make_grid(1, 2.0, 32);
    verify::Rng rng(9);
    auto f = verify::random_field(g, rng);
    grid::SpaceTimeField stf{g, {}, {}, {}};
    for (int i = 0; i <= 10; ++i) {
        stf.times.push_back(i / 10.0);
        stf.slices.push_back(f);
    }
    double spatial = grid::lebesgue_norm(f, 2.0).value;
    EXPECT_NEAR(grid::mixed_lebesgue_norm(stf, 4.0, 2.0).value, spatial, 1e-12);
}

TEST(Trapezoid, WeightsIntegrateLinearFunctionsExactly) {
    std::vector<double> t{-1.0, -0.3, 0.2, 0.25, 2.0};
    auto w = grid::trapezoid_weights(t);
    double s0 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        s0 += w[i];
        s1 += w[i] * t[i];
    }
    EXPECT_NEAR(s0, 3.0, 1e-14);
    EXPECT_NEAR(s1, (4.0 - 1.0) / 2.0, 1e-14);
    EXPECT_EQ(grid::trapezoid_weights(std::vector<double>{0.5}), std::vector<double>{1.0});
}

TEST(SpaceTimeField, RejectsUnorderedTimes) {
    auto g = grid::make_grid(1, 1.0, 8);
    grid::SpaceTimeField stf{g, {1.0, 0.0}, {grid::zeros(g), grid::zeros(g)}, {}};
    EXPECT_THROW(stf.validate(), std::invalid_argument);
}

TEST(BoundaryMass, CentredGaussianPassesEdgeBumpFails) {
    auto g = grid::make_grid(1, 16.0, 256);
    EXPECT_TRUE(grid::check_boundary_mass(verify::gaussian(g, 1.0)));
    EXPECT_FALSE(grid::check_boundary_mass(verify::gaussian(g, 1.0, 14.0)));
}

TEST(FieldIo, RoundTripPreservesEveryByte) {
    auto g = grid::make_grid(2, 3.0, 8);
    verify::Rng rng(13);
    std::vector<double> times{-0.5, 0.0, 1.5};
    auto stf = verify::random_spacetime(g, times, rng);
    std::stringstream ss;
    grid::write_fields(ss, stf);
    auto back = grid::read_fields(ss);
    ASSERT_EQ(back.grid, stf.grid);
    ASSERT_EQ(back.times, stf.times);
    for (std::size_t i = 0; i < times.size(); ++i) EXPECT_EQ(back.slices[i].values, stf.slices[i].values);
}

TEST(FieldIo, TruncatedInputIsRejected) {
    auto g = grid::make_grid(1, 1.0, 8);
    std::stringstream ss;
    grid::write_fields(ss, grid::as_single_slice(grid::zeros(g)));
    std::string bytes = ss.str();
    std::stringstream cut(bytes.substr(0, bytes.size() - 5));
    EXPECT_THROW(grid::read_fields(cut), std::runtime_error);
}
