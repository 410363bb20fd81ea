#include "amalgam/generators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amalgam::verify {
namespace {

grid::cplx complex_normal(Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    double re = nd(rng);
    double im = nd(rng);
    return {re, im};
}

double radius2(std::span<const double> x, double c0) {
    double r2 = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) {
        double d = a == 0 ? x[a] - c0 : x[a];
        r2 += d * d;
    }
    return r2;
}

} // namespace

grid::SampledField random_field(const grid::GridSpec& g, Rng& rng) {
    auto f = grid::zeros(g, "random");
    for (auto& v : f.values) v = complex_normal(rng);
    return f;
}

grid::SampledField band_limited_random(const grid::GridSpec& g, Rng& rng, double k_max) {
    if (!(k_max > 0.0)) throw std::invalid_argument("band limit must be positive");
    auto spec = grid::zeros(g, "band_limited");
    spec.domain = grid::Domain::spectral;
    for (std::size_t j = 0; j < spec.values.size(); ++j) {
        auto idx = g.unravel(j);
        double k2 = 0.0;
        for (int a = 0; a < g.n; ++a) {
            double xi = g.frequency(idx[static_cast<std::size_t>(a)]);
            k2 += xi * xi;
        }
        grid::cplx z = complex_normal(rng);
        if (k2 > 0.0 && k2 <= k_max * k_max) spec.values[j] = z;
    }
    auto f = grid::transform(spec, grid::Direction::inverse);
    f.label = "band_limited";
    return f;
}

grid::SampledField gaussian(const grid::GridSpec& g, double width, double center) {
    if (!(width > 0.0)) throw std::invalid_argument("Gaussian width must be positive");
    return grid::sample(
        g, [&](std::span<const double> x) { return grid::cplx(std::exp(-radius2(x, center) / (2.0 * width * width))); },
        "gaussian");
}

grid::SampledField modulated_gaussian(const grid::GridSpec& g, double freq, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("Gaussian width must be positive");
    return grid::sample(
        g,
        [&](std::span<const double> x) {
            return std::polar(std::exp(-radius2(x, 0.0) / (2.0 * width * width)), freq * x[0]);
        },
        "modulated_gaussian");
}

grid::SampledField hermite_gaussian(const grid::GridSpec& g, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("Gaussian width must be positive");
    return grid::sample(
        g,
        [&](std::span<const double> x) {
            return grid::cplx(x[0] / width * std::exp(-radius2(x, 0.0) / (2.0 * width * width)));
        },
        "hermite_gaussian");
}

grid::SampledField lattice_spike(const grid::GridSpec& g, std::size_t flat_index, std::complex<double> amplitude) {
    if (flat_index >= g.size()) throw std::out_of_range("spike index outside the grid");
    auto f = grid::zeros(g, "spike");
    f.values[flat_index] = amplitude;
    return f;
}

grid::SampledField remove_zero_mode(const grid::SampledField& f) {
    f.validate();
    grid::cplx mean = 0.0;
    for (const auto& v : f.values) mean += v;
    mean /= static_cast<double>(f.values.size());
    grid::SampledField out = f;
    for (auto& v : out.values) v -= mean;
    return out;
}

grid::SpaceTimeField random_spacetime(const grid::GridSpec& g, std::span<const double> times, Rng& rng) {
    grid::SpaceTimeField stf;
    stf.grid = g;
    stf.times.assign(times.begin(), times.end());
    double k_max = 0.25 * std::numbers::pi / g.dx();
    for (std::size_t i = 0; i < times.size(); ++i) stf.slices.push_back(band_limited_random(g, rng, k_max));
    stf.validate();
    return stf;
}

} // namespace amalgam::verify
