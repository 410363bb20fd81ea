#pragma once

#include "amalgam/grid.hpp"

#include <cstdint>
#include <random>
#include <span>

namespace amalgam::verify {

using Rng = std::mt19937_64;

/// Independent complex normal samples at every lattice point.
grid::SampledField random_field(const grid::GridSpec& g, Rng& rng);

/// Complex normal Fourier coefficients on 0 < |xi| <= k_max, zero elsewhere.
grid::SampledField band_limited_random(const grid::GridSpec& g, Rng& rng, double k_max);

/// exp(-|x - c|^2 / (2 w^2)) with c on the first axis.
grid::SampledField gaussian(const grid::GridSpec& g, double width = 1.0, double center = 0.0);

/// e^{i freq x_1} exp(-|x|^2 / (2 w^2)).
grid::SampledField modulated_gaussian(const grid::GridSpec& g, double freq, double width = 1.0);

/// x_1 exp(-|x|^2 / 2): odd, so its zero mode vanishes.
grid::SampledField hermite_gaussian(const grid::GridSpec& g, double width = 1.0);

/// Value `amplitude` at one lattice point, zero elsewhere.
grid::SampledField lattice_spike(const grid::GridSpec& g, std::size_t flat_index, std::complex<double> amplitude = 1.0);

/// Subtracts the mean so the xi = 0 coefficient vanishes.
grid::SampledField remove_zero_mode(const grid::SampledField& f);

/// Random slices on `times` (trapezoidal weights).
grid::SpaceTimeField random_spacetime(const grid::GridSpec& g, std::span<const double> times, Rng& rng);

} // namespace amalgam::verify
