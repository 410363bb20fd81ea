#pragma once

#include "amalgam/grid.hpp"
#include "amalgam/norm_result.hpp"

#include <span>

namespace amalgam::propagator {

/// Zero-mode mass above which |xi|^{-sigma} data are considered contaminated.
inline constexpr double kZeroModeTolerance = 1e-10;

/// |f^(0)|^2 (dxi/2pi)^n divided by ||f||_2^2 (0 for the zero field).
double zero_mode_fraction(const grid::SampledField& field);

/// || |xi|^sigma f^ ||_{l^2} with the inverse-transform weight (dxi/2pi)^n.
/// A warning is attached when sigma > 0 and the zero mode is not negligible.
NormResult hsigma_norm(const grid::SampledField& field, double sigma);

/// Applies e^{-it|xi|^2} |xi|^{-sigma}; the xi = 0 coefficient is zeroed when sigma > 0.
grid::SampledField evolve(const grid::SampledField& field, double t, double sigma);

/// evolve at every instant; the result uses trapezoidal weights.
grid::SpaceTimeField evolve_series(const grid::SampledField& field, std::span<const double> times, double sigma);

/// sum_i w_i e^{+i s_i |xi|^2} |xi|^{-sigma} F^(., s_i): the adjoint of evolve_series
/// under <F, G> = sum_i w_i <F_i, G_i>_{L^2}.
grid::SampledField adjoint_accumulate(const grid::SpaceTimeField& stf, double sigma);

/// <f, g>_{L^2} = sum f conj(g) dx^n.
std::complex<double> inner_product(const grid::SampledField& f, const grid::SampledField& g);
/// sum_i w_i <F_i, G_i>_{L^2}.
std::complex<double> inner_product(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G);

/// Multiplier e^{-it|xi|^2}|xi|^{-sigma} at spectral slot `flat` (0 at xi = 0 when sigma > 0).
std::complex<double> symbol(const grid::GridSpec& g, std::size_t flat, double t, double sigma);

} // namespace amalgam::propagator
