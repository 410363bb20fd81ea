#pragma once

#include "amalgam/norm_result.hpp"

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace amalgam::grid {

using cplx = std::complex<double>;

/// Periodic lattice on [-L, L)^n with N points per axis.
/// Flat storage is row-major: the last axis varies fastest.
struct GridSpec {
    int n = 1;
    double L = 1.0;
    std::size_t N = 8;

    double dx() const { return 2.0 * L / static_cast<double>(N); }
    /// Frequency step pi/L.
    double dxi() const;
    double cell_volume() const;
    std::size_t size() const;

    /// x_j = -L + j*dx.
    double coordinate(std::size_t j) const { return -L + static_cast<double>(j) * dx(); }
    /// Signed frequency index of FFT slot j: j for j < N/2, j - N otherwise.
    std::int64_t signed_index(std::size_t j) const;
    double frequency(std::size_t j) const;

    std::array<std::size_t, 3> unravel(std::size_t flat) const;
    std::size_t ravel(const std::array<std::size_t, 3>& idx) const;

    nlohmann::json to_json() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

GridSpec make_grid(int n, double L, std::size_t N);

enum class Domain { physical, spectral };

struct SampledField {
    GridSpec grid;
    std::vector<cplx> values;
    std::string label;
    Domain domain = Domain::physical;

    /// Throws std::invalid_argument on wrong size or non-finite entries.
    void validate() const;
};

SampledField zeros(const GridSpec& g, std::string label = {});
/// Samples fn(x) at every lattice point; x has g.n entries.
SampledField sample(const GridSpec& g, const std::function<cplx(std::span<const double>)>& fn,
                    std::string label = {});

/// Time slices on a shared grid. Empty weights means trapezoidal weights on `times`
/// (a single instant gets weight 1).
struct SpaceTimeField {
    GridSpec grid;
    std::vector<double> times;
    std::vector<SampledField> slices;
    std::vector<double> weights;

    std::vector<double> quadrature_weights() const;
    void validate() const;
};

/// Trapezoidal weights on strictly increasing instants.
std::vector<double> trapezoid_weights(std::span<const double> times);

enum class Direction { forward, inverse };

/// Forward: f^(xi_k) = dx^n sum_j f(x_j) e^{-i xi_k x_j}.
/// Inverse: f(x_j) = (dxi / 2pi)^n sum_k f^(xi_k) e^{i xi_k x_j}.
SampledField transform(const SampledField& field, Direction dir);

/// sqrt((dxi/2pi)^n sum |f^|^2) for a spectral field.
double spectral_l2_norm(const SampledField& spectral);

/// Riemann-sum L^p norm; p = +inf gives the lattice maximum.
NormResult lebesgue_norm(const SampledField& field, double p);

/// L^q_t L^r_x with the stf quadrature weights.
NormResult mixed_lebesgue_norm(const SpaceTimeField& stf, double q, double r);

/// Fraction of |f|^2 carried by lattice points within L/4 of the box boundary.
double boundary_mass_fraction(const SampledField& field);
/// Emits a warning and returns false when the fraction exceeds tol.
bool check_boundary_mass(const SampledField& field, double tol = 1e-6);

} // namespace amalgam::grid
