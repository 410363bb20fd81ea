#pragma once

#include "amalgam/extended_real.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/norm_result.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace amalgam::wiener {

enum class WindowKind { gaussian, smooth_bump, cube };
enum class Normalization { unit_l2, unit_partition };

/// Test window phi and its translation lattice c_k = -L + k*step (space) or k*step (time).
///
/// gaussian:    exp(-|x|^2 / (2 s^2)), s = radius/5, truncated at radius.
/// smooth_bump: exp(-1 / (1 - |x|^2/radius^2)) inside the ball.
/// cube:        indicator of [-step/2, step/2)^n; radius is ignored.
///
/// unit_l2 renormalizes ||phi||_2 = 1 on the working grid (spatial use) or in the
/// continuum (temporal use). unit_partition is only meaningful for cubes (phi = 1).
struct WindowSpec {
    WindowKind kind = WindowKind::smooth_bump;
    double radius = 1.0;
    double step = 1.0;
    Normalization normalization = Normalization::unit_l2;

    /// Half-width of the support along one axis.
    double half_width() const;
    nlohmann::json to_json() const;
};

WindowSpec cube_partition(double side = 1.0);
WindowSpec smooth_bump(double radius = 1.0, double step = 1.0);
WindowSpec gaussian_window(double radius = 1.0, double step = 1.0);

/// Unnormalized window value at offset x (length n).
double window_shape(const WindowSpec& w, std::span<const double> x);

/// One-dimensional window with the continuum normalization of `w`.
double time_window(const WindowSpec& w, double s);

/// ||f tau_k phi||_{L^p} per translate, then (a^n sum_k |.|^q)^{1/q}; max for q = inf.
/// `divergent` is set when the outer sum is dominated by translates near the box edge.
NormResult amalgam_norm(const grid::SampledField& field, double p, double q, const WindowSpec& window);

/// Local norms ||f tau_k phi||_{L^p} for every lattice translate (row-major in k).
std::vector<double> local_norms(const grid::SampledField& field, double p, const WindowSpec& window);

/// sup_m m^{1/p} a*_m with a* the nonincreasing rearrangement of |a|.
NormResult weak_lorentz_norm(std::span<const double> sequence, double p);

struct TranslateRange {
    std::int64_t k_min = 0;
    std::int64_t k_max = 0;
};

struct SpaceTimeOptions {
    /// Replace the outer temporal L^q by the weak L^{q,inf} norm over translates.
    bool weak_outer_time = false;
    /// Explicit temporal translates; default is every window meeting the time span.
    std::optional<TranslateRange> k_range;
};

/// W(L^qt, L^q)_t applied to a scalar profile g(t_i) with quadrature weights.
NormResult temporal_amalgam_norm(std::span<const double> times, std::span<const double> weights,
                                 std::span<const double> g, double qt, double q, const WindowSpec& window_t,
                                 const SpaceTimeOptions& opts = {});

/// W(L^qt, L^q)_t W(L^rt, L^r)_x.
NormResult spacetime_amalgam_norm(const grid::SpaceTimeField& stf, double qt, double q, double rt, double r,
                                  const WindowSpec& window_t, const WindowSpec& window_x,
                                  const SpaceTimeOptions& opts = {});

struct PairingResult {
    std::complex<double> pairing;
    double bound = 0.0;
    bool holds = false;
    NormResult norm_F;
    NormResult norm_G;
};

/// |<F,G>| <= ||F||_{W(qt,q)W(rt,r)} ||G||_{W(qt',q')W(rt',r')} with unit-cube partitions.
PairingResult holder_pairing(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G, double qt, double q,
                             double rt, double r, const WindowSpec& window_t, const WindowSpec& window_x);

/// 1/p = theta/p0 + (1-theta)/p1 and 1/q = theta/q0 + (1-theta)/q1.
std::pair<ExtReal, ExtReal> interpolate_exponents(const ExtReal& p0, const ExtReal& q0, const ExtReal& p1,
                                                  const ExtReal& q1, Rational theta);

struct InclusionResult {
    /// ||f||_{W(p2,q2)}
    double lhs = 0.0;
    /// ||f||_{W(p1,q1)}
    double rhs = 0.0;
    bool holds = false;
};

InclusionResult inclusion_check(const grid::SampledField& field, double p1, double q1, double p2, double q2,
                                const WindowSpec& partition);

/// Relative slack used by the inequality checks above.
inline constexpr double kInequalitySlack = 1e-12;

} // namespace amalgam::wiener
