#pragma once

#include "amalgam/exponents.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/kernel.hpp"
#include "amalgam/norm_result.hpp"
#include "amalgam/wiener.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace amalgam::verify {

// ---------------------------------------------------------------------------
// Decay regression

inline constexpr double kDecaySlopeTolerance = 0.05;
inline constexpr std::size_t kMinFitPoints = 12;

enum class Regime { small_time, large_time };

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares with equal weights.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct DecayFit {
    Regime regime = Regime::small_time;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double predicted = 0.0;
    double slope_error = 0.0;
    std::size_t points = 0;

    bool within(double tol = kDecaySlopeTolerance) const { return slope_error <= tol; }
    nlohmann::json to_json() const;
};

/// log h against log t on |t| <= 1 and |t| >= 1 separately.
std::pair<DecayFit, DecayFit> fit_decay(const propagator::DecayProfile& profile);

// ---------------------------------------------------------------------------
// Windowed time norms of h

inline constexpr double kTailSlopeTolerance = 0.07;
/// Growth slope of m^{1/p} a*_m above which the weak norm is reported divergent.
inline constexpr double kWeakGrowthThreshold = 0.03;

struct WindowNormReport {
    std::vector<std::int64_t> ks;
    std::vector<double> terms;
    /// Smallest C with term_k <= C for |k| <= 2 and term_k <= C (|k|-1)^exponent for |k| >= 2.
    double C = 0.0;
    double exponent = 0.0;
    /// Regression of log term_k on log(k-1) over the tail k in [4, 64].
    double tail_slope = 0.0;
    NormResult weak_norm;
    double growth_slope = 0.0;
    bool divergent = false;

    nlohmann::json to_json() const;
};

/// Even log-log interpolant of a profile; power-law extrapolation past both ends.
std::function<double(double)> profile_function(const propagator::DecayProfile& profile);

/// ||h tau_k phi||_{L^{qt/2}_t} for k in range, with the tuple's tail exponent and weak l^{q/2,inf} norm.
WindowNormReport local_window_norms(const std::function<double(double)>& h, const wiener::WindowSpec& window_t,
                                    wiener::TranslateRange range, const exponents::ExponentTuple& tuple);

// ---------------------------------------------------------------------------
// Strichartz ratios

/// Symmetric |t| in [0.01, 100]: 24 log-spaced points per decade merged with a uniform step of 1/8.
std::vector<double> default_strichartz_times();

struct RatioOptions {
    wiener::WindowSpec window_t = wiener::smooth_bump(1.0, 1.0);
    wiener::WindowSpec window_x = wiener::smooth_bump(1.0, 1.0);
    bool weak = false;
    /// Empty selects default_strichartz_times().
    std::vector<double> times;
};

struct RatioResult {
    double ratio = 0.0;
    NormResult numerator;
    NormResult denominator;
    bool divergent = false;
    std::vector<std::string> warnings;
};

/// ||e^{itD} f||_{W(L^qt,L^q)_t W(L^rt,L^r)_x} / ||f||_{H^sigma}, streamed slice by slice.
RatioResult strichartz_ratio(const grid::SampledField& f, const exponents::ExponentTuple& tuple,
                             const RatioOptions& opts = {});

struct RatioSweep {
    exponents::ExponentTuple tuple;
    std::vector<double> ratios;
    std::vector<std::string> descriptors;
    double max = 0.0;
    double min = 0.0;
    double median = 0.0;
};

/// Ratios for f_j = e^{i w_j x_1} g(x) over the listed frequencies w_j.
RatioSweep strichartz_frequency_sweep(const grid::SampledField& g, const exponents::ExponentTuple& tuple,
                                      std::span<const double> frequencies, const RatioOptions& opts = {});

// ---------------------------------------------------------------------------
// Classical scaling

inline constexpr double kScalingTolerance = 0.10;

struct ScalingSweep {
    /// Spatial exponent used (from the Sobolev line unless overridden).
    double r = 0.0;
    double q = 0.0;
    std::vector<double> lambdas;
    std::vector<double> ratios;
    /// max |ratio/ratio(lambda_0) - 1|.
    double max_rel_deviation = 0.0;
    /// ratios strictly monotone in lambda.
    bool monotone = false;
};

/// f_lambda(x) = f(lambda x) by trigonometric interpolation (zero outside the box).
/// Throws when the result carries boundary mass above 1e-6.
grid::SampledField rescale(const grid::SampledField& f, double lambda);

/// ||e^{itD} f_lambda||_{L^q_t L^r_x} / ||f_lambda||_{H^sigma} per lambda.
ScalingSweep classical_scaling_sweep(const grid::SampledField& f, std::span<const double> lambdas, Rational sigma,
                                     const ExtReal& q, std::optional<double> r_override = std::nullopt,
                                     std::vector<double> times = {});

// ---------------------------------------------------------------------------
// Hardy-Littlewood-Sobolev in one dimension

struct HlsOptions {
    int trials = 200;
    /// Cells on [-T, T] for the coarse run; the refined run uses 2N.
    std::size_t N = 8192;
    double T = 32.0;
    std::uint64_t seed = 1;
};

struct HlsReport {
    double p = 0.0;
    double alpha = 0.0;
    double q = 0.0;
    std::vector<double> ratios_coarse;
    std::vector<double> ratios_fine;
    double max_coarse = 0.0;
    double max_fine = 0.0;
    double min_fine = 0.0;
    /// max(max_fine/max_coarse, max_coarse/max_fine).
    double stability = 0.0;
    bool stable = false;

    nlohmann::json to_json() const;
};

/// q from 1/q + 1 = 1/p + alpha; throws unless 0 < alpha < 1 and 1 <= p < q < inf.
double hls_exponent(double p, double alpha);

/// || |t|^{-alpha} * g ||_q / ||g||_p for g supported in [-1, 1], cell-averaged kernel, FFT convolution
/// on N cells of [-T, T] plus the far-field tail |x|^{-alpha} int g.
double hls_ratio(double p, double alpha, const std::function<double(double)>& g, std::size_t N, double T);

HlsReport hls_check_1d(double p, double alpha, const HlsOptions& opts = {});

// ---------------------------------------------------------------------------
// Bilinear form

/// sum_{s,t} w_s w_t < e^{-isD}|D|^{-sigma} F_s, e^{-itD}|D|^{-sigma} G_t >.
std::complex<double> bilinear_form(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G, double sigma);

/// < adjoint_accumulate(F), adjoint_accumulate(G) >.
std::complex<double> bilinear_form_factorized(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G,
                                              double sigma);

} // namespace amalgam::verify
