#pragma once

#include "amalgam/extended_real.hpp"
#include "amalgam/grid.hpp"
#include "amalgam/wiener.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace amalgam::propagator {

enum class KernelMethod {
    /// Exact reduction K_t(x) = c |t|^{-a} M(a, n/2, i|x|^2/(4|t|)), a = n/2 - sigma,
    /// with M from its power series or a steepest-descent Gauss-Laguerre contour.
    contour,
    /// Gaussian damping e^{-eps|xi|^2} on a radial spectral lattice with endpoint
    /// zeta corrections, eps = c*h^2 for the listed factors, Richardson eps -> 0.
    /// Accurate only while |t| stays well below 1 (lattice aliasing).
    regularized_lattice,
};

struct KernelSchedule {
    KernelMethod method = KernelMethod::contour;
    int nodes = 64;
    double series_switch = 4.0;
    /// Radial spectral step h of the lattice method.
    double spectral_step = 0.02;
    /// eps = factor * h^2, coarsest first; at least three entries, each 4x the next.
    std::vector<double> eps_factors{16.0, 4.0, 1.0};
    /// Relative error above which a sample is flagged as not converged.
    double tolerance = 1e-8;

    nlohmann::json to_json() const;
};

/// Values of K_t(x) = (2pi)^{-n} int e^{i(x.xi - t|xi|^2)} |xi|^{-2 sigma} dxi at radial distances.
struct KernelSamples {
    int n = 1;
    double sigma = 0.0;
    /// Symbol exponent 2*sigma.
    double gamma = 0.0;
    double t = 0.0;
    std::vector<double> radii;
    std::vector<std::complex<double>> values;
    /// Absolute error estimate per sample.
    std::vector<double> errors;
    /// Largest relative error estimate; always positive.
    double est_error = 0.0;
    bool converged = true;
    KernelSchedule schedule;
};

struct KernelValue {
    std::complex<double> value;
    double abs_error = 0.0;
};

KernelValue kernel_value(int n, double sigma, double t, double radius, const KernelSchedule& schedule = {});

KernelSamples kernel_eval(int n, double sigma, double t, std::span<const double> radii,
                          const KernelSchedule& schedule = {});

/// K_t sampled at every lattice point x_j (distance measured from the origin, no periodization).
/// `rel_error` receives max |error| / max |K|.
grid::SampledField kernel_on_grid(const grid::GridSpec& g, double sigma, double t, const KernelSchedule& schedule = {},
                                  double* rel_error = nullptr, bool* converged = nullptr);

/// |t|^{-(n/2-gamma)} (|x|^2+|t|)^{-gamma/2} for 0 < gamma <= n/2,
/// (|x|^2+|t|)^{-(n-gamma)/2} for n/2 <= gamma < n.
double kernel_bound(int n, double gamma, double t, double x);

/// h(t) = ||K_t||_{W(L^{rt/2}, L^{r/2})_x} on log-spaced positive instants.
struct DecayProfile {
    int n = 1;
    Rational sigma{0};
    ExtReal rt = ExtReal::infinity();
    ExtReal r = ExtReal::infinity();
    std::vector<double> times;
    std::vector<double> values;
    /// Relative error estimate per instant (kernel accuracy and lattice resolution).
    std::vector<double> errors;
    std::vector<bool> divergent;
    bool converged = true;
    nlohmann::json grid = nlohmann::json::object();
    nlohmann::json window = nlohmann::json::object();

    void validate() const;
};

/// t_k log-spaced from t_min to t_max inclusive with at least `per_decade` points per decade.
std::vector<double> log_spaced_times(double t_min, double t_max, int per_decade = 24);

DecayProfile kernel_amalgam_profile(const grid::GridSpec& g, Rational sigma, const ExtReal& rt, const ExtReal& r,
                                    const wiener::WindowSpec& window, std::span<const double> times,
                                    const KernelSchedule& schedule = {});

/// Amalgam norm of K_t for one instant: returns {value, relative error, divergent}.
struct ProfilePoint {
    double value = 0.0;
    double error = 0.0;
    bool divergent = false;
    bool converged = true;
};
ProfilePoint kernel_amalgam_point(const grid::GridSpec& g, double sigma, double rt, double r,
                                  const wiener::WindowSpec& window, double t, const KernelSchedule& schedule = {});

} // namespace amalgam::propagator
