#include "amalgam/kernel.hpp"

#include "hypergeometric.hpp"
#include "summation.hpp"

#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace amalgam::propagator {
namespace {

constexpr double pi = std::numbers::pi;

void check_kernel_args(int n, double sigma, double t) {
    if (n < 1 || n > 3) throw std::invalid_argument("kernel dimension must be 1, 2 or 3");
    if (t == 0.0 || !std::isfinite(t)) throw std::invalid_argument("kernel time must be finite and nonzero");
    if (!(sigma >= 0.0) || !(2.0 * sigma < n)) throw std::invalid_argument("kernel needs 0 <= 2 sigma < n");
}

KernelValue free_kernel(int n, double t, double radius) {
    double mag = std::pow(4.0 * pi * t, -0.5 * n);
    auto v = std::polar(mag, radius * radius / (4.0 * t) - 0.25 * pi * n);
    return {v, mag * 4.0 * std::numeric_limits<double>::epsilon()};
}

KernelValue contour_kernel(int n, double sigma, double t, double radius, const KernelSchedule& s) {
    double a = 0.5 * n - sigma;
    double b = 0.5 * n;
    double y = radius * radius / (4.0 * t);
    auto m = detail::kummer_m_imag(a, b, y, s.nodes, s.series_switch);
    double log_mag = -n * std::log(2.0 * pi) + 0.5 * n * std::log(pi) + std::lgamma(a) - std::lgamma(b) - a * std::log(t);
    auto pref = std::polar(std::exp(log_mag), -0.5 * pi * a);
    return {pref * m.value, std::abs(pref) * m.abs_error};
}

// Radial symbol integral with Gaussian damping, evaluated as a lattice sum in |xi|.
std::complex<double> damped_lattice(int n, double sigma, double t, double radius, double eps, double h) {
    using cd = std::complex<double>;
    double alpha = 2.0 * sigma - (n - 1);
    double surface = n == 1 ? 2.0 : (n == 2 ? 2.0 * pi : 4.0 * pi);
    auto radial = [&](double rho) {
        double z = radius * rho;
        if (n == 1) return std::cos(z);
        if (n == 2) return std::cyl_bessel_j(0.0, z);
        return z == 0.0 ? 1.0 : std::sin(z) / z;
    };
    auto J = static_cast<std::size_t>(std::ceil(std::sqrt(40.0 / eps) / h));
    auto term = [&](std::size_t j, bool imag) {
        double rho = static_cast<double>(j) * h;
        cd v = surface * radial(rho) * std::pow(rho, -alpha) * std::polar(std::exp(-eps * rho * rho), -t * rho * rho);
        return imag ? v.imag() : v.real();
    };
    cd sum(detail::pairwise_sum(1, J + 1, [&](std::size_t j) { return term(j, false); }),
           detail::pairwise_sum(1, J + 1, [&](std::size_t j) { return term(j, true); }));
    sum *= h;
    cd g0 = surface;
    cd g2 = surface * cd(-radius * radius / n - 2.0 * eps, -2.0 * t);
    sum -= boost::math::zeta(alpha) * std::pow(h, 1.0 - alpha) * g0;
    sum -= boost::math::zeta(alpha - 2.0) * std::pow(h, 3.0 - alpha) * 0.5 * g2;
    return sum * std::pow(2.0 * pi, -n);
}

KernelValue lattice_kernel(int n, double sigma, double t, double radius, const KernelSchedule& s) {
    const auto& c = s.eps_factors;
    if (c.size() < 3) throw std::invalid_argument("regularization schedule needs at least three factors");
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (std::abs(c[i] / c[i + 1] - 4.0) > 1e-12) throw std::invalid_argument("regularization factors must shrink by 4");
    if (!(s.spectral_step > 0.0)) throw std::invalid_argument("spectral step must be positive");
    double h = s.spectral_step;
    std::vector<std::complex<double>> K;
    for (double f : c) K.push_back(damped_lattice(n, sigma, t, radius, f * h * h, h));
    std::size_t last = K.size() - 1;
    auto fine = (4.0 * K[last] - K[last - 1]) / 3.0;
    auto coarse = (4.0 * K[last - 1] - K[last - 2]) / 3.0;
    return {fine, std::abs(fine - coarse) + std::abs(fine) * std::numeric_limits<double>::epsilon()};
}

} // namespace

nlohmann::json KernelSchedule::to_json() const {
    nlohmann::json j;
    if (method == KernelMethod::contour) {
        j = {{"method", "contour"}, {"nodes", nodes}, {"series_switch", series_switch}};
    } else {
        j = {{"method", "regularized_lattice"}, {"spectral_step", spectral_step}, {"eps_factors", eps_factors}};
    }
    j["tolerance"] = tolerance;
    return j;
}

KernelValue kernel_value(int n, double sigma, double t, double radius, const KernelSchedule& s) {
    check_kernel_args(n, sigma, t);
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw std::invalid_argument("kernel radius must be finite and >= 0");
    if (t < 0.0) {
        auto v = kernel_value(n, sigma, -t, radius, s);
        return {std::conj(v.value), v.abs_error};
    }
    if (s.method == KernelMethod::regularized_lattice) return lattice_kernel(n, sigma, t, radius, s);
    if (sigma == 0.0) return free_kernel(n, t, radius);
    return contour_kernel(n, sigma, t, radius, s);
}

KernelSamples kernel_eval(int n, double sigma, double t, std::span<const double> radii, const KernelSchedule& s) {
    check_kernel_args(n, sigma, t);
    KernelSamples ks;
    ks.n = n;
    ks.sigma = sigma;
    ks.gamma = 2.0 * sigma;
    ks.t = t;
    ks.schedule = s;
    ks.radii.assign(radii.begin(), radii.end());
    ks.est_error = std::numeric_limits<double>::min();
    for (double r : radii) {
        auto v = kernel_value(n, sigma, t, std::abs(r), s);
        ks.values.push_back(v.value);
        ks.errors.push_back(v.abs_error);
        double rel = v.abs_error / std::max(std::abs(v.value), std::numeric_limits<double>::min());
        ks.est_error = std::max(ks.est_error, rel);
        if (!std::isfinite(v.value.real()) || !std::isfinite(v.value.imag()) || rel > s.tolerance) ks.converged = false;
    }
    return ks;
}

grid::SampledField kernel_on_grid(const grid::GridSpec& g, double sigma, double t, const KernelSchedule& s,
                                  double* rel_error, bool* converged) {
    check_kernel_args(g.n, sigma, t);
    auto field = grid::zeros(g, "kernel");
    auto half = static_cast<std::int64_t>(g.N / 2);
    std::map<std::int64_t, std::vector<std::size_t>> shells;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        auto idx = g.unravel(i);
        std::int64_t key = 0;
        for (int a = 0; a < g.n; ++a) {
            std::int64_t d = static_cast<std::int64_t>(idx[a]) - half;
            key += d * d;
        }
        shells[key].push_back(i);
    }
    double max_err = 0.0, max_val = 0.0;
    bool ok = true;
    for (const auto& [key, members] : shells) {
        double radius = std::sqrt(static_cast<double>(key)) * g.dx();
        auto v = kernel_value(g.n, sigma, t, radius, s);
        for (auto i : members) field.values[i] = v.value;
        max_err = std::max(max_err, v.abs_error);
        max_val = std::max(max_val, std::abs(v.value));
        if (v.abs_error > s.tolerance * std::abs(v.value)) ok = false;
    }
    if (rel_error) *rel_error = max_val > 0.0 ? max_err / max_val : 0.0;
    if (converged) *converged = ok;
    return field;
}

double kernel_bound(int n, double gamma, double t, double x) {
    if (!(gamma > 0.0) || !(gamma < n)) throw std::invalid_argument("kernel bound needs 0 < gamma < n");
    if (t == 0.0) throw std::invalid_argument("kernel bound needs t != 0");
    double at = std::abs(t);
    double base = x * x + at;
    if (gamma <= 0.5 * n) return std::pow(at, -(0.5 * n - gamma)) * std::pow(base, -0.5 * gamma);
    return std::pow(base, -0.5 * (n - gamma));
}

} // namespace amalgam::propagator
