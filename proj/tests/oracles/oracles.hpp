#pragma once

#include "amalgam/grid.hpp"
#include "amalgam/wiener.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// K_t(x) for n = 1, t > 0 from the ray xi = e^{-i pi/4} u, where e^{-it xi^2} = e^{-t u^2}:
/// K = (1/pi) e^{-i pi/4 (1 - 2 sigma)} int_0^inf cos(x e^{-i pi/4} u) u^{-2 sigma} e^{-t u^2} du.
/// Reliable while x^2 / t stays below about 60.
inline cplx kernel_1d_ray(double sigma, double t, double x) {
    const cplx rot = std::polar(1.0, -pi / 4.0);
    auto part = [&](bool imag) {
        auto f = [&](double u) {
            if (t * u * u > 700.0) return 0.0;
            cplx v = std::cos(x * rot * u) * std::pow(u, -2.0 * sigma) * std::exp(-t * u * u);
            return imag ? v.imag() : v.real();
        };
        boost::math::quadrature::exp_sinh<double> es;
        return es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-12);
    };
    cplx integral(part(false), part(true));
    return std::polar(1.0, -pi / 4.0 * (1.0 - 2.0 * sigma)) * integral / pi;
}

/// K_t(0) = (2pi)^{-n} (2 pi^{n/2} / Gamma(n/2)) (1/2) Gamma(a) (it)^{-a}, a = n/2 - sigma, t > 0.
inline cplx kernel_at_origin(int n, double sigma, double t) {
    double a = 0.5 * n - sigma;
    double sphere = 2.0 * std::pow(pi, 0.5 * n) / boost::math::tgamma(0.5 * n);
    double mag = std::pow(2.0 * pi, -n) * sphere * 0.5 * boost::math::tgamma(a) * std::pow(t, -a);
    return std::polar(mag, -pi / 2.0 * a);
}

/// e^{it Laplacian} applied to exp(-|x|^2/2): (1 + 2it)^{-n/2} exp(-|x|^2 / (2(1 + 2it))).
inline cplx fresnel_gaussian(int n, double t, double r2) {
    cplx z(1.0, 2.0 * t);
    return std::pow(z, -0.5 * n) * std::exp(-r2 / (2.0 * z));
}

/// Smooth bump exp(-1/(1-u^2)) on (-1, 1).
inline double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

/// || |.|^{-alpha} * g ||_{L^q(R)} by nested tanh-sinh quadrature for g supported in [c - w, c + w].
inline double power_convolution_norm(const std::function<double(double)>& g, double c, double w, double alpha,
                                     double q) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto conv = [&](double x) {
        double lo = c - w, hi = c + w;
        auto left = [&](double s) { return g(x - s) * std::pow(s, -alpha); };
        auto right = [&](double s) { return g(x + s) * std::pow(s, -alpha); };
        if (x >= hi) return ts.integrate(left, x - hi, x - lo, 1e-11);
        if (x <= lo) return ts.integrate(right, lo - x, hi - x, 1e-11);
        return ts.integrate(left, 0.0, x - lo, 1e-11) + ts.integrate(right, 0.0, hi - x, 1e-11);
    };
    auto h = [&](double x) { return std::pow(std::abs(conv(x)), q); };
    double inner = 0.0;
    std::vector<double> cuts{c - w - 50.0, c - w, c, c + w, c + w + 50.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) inner += ts.integrate(h, cuts[i], cuts[i + 1], 1e-9);
    boost::math::quadrature::exp_sinh<double> es;
    double right = es.integrate([&](double s) { return h(c + w + 50.0 + s); }, 0.0, std::numeric_limits<double>::infinity(), 1e-9);
    double left = es.integrate([&](double s) { return h(c - w - 50.0 - s); }, 0.0, std::numeric_limits<double>::infinity(), 1e-9);
    return std::pow(inner + left + right, 1.0 / q);
}

/// Amalgam norm by direct loops: window values from their formulas, translates c_k = -L + k*step,
/// periodic distance on the box, local L^p by Riemann sum, outer l^q weighted by step^n.
inline double amalgam_bruteforce(const amalgam::grid::SampledField& f, double p, double q,
                                 const amalgam::wiener::WindowSpec& w) {
    const auto& g = f.grid;
    double dx = g.dx(), box = 2.0 * g.L;
    auto per = static_cast<std::size_t>(std::llround(box / w.step));
    auto wrap = [&](double d) { return d - box * std::round(d / box); };
    auto shape = [&](const std::vector<double>& d) {
        if (w.kind == amalgam::wiener::WindowKind::cube) {
            for (double v : d)
                if (v < -0.5 * w.step || v >= 0.5 * w.step) return 0.0;
            return 1.0;
        }
        double r2 = 0.0;
        for (double v : d) r2 += v * v;
        double rr = r2 / (w.radius * w.radius);
        if (w.kind == amalgam::wiener::WindowKind::smooth_bump) return rr < 1.0 ? std::exp(-1.0 / (1.0 - rr)) : 0.0;
        double s = w.radius / 5.0;
        return rr <= 1.0 ? std::exp(-r2 / (2.0 * s * s)) : 0.0;
    };
    std::size_t count = 1;
    for (int a = 0; a < g.n; ++a) count *= per;
    // grid-normalized window for unit_l2
    double norm = 1.0;
    if (w.normalization == amalgam::wiener::Normalization::unit_l2) {
        double s = 0.0;
        std::vector<double> d(static_cast<std::size_t>(g.n));
        for (std::size_t j = 0; j < g.size(); ++j) {
            auto idx = g.unravel(j);
            for (int a = 0; a < g.n; ++a) d[static_cast<std::size_t>(a)] = wrap(g.coordinate(idx[static_cast<std::size_t>(a)]) + g.L);
            double v = shape(d);
            s += v * v * g.cell_volume();
        }
        norm = 1.0 / std::sqrt(s);
    }
    std::vector<double> local(count, 0.0);
    std::vector<double> d(static_cast<std::size_t>(g.n));
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> c(static_cast<std::size_t>(g.n));
        std::size_t rest = k;
        for (int a = g.n - 1; a >= 0; --a) {
            c[static_cast<std::size_t>(a)] = -g.L + static_cast<double>(rest % per) * w.step;
            rest /= per;
        }
        double acc = 0.0, mx = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            auto idx = g.unravel(j);
            for (int a = 0; a < g.n; ++a)
                d[static_cast<std::size_t>(a)] = wrap(g.coordinate(idx[static_cast<std::size_t>(a)]) - c[static_cast<std::size_t>(a)]);
            double v = std::abs(f.values[j]) * shape(d) * norm;
            mx = std::max(mx, v);
            if (std::isfinite(p)) acc += std::pow(v, p) * g.cell_volume();
        }
        local[k] = std::isfinite(p) ? std::pow(acc, 1.0 / p) : mx;
    }
    if (std::isinf(q)) return *std::max_element(local.begin(), local.end());
    double s = 0.0;
    for (double v : local) s += std::pow(v, q);
    return std::pow(std::pow(w.step, g.n) * s, 1.0 / q);
}

} // namespace oracle
