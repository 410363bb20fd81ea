#include "hypergeometric.hpp"

#include "laguerre.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace amalgam::detail {
namespace {

HypergeometricValue series(double a, double b, double y) {
    using ld = long double;
    using cld = std::complex<ld>;
    cld term = 1.0L;
    cld sum = 1.0L;
    ld magnitude = 1.0L;
    const cld iy(0.0L, static_cast<ld>(y));
    for (int k = 0; k < 400; ++k) {
        term *= (static_cast<ld>(a) + k) / ((static_cast<ld>(b) + k) * (k + 1.0L)) * iy;
        sum += term;
        magnitude += std::abs(term);
        if (k > y && std::abs(term) < 1e-21L * std::abs(sum)) break;
    }
    HypergeometricValue v;
    v.value = std::complex<double>(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    v.abs_error = static_cast<double>(std::abs(term) + magnitude * std::numeric_limits<ld>::epsilon()) +
                  std::abs(v.value) * std::numeric_limits<double>::epsilon();
    return v;
}

std::complex<double> contour(double a, double b, double y, int m) {
    using cd = std::complex<double>;
    const cd i(0.0, 1.0);
    double c = b - a;
    auto r1 = gauss_laguerre(a - 1.0, m);
    auto r2 = gauss_laguerre(c - 1.0, m);
    cd s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < r1.nodes.size(); ++j) s1 += r1.weights[j] * std::pow(cd(1.0, -r1.nodes[j] / y), c - 1.0);
    for (std::size_t j = 0; j < r2.nodes.size(); ++j) s2 += r2.weights[j] * std::pow(cd(1.0, r2.nodes[j] / y), a - 1.0);
    cd i1 = std::polar(std::pow(y, -a), 0.5 * std::numbers::pi * a) * s1;
    cd i2 = std::polar(std::pow(y, -c), y + 0.5 * std::numbers::pi - 0.5 * std::numbers::pi * (c - 1.0)) * s2;
    double log_pref = std::lgamma(b) - std::lgamma(a) - std::lgamma(c);
    return std::exp(log_pref) * (i1 - i2);
}

} // namespace

HypergeometricValue kummer_m_imag(double a, double b, double y, int nodes, double y_switch) {
    if (!(a > 0.0) || !(b > a)) throw std::invalid_argument("kummer_m_imag needs 0 < a < b");
    if (!(y >= 0.0)) throw std::invalid_argument("kummer_m_imag needs y >= 0");
    if (y < y_switch) return series(a, b, y);
    HypergeometricValue v;
    v.value = contour(a, b, y, nodes);
    auto coarse = contour(a, b, y, nodes / 2);
    v.abs_error = std::abs(v.value - coarse) + std::abs(v.value) * std::numeric_limits<double>::epsilon();
    return v;
}

} // namespace amalgam::detail
