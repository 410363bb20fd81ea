#pragma once

#include <complex>

namespace amalgam::detail {

struct HypergeometricValue {
    std::complex<double> value;
    double abs_error = 0.0;
};

// Kummer M(a, b, iy) for 0 < a < b, y >= 0.
// Power series below y_switch, otherwise the steepest-descent form of the Euler integral
// integrated with generalized Gauss-Laguerre rules (m and m/2 nodes give the error proxy).
HypergeometricValue kummer_m_imag(double a, double b, double y, int nodes = 64, double y_switch = 4.0);

} // namespace amalgam::detail
