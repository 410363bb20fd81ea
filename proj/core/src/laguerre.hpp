#pragma once

#include <vector>

namespace amalgam::detail {

// Nodes and weights for  integral_0^inf x^alpha e^{-x} f(x) dx,  alpha > -1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached; thread-safe.
GaussRule gauss_laguerre(double alpha, int m);

} // namespace amalgam::detail
