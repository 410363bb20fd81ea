#pragma once

#include "amalgam/wiener.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace amalgam::wiener {

// Window sampled on the lattice around a translate anchor.
struct Stencil {
    std::vector<std::array<std::int64_t, 3>> offsets;
    std::vector<double> weights;
    // Grid points between neighbouring anchors, and anchors per axis.
    std::size_t spacing = 1;
    std::size_t per_axis = 1;
};

Stencil build_stencil(const grid::GridSpec& g, const WindowSpec& w);

} // namespace amalgam::wiener
