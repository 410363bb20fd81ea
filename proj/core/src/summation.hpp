#pragma once

#include <cstddef>
#include <span>

namespace amalgam::detail {

// Pairwise summation in a fixed tree order; bit-stable for a given length.
template <class F>
double pairwise_sum(std::size_t begin, std::size_t end, F&& term) {
    std::size_t count = end - begin;
    if (count <= 32) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += term(i);
        return s;
    }
    std::size_t mid = begin + count / 2;
    return pairwise_sum(begin, mid, term) + pairwise_sum(mid, end, term);
}

inline double pairwise_sum(std::span<const double> v) {
    return pairwise_sum(0, v.size(), [&](std::size_t i) { return v[i]; });
}

} // namespace amalgam::detail
