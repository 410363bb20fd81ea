#pragma once

#include "amalgam/grid.hpp"

#include <filesystem>
#include <iosfwd>

namespace amalgam::grid {

/// Flat little-endian container:
///   int64 n, float64 L, int64 N, int64 slice count, float64 times[count],
///   then count * N^n interleaved (re, im) float64 pairs.
void write_fields(std::ostream& os, const SpaceTimeField& stf);
SpaceTimeField read_fields(std::istream& is);

void write_fields(const std::filesystem::path& path, const SpaceTimeField& stf);
SpaceTimeField read_fields(const std::filesystem::path& path);

/// Wraps one physical field as a single slice at t = 0.
SpaceTimeField as_single_slice(const SampledField& f);

} // namespace amalgam::grid
