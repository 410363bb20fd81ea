#include "amalgam/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace amalgam::grid {
namespace {

static_assert(std::endian::native == std::endian::little, "container I/O assumes a little-endian host");

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("truncated field container");
    return v;
}

} // namespace

void write_fields(std::ostream& os, const SpaceTimeField& stf) {
    stf.validate();
    const auto& g = stf.grid;
    put<std::int64_t>(os, g.n);
    put<double>(os, g.L);
    put<std::int64_t>(os, static_cast<std::int64_t>(g.N));
    put<std::int64_t>(os, static_cast<std::int64_t>(stf.times.size()));
    for (double t : stf.times) put<double>(os, t);
    for (const auto& s : stf.slices) {
        for (const auto& v : s.values) {
            put<double>(os, v.real());
            put<double>(os, v.imag());
        }
    }
    if (!os) throw std::runtime_error("failed writing field container");
}

SpaceTimeField read_fields(std::istream& is) {
    auto n = get<std::int64_t>(is);
    auto L = get<double>(is);
    auto N = get<std::int64_t>(is);
    auto count = get<std::int64_t>(is);
    if (count < 1 || N < 8) throw std::runtime_error("malformed field container header");
    SpaceTimeField stf;
    stf.grid = make_grid(static_cast<int>(n), L, static_cast<std::size_t>(N));
    stf.times.resize(static_cast<std::size_t>(count));
    for (auto& t : stf.times) t = get<double>(is);
    for (std::int64_t c = 0; c < count; ++c) {
        SampledField f = zeros(stf.grid);
        for (auto& v : f.values) {
            double re = get<double>(is);
            double im = get<double>(is);
            v = {re, im};
        }
        stf.slices.push_back(std::move(f));
    }
    stf.validate();
    return stf;
}

void write_fields(const std::filesystem::path& path, const SpaceTimeField& stf) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_fields(os, stf);
}

SpaceTimeField read_fields(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    return read_fields(is);
}

SpaceTimeField as_single_slice(const SampledField& f) {
    if (f.domain != Domain::physical) throw std::invalid_argument("only physical fields are stored");
    return SpaceTimeField{f.grid, {0.0}, {f}, {}};
}

} // namespace amalgam::grid
