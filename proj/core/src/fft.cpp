#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace amalgam::detail {
namespace {

using Key = std::tuple<int, std::size_t, int>;

// The planner is not thread-safe; execution of an existing plan is.
fftw_plan plan_for(int rank, std::size_t N, FftSign sign) {
    static std::mutex mutex;
    static std::map<Key, fftw_plan> cache;
    std::lock_guard lock(mutex);
    Key key{rank, N, static_cast<int>(sign)};
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    int dims[3] = {static_cast<int>(N), static_cast<int>(N), static_cast<int>(N)};
    std::size_t total = 1;
    for (int i = 0; i < rank; ++i) total *= N;
    auto* buf = fftw_alloc_complex(total);
    if (!buf) throw std::bad_alloc();
    fftw_plan p = fftw_plan_dft(rank, dims, buf, buf, static_cast<int>(sign),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw std::runtime_error("FFTW planning failed");
    cache.emplace(key, p);
    return p;
}

} // namespace

void fft_cube(std::complex<double>* data, int n, std::size_t N, FftSign sign) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(n, N, sign), d, d);
}

void fft_1d(std::complex<double>* data, std::size_t len, FftSign sign) {
    fft_cube(data, 1, len, sign);
}

} // namespace amalgam::detail
