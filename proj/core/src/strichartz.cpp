#include "amalgam/propagator.hpp"
#include "amalgam/verify.hpp"

#include "fft.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace amalgam::verify {
namespace {

// Evaluates fn(i) for i in [0, count) across hardware threads; results land by index.
template <class F>
std::vector<double> parallel_map(std::size_t count, F&& fn) {
    std::vector<double> out(count);
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
    if (count < 4 || workers == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) out[i] = fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > 1e-12 * std::max(1.0, std::abs(x))) out.push_back(x);
    return out;
}

void require_nonzero(const grid::SampledField& f) {
    bool any = std::any_of(f.values.begin(), f.values.end(), [](const grid::cplx& v) { return v != 0.0; });
    if (!any) throw std::invalid_argument("degenerate datum: f is identically zero");
}

// Resamples each line along `axis` at lambda * x by trigonometric interpolation.
void rescale_axis(grid::SampledField& f, int axis, double lambda) {
    const auto& g = f.grid;
    std::size_t N = g.N;
    std::size_t stride = 1;
    for (int a = g.n - 1; a > axis; --a) stride *= N;
    std::size_t lines = g.size() / N;
    std::vector<grid::cplx> line(N), coeff(N);
    for (std::size_t l = 0; l < lines; ++l) {
        std::size_t outer = l / stride, inner = l % stride;
        std::size_t base = outer * stride * N + inner;
        for (std::size_t j = 0; j < N; ++j) coeff[j] = f.values[base + j * stride];
        detail::fft_1d(coeff.data(), N, detail::FftSign::forward);
        for (std::size_t j = 0; j < N; ++j) {
            double y = lambda * g.coordinate(j);
            if (y < -g.L || y >= g.L) {
                line[j] = 0.0;
                continue;
            }
            // position in grid units measured from -L
            double u = (y + g.L) / g.dx();
            grid::cplx acc = 0.0;
            for (std::size_t k = 0; k < N; ++k) {
                auto s = static_cast<double>(g.signed_index(k));
                double phase = 2.0 * std::numbers::pi * s * u / static_cast<double>(N);
                acc += coeff[k] * grid::cplx(std::cos(phase), std::sin(phase));
            }
            line[j] = acc / static_cast<double>(N);
        }
        for (std::size_t j = 0; j < N; ++j) f.values[base + j * stride] = line[j];
    }
}

} // namespace

std::vector<double> default_strichartz_times() {
    auto logs = propagator::log_spaced_times(0.01, 100.0, 24);
    std::vector<double> pos = logs;
    for (int k = 1; k <= 800; ++k) pos.push_back(k / 8.0);
    pos = sorted_unique(pos);
    std::vector<double> t;
    t.reserve(2 * pos.size());
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) t.push_back(-*it);
    t.insert(t.end(), pos.begin(), pos.end());
    return t;
}

RatioResult strichartz_ratio(const grid::SampledField& f, const exponents::ExponentTuple& tuple,
                             const RatioOptions& opts) {
    f.validate();
    if (f.domain != grid::Domain::physical) throw std::invalid_argument("Strichartz ratio needs a physical-domain datum");
    if (tuple.n != f.grid.n) throw std::invalid_argument("tuple dimension differs from the grid dimension");
    auto verdict = exponents::satisfies_theorem(tuple);
    if (!verdict.accept) {
        std::string list;
        for (const auto& v : verdict.violated()) list += (list.empty() ? "" : "; ") + v;
        throw std::invalid_argument("tuple rejected by the theorem conditions: " + list);
    }
    require_nonzero(f);

    RatioResult res;
    std::vector<double> times = opts.times.empty() ? default_strichartz_times() : opts.times;
    auto weights = grid::trapezoid_weights(times);
    double rt = tuple.rt.to_double(), r = tuple.r.to_double();
    bool spatial_divergent = false;
    std::vector<char> slice_divergent(times.size(), 0);
    auto g = parallel_map(times.size(), [&](std::size_t i) {
        auto u = propagator::evolve(f, times[i], 0.0);
        auto nr = wiener::amalgam_norm(u, rt, r, opts.window_x);
        slice_divergent[i] = nr.divergent ? 1 : 0;
        return nr.value;
    });
    spatial_divergent = std::any_of(slice_divergent.begin(), slice_divergent.end(), [](char c) { return c != 0; });

    wiener::SpaceTimeOptions so;
    so.weak_outer_time = opts.weak;
    res.numerator = wiener::temporal_amalgam_norm(times, weights, g, tuple.qt.to_double(), tuple.q.to_double(),
                                                  opts.window_t, so);
    res.numerator.space += " W(L^rt,L^r)_x";
    res.numerator.exponents["rt"] = tuple.rt.str();
    res.numerator.exponents["r"] = tuple.r.str();
    res.numerator.grid = f.grid.to_json();
    res.numerator.grid["slices"] = times.size();
    res.numerator.window = {{"time", res.numerator.window}, {"space", opts.window_x.to_json()}};
    if (spatial_divergent) {
        res.numerator.divergent = true;
        res.numerator.warnings.push_back("spatial outer norm dominated by the box edge on some slice");
    }
    res.denominator = propagator::hsigma_norm(f, to_double(tuple.sigma));
    if (!(res.denominator.value > 0.0)) throw std::invalid_argument("degenerate datum: homogeneous Sobolev norm is zero");
    res.ratio = res.numerator.value / res.denominator.value;
    res.divergent = res.numerator.divergent;
    for (const auto& w : res.numerator.warnings) res.warnings.push_back(w);
    for (const auto& w : res.denominator.warnings) res.warnings.push_back(w);
    return res;
}

RatioSweep strichartz_frequency_sweep(const grid::SampledField& g, const exponents::ExponentTuple& tuple,
                                      std::span<const double> frequencies, const RatioOptions& opts) {
    if (frequencies.empty()) throw std::invalid_argument("frequency sweep needs at least one frequency");
    RatioSweep sw;
    sw.tuple = tuple;
    for (double w : frequencies) {
        grid::SampledField f = g;
        for (std::size_t j = 0; j < f.values.size(); ++j) {
            double x1 = g.grid.coordinate(g.grid.unravel(j)[0]);
            f.values[j] *= std::polar(1.0, w * x1);
        }
        auto rr = strichartz_ratio(f, tuple, opts);
        if (!(rr.ratio > 0.0) || !std::isfinite(rr.ratio)) throw std::runtime_error("non-positive or non-finite ratio");
        sw.ratios.push_back(rr.ratio);
        std::ostringstream os;
        os << "freq=" << w << (rr.divergent ? " divergent" : "");
        sw.descriptors.push_back(os.str());
    }
    std::vector<double> s = sw.ratios;
    std::sort(s.begin(), s.end());
    sw.min = s.front();
    sw.max = s.back();
    sw.median = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);
    return sw;
}

grid::SampledField rescale(const grid::SampledField& f, double lambda) {
    f.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("scale factor must be positive");
    grid::SampledField out = f;
    for (int a = 0; a < f.grid.n; ++a) rescale_axis(out, a, lambda);
    double frac = grid::boundary_mass_fraction(out);
    if (frac > 1e-6) {
        std::ostringstream os;
        os << "rescaling by " << lambda << " leaves mass fraction " << frac << " near the box edge";
        throw std::invalid_argument(os.str());
    }
    return out;
}

ScalingSweep classical_scaling_sweep(const grid::SampledField& f, std::span<const double> lambdas, Rational sigma,
                                     const ExtReal& q, std::optional<double> r_override, std::vector<double> times) {
    if (lambdas.empty()) throw std::invalid_argument("scaling sweep needs at least one lambda");
    if (q.is_inf()) throw std::invalid_argument("scaling sweep needs a finite q");
    ScalingSweep sw;
    sw.q = q.to_double();
    sw.r = r_override ? *r_override : exponents::classical_sobolev_line(f.grid.n, sigma, q).to_double();
    if (!(sw.r >= 1.0)) throw std::invalid_argument("spatial exponent must be >= 1");
    if (times.empty()) times = default_strichartz_times();
    auto weights = grid::trapezoid_weights(times);
    for (double lambda : lambdas) {
        auto fl = rescale(f, lambda);
        require_nonzero(fl);
        auto g = parallel_map(times.size(), [&](std::size_t i) {
            return grid::lebesgue_norm(propagator::evolve(fl, times[i], 0.0), sw.r).value;
        });
        double mx = *std::max_element(g.begin(), g.end());
        double s = detail::pairwise_sum(0, g.size(), [&](std::size_t i) { return weights[i] * std::pow(g[i] / mx, sw.q); });
        double num = mx * std::pow(s, 1.0 / sw.q);
        double den = propagator::hsigma_norm(fl, to_double(sigma)).value;
        if (!(den > 0.0)) throw std::invalid_argument("degenerate datum: homogeneous Sobolev norm is zero");
        sw.lambdas.push_back(lambda);
        sw.ratios.push_back(num / den);
    }
    for (double r : sw.ratios) sw.max_rel_deviation = std::max(sw.max_rel_deviation, std::abs(r / sw.ratios.front() - 1.0));
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < sw.ratios.size(); ++i) {
        inc = inc && sw.ratios[i] > sw.ratios[i - 1];
        dec = dec && sw.ratios[i] < sw.ratios[i - 1];
    }
    sw.monotone = sw.ratios.size() >= 2 && (inc || dec);
    return sw;
}

} // namespace amalgam::verify
