#include "amalgam/propagator.hpp"

#include "summation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace amalgam::propagator {
namespace {

void check_sigma(const grid::GridSpec& g, double sigma) {
    if (!(sigma >= 0.0) || !(sigma < 0.5 * g.n))
        throw std::invalid_argument("smoothing exponent sigma must lie in [0, n/2)");
}

double xi_squared(const grid::GridSpec& g, std::size_t flat) {
    auto idx = g.unravel(flat);
    double s = 0.0;
    for (int a = 0; a < g.n; ++a) {
        double xi = g.frequency(idx[a]);
        s += xi * xi;
    }
    return s;
}

double spectral_weight(const grid::GridSpec& g) { return std::pow(g.dxi() / (2.0 * std::numbers::pi), g.n); }

} // namespace

std::complex<double> symbol(const grid::GridSpec& g, std::size_t flat, double t, double sigma) {
    double x2 = xi_squared(g, flat);
    if (sigma > 0.0 && x2 == 0.0) return 0.0;
    double amp = sigma > 0.0 ? std::pow(x2, -0.5 * sigma) : 1.0;
    return std::polar(amp, -t * x2);
}

double zero_mode_fraction(const grid::SampledField& field) {
    auto spec = grid::transform(field, grid::Direction::forward);
    double total = grid::spectral_l2_norm(spec);
    if (total == 0.0) return 0.0;
    return std::norm(spec.values[0]) * spectral_weight(field.grid) / (total * total);
}

NormResult hsigma_norm(const grid::SampledField& field, double sigma) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("Sobolev exponent must be nonnegative");
    auto spec = grid::transform(field, grid::Direction::forward);
    const auto& g = field.grid;
    double sum = detail::pairwise_sum(0, spec.values.size(), [&](std::size_t k) {
        double x2 = xi_squared(g, k);
        double w = sigma > 0.0 ? (x2 == 0.0 ? 0.0 : std::pow(x2, sigma)) : 1.0;
        return w * std::norm(spec.values[k]);
    });
    NormResult r;
    r.value = std::sqrt(sum * spectral_weight(g));
    r.space = "H^sigma";
    r.exponents = {{"sigma", sigma}};
    r.grid = g.to_json();
    r.est_error = 0.0;
    if (sigma > 0.0) {
        double total = grid::spectral_l2_norm(spec);
        double frac = total > 0.0 ? std::norm(spec.values[0]) * spectral_weight(g) / (total * total) : 0.0;
        if (frac > kZeroModeTolerance) {
            std::ostringstream os;
            os << "zero-mode mass fraction " << frac << " exceeds " << kZeroModeTolerance;
            r.warnings.push_back(os.str());
        }
    }
    return r;
}

grid::SampledField evolve(const grid::SampledField& field, double t, double sigma) {
    check_sigma(field.grid, sigma);
    auto spec = grid::transform(field, grid::Direction::forward);
    for (std::size_t k = 0; k < spec.values.size(); ++k) spec.values[k] *= symbol(field.grid, k, t, sigma);
    auto out = grid::transform(spec, grid::Direction::inverse);
    out.label = field.label;
    return out;
}

grid::SpaceTimeField evolve_series(const grid::SampledField& field, std::span<const double> times, double sigma) {
    check_sigma(field.grid, sigma);
    if (times.empty()) throw std::invalid_argument("time list is empty");
    grid::SpaceTimeField stf;
    stf.grid = field.grid;
    stf.times.assign(times.begin(), times.end());
    auto spec = grid::transform(field, grid::Direction::forward);
    for (double t : times) {
        auto s = spec;
        for (std::size_t k = 0; k < s.values.size(); ++k) s.values[k] *= symbol(field.grid, k, t, sigma);
        auto u = grid::transform(s, grid::Direction::inverse);
        u.label = field.label;
        stf.slices.push_back(std::move(u));
    }
    stf.validate();
    return stf;
}

grid::SampledField adjoint_accumulate(const grid::SpaceTimeField& stf, double sigma) {
    if (stf.times.empty()) throw std::invalid_argument("time list is empty");
    stf.validate();
    check_sigma(stf.grid, sigma);
    auto w = stf.quadrature_weights();
    grid::SampledField acc = grid::zeros(stf.grid, "adjoint");
    acc.domain = grid::Domain::spectral;
    for (std::size_t i = 0; i < stf.slices.size(); ++i) {
        auto s = grid::transform(stf.slices[i], grid::Direction::forward);
        for (std::size_t k = 0; k < s.values.size(); ++k)
            acc.values[k] += w[i] * std::conj(symbol(stf.grid, k, stf.times[i], sigma)) * s.values[k];
    }
    return grid::transform(acc, grid::Direction::inverse);
}

std::complex<double> inner_product(const grid::SampledField& f, const grid::SampledField& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("inner product of fields on different grids");
    double re = detail::pairwise_sum(0, f.values.size(), [&](std::size_t j) { return (f.values[j] * std::conj(g.values[j])).real(); });
    double im = detail::pairwise_sum(0, f.values.size(), [&](std::size_t j) { return (f.values[j] * std::conj(g.values[j])).imag(); });
    return f.grid.cell_volume() * std::complex<double>(re, im);
}

std::complex<double> inner_product(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G) {
    if (F.times != G.times) throw std::invalid_argument("inner product of space-time fields on different instants");
    auto w = F.quadrature_weights();
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < F.slices.size(); ++i) acc += w[i] * inner_product(F.slices[i], G.slices[i]);
    return acc;
}

} // namespace amalgam::propagator
