#include "amalgam/grid.hpp"

#include "amalgam/log.hpp"
#include "amalgam/report.hpp"
#include "fft.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace amalgam::grid {

double GridSpec::dxi() const { return std::numbers::pi / L; }

double GridSpec::cell_volume() const { return std::pow(dx(), n); }

std::size_t GridSpec::size() const {
    std::size_t s = 1;
    for (int i = 0; i < n; ++i) s *= N;
    return s;
}

std::int64_t GridSpec::signed_index(std::size_t j) const {
    auto k = static_cast<std::int64_t>(j);
    return j < N / 2 ? k : k - static_cast<std::int64_t>(N);
}

double GridSpec::frequency(std::size_t j) const {
    return static_cast<double>(signed_index(j)) * dxi();
}

std::array<std::size_t, 3> GridSpec::unravel(std::size_t flat) const {
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int a = n - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = flat % N;
        flat /= N;
    }
    return idx;
}

std::size_t GridSpec::ravel(const std::array<std::size_t, 3>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < n; ++a) flat = flat * N + idx[static_cast<std::size_t>(a)];
    return flat;
}

nlohmann::json GridSpec::to_json() const {
    return {{"n", n}, {"L", L}, {"N", N}, {"dx", dx()}};
}

GridSpec make_grid(int n, double L, std::size_t N) {
    if (n < 1 || n > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("grid half-length must be positive");
    if (N < 8 || (N & (N - 1)) != 0) throw std::invalid_argument("points per axis must be a power of two >= 8");
    return GridSpec{n, L, N};
}

void SampledField::validate() const {
    if (values.size() != grid.size()) throw std::invalid_argument("field size does not match its grid");
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("field '" + label + "' has non-finite entries");
}

SampledField zeros(const GridSpec& g, std::string label) {
    return SampledField{g, std::vector<cplx>(g.size()), std::move(label), Domain::physical};
}

SampledField sample(const GridSpec& g, const std::function<cplx(std::span<const double>)>& fn,
                    std::string label) {
    SampledField f = zeros(g, std::move(label));
    std::array<double, 3> x{};
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        auto idx = g.unravel(i);
        for (int a = 0; a < g.n; ++a) x[a] = g.coordinate(idx[a]);
        f.values[i] = fn(std::span<const double>(x.data(), static_cast<std::size_t>(g.n)));
    }
    return f;
}

std::vector<double> trapezoid_weights(std::span<const double> t) {
    std::vector<double> w(t.size(), 0.0);
    if (t.size() == 1) {
        w[0] = 1.0;
        return w;
    }
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        double h = 0.5 * (t[i + 1] - t[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

std::vector<double> SpaceTimeField::quadrature_weights() const {
    if (!weights.empty()) return weights;
    return trapezoid_weights(times);
}

void SpaceTimeField::validate() const {
    if (times.empty()) throw std::invalid_argument("space-time field has no time slices");
    if (times.size() != slices.size()) throw std::invalid_argument("time list and slice count differ");
    if (!weights.empty() && weights.size() != times.size())
        throw std::invalid_argument("weight list and time list differ in length");
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i] < times[i + 1])) throw std::invalid_argument("times must be strictly increasing");
    for (const auto& s : slices) {
        if (!(s.grid == grid)) throw std::invalid_argument("slices must share the space-time grid");
        s.validate();
    }
}

namespace {

void apply_checkerboard(std::vector<cplx>& v, const GridSpec& g) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        auto idx = g.unravel(i);
        std::size_t s = 0;
        for (int a = 0; a < g.n; ++a) s += idx[a];
        if (s & 1U) v[i] = -v[i];
    }
}

// (sum_i |v_i|^p * weight)^{1/p}, scaled by the max to avoid overflow.
double weighted_lp(const std::vector<cplx>& v, double p, double weight, std::size_t stride_mask = 0,
                   const GridSpec* g = nullptr) {
    auto keep = [&](std::size_t i) {
        if (!stride_mask) return true;
        auto idx = g->unravel(i);
        for (int a = 0; a < g->n; ++a)
            if (idx[a] & 1U) return false;
        return true;
    };
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (keep(i)) m = std::max(m, std::abs(v[i]));
    if (std::isinf(p) || m == 0.0) return m;
    double s = detail::pairwise_sum(0, v.size(), [&](std::size_t i) {
        return keep(i) ? std::pow(std::abs(v[i]) / m, p) : 0.0;
    });
    return m * std::pow(s * weight, 1.0 / p);
}

void check_exponent(double p, const char* name) {
    if (!(p >= 1.0)) throw std::invalid_argument(std::string("exponent ") + name + " must lie in [1, inf]");
}

} // namespace

SampledField transform(const SampledField& field, Direction dir) {
    field.validate();
    const auto& g = field.grid;
    SampledField out = field;
    if (dir == Direction::forward) {
        if (field.domain != Domain::physical) throw std::invalid_argument("forward transform needs a physical field");
        detail::fft_cube(out.values.data(), g.n, g.N, detail::FftSign::forward);
        apply_checkerboard(out.values, g);
        double scale = g.cell_volume();
        for (auto& v : out.values) v *= scale;
        out.domain = Domain::spectral;
    } else {
        if (field.domain != Domain::spectral) throw std::invalid_argument("inverse transform needs a spectral field");
        apply_checkerboard(out.values, g);
        detail::fft_cube(out.values.data(), g.n, g.N, detail::FftSign::backward);
        double scale = std::pow(g.dxi() / (2.0 * std::numbers::pi), g.n);
        for (auto& v : out.values) v *= scale;
        out.domain = Domain::physical;
    }
    return out;
}

double spectral_l2_norm(const SampledField& spectral) {
    if (spectral.domain != Domain::spectral) throw std::invalid_argument("spectral_l2_norm needs a spectral field");
    const auto& g = spectral.grid;
    return weighted_lp(spectral.values, 2.0, std::pow(g.dxi() / (2.0 * std::numbers::pi), g.n));
}

NormResult lebesgue_norm(const SampledField& field, double p) {
    check_exponent(p, "p");
    field.validate();
    if (field.domain != Domain::physical) throw std::invalid_argument("lebesgue_norm needs a physical field");
    const auto& g = field.grid;
    NormResult r;
    r.value = weighted_lp(field.values, p, g.cell_volume());
    r.space = "L^" + (std::isinf(p) ? std::string("inf") : report::format_double(p));
    r.exponents = {{"p", std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p)}};
    r.grid = g.to_json();
    double coarse = weighted_lp(field.values, p, g.cell_volume() * std::pow(2.0, g.n), 1, &g);
    r.est_error = r.value > 0.0 ? std::abs(coarse - r.value) / r.value : 0.0;
    return r;
}

NormResult mixed_lebesgue_norm(const SpaceTimeField& stf, double q, double r) {
    check_exponent(q, "q");
    check_exponent(r, "r");
    stf.validate();
    auto w = stf.quadrature_weights();
    std::vector<double> inner(stf.slices.size());
    double est = 0.0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        auto ni = lebesgue_norm(stf.slices[i], r);
        inner[i] = ni.value;
        est = std::max(est, ni.est_error);
    }
    NormResult res;
    double m = *std::max_element(inner.begin(), inner.end());
    if (std::isinf(q) || m == 0.0) {
        res.value = m;
    } else {
        double s = detail::pairwise_sum(0, inner.size(), [&](std::size_t i) {
            return w[i] * std::pow(inner[i] / m, q);
        });
        res.value = m * std::pow(s, 1.0 / q);
    }
    auto js = [](double e) { return std::isinf(e) ? nlohmann::json("inf") : nlohmann::json(e); };
    res.space = "L^q_t L^r_x";
    res.exponents = {{"q", js(q)}, {"r", js(r)}};
    res.grid = stf.grid.to_json();
    res.grid["slices"] = stf.times.size();
    res.est_error = est;
    return res;
}

double boundary_mass_fraction(const SampledField& field) {
    const auto& g = field.grid;
    double edge = 0.75 * g.L;
    double total = 0.0, outer = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        double m = std::norm(field.values[i]);
        total += m;
        auto idx = g.unravel(i);
        for (int a = 0; a < g.n; ++a) {
            if (std::abs(g.coordinate(idx[a])) > edge) {
                outer += m;
                break;
            }
        }
    }
    return total > 0.0 ? outer / total : 0.0;
}

bool check_boundary_mass(const SampledField& field, double tol) {
    double frac = boundary_mass_fraction(field);
    if (frac > tol) {
        std::ostringstream os;
        os << "field '" << field.label << "' carries mass fraction " << frac
           << " within L/4 of the box boundary (tolerance " << tol << ")";
        warn(os.str());
        return false;
    }
    return true;
}

} // namespace amalgam::grid
