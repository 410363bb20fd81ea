#include "stencil.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace amalgam::wiener {

double WindowSpec::half_width() const { return kind == WindowKind::cube ? 0.5 * step : radius; }

nlohmann::json WindowSpec::to_json() const {
    const char* k = kind == WindowKind::gaussian ? "gaussian" : kind == WindowKind::smooth_bump ? "smooth_bump" : "cube";
    return {{"kind", k},
            {"radius", kind == WindowKind::cube ? 0.5 * step : radius},
            {"step", step},
            {"normalization", normalization == Normalization::unit_l2 ? "unit_l2" : "unit_partition"}};
}

WindowSpec cube_partition(double side) {
    return WindowSpec{WindowKind::cube, 0.5 * side, side, Normalization::unit_partition};
}

WindowSpec smooth_bump(double radius, double step) {
    return WindowSpec{WindowKind::smooth_bump, radius, step, Normalization::unit_l2};
}

WindowSpec gaussian_window(double radius, double step) {
    return WindowSpec{WindowKind::gaussian, radius, step, Normalization::unit_l2};
}

namespace {

void validate(const WindowSpec& w) {
    if (!(w.step > 0.0) || !std::isfinite(w.step)) throw std::invalid_argument("window lattice step must be positive");
    if (w.kind != WindowKind::cube && (!(w.radius > 0.0) || !std::isfinite(w.radius)))
        throw std::invalid_argument("window support radius must be positive and finite");
    if (w.kind != WindowKind::cube && w.normalization == Normalization::unit_partition)
        throw std::invalid_argument("unit-partition normalization applies to cube windows only");
}

double radial_shape(const WindowSpec& w, double r2) {
    double R2 = w.radius * w.radius;
    if (w.kind == WindowKind::smooth_bump) {
        if (r2 >= R2) return 0.0;
        return std::exp(-1.0 / (1.0 - r2 / R2));
    }
    if (r2 > R2) return 0.0;
    double s = w.radius / 5.0;
    return std::exp(-r2 / (2.0 * s * s));
}

// Integral of exp(-2/(1-u^2)) over (-1, 1).
double bump_square_integral() {
    static const double value = [] {
        boost::math::quadrature::tanh_sinh<double> ts;
        return ts.integrate([](double u) { return std::exp(-2.0 / (1.0 - u * u)); }, -1.0, 1.0);
    }();
    return value;
}

} // namespace

double window_shape(const WindowSpec& w, std::span<const double> x) {
    if (w.kind == WindowKind::cube) {
        double h = 0.5 * w.step;
        for (double xi : x)
            if (xi < -h || xi >= h) return 0.0;
        return 1.0;
    }
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    return radial_shape(w, r2);
}

double time_window(const WindowSpec& w, double s) {
    validate(w);
    double v = window_shape(w, std::span<const double>(&s, 1));
    if (v == 0.0) return 0.0;
    if (w.kind == WindowKind::cube)
        return w.normalization == Normalization::unit_partition ? 1.0 : 1.0 / std::sqrt(w.step);
    double norm2 = 0.0;
    if (w.kind == WindowKind::smooth_bump) {
        norm2 = w.radius * bump_square_integral();
    } else {
        double sg = w.radius / 5.0;
        norm2 = sg * std::sqrt(std::numbers::pi) * std::erf(5.0);
    }
    return v / std::sqrt(norm2);
}

Stencil build_stencil(const grid::GridSpec& g, const WindowSpec& w) {
    validate(w);
    double dx = g.dx();
    double mr = w.step / dx;
    auto m = static_cast<std::int64_t>(std::llround(mr));
    if (m < 1 || std::abs(mr - static_cast<double>(m)) > 1e-9 * mr)
        throw std::invalid_argument("window lattice step must be a whole number of grid cells");
    if (static_cast<std::int64_t>(g.N) % m != 0)
        throw std::invalid_argument("window lattice step must divide the grid evenly");

    Stencil st;
    st.spacing = static_cast<std::size_t>(m);
    st.per_axis = g.N / st.spacing;
    auto N = static_cast<std::int64_t>(g.N);

    std::int64_t lo = 0, hi = 0;
    if (w.kind == WindowKind::cube) {
        lo = -(m / 2);
        hi = lo + m - 1;
    } else {
        auto h = static_cast<std::int64_t>(std::floor(w.radius / dx));
        lo = -h;
        hi = h;
    }
    if (hi - lo + 1 > N)
        throw std::invalid_argument("window support exceeds the periodic box; translates would self-overlap");

    std::array<std::int64_t, 3> d{0, 0, 0};
    std::array<double, 3> x{0, 0, 0};
    std::size_t nd = static_cast<std::size_t>(g.n);
    std::int64_t span = hi - lo + 1;
    std::int64_t total = 1;
    for (int a = 0; a < g.n; ++a) total *= span;
    for (std::int64_t flat = 0; flat < total; ++flat) {
        std::int64_t rest = flat;
        for (int a = g.n - 1; a >= 0; --a) {
            d[a] = lo + rest % span;
            rest /= span;
            x[a] = static_cast<double>(d[a]) * dx;
        }
        double v = window_shape(w, std::span<const double>(x.data(), nd));
        if (v == 0.0) continue;
        st.offsets.push_back(d);
        st.weights.push_back(v);
    }
    if (st.offsets.empty()) throw std::invalid_argument("window support contains no lattice point");

    if (w.normalization == Normalization::unit_l2) {
        double s = 0.0;
        for (double v : st.weights) s += v * v;
        double scale = 1.0 / std::sqrt(s * g.cell_volume());
        for (double& v : st.weights) v *= scale;
    }
    return st;
}

} // namespace amalgam::wiener
