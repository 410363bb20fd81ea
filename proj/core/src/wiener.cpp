#include "amalgam/wiener.hpp"
#include "amalgam/report.hpp"

#include "stencil.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace amalgam::wiener {
namespace {

nlohmann::json exponent_json(double e) { return std::isinf(e) ? nlohmann::json("inf") : nlohmann::json(e); }

std::string exponent_text(double e) { return report::format_double(e); }

void check_exponent(double p, const char* name) {
    if (!(p >= 1.0)) throw std::invalid_argument(std::string("exponent ") + name + " must lie in [1, inf]");
}

std::vector<double> local_norms_impl(const grid::SampledField& f, double p, const Stencil& st) {
    const auto& g = f.grid;
    auto N = static_cast<std::int64_t>(g.N);
    std::size_t count = 1;
    for (int a = 0; a < g.n; ++a) count *= st.per_axis;
    std::vector<double> out(count);
    double vol = g.cell_volume();
    std::vector<double> terms(st.offsets.size());
    for (std::size_t k = 0; k < count; ++k) {
        std::array<std::int64_t, 3> anchor{0, 0, 0};
        std::size_t rest = k;
        for (int a = g.n - 1; a >= 0; --a) {
            anchor[a] = static_cast<std::int64_t>((rest % st.per_axis) * st.spacing);
            rest /= st.per_axis;
        }
        double mx = 0.0;
        for (std::size_t s = 0; s < st.offsets.size(); ++s) {
            std::array<std::size_t, 3> idx{0, 0, 0};
            for (int a = 0; a < g.n; ++a) {
                std::int64_t j = (anchor[a] + st.offsets[s][a]) % N;
                idx[a] = static_cast<std::size_t>(j < 0 ? j + N : j);
            }
            terms[s] = std::abs(f.values[g.ravel(idx)]) * st.weights[s];
            mx = std::max(mx, terms[s]);
        }
        if (std::isinf(p) || mx == 0.0) {
            out[k] = mx;
            continue;
        }
        double sum = detail::pairwise_sum(0, terms.size(), [&](std::size_t s) { return std::pow(terms[s] / mx, p); });
        out[k] = mx * std::pow(sum * vol, 1.0 / p);
    }
    return out;
}

struct Outer {
    double value = 0.0;
    double tail_fraction = 0.0;
};

// (weight * sum |I_k|^q)^{1/q} together with the share of translates flagged by `is_tail`.
Outer outer_norm(const std::vector<double>& I, double q, double weight, const std::function<bool(std::size_t)>& is_tail) {
    Outer o;
    double mx = I.empty() ? 0.0 : *std::max_element(I.begin(), I.end());
    if (std::isinf(q) || mx == 0.0 || !std::isfinite(mx)) {
        o.value = mx;
        return o;
    }
    double total = detail::pairwise_sum(0, I.size(), [&](std::size_t k) { return std::pow(I[k] / mx, q); });
    double tail = detail::pairwise_sum(0, I.size(), [&](std::size_t k) {
        return is_tail(k) ? std::pow(I[k] / mx, q) : 0.0;
    });
    o.value = mx * std::pow(weight * total, 1.0 / q);
    o.tail_fraction = total > 0.0 ? tail / total : 0.0;
    return o;
}

struct SpatialOuter {
    Outer outer;
    std::size_t translates = 0;
};

SpatialOuter spatial_amalgam(const grid::SampledField& f, double p, double q, const WindowSpec& w) {
    Stencil st = build_stencil(f.grid, w);
    auto I = local_norms_impl(f, p, st);
    const auto& g = f.grid;
    double edge = 0.75 * g.L;
    auto is_tail = [&](std::size_t k) {
        std::size_t rest = k;
        for (int a = 0; a < g.n; ++a) {
            double c = -g.L + static_cast<double>(rest % st.per_axis) * w.step;
            rest /= st.per_axis;
            if (std::abs(c) > edge) return true;
        }
        return false;
    };
    return {outer_norm(I, q, std::pow(w.step, g.n), is_tail), I.size()};
}

// Every other lattice point per axis; nullopt when too coarse to be meaningful.
std::optional<grid::SampledField> half_resolution(const grid::SampledField& f) {
    const auto& g = f.grid;
    if (g.N < 16) return std::nullopt;
    grid::SampledField c = grid::zeros(grid::make_grid(g.n, g.L, g.N / 2), f.label);
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        auto idx = c.grid.unravel(i);
        for (int a = 0; a < g.n; ++a) idx[a] *= 2;
        c.values[i] = f.values[g.ravel(idx)];
    }
    return c;
}

} // namespace

std::vector<double> local_norms(const grid::SampledField& field, double p, const WindowSpec& window) {
    check_exponent(p, "p");
    field.validate();
    return local_norms_impl(field, p, build_stencil(field.grid, window));
}

NormResult amalgam_norm(const grid::SampledField& field, double p, double q, const WindowSpec& window) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    field.validate();
    if (field.domain != grid::Domain::physical) throw std::invalid_argument("amalgam_norm needs a physical field");

    auto main = spatial_amalgam(field, p, q, window);
    NormResult r;
    r.value = main.outer.value;
    r.space = "W(L^" + exponent_text(p) + ",L^" + exponent_text(q) + ")";
    r.exponents = {{"p", exponent_json(p)}, {"q", exponent_json(q)}};
    r.grid = field.grid.to_json();
    r.window = window.to_json();
    r.window["translates"] = main.translates;

    double uniform_share = 1.0 - std::pow(0.75, field.grid.n);
    if (!std::isfinite(r.value) || main.outer.tail_fraction >= 0.5 * uniform_share) {
        r.divergent = true;
        r.warnings.push_back("outer sum dominated by translates near the box edge (tail fraction " +
                             nlohmann::json(main.outer.tail_fraction).dump() + ")");
    }

    if (auto coarse = half_resolution(field)) {
        try {
            auto c = spatial_amalgam(*coarse, p, q, window);
            r.est_error = r.value > 0.0 ? std::abs(c.outer.value - r.value) / r.value : 0.0;
        } catch (const std::invalid_argument&) {
            // window not representable on the coarse lattice
        }
    }
    return r;
}

NormResult weak_lorentz_norm(std::span<const double> sequence, double p) {
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("weak Lorentz exponent must lie in (0, inf)");
    std::vector<double> a(sequence.size());
    std::transform(sequence.begin(), sequence.end(), a.begin(), [](double v) { return std::abs(v); });
    std::sort(a.begin(), a.end(), std::greater<>());
    NormResult r;
    r.space = "l^{" + exponent_text(p) + ",inf}";
    r.exponents = {{"p", p}};
    r.est_error = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
        if (!std::isfinite(a[m])) {
            r.value = a[m];
            r.divergent = true;
            return r;
        }
        r.value = std::max(r.value, std::pow(static_cast<double>(m + 1), 1.0 / p) * a[m]);
    }
    return r;
}

std::pair<ExtReal, ExtReal> interpolate_exponents(const ExtReal& p0, const ExtReal& q0, const ExtReal& p1,
                                                  const ExtReal& q1, Rational theta) {
    if (theta <= 0 || theta >= 1) throw std::invalid_argument("interpolation parameter must lie in (0, 1)");
    if (q0.is_inf() && q1.is_inf()) throw std::invalid_argument("at least one of q0, q1 must be finite");
    for (const auto* e : {&p0, &q0, &p1, &q1})
        if (!e->is_inf() && e->value() < 1) throw std::invalid_argument("interpolated exponents must lie in [1, inf]");
    auto mix = [&](const ExtReal& a, const ExtReal& b) {
        return ExtReal::from_reciprocal(theta * a.reciprocal() + (1 - theta) * b.reciprocal());
    };
    return {mix(p0, p1), mix(q0, q1)};
}

InclusionResult inclusion_check(const grid::SampledField& field, double p1, double q1, double p2, double q2,
                                const WindowSpec& partition) {
    if (p1 < p2 || q1 > q2) throw std::invalid_argument("inclusion needs p1 >= p2 and q1 <= q2");
    if (partition.kind != WindowKind::cube || partition.normalization != Normalization::unit_partition ||
        partition.step != 1.0)
        throw std::invalid_argument("inclusion check needs a unit-cube partition window");
    InclusionResult r;
    r.lhs = amalgam_norm(field, p2, q2, partition).value;
    r.rhs = amalgam_norm(field, p1, q1, partition).value;
    r.holds = r.lhs <= r.rhs * (1.0 + kInequalitySlack);
    return r;
}

} // namespace amalgam::wiener
