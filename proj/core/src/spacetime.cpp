#include "amalgam/wiener.hpp"

#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace amalgam::wiener {
namespace {

nlohmann::json exponent_json(double e) { return std::isinf(e) ? nlohmann::json("inf") : nlohmann::json(e); }

void check_exponent(double p, const char* name) {
    if (!(p >= 1.0)) throw std::invalid_argument(std::string("exponent ") + name + " must lie in [1, inf]");
}

bool is_unit_partition(const WindowSpec& w) {
    return w.kind == WindowKind::cube && w.normalization == Normalization::unit_partition && w.step == 1.0;
}

} // namespace

NormResult temporal_amalgam_norm(std::span<const double> times, std::span<const double> weights,
                                 std::span<const double> g, double qt, double q, const WindowSpec& wt,
                                 const SpaceTimeOptions& opts) {
    check_exponent(qt, "qt");
    check_exponent(q, "q");
    if (times.empty() || times.size() != weights.size() || times.size() != g.size())
        throw std::invalid_argument("time profile, weights and instants must be non-empty and of equal length");
    double a = wt.step;
    double rho = wt.half_width();
    double t0 = times.front(), t1 = times.back();

    std::int64_t kmin = 0, kmax = 0;
    if (opts.k_range) {
        kmin = opts.k_range->k_min;
        kmax = opts.k_range->k_max;
        if (kmin > kmax) throw std::invalid_argument("empty temporal translate range");
        std::ostringstream missing;
        for (std::int64_t k = kmin; k <= kmax; ++k) {
            double lo = static_cast<double>(k) * a - rho, hi = static_cast<double>(k) * a + rho;
            if (lo < t0 || hi > t1) missing << " k=" << k << " needs [" << lo << ", " << hi << "]";
        }
        if (!missing.str().empty())
            throw std::invalid_argument("time instants [" + std::to_string(t0) + ", " + std::to_string(t1) +
                                        "] do not cover requested translates:" + missing.str());
    } else {
        kmin = static_cast<std::int64_t>(std::ceil((t0 - rho) / a));
        kmax = static_cast<std::int64_t>(std::floor((t1 + rho) / a));
    }

    std::size_t K = static_cast<std::size_t>(kmax - kmin + 1);
    std::vector<double> I(K, 0.0);
    std::vector<double> terms(times.size());
    for (std::size_t k = 0; k < K; ++k) {
        double c = static_cast<double>(kmin + static_cast<std::int64_t>(k)) * a;
        double mx = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            terms[i] = std::abs(g[i] * time_window(wt, times[i] - c));
            if (weights[i] > 0.0) mx = std::max(mx, terms[i]);
        }
        if (std::isinf(qt) || mx == 0.0) {
            I[k] = mx;
            continue;
        }
        double s = detail::pairwise_sum(0, terms.size(), [&](std::size_t i) {
            return weights[i] * std::pow(terms[i] / mx, qt);
        });
        I[k] = mx * std::pow(s, 1.0 / qt);
    }

    NormResult r;
    r.space = std::string(opts.weak_outer_time ? "W(L^qt,L^{q,inf})_t" : "W(L^qt,L^q)_t");
    r.exponents = {{"qt", exponent_json(qt)}, {"q", exponent_json(q)}};
    r.window = wt.to_json();
    r.window["k_min"] = kmin;
    r.window["k_max"] = kmax;

    double mx = *std::max_element(I.begin(), I.end());
    std::size_t edge = (K + 7) / 8;
    auto is_tail = [&](std::size_t k) { return k < edge || k + edge >= K; };
    double tail_fraction = 0.0;
    if (opts.weak_outer_time) {
        if (std::isinf(q)) throw std::invalid_argument("weak outer norm needs a finite q");
        r.value = std::pow(a, 1.0 / q) * weak_lorentz_norm(I, q).value;
        // a growing m^{1/q} a*_m peaks at the end of the rearrangement
        std::vector<std::size_t> order(K);
        for (std::size_t k = 0; k < K; ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return I[x] > I[y]; });
        double best = -1.0;
        std::size_t arg = 0;
        for (std::size_t m = 0; m < K; ++m) {
            double v = std::pow(static_cast<double>(m + 1), 1.0 / q) * I[order[m]];
            if (v > best) {
                best = v;
                arg = m;
            }
        }
        tail_fraction = (K > 8 && arg + 1 >= (K * 3) / 4) ? 1.0 : 0.0;
    } else if (std::isinf(q) || mx == 0.0) {
        r.value = mx;
    } else {
        double total = detail::pairwise_sum(0, K, [&](std::size_t k) { return std::pow(I[k] / mx, q); });
        double tail = detail::pairwise_sum(0, K, [&](std::size_t k) { return is_tail(k) ? std::pow(I[k] / mx, q) : 0.0; });
        r.value = mx * std::pow(a * total, 1.0 / q);
        tail_fraction = total > 0.0 ? tail / total : 0.0;
    }
    if (!std::isfinite(r.value) || (K > 1 && tail_fraction >= 0.125)) {
        r.divergent = true;
        r.warnings.push_back("temporal outer norm not settled within the time span");
    }
    return r;
}

NormResult spacetime_amalgam_norm(const grid::SpaceTimeField& stf, double qt, double q, double rt, double r,
                                  const WindowSpec& wt, const WindowSpec& wx, const SpaceTimeOptions& opts) {
    check_exponent(rt, "rt");
    check_exponent(r, "r");
    stf.validate();
    std::vector<double> g(stf.slices.size());
    double est = 0.0;
    bool spatial_divergent = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto ni = amalgam_norm(stf.slices[i], rt, r, wx);
        g[i] = ni.value;
        spatial_divergent = spatial_divergent || ni.divergent;
        if (std::isfinite(ni.est_error)) est = std::max(est, ni.est_error);
    }
    auto w = stf.quadrature_weights();
    NormResult res = temporal_amalgam_norm(stf.times, w, g, qt, q, wt, opts);
    res.space = res.space + " " + "W(L^rt,L^r)_x";
    res.exponents["rt"] = exponent_json(rt);
    res.exponents["r"] = exponent_json(r);
    res.grid = stf.grid.to_json();
    res.grid["slices"] = stf.times.size();
    res.window = {{"time", res.window}, {"space", wx.to_json()}};
    res.est_error = est;
    if (spatial_divergent) {
        res.divergent = true;
        res.warnings.push_back("spatial outer norm dominated by the box edge on some slice");
    }
    return res;
}

PairingResult holder_pairing(const grid::SpaceTimeField& F, const grid::SpaceTimeField& G, double qt, double q,
                             double rt, double r, const WindowSpec& wt, const WindowSpec& wx) {
    if (!is_unit_partition(wt) || !is_unit_partition(wx))
        throw std::invalid_argument("Hölder pairing needs unit-cube partition windows in time and space");
    F.validate();
    G.validate();
    if (!(F.grid == G.grid) || F.times != G.times) throw std::invalid_argument("paired fields must share grid and times");
    auto w = F.quadrature_weights();
    if (w != G.quadrature_weights()) throw std::invalid_argument("paired fields must share quadrature weights");

    auto conj = [](double p) { return std::isinf(p) ? 1.0 : (p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0)); };
    PairingResult res;
    double vol = F.grid.cell_volume();
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < F.slices.size(); ++i) {
        const auto& fv = F.slices[i].values;
        const auto& gv = G.slices[i].values;
        double re = detail::pairwise_sum(0, fv.size(), [&](std::size_t j) { return (fv[j] * std::conj(gv[j])).real(); });
        double im = detail::pairwise_sum(0, fv.size(), [&](std::size_t j) { return (fv[j] * std::conj(gv[j])).imag(); });
        acc += w[i] * vol * std::complex<double>(re, im);
    }
    res.pairing = acc;
    res.norm_F = spacetime_amalgam_norm(F, qt, q, rt, r, wt, wx);
    res.norm_G = spacetime_amalgam_norm(G, conj(qt), conj(q), conj(rt), conj(r), wt, wx);
    res.bound = res.norm_F.value * res.norm_G.value;
    res.holds = std::abs(res.pairing) <= res.bound * (1.0 + kInequalitySlack) + 1e-300;
    return res;
}

} // namespace amalgam::wiener
