#include "amalgam/verify.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amalgam::verify {
namespace {

// Slope of log y against log x over the first or last `count` samples.
double end_slope(const std::vector<double>& lx, const std::vector<double>& ly, bool front) {
    std::size_t count = std::min<std::size_t>(6, lx.size());
    std::size_t start = front ? 0 : lx.size() - count;
    return fit_line(std::span(lx).subspan(start, count), std::span(ly).subspan(start, count)).slope;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, 1e-10);
}

} // namespace

nlohmann::json WindowNormReport::to_json() const {
    return {{"ks", ks},
            {"terms", terms},
            {"C", C},
            {"exponent", exponent},
            {"tail_slope", tail_slope},
            {"weak_norm", amalgam::to_json(weak_norm)},
            {"growth_slope", growth_slope},
            {"divergent", divergent}};
}

std::function<double(double)> profile_function(const propagator::DecayProfile& profile) {
    profile.validate();
    if (profile.times.size() < 2) throw std::invalid_argument("profile interpolation needs two instants");
    std::vector<double> lx(profile.times.size()), ly(profile.times.size());
    for (std::size_t i = 0; i < lx.size(); ++i) {
        lx[i] = std::log(profile.times[i]);
        ly[i] = std::log(profile.values[i]);
    }
    double s0 = end_slope(lx, ly, true);
    double s1 = end_slope(lx, ly, false);
    return [lx, ly, s0, s1](double t) {
        double a = std::abs(t);
        if (a == 0.0) return s0 < 0.0 ? std::numeric_limits<double>::infinity() : std::exp(ly.front());
        double x = std::log(a);
        if (x <= lx.front()) return std::exp(ly.front() + s0 * (x - lx.front()));
        if (x >= lx.back()) return std::exp(ly.back() + s1 * (x - lx.back()));
        auto it = std::upper_bound(lx.begin(), lx.end(), x);
        auto i = static_cast<std::size_t>(it - lx.begin());
        double u = (x - lx[i - 1]) / (lx[i] - lx[i - 1]);
        return std::exp(ly[i - 1] + u * (ly[i] - ly[i - 1]));
    };
}

WindowNormReport local_window_norms(const std::function<double(double)>& h, const wiener::WindowSpec& wt,
                                    wiener::TranslateRange range, const exponents::ExponentTuple& tuple) {
    double rho = wt.half_width();
    if (rho > 1.0) throw std::invalid_argument("time window must be supported in |t| <= 1");
    if (range.k_min > range.k_max) throw std::invalid_argument("empty translate range");
    if (!tuple.qt.is_inf() && tuple.qt.value() < 2) throw std::invalid_argument("qt must be >= 2");
    if (!tuple.q.is_inf() && tuple.q.value() < 2) throw std::invalid_argument("q must be >= 2");
    double p = 0.5 * tuple.qt.to_double();

    WindowNormReport rep;
    rep.exponent = to_double(exponents::window_decay_exponent(tuple));
    for (std::int64_t k = range.k_min; k <= range.k_max; ++k) {
        double c = static_cast<double>(k) * wt.step;
        double lo = c - rho, hi = c + rho;
        double term = 0.0;
        if (std::isinf(p)) {
            for (int i = 0; i <= 2000; ++i) {
                double t = lo + (hi - lo) * i / 2000.0;
                term = std::max(term, h(t) * wiener::time_window(wt, t - c));
            }
        } else {
            auto f = [&](double t) {
                double v = h(t) * wiener::time_window(wt, t - c);
                return std::isfinite(v) ? std::pow(v, p) : 0.0;
            };
            double s = (lo < 0.0 && hi > 0.0) ? integrate(f, lo, 0.0) + integrate(f, 0.0, hi) : integrate(f, lo, hi);
            term = std::pow(s, 1.0 / p);
        }
        rep.ks.push_back(k);
        rep.terms.push_back(term);
    }

    std::vector<double> tx, ty;
    for (std::size_t i = 0; i < rep.ks.size(); ++i) {
        double ak = static_cast<double>(std::abs(rep.ks[i]));
        double bound = ak <= 2.0 ? 1.0 : std::pow(ak - 1.0, rep.exponent);
        rep.C = std::max(rep.C, rep.terms[i] / bound);
        if (ak >= 4.0 && ak <= 64.0 && rep.terms[i] > 0.0) {
            tx.push_back(std::log(ak - 1.0));
            ty.push_back(std::log(rep.terms[i]));
        }
    }
    if (tx.size() >= 2) rep.tail_slope = fit_line(tx, ty).slope;
    else rep.tail_slope = std::numeric_limits<double>::quiet_NaN();

    double outer = 0.5 * tuple.q.to_double();
    if (std::isinf(outer)) {
        rep.weak_norm.space = "l^inf";
        rep.weak_norm.value = *std::max_element(rep.terms.begin(), rep.terms.end());
    } else {
        rep.weak_norm = wiener::weak_lorentz_norm(rep.terms, outer);
        std::vector<double> a = rep.terms;
        std::sort(a.begin(), a.end(), std::greater<>());
        std::vector<double> mx, my;
        for (std::size_t m = a.size() / 4; m < a.size(); ++m) {
            if (a[m] <= 0.0) break;
            double mm = static_cast<double>(m + 1);
            mx.push_back(std::log(mm));
            my.push_back(std::log(std::pow(mm, 1.0 / outer) * a[m]));
        }
        if (mx.size() >= 2) rep.growth_slope = fit_line(mx, my).slope;
    }
    rep.divergent = !std::isfinite(rep.weak_norm.value) || rep.growth_slope > kWeakGrowthThreshold;
    if (rep.divergent) {
        rep.weak_norm.divergent = true;
        rep.weak_norm.warnings.push_back("m^{2/q} a*_m keeps growing across the translate range");
    }
    return rep;
}

} // namespace amalgam::verify
