#include "amalgam/exponents.hpp"
#include "amalgam/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace amalgam::verify {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("line fit needs at least two paired samples");
    auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (f.intercept + f.slope * x[i]);
        res += e * e;
    }
    f.r_squared = syy > 0.0 ? 1.0 - res / syy : 1.0;
    return f;
}

nlohmann::json DecayFit::to_json() const {
    return {{"regime", regime == Regime::small_time ? "small_time" : "large_time"},
            {"slope", slope},
            {"intercept", intercept},
            {"r_squared", r_squared},
            {"predicted", predicted},
            {"slope_error", slope_error},
            {"points", points}};
}

std::pair<DecayFit, DecayFit> fit_decay(const propagator::DecayProfile& profile) {
    profile.validate();
    auto pred = exponents::predicted_kernel_decay(profile.n, profile.sigma, profile.rt, profile.r);
    auto regress = [&](Regime regime, double predicted) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < profile.times.size(); ++i) {
            double t = profile.times[i];
            bool in = regime == Regime::small_time ? t <= 1.0 : t >= 1.0;
            if (!in) continue;
            lx.push_back(std::log(t));
            ly.push_back(std::log(profile.values[i]));
        }
        if (lx.size() < kMinFitPoints)
            throw std::invalid_argument(std::string(regime == Regime::small_time ? "small" : "large") +
                                        "-time regime has " + std::to_string(lx.size()) + " points, need " +
                                        std::to_string(kMinFitPoints));
        auto lf = fit_line(lx, ly);
        DecayFit f;
        f.regime = regime;
        f.slope = lf.slope;
        f.intercept = lf.intercept;
        f.r_squared = lf.r_squared;
        f.predicted = predicted;
        f.slope_error = std::abs(lf.slope - predicted);
        f.points = lx.size();
        return f;
    };
    return {regress(Regime::small_time, to_double(pred.small_t)), regress(Regime::large_time, to_double(pred.large_t))};
}

} // namespace amalgam::verify
