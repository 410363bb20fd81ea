#include "amalgam/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace amalgam::propagator {

void DecayProfile::validate() const {
    if (times.size() != values.size()) throw std::invalid_argument("profile times and values differ in length");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0)) throw std::invalid_argument("profile times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("profile times must be ascending");
        if (!(values[i] > 0.0)) throw std::invalid_argument("profile values must be positive");
    }
}

std::vector<double> log_spaced_times(double t_min, double t_max, int per_decade) {
    if (!(t_min > 0.0) || !(t_max > t_min) || per_decade < 1)
        throw std::invalid_argument("log-spaced times need 0 < t_min < t_max and per_decade >= 1");
    double decades = std::log10(t_max / t_min);
    auto count = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9)) + 1;
    std::vector<double> t(count);
    for (std::size_t k = 0; k < count; ++k)
        t[k] = t_min * std::pow(10.0, decades * static_cast<double>(k) / static_cast<double>(count - 1));
    t.front() = t_min;
    t.back() = t_max;
    return t;
}

ProfilePoint kernel_amalgam_point(const grid::GridSpec& g, double sigma, double rt, double r,
                                  const wiener::WindowSpec& window, double t, const KernelSchedule& schedule) {
    ProfilePoint p;
    double kerr = 0.0;
    auto K = kernel_on_grid(g, sigma, t, schedule, &kerr, &p.converged);
    auto nr = wiener::amalgam_norm(K, 0.5 * rt, 0.5 * r, window);
    p.value = nr.value;
    p.error = std::max(kerr, std::isfinite(nr.est_error) ? nr.est_error : 0.0);
    p.divergent = nr.divergent;
    return p;
}

DecayProfile kernel_amalgam_profile(const grid::GridSpec& g, Rational sigma, const ExtReal& rt, const ExtReal& r,
                                    const wiener::WindowSpec& window, std::span<const double> times,
                                    const KernelSchedule& schedule) {
    double s = to_double(sigma);
    if (!(s >= 0.0) || !(2.0 * s < g.n)) throw std::invalid_argument("profile needs 0 <= 2 sigma < n");
    if ((!rt.is_inf() && rt.value() < 2) || (!r.is_inf() && r.value() < 2))
        throw std::invalid_argument("profile exponents rt, r must be >= 2");
    DecayProfile prof;
    prof.n = g.n;
    prof.sigma = sigma;
    prof.rt = rt;
    prof.r = r;
    prof.grid = g.to_json();
    prof.window = window.to_json();
    for (double t : times) {
        if (!(t > 0.0)) throw std::invalid_argument("profile instants must be positive");
        auto p = kernel_amalgam_point(g, s, rt.to_double(), r.to_double(), window, t, schedule);
        prof.times.push_back(t);
        prof.values.push_back(p.value);
        prof.errors.push_back(p.error);
        prof.divergent.push_back(p.divergent);
        prof.converged = prof.converged && p.converged;
    }
    prof.validate();
    return prof;
}

} // namespace amalgam::propagator
