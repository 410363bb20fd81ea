#include "amalgam/verify.hpp"

#include "fft.hpp"
#include "summation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace amalgam::verify {
namespace {

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

// Sum of 1..4 smooth bumps with centres in [-0.7, 0.7] and widths in [0.05, 0.3].
std::function<double(double)> random_bumps(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_real_distribution<double> centre(-0.7, 0.7), width(0.05, 0.3);
    std::normal_distribution<double> amp(0.0, 1.0);
    int k = count(rng);
    std::vector<std::array<double, 3>> terms;
    for (int i = 0; i < k; ++i) terms.push_back({centre(rng), width(rng), amp(rng)});
    return [terms](double x) {
        double s = 0.0;
        for (const auto& [c, w, a] : terms) s += a * bump((x - c) / w);
        return s;
    };
}

} // namespace

nlohmann::json HlsReport::to_json() const {
    return {{"p", p},
            {"alpha", alpha},
            {"q", q},
            {"trials", ratios_coarse.size()},
            {"max_coarse", max_coarse},
            {"max_fine", max_fine},
            {"min_fine", min_fine},
            {"stability", stability},
            {"stable", stable}};
}

double hls_exponent(double p, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("HLS needs 0 < alpha < 1");
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("HLS needs 1 <= p < inf");
    double inv_q = 1.0 / p + alpha - 1.0;
    if (!(inv_q > 0.0)) {
        std::ostringstream os;
        os << "1/q = 1/p + alpha - 1 = " << inv_q << " gives q outside (p, inf)";
        throw std::invalid_argument(os.str());
    }
    double q = 1.0 / inv_q;
    if (!(q > p)) throw std::invalid_argument("HLS needs p < q");
    return q;
}

double hls_ratio(double p, double alpha, const std::function<double(double)>& g, std::size_t N, double T) {
    double q = hls_exponent(p, alpha);
    if (N < 4 || !(T > 1.0)) throw std::invalid_argument("HLS grid needs N >= 4 cells on [-T, T] with T > 1");
    double d = 2.0 * T / static_cast<double>(N);
    std::size_t M = 2 * N;
    std::vector<std::complex<double>> gv(M, 0.0), kv(M, 0.0);
    double mass = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        double x = -T + (static_cast<double>(j) + 0.5) * d;
        double v = g(x);
        gv[j] = v;
        mass += v * d;
    }
    double e = 1.0 - alpha;
    kv[0] = 2.0 * std::pow(0.5 * d, e) / e;
    for (std::size_t m = 1; m < N; ++m) {
        double mm = static_cast<double>(m);
        double w = (std::pow(mm + 0.5, e) - std::pow(mm - 0.5, e)) * std::pow(d, e) / e;
        kv[m] = w;
        kv[M - m] = w;
    }
    detail::fft_1d(gv.data(), M, detail::FftSign::forward);
    detail::fft_1d(kv.data(), M, detail::FftSign::forward);
    for (std::size_t k = 0; k < M; ++k) gv[k] *= kv[k];
    detail::fft_1d(gv.data(), M, detail::FftSign::backward);

    double mx = 0.0;
    for (std::size_t i = 0; i < N; ++i) mx = std::max(mx, std::abs(gv[i].real()) / static_cast<double>(M));
    double gp_max = 0.0;
    for (std::size_t j = 0; j < N; ++j) gp_max = std::max(gp_max, std::abs(g(-T + (static_cast<double>(j) + 0.5) * d)));
    if (gp_max == 0.0) throw std::invalid_argument("degenerate datum: g vanishes on the grid");

    double sq = detail::pairwise_sum(0, N, [&](std::size_t i) {
        return std::pow(std::abs(gv[i].real()) / static_cast<double>(M) / mx, q) * d;
    });
    double tail = 2.0 * std::pow(std::abs(mass) / mx, q) * std::pow(T, 1.0 - alpha * q) / (alpha * q - 1.0);
    double conv_norm = mx * std::pow(sq + tail, 1.0 / q);

    double sp = detail::pairwise_sum(0, N, [&](std::size_t j) {
        return std::pow(std::abs(g(-T + (static_cast<double>(j) + 0.5) * d)) / gp_max, p) * d;
    });
    double g_norm = gp_max * std::pow(sp, 1.0 / p);
    return conv_norm / g_norm;
}

HlsReport hls_check_1d(double p, double alpha, const HlsOptions& opts) {
    HlsReport rep;
    rep.p = p;
    rep.alpha = alpha;
    rep.q = hls_exponent(p, alpha);
    if (opts.trials < 1) throw std::invalid_argument("HLS check needs at least one trial");
    std::mt19937_64 rng(opts.seed);
    for (int i = 0; i < opts.trials; ++i) {
        auto g = random_bumps(rng);
        rep.ratios_coarse.push_back(hls_ratio(p, alpha, g, opts.N, opts.T));
        rep.ratios_fine.push_back(hls_ratio(p, alpha, g, 2 * opts.N, opts.T));
    }
    rep.max_coarse = *std::max_element(rep.ratios_coarse.begin(), rep.ratios_coarse.end());
    rep.max_fine = *std::max_element(rep.ratios_fine.begin(), rep.ratios_fine.end());
    rep.min_fine = *std::min_element(rep.ratios_fine.begin(), rep.ratios_fine.end());
    rep.stability = std::max(rep.max_fine / rep.max_coarse, rep.max_coarse / rep.max_fine);
    rep.stable = std::isfinite(rep.stability) && rep.stability <= 1.5;
    return rep;
}

} // namespace amalgam::verify
