#include "amalgam/property_suite.hpp"
#include "amalgam/report.hpp"

#include "amalgam/generators.hpp"
#include "amalgam/propagator.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace amalgam::verify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRelTol = 1e-10;

double conj_exp(double p) { return std::isinf(p) ? 1.0 : (p == 1.0 ? kInf : p / (p - 1.0)); }

std::string exp_text(double p) { return report::format_double(p); }

struct Case {
    grid::SampledField f;
    std::string origin;
};

class Tracker {
public:
    explicit Tracker(std::string name) { out_.name = std::move(name); }
    void record(bool ok, const std::function<nlohmann::json()>& dump) {
        ++out_.trials;
        if (ok) return;
        if (out_.failures++ == 0) out_.counterexample = dump().dump();
    }
    PropertyOutcome done() { return out_; }

private:
    PropertyOutcome out_;
};

nlohmann::json field_dump(const grid::SampledField& f) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& z : f.values) v.push_back({z.real(), z.imag()});
    return {{"grid", f.grid.to_json()}, {"label", f.label}, {"values", v}};
}

std::vector<Case> build_corpus(const SuiteOptions& opts, Rng& rng) {
    auto g1 = grid::make_grid(1, 16.0, 256);
    auto g2 = grid::make_grid(2, 4.0, 32);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<Case> corpus;
    corpus.reserve(opts.corpus_size);
    for (std::size_t i = 0; i < opts.corpus_size; ++i) {
        const auto& g = (i % 5 == 4) ? g2 : g1;
        std::ostringstream tag;
        grid::SampledField f;
        if (opts.corpus == Corpus::spikes) {
            int count = 1 + static_cast<int>(u01(rng) * 3.0);
            f = grid::zeros(g, "spikes");
            for (int s = 0; s < count; ++s) {
                auto at = static_cast<std::size_t>(u01(rng) * static_cast<double>(g.size())) % g.size();
                double mag = std::pow(10.0, 6.0 * u01(rng) - 3.0);
                f.values[at] += std::polar(mag, 2.0 * std::numbers::pi * u01(rng));
            }
            tag << "spikes#" << i;
        } else {
            switch (i % 4) {
            case 0:
                f = band_limited_random(g, rng, 0.5 * std::numbers::pi / g.dx() * u01(rng) + 0.2);
                tag << "band_limited#" << i;
                break;
            case 1:
                f = gaussian(g, 0.2 + 2.0 * u01(rng), g.L * (u01(rng) - 0.5));
                tag << "gaussian#" << i;
                break;
            case 2:
                f = modulated_gaussian(g, 8.0 * (u01(rng) - 0.5), 0.3 + 1.5 * u01(rng));
                tag << "modulated#" << i;
                break;
            default:
                f = random_field(g, rng);
                tag << "white#" << i;
                break;
            }
        }
        corpus.push_back({std::move(f), tag.str()});
    }
    return corpus;
}

// Cube index of each lattice point for the unit-cube partition.
std::vector<std::size_t> cube_of(const grid::GridSpec& g) {
    auto m = static_cast<std::size_t>(std::llround(1.0 / g.dx()));
    std::size_t per = g.N / m;
    std::vector<std::size_t> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        auto idx = g.unravel(j);
        std::size_t k = 0;
        for (int a = 0; a < g.n; ++a) k = k * per + ((idx[static_cast<std::size_t>(a)] + m / 2) / m) % per;
        out[j] = k;
    }
    return out;
}

// Periodic lattice convolution dx^n sum_y f(x - y) g(y), indices taken about -L.
grid::SampledField convolve(const grid::SampledField& f, const grid::SampledField& g) {
    const auto& gs = f.grid;
    std::vector<grid::cplx> a = f.values, b = g.values;
    detail::fft_cube(a.data(), gs.n, gs.N, detail::FftSign::forward);
    detail::fft_cube(b.data(), gs.n, gs.N, detail::FftSign::forward);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
    detail::fft_cube(a.data(), gs.n, gs.N, detail::FftSign::backward);
    // The lattice origin sits at index N/2 on each axis; shift so that x_i + x_j lands on x_{i+j-N/2}.
    auto out = grid::zeros(gs, "convolution");
    double scale = gs.cell_volume() / static_cast<double>(gs.size());
    for (std::size_t j = 0; j < gs.size(); ++j) {
        auto idx = gs.unravel(j);
        std::array<std::size_t, 3> src{0, 0, 0};
        for (int ax = 0; ax < gs.n; ++ax) src[static_cast<std::size_t>(ax)] = (idx[static_cast<std::size_t>(ax)] + gs.N / 2) % gs.N;
        out.values[j] = a[gs.ravel(src)] * scale;
    }
    return out;
}

} // namespace

bool PropertyReport::passed() const {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const PropertyOutcome& o) { return o.failures == 0; });
}

nlohmann::json PropertyReport::to_json() const {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& o : outcomes) {
        nlohmann::json j = {{"name", o.name}, {"trials", o.trials}, {"failures", o.failures}, {"passed", o.failures == 0}};
        if (o.failures) j["counterexample"] = nlohmann::json::parse(o.counterexample);
        props.push_back(j);
    }
    return {{"seed", seed}, {"corpus", corpus}, {"passed", passed()}, {"properties", props}};
}

PropertyReport property_suite(const SuiteOptions& opts) {
    Rng rng(opts.seed);
    auto corpus = build_corpus(opts, rng);
    AmalgamNormFn W = opts.amalgam_override
                          ? opts.amalgam_override
                          : AmalgamNormFn([](const grid::SampledField& f, double p, double q, const wiener::WindowSpec& w) {
                                return wiener::amalgam_norm(f, p, q, w).value;
                            });
    const auto cube = wiener::cube_partition(1.0);
    const std::vector<double> exps{1.0, 1.5, 2.0, 3.0, 4.0, 8.0, kInf};
    std::uniform_int_distribution<std::size_t> pick(0, exps.size() - 1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto leq = [](double a, double b) { return a <= b * (1.0 + kRelTol) + 1e-300; };
    auto close = [](double a, double b) { return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b)) + 1e-300; };

    Tracker diag("diagonal W(L^p,L^p) = L^p"), homog("homogeneity"), tri("triangle inequality"),
        incl("inclusion W(L^p1,L^q1) in W(L^p2,L^q2)"), hold("Hölder pairing"), dual("duality extremizer"),
        young("convolution bound 3^n"), weak("weak l^{q,inf} <= l^q"), interp("exact interpolation exponents"),
        pars("Parseval"), mono("monotone in p");

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& f = corpus[i].f;
        const auto& other = corpus[(i + 5) % corpus.size()].f;
        bool same_grid = other.grid == f.grid;
        double p = exps[pick(rng)], q = exps[pick(rng)];
        auto ctx = [&](nlohmann::json extra) {
            extra["case"] = corpus[i].origin;
            extra["p"] = exp_text(p);
            extra["q"] = exp_text(q);
            extra["field"] = field_dump(f);
            return extra;
        };

        double Wf = W(f, p, q, cube);
        double Lp = grid::lebesgue_norm(f, p).value;
        double Wpp = W(f, p, p, cube);
        diag.record(close(Wpp, Lp), [&] { return ctx({{"W_pp", Wpp}, {"L_p", Lp}}); });

        grid::cplx c = std::polar(0.1 + 10.0 * u01(rng), 6.0 * u01(rng));
        auto cf = f;
        for (auto& v : cf.values) v *= c;
        double Wcf = W(cf, p, q, cube);
        homog.record(close(Wcf, std::abs(c) * Wf), [&] { return ctx({{"scaled", Wcf}, {"expected", std::abs(c) * Wf}}); });

        if (same_grid) {
            auto sum = f;
            for (std::size_t j = 0; j < sum.values.size(); ++j) sum.values[j] += other.values[j];
            double lhs = W(sum, p, q, cube), rhs = Wf + W(other, p, q, cube);
            tri.record(leq(lhs, rhs), [&] { return ctx({{"lhs", lhs}, {"rhs", rhs}}); });
        }

        {
            double p1 = std::max(p, exps[pick(rng)]), p2 = std::min(p, exps[pick(rng)]);
            double q1 = std::min(q, exps[pick(rng)]), q2 = std::max(q, exps[pick(rng)]);
            double lhs = W(f, p2, q2, cube), rhs = W(f, p1, q1, cube);
            incl.record(leq(lhs, rhs), [&] {
                return ctx({{"p1", exp_text(p1)}, {"q1", exp_text(q1)}, {"p2", exp_text(p2)}, {"q2", exp_text(q2)},
                            {"lhs", lhs}, {"rhs", rhs}});
            });
        }

        if (same_grid) {
            double lhs = std::abs(propagator::inner_product(f, other));
            double rhs = Wf * W(other, conj_exp(p), conj_exp(q), cube);
            hold.record(leq(lhs, rhs), [&] { return ctx({{"pairing", lhs}, {"bound", rhs}}); });
        }

        if (std::isfinite(p) && std::isfinite(q) && p > 1.0 && q > 1.0) {
            auto cells = cube_of(f.grid);
            auto local = wiener::local_norms(f, p, cube);
            auto G = f;
            for (std::size_t j = 0; j < G.values.size(); ++j) {
                double a = std::abs(f.values[j]);
                double Ik = local[cells[j]];
                G.values[j] = a == 0.0 ? grid::cplx(0.0) : f.values[j] / a * std::pow(a / Ik, p - 1.0) * std::pow(Ik, q - 1.0);
            }
            double pairing = std::abs(propagator::inner_product(f, G));
            double product = Wf * W(G, conj_exp(p), conj_exp(q), cube);
            dual.record(std::abs(pairing - product) <= 1e-9 * product + 1e-300,
                        [&] { return ctx({{"pairing", pairing}, {"product", product}}); });
        }

        if (same_grid) {
            const std::vector<double> small{1.0, 1.5, 2.0};
            double p1 = small[pick(rng) % 3], p2 = small[pick(rng) % 3];
            double q1 = small[pick(rng) % 3], q2 = small[pick(rng) % 3];
            double ip = 1.0 / p1 + 1.0 / p2 - 1.0, iq = 1.0 / q1 + 1.0 / q2 - 1.0;
            double pc = ip <= 0.0 ? kInf : 1.0 / ip, qc = iq <= 0.0 ? kInf : 1.0 / iq;
            auto conv = convolve(f, other);
            double lhs = W(conv, pc, qc, cube);
            double rhs = std::pow(3.0, f.grid.n) * W(f, p1, q1, cube) * W(other, p2, q2, cube);
            young.record(leq(lhs, rhs), [&] {
                return ctx({{"p1", p1}, {"q1", q1}, {"p2", p2}, {"q2", q2}, {"lhs", lhs}, {"rhs", rhs}});
            });
        }

        if (std::isfinite(q)) {
            auto local = wiener::local_norms(f, p, cube);
            double w = wiener::weak_lorentz_norm(local, q).value;
            double mx = *std::max_element(local.begin(), local.end());
            double s = 0.0;
            for (double v : local) s += mx > 0.0 ? std::pow(v / mx, q) : 0.0;
            double strong = mx * std::pow(s, 1.0 / q);
            weak.record(leq(w, strong), [&] { return ctx({{"weak", w}, {"strong", strong}}); });
        }

        {
            auto rnd = [&](bool allow_inf) {
                if (allow_inf && u01(rng) < 0.2) return ExtReal::infinity();
                auto den = static_cast<std::int64_t>(1 + u01(rng) * 12.0);
                auto num = static_cast<std::int64_t>(u01(rng) * static_cast<double>(den + 1));
                return ExtReal::from_reciprocal(Rational(std::min(num, den), den));
            };
            ExtReal p0 = rnd(true), q0 = rnd(true), p1 = rnd(true), q1 = rnd(true);
            if (q0.is_inf() && q1.is_inf()) q1 = ExtReal(2);
            auto tden = static_cast<std::int64_t>(2 + u01(rng) * 9.0);
            auto tnum = std::clamp<std::int64_t>(1 + static_cast<std::int64_t>(u01(rng) * static_cast<double>(tden - 1)), 1, tden - 1);
            Rational theta(tnum, tden);
            try {
                auto [pt, qt] = wiener::interpolate_exponents(p0, q0, p1, q1, theta);
                bool ok = pt.reciprocal() == theta * p0.reciprocal() + (1 - theta) * p1.reciprocal() &&
                          qt.reciprocal() == theta * q0.reciprocal() + (1 - theta) * q1.reciprocal();
                interp.record(ok, [&] {
                    return nlohmann::json{{"p0", p0.str()}, {"q0", q0.str()}, {"p1", p1.str()},
                                          {"q1", q1.str()}, {"theta", to_string(theta)}};
                });
            } catch (const std::exception& e) {
                interp.record(false, [&] { return nlohmann::json{{"error", e.what()}}; });
            }
        }

        {
            double l2 = grid::lebesgue_norm(f, 2.0).value;
            double s2 = grid::spectral_l2_norm(grid::transform(f, grid::Direction::forward));
            pars.record(std::abs(l2 - s2) <= 1e-10 * l2 + 1e-300, [&] { return ctx({{"physical", l2}, {"spectral", s2}}); });
        }

        {
            double lo = std::min(p, exps[pick(rng)]);
            double a = W(f, lo, q, cube), b = W(f, p, q, cube);
            mono.record(leq(a, b), [&] { return ctx({{"p_low", exp_text(lo)}, {"low", a}, {"high", b}}); });
        }
    }

    PropertyReport rep;
    rep.seed = opts.seed;
    rep.corpus = corpus.size();
    for (auto* t : {&diag, &homog, &tri, &incl, &hold, &dual, &young, &weak, &interp, &pars, &mono})
        rep.outcomes.push_back(t->done());
    return rep;
}

} // namespace amalgam::verify
