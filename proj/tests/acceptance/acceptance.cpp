// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: amalgam_acceptance [--criterion k]   (all criteria when omitted)

#include "amalgam/amalgam.hpp"

#include "oracles/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace amalgam;

namespace {

const ExtReal inf = ExtReal::infinity();

struct Outcome {
    bool pass = false;
    std::string detail;
};

// 1. Two-regime kernel decay slopes for three n = 1 tuples.
Outcome kernel_decay_slopes() {
    struct Case {
        const char* label;
        Rational sigma;
        ExtReal r;
    };
    std::vector<Case> cases{{"a", Rational(3, 10), inf}, {"b", Rational(3, 10), ExtReal(10)}, {"c", Rational(1, 5), ExtReal(10)}};
    auto g = grid::make_grid(1, 64.0, 4096);
    auto times = propagator::log_spaced_times(0.02, 50.0, 24);
    Outcome o{true, ""};
    std::ostringstream os;
    os << std::setprecision(4);
    for (const auto& c : cases) {
        auto prof = propagator::kernel_amalgam_profile(g, c.sigma, inf, c.r, wiener::smooth_bump(), times);
        auto [small, large] = verify::fit_decay(prof);
        bool ok = small.within() && large.within();
        o.pass = o.pass && ok;
        os << "(" << c.label << ") small " << small.slope << " vs " << small.predicted << ", large " << large.slope
           << " vs " << large.predicted << (ok ? "" : " [outside 0.05]") << "; ";
    }
    o.detail = os.str();
    return o;
}

// 2. Free kernel modulus against (4 pi |t|)^{-n/2} on the working lattices.
Outcome free_kernel_oracle() {
    double worst = 0.0;
    for (int n : {1, 2}) {
        auto g = n == 1 ? grid::make_grid(1, 64.0, 4096) : grid::make_grid(2, 16.0, 256);
        for (double t : {0.1, 1.0, 10.0}) {
            auto K = propagator::kernel_on_grid(g, 0.0, t);
            double expected = std::pow(4.0 * oracle::pi * t, -0.5 * n);
            for (const auto& v : K.values) worst = std::max(worst, std::abs(std::abs(v) / expected - 1.0));
        }
    }
    std::ostringstream os;
    os << "max relative deviation " << worst << " (limit 1e-6)";
    return {worst <= 1e-6, os.str()};
}

// Largest |K_t(x)| / bound over 100 instants and 100 lattice radii of the grid.
double fitted_bound_constant(double sigma, const grid::GridSpec& g) {
    std::vector<double> times;
    for (int m = 0; m < 100; ++m) times.push_back(0.01 * std::pow(1e4, m / 99.0));
    std::vector<double> radii{0.0};
    for (int m = 1; m < 100; ++m) {
        double target = g.dx() * std::pow(0.5 * g.L / g.dx(), (m - 1) / 98.0);
        radii.push_back(std::round(target / g.dx()) * g.dx());
    }
    double C = 0.0;
    for (double t : times) {
        auto ks = propagator::kernel_eval(1, sigma, t, radii);
        for (std::size_t i = 0; i < radii.size(); ++i)
            C = std::max(C, std::abs(ks.values[i]) / propagator::kernel_bound(1, 2.0 * sigma, t, radii[i]));
    }
    return C;
}

// 3. Pointwise kernel bound: one constant per sigma, stable under N -> 2N.
Outcome pointwise_bound() {
    Outcome o{true, ""};
    std::ostringstream os;
    os << std::setprecision(4);
    for (double sigma : {0.2, 0.3, 0.45}) {
        double c1 = fitted_bound_constant(sigma, grid::make_grid(1, 64.0, 4096));
        double c2 = fitted_bound_constant(sigma, grid::make_grid(1, 64.0, 8192));
        double change = std::max(c1 / c2, c2 / c1);
        bool ok = std::isfinite(c1) && std::isfinite(c2) && change < 2.0;
        o.pass = o.pass && ok;
        os << "sigma " << sigma << ": C " << c1 << " -> " << c2 << "; ";
    }
    o.detail = os.str();
    return o;
}

// 4. Duality identity and bilinear factorization on seeded random pairs.
Outcome duality_identities() {
    auto g = grid::make_grid(1, 16.0, 128);
    std::vector<double> times{-2.0, -1.1, -0.4, 0.0, 0.3, 0.9, 1.6, 3.0};
    verify::Rng rng(20240501);
    double worst_dual = 0.0, worst_bil = 0.0;
    const double sigmas[] = {0.0, 0.1, 0.25, 0.4};
    for (int k = 0; k < 100; ++k) {
        double sigma = sigmas[k % 4];
        auto f = verify::band_limited_random(g, rng, 6.0);
        auto F = verify::random_spacetime(g, times, rng);
        auto G = verify::random_spacetime(g, times, rng);
        auto lhs = propagator::inner_product(propagator::evolve_series(f, times, sigma), F);
        auto rhs = propagator::inner_product(f, propagator::adjoint_accumulate(F, sigma));
        worst_dual = std::max(worst_dual, std::abs(lhs - rhs) / std::abs(lhs));
        auto a = verify::bilinear_form(F, G, sigma);
        auto b = verify::bilinear_form_factorized(F, G, sigma);
        worst_bil = std::max(worst_bil, std::abs(a - b) / std::abs(b));
    }
    std::ostringstream os;
    os << "duality " << worst_dual << ", factorization " << worst_bil << " (limit 1e-8, 100 pairs)";
    return {worst_dual <= 1e-8 && worst_bil <= 1e-8, os.str()};
}

// 5. Unit-cube amalgam property suite on 500 fields plus the spike corpus.
Outcome property_suite() {
    auto mixed = verify::property_suite();
    verify::SuiteOptions so;
    so.corpus = verify::Corpus::spikes;
    auto spikes = verify::property_suite(so);
    std::size_t trials = 0, failures = 0;
    for (const auto* rep : {&mixed, &spikes})
        for (const auto& o : rep->outcomes) {
            trials += o.trials;
            failures += o.failures;
        }
    std::ostringstream os;
    os << mixed.outcomes.size() << " properties, " << trials << " trials, " << failures << " failures";
    return {mixed.passed() && spikes.passed(), os.str()};
}

// 6. Worked exponent tuples and region scans re-verified point by point.
Outcome exponent_engine() {
    using namespace exponents;
    std::vector<std::pair<std::string, bool>> checks{
        {"theorem accept (2,inf,10,inf) n=1 sigma=3/10",
         satisfies_theorem({1, Rational(3, 10), ExtReal(2), inf, ExtReal(10), inf}).accept},
        {"theorem reject qt = q", !satisfies_theorem({1, Rational(3, 10), ExtReal(10), inf, ExtReal(10), inf}).accept},
        {"theorem reject sigma = n/2", !satisfies_theorem({1, Rational(1, 2), ExtReal(2), inf, ExtReal(10), inf}).accept},
        {"kernel accept small_sigma", [] {
             auto r = satisfies_prop_kernel(1, Rational(1, 5), inf, ExtReal(10));
             return r.accept && r.case_tag == "small_sigma";
         }()},
        {"kernel reject large_sigma", [] {
             auto r = satisfies_prop_kernel(1, Rational(3, 10), inf, ExtReal(4));
             return !r.accept && r.case_tag == "large_sigma";
         }()},
        {"corollary accept (4,4,10,10)",
         satisfies_corollary({1, Rational(1, 5), ExtReal(4), ExtReal(4), ExtReal(10), ExtReal(10)}).accept},
        {"corollary reject qt = 2",
         !satisfies_corollary({1, Rational(1, 5), ExtReal(2), ExtReal(4), ExtReal(10), ExtReal(10)}).accept},
        {"classical reject (2,inf,2)", !is_schrodinger_admissible(ExtReal(2), inf, 2).accept},
        {"classical accept (4,4,2)", is_schrodinger_admissible(ExtReal(4), ExtReal(4), 2).accept},
        {"cn2 accept n=3 (2,6,2,6)", satisfies_cn2({3, Rational(0), ExtReal(2), ExtReal(6), ExtReal(2), ExtReal(6)}).accept},
        {"decay (-1/5,-1/10)", [] {
             auto d = predicted_kernel_decay(1, Rational(3, 10), inf, ExtReal(10));
             return d.small_t == Rational(-1, 5) && d.large_t == Rational(-1, 10);
         }()},
    };
    std::size_t failed = 0;
    std::string first;
    for (const auto& [name, ok] : checks)
        if (!ok) {
            ++failed;
            if (first.empty()) first = name;
        }

    std::size_t points = 0, disagreements = 0, recheck_failures = 0;
    auto scan_and_recheck = [&](ConditionSet set, Rational sigma, std::array<CoordinateSpec, 4> coords) {
        RegionQuery q;
        q.set = set;
        q.n = 1;
        q.sigma = sigma;
        q.coords = coords;
        q.resolution = Rational(1, 64);
        auto scan = sample_region(q);
        points += scan.mesh.size();
        disagreements += scan.disagreements;
        for (const auto& t : scan.accepted)
            if (!check(set, t).accept) ++recheck_failures;
    };
    using M = CoordinateSpec::Mode;
    scan_and_recheck(ConditionSet::theorem, Rational(3, 10),
                     {CoordinateSpec{M::free, 0}, CoordinateSpec{M::fixed, 0}, CoordinateSpec{M::free, 0}, CoordinateSpec{M::derived, 0}});
    scan_and_recheck(ConditionSet::corollary, Rational(1, 5),
                     {CoordinateSpec{M::free, 0}, CoordinateSpec{M::fixed, Rational(1, 4)}, CoordinateSpec{M::free, 0},
                      CoordinateSpec{M::derived, 0}});
    scan_and_recheck(ConditionSet::cn2, Rational(0),
                     {CoordinateSpec{M::fixed, Rational(1, 2)}, CoordinateSpec{M::free, 0}, CoordinateSpec{M::fixed, Rational(1, 4)},
                      CoordinateSpec{M::free, 0}});
    std::ostringstream os;
    os << checks.size() - failed << "/" << checks.size() << " worked tuples";
    if (!first.empty()) os << " (first failure: " << first << ")";
    os << "; scans " << points << " points, " << disagreements << " disagreements, " << recheck_failures
       << " recheck failures";
    return {failed == 0 && disagreements == 0 && recheck_failures == 0, os.str()};
}

// 7. Windowed time norms of the kernel profile for an accepted theorem tuple.
Outcome window_norm_bound() {
    exponents::ExponentTuple tup{1, Rational(3, 10), ExtReal(2), inf, ExtReal(10), inf};
    if (!exponents::satisfies_theorem(tup).accept) return {false, "tuple not accepted"};
    auto g = grid::make_grid(1, 64.0, 4096);
    auto times = propagator::log_spaced_times(0.005, 70.0, 24);
    auto prof = propagator::kernel_amalgam_profile(g, tup.sigma, tup.rt, tup.r, wiener::smooth_bump(), times);
    auto rep = verify::local_window_norms(verify::profile_function(prof), wiener::smooth_bump(), {-64, 64}, tup);
    bool slope_ok = std::abs(rep.tail_slope - rep.exponent) <= verify::kTailSlopeTolerance;
    bool weak_ok = std::isfinite(rep.weak_norm.value) && !rep.divergent;
    std::ostringstream os;
    os << "C " << rep.C << ", tail slope " << rep.tail_slope << " vs " << rep.exponent << ", weak norm "
       << rep.weak_norm.value << " (growth " << rep.growth_slope << ")";
    return {slope_ok && weak_ok, os.str()};
}

// 8. Scaling invariance on the classical Sobolev line, with a perturbed-r control.
Outcome scaling_invariance() {
    auto g = grid::make_grid(1, 128.0, 4096);
    auto f = verify::hermite_gaussian(g);
    std::vector<double> lam{1.0, 2.0};
    auto sw = verify::classical_scaling_sweep(f, lam, Rational(1, 5), ExtReal(10));
    std::vector<double> lam3{1.0, 1.5, 2.0};
    auto control = verify::classical_scaling_sweep(f, lam3, Rational(1, 5), ExtReal(10), 8.0);
    std::ostringstream os;
    os << "r " << sw.r << ": deviation " << sw.max_rel_deviation << " (limit 0.10); control r 8 ratios";
    for (double r : control.ratios) os << " " << r;
    os << (control.monotone ? " monotone" : " not monotone");
    return {sw.max_rel_deviation <= verify::kScalingTolerance && control.monotone, os.str()};
}

// 9. Fractional integration ratio spread under grid refinement.
Outcome hls_stability() {
    auto rep = verify::hls_check_1d(4.0 / 3.0, 0.5);
    std::ostringstream os;
    os << "q " << rep.q << ", max ratio " << rep.max_coarse << " -> " << rep.max_fine << ", stability x" << rep.stability
       << " (limit 1.5), " << rep.ratios_fine.size() << " trials";
    return {rep.stable, os.str()};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{kernel_decay_slopes, free_kernel_oracle, pointwise_bound,
                                                         duality_identities,  property_suite,     exponent_engine,
                                                         window_norm_bound,   scaling_invariance, hls_stability};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: amalgam_acceptance [--criterion k]\n";
            return 2;
        }
    }
    if (selected.empty())
        for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);

    bool all = true;
    for (int k : selected) {
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "unknown criterion " << k << "\n";
            return 2;
        }
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k << ": " << o.detail << " [" << std::fixed
                  << std::setprecision(1) << secs << " s]" << std::defaultfloat << std::setprecision(6) << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
