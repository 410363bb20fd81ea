#include "amalgam/cli.hpp"

#include "amalgam/amalgam.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace amalgam::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ExtReal exponent_arg(const std::string& name, const std::string& text) {
    auto v = parse_ext_real(text);
    if (!v) throw UsageError("--" + name + ": cannot parse exponent '" + text + "'");
    return *v;
}

Rational rational_arg(const std::string& name, const std::string& text) {
    auto v = parse_rational(text);
    if (!v) throw UsageError("--" + name + ": cannot parse rational '" + text + "'");
    return *v;
}

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// key = value lines; '#' and ';' start comments.
std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto c = line.find_first_of("#;");
        if (c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        kv[key] = value;
    }
    return kv;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
    std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Config entries become flags unless the command line already sets them.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty()) return args;
    if (args.empty() || args.front().rfind("-", 0) == 0) throw UsageError("the subcommand must come first");
    std::vector<std::string> extra;
    for (const auto& [k, v] : read_config(path)) {
        if (k == "config" || has_flag(args, k)) continue;
        if (v == "true") {
            extra.push_back("--" + k);
        } else if (v != "false") {
            extra.push_back("--" + k);
            extra.push_back(v);
        }
    }
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    return args;
}

struct GridOpts {
    int n = 1;
    double L = 64.0;
    std::size_t N = 4096;
    grid::GridSpec spec() const { return grid::make_grid(n, L, N); }
};

struct DatumOpts {
    std::string input;
    std::string datum = "gaussian";
    double width = 1.0;
    double freq = 0.0;
    double band = 2.0;
};

struct WindowOpts {
    std::string kind = "bump";
    double radius = 1.0;
    double step = 1.0;
    wiener::WindowSpec spec() const {
        if (kind == "bump") return wiener::smooth_bump(radius, step);
        if (kind == "gaussian") return wiener::gaussian_window(radius, step);
        if (kind == "cube") return wiener::cube_partition(step);
        throw UsageError("unknown window kind '" + kind + "' (bump, gaussian, cube)");
    }
};

void add_grid(CLI::App* c, GridOpts& g) {
    c->add_option("--n", g.n, "spatial dimension")->check(CLI::Range(1, 3));
    c->add_option("--L", g.L, "box half-width")->check(CLI::PositiveNumber);
    c->add_option("--N", g.N, "grid points per axis")->check(CLI::PositiveNumber);
}

void add_datum(CLI::App* c, DatumOpts& d) {
    c->add_option("--input", d.input, "field file (overrides --datum)");
    c->add_option("--datum", d.datum, "gaussian | hermite | modulated | random | spike");
    c->add_option("--width", d.width, "datum width");
    c->add_option("--freq", d.freq, "modulation frequency");
    c->add_option("--band", d.band, "band limit for random data");
}

void add_window(CLI::App* c, WindowOpts& w, const std::string& prefix = "window") {
    c->add_option("--" + prefix, w.kind, "bump | gaussian | cube");
    c->add_option("--" + prefix + "-radius", w.radius, "window radius");
    c->add_option("--" + prefix + "-step", w.step, "translate lattice step");
}

grid::SampledField make_datum(const DatumOpts& d, const GridOpts& g, std::uint64_t seed) {
    if (!d.input.empty()) {
        auto stf = grid::read_fields(d.input);
        if (stf.slices.empty()) throw UsageError("input file holds no slices");
        return stf.slices.front();
    }
    auto gs = g.spec();
    if (d.datum == "gaussian") return verify::gaussian(gs, d.width);
    if (d.datum == "hermite") return verify::hermite_gaussian(gs, d.width);
    if (d.datum == "modulated") return verify::modulated_gaussian(gs, d.freq, d.width);
    if (d.datum == "random") {
        verify::Rng rng(seed);
        return verify::band_limited_random(gs, rng, d.band);
    }
    if (d.datum == "spike") return verify::lattice_spike(gs, gs.size() / 2);
    throw UsageError("unknown datum '" + d.datum + "'");
}

std::string fmt(double v) { return report::format_double(v); }

json params_of(const CLI::App* sub) {
    json p = json::object();
    std::istringstream in(sub->config_to_str(true, false));
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
        p[k] = v;
    }
    return p;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    report::RunManifest& manifest;
    std::filesystem::path dir() const { return manifest.dir(); }
};

// ---------------------------------------------------------------------------

struct NormCmd {
    GridOpts grid;
    DatumOpts datum;
    WindowOpts window;
    WindowOpts window_t{"bump", 1.0, 1.0};
    std::string space = "amalgam";
    std::string p = "2", q = "2", qt = "2", rt = "2", sigma = "0";

    int exec(Context& c, std::uint64_t seed) {
        report::CsvWriter csv(c.dir() / "results.csv", {"space", "value", "est_error", "divergent"});
        c.manifest.add_output("results.csv");
        NormResult r;
        if (space == "spacetime") {
            if (datum.input.empty()) throw UsageError("spacetime norms need --input");
            auto stf = grid::read_fields(datum.input);
            r = wiener::spacetime_amalgam_norm(stf, exponent_arg("qt", qt).to_double(), exponent_arg("q", q).to_double(),
                                               exponent_arg("rt", rt).to_double(), exponent_arg("p", p).to_double(),
                                               window_t.spec(), window.spec());
        } else {
            auto f = make_datum(datum, grid, seed);
            if (space == "lebesgue") r = grid::lebesgue_norm(f, exponent_arg("p", p).to_double());
            else if (space == "amalgam")
                r = wiener::amalgam_norm(f, exponent_arg("p", p).to_double(), exponent_arg("q", q).to_double(), window.spec());
            else if (space == "hsigma") r = propagator::hsigma_norm(f, to_double(rational_arg("sigma", sigma)));
            else throw UsageError("unknown --space '" + space + "' (lebesgue, amalgam, hsigma, spacetime)");
        }
        csv.row({r.space, fmt(r.value), fmt(r.est_error), r.divergent ? "1" : "0"});
        c.manifest.set("result", to_json(r));
        c.out << r.space << " = " << fmt(r.value) << (r.divergent ? " (divergent)" : "") << "\n";
        for (const auto& w : r.warnings) c.err << "warning: " << w << "\n";
        return kOk;
    }
};

struct EvolveCmd {
    GridOpts grid;
    DatumOpts datum;
    std::vector<double> times{0.0, 0.5, 1.0, 2.0, 4.0};
    std::string sigma = "0";

    int exec(Context& c, std::uint64_t seed) {
        auto f = make_datum(datum, grid, seed);
        std::vector<double> t = times;
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw UsageError("--times must be distinct");
        auto stf = propagator::evolve_series(f, t, to_double(rational_arg("sigma", sigma)));
        grid::write_fields(c.dir() / "fields.bin", stf);
        c.manifest.add_output("fields.bin");
        report::CsvWriter csv(c.dir() / "results.csv", {"t", "l2", "max"});
        c.manifest.add_output("results.csv");
        for (std::size_t i = 0; i < t.size(); ++i) {
            csv.row({fmt(t[i]), fmt(grid::lebesgue_norm(stf.slices[i], 2.0).value),
                     fmt(grid::lebesgue_norm(stf.slices[i], std::numeric_limits<double>::infinity()).value)});
        }
        c.out << "evolved " << t.size() << " slices\n";
        return kOk;
    }
};

struct ProfileOpts {
    GridOpts grid;
    WindowOpts window;
    std::string sigma = "3/10", rt = "inf", r = "inf";
    double tmin = 0.02, tmax = 50.0;
    int per_decade = 24;
    std::string method = "contour";
    int nodes = 64;

    void add(CLI::App* s) {
        add_grid(s, grid);
        add_window(s, window);
        s->add_option("--sigma", sigma, "smoothing exponent");
        s->add_option("--rt", rt, "local spatial exponent");
        s->add_option("--r", r, "global spatial exponent");
        s->add_option("--tmin", tmin)->check(CLI::PositiveNumber);
        s->add_option("--tmax", tmax)->check(CLI::PositiveNumber);
        s->add_option("--per-decade", per_decade)->check(CLI::PositiveNumber);
        s->add_option("--method", method, "contour | lattice");
        s->add_option("--nodes", nodes, "Gauss-Laguerre nodes")->check(CLI::Range(8, 256));
    }

    propagator::DecayProfile compute() const {
        propagator::KernelSchedule sched;
        if (method == "lattice") sched.method = propagator::KernelMethod::regularized_lattice;
        else if (method != "contour") throw UsageError("unknown --method '" + method + "' (contour, lattice)");
        sched.nodes = nodes;
        auto times = propagator::log_spaced_times(tmin, tmax, per_decade);
        return propagator::kernel_amalgam_profile(grid.spec(), rational_arg("sigma", sigma), exponent_arg("rt", rt),
                                                  exponent_arg("r", r), window.spec(), times, sched);
    }
};

struct KernelProfileCmd {
    ProfileOpts opts;
    int exec(Context& c, std::uint64_t) {
        auto prof = opts.compute();
        report::write_csv(c.dir() / "results.csv", prof);
        c.manifest.add_output("results.csv");
        c.manifest.set("converged", prof.converged);
        if (!prof.converged) c.err << "warning: kernel evaluation did not reach its tolerance at some instants\n";
        c.out << "profile with " << prof.times.size() << " instants written\n";
        return kOk;
    }
};

struct FitDecayCmd {
    ProfileOpts opts;
    double tolerance = verify::kDecaySlopeTolerance;
    int exec(Context& c, std::uint64_t) {
        auto prof = opts.compute();
        report::write_csv(c.dir() / "profile.csv", prof);
        c.manifest.add_output("profile.csv");
        auto [small, large] = verify::fit_decay(prof);
        report::CsvWriter csv(c.dir() / "results.csv",
                              {"regime", "slope", "predicted", "slope_error", "r_squared", "points", "within"});
        c.manifest.add_output("results.csv");
        bool ok = true;
        for (const auto& f : {small, large}) {
            bool within = f.within(tolerance);
            ok = ok && within;
            std::string name = f.regime == verify::Regime::small_time ? "small_time" : "large_time";
            csv.row({name, fmt(f.slope), fmt(f.predicted), fmt(f.slope_error), fmt(f.r_squared),
                     std::to_string(f.points), within ? "1" : "0"});
            c.out << name << ": slope " << fmt(f.slope) << " predicted " << fmt(f.predicted)
                  << (within ? " ok" : " OUTSIDE tolerance") << "\n";
        }
        c.manifest.set("fits", {small.to_json(), large.to_json()});
        return ok ? kOk : kVerificationFailed;
    }
};

struct TupleOpts {
    std::string set = "theorem";
    int n = 1;
    std::string sigma = "0", qt = "inf", rt = "inf", q = "inf", r = "inf";

    void add(CLI::App* s) {
        s->add_option("--set", set, "classical | cn2 | theorem | proposition | corollary");
        s->add_option("--n", n)->check(CLI::Range(1, 64));
        s->add_option("--sigma", sigma);
        s->add_option("--qt", qt);
        s->add_option("--rt", rt);
        s->add_option("--q", q);
        s->add_option("--r", r);
    }
    exponents::ConditionSet condition_set() const {
        auto cs = exponents::parse_condition_set(set);
        if (!cs) throw UsageError("unknown condition set '" + set + "'");
        return *cs;
    }
};

struct CheckTupleCmd {
    TupleOpts t;
    int exec(Context& c, std::uint64_t) {
        exponents::ExponentTuple tup{t.n, rational_arg("sigma", t.sigma), exponent_arg("qt", t.qt),
                                     exponent_arg("rt", t.rt), exponent_arg("q", t.q), exponent_arg("r", t.r)};
        auto rep = exponents::check(t.condition_set(), tup);
        report::CsvWriter csv(c.dir() / "results.csv", {"constraint", "passed", "slack"});
        c.manifest.add_output("results.csv");
        for (const auto& k : rep.constraints)
            csv.row({k.name, k.passed ? "1" : "0", k.slack ? to_string(*k.slack) : ""});
        csv.row({"accept", rep.accept ? "1" : "0", ""});
        c.manifest.set("verdict", rep.to_json());
        c.out << (rep.accept ? "accept" : "reject");
        if (!rep.case_tag.empty()) c.out << " [" << rep.case_tag << "]";
        c.out << "\n";
        for (const auto& v : rep.violated()) c.out << "  violated: " << v << "\n";
        return kOk;
    }
};

struct RegionCmd {
    TupleOpts t;
    std::string resolution = "1/64";

    exponents::CoordinateSpec coord(const std::string& name, const std::string& text) const {
        exponents::CoordinateSpec cs;
        if (text == "free") cs.mode = exponents::CoordinateSpec::Mode::free;
        else if (text == "derived") cs.mode = exponents::CoordinateSpec::Mode::derived;
        else cs.value = exponent_arg(name, text).reciprocal();
        return cs;
    }

    int exec(Context& c, std::uint64_t) {
        exponents::RegionQuery query;
        query.set = t.condition_set();
        query.n = t.n;
        query.sigma = rational_arg("sigma", t.sigma);
        query.coords = {coord("qt", t.qt), coord("rt", t.rt), coord("q", t.q), coord("r", t.r)};
        query.resolution = rational_arg("resolution", resolution);
        auto scan = exponents::sample_region(query);
        report::write_mesh_csv(c.dir() / "mesh.csv", scan);
        c.manifest.add_output("mesh.csv");
        report::CsvWriter csv(c.dir() / "results.csv", {"qt", "rt", "q", "r"});
        c.manifest.add_output("results.csv");
        for (const auto& a : scan.accepted) csv.row({a.qt.str(), a.rt.str(), a.q.str(), a.r.str()});
        c.manifest.set("points", scan.mesh.size());
        c.manifest.set("accepted", scan.accepted.size());
        c.manifest.set("disagreements", scan.disagreements);
        c.out << scan.accepted.size() << " of " << scan.mesh.size() << " points accepted, " << scan.disagreements
              << " disagreements\n";
        for (const auto& d : scan.disagreement_log) c.err << "disagreement: " << d << "\n";
        return scan.disagreements == 0 ? kOk : kVerificationFailed;
    }
};

struct RatioCmd {
    GridOpts grid{1, 128.0, 2048};
    DatumOpts datum{"", "hermite", 1.0, 0.0, 2.0};
    WindowOpts window_x, window_t;
    TupleOpts t;
    std::vector<double> freqs{0.0};
    bool weak = false;

    int exec(Context& c, std::uint64_t seed) {
        exponents::ExponentTuple tup{grid.n, rational_arg("sigma", t.sigma), exponent_arg("qt", t.qt),
                                     exponent_arg("rt", t.rt), exponent_arg("q", t.q), exponent_arg("r", t.r)};
        auto g = make_datum(datum, grid, seed);
        verify::RatioOptions ro;
        ro.window_t = window_t.spec();
        ro.window_x = window_x.spec();
        ro.weak = weak;
        report::CsvWriter csv(c.dir() / "results.csv", {"freq", "ratio", "numerator", "denominator", "divergent"});
        c.manifest.add_output("results.csv");
        for (double w : freqs) {
            auto f = g;
            for (std::size_t j = 0; j < f.values.size(); ++j)
                f.values[j] *= std::polar(1.0, w * f.grid.coordinate(f.grid.unravel(j)[0]));
            auto rr = verify::strichartz_ratio(f, tup, ro);
            csv.row({fmt(w), fmt(rr.ratio), fmt(rr.numerator.value), fmt(rr.denominator.value), rr.divergent ? "1" : "0"});
            c.out << "freq " << fmt(w) << ": ratio " << fmt(rr.ratio) << (rr.divergent ? " (divergent)" : "") << "\n";
            for (const auto& wmsg : rr.warnings) c.err << "warning: " << wmsg << "\n";
        }
        return kOk;
    }
};

struct SuiteCmd {
    std::size_t corpus_size = 500;
    std::string corpus = "mixed";
    int exec(Context& c, std::uint64_t seed) {
        verify::SuiteOptions so;
        so.seed = seed;
        so.corpus_size = corpus_size;
        if (corpus == "spikes") so.corpus = verify::Corpus::spikes;
        else if (corpus != "mixed") throw UsageError("unknown --corpus '" + corpus + "' (mixed, spikes)");
        auto rep = verify::property_suite(so);
        report::CsvWriter csv(c.dir() / "results.csv", {"property", "trials", "failures"});
        c.manifest.add_output("results.csv");
        for (const auto& o : rep.outcomes) {
            csv.row({o.name, std::to_string(o.trials), std::to_string(o.failures)});
            c.out << (o.failures ? "FAIL " : "pass ") << o.name << " (" << o.trials << " trials)\n";
        }
        std::ofstream(c.dir() / "report.json") << rep.to_json().dump(2) << "\n";
        c.manifest.add_output("report.json");
        return rep.passed() ? kOk : kVerificationFailed;
    }
};

struct HlsCmd {
    std::string p = "4/3", alpha = "1/2";
    verify::HlsOptions opts;
    int exec(Context& c, std::uint64_t seed) {
        opts.seed = seed;
        auto rep = verify::hls_check_1d(to_double(rational_arg("p", p)), to_double(rational_arg("alpha", alpha)), opts);
        report::CsvWriter csv(c.dir() / "results.csv", {"trial", "ratio_coarse", "ratio_fine"});
        c.manifest.add_output("results.csv");
        for (std::size_t i = 0; i < rep.ratios_coarse.size(); ++i)
            csv.row({std::to_string(i), fmt(rep.ratios_coarse[i]), fmt(rep.ratios_fine[i])});
        c.manifest.set("summary", rep.to_json());
        c.out << "q = " << fmt(rep.q) << ", max ratio " << fmt(rep.max_coarse) << " -> " << fmt(rep.max_fine)
              << ", stability x" << fmt(rep.stability) << (rep.stable ? "" : " (UNSTABLE)") << "\n";
        return rep.stable ? kOk : kVerificationFailed;
    }
};

struct BilinearCmd {
    GridOpts grid{1, 16.0, 128};
    std::string sigma = "1/4";
    int pairs = 50;
    int slices = 8;
    double tolerance = 1e-8;
    int exec(Context& c, std::uint64_t seed) {
        auto gs = grid.spec();
        double s = to_double(rational_arg("sigma", sigma));
        if (pairs < 1 || slices < 1) throw UsageError("--pairs and --slices must be positive");
        std::vector<double> times(static_cast<std::size_t>(slices));
        for (int i = 0; i < slices; ++i) times[static_cast<std::size_t>(i)] = -1.0 + 2.0 * (i + 0.5) / slices;
        verify::Rng rng(seed);
        report::CsvWriter csv(c.dir() / "results.csv", {"pair", "double_re", "double_im", "factorized_re", "factorized_im", "rel_diff"});
        c.manifest.add_output("results.csv");
        double worst = 0.0;
        for (int k = 0; k < pairs; ++k) {
            auto F = verify::random_spacetime(gs, times, rng);
            auto G = verify::random_spacetime(gs, times, rng);
            auto a = verify::bilinear_form(F, G, s);
            auto b = verify::bilinear_form_factorized(F, G, s);
            double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
            worst = std::max(worst, rel);
            csv.row({std::to_string(k), fmt(a.real()), fmt(a.imag()), fmt(b.real()), fmt(b.imag()), fmt(rel)});
        }
        c.manifest.set("max_rel_diff", worst);
        c.out << "max relative difference " << fmt(worst) << "\n";
        return worst <= tolerance ? kOk : kVerificationFailed;
    }
};

} // namespace

int run(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wiener amalgam Strichartz toolkit", "amalgam"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));
    std::string out_dir = "amalgam_out";
    std::uint64_t seed = 1;
    app.add_option("--out", out_dir, "output directory (AMALGAM_OUT takes precedence)");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--config", "key = value file supplying any flag");

    NormCmd norm;
    auto* s_norm = app.add_subcommand("norm", "Lebesgue, amalgam, homogeneous Sobolev or space-time norm");
    add_grid(s_norm, norm.grid);
    add_datum(s_norm, norm.datum);
    add_window(s_norm, norm.window);
    add_window(s_norm, norm.window_t, "time-window");
    s_norm->add_option("--space", norm.space, "lebesgue | amalgam | hsigma | spacetime");
    s_norm->add_option("--p", norm.p, "local exponent (spatial global exponent r for spacetime)");
    s_norm->add_option("--q", norm.q, "global exponent");
    s_norm->add_option("--qt", norm.qt, "local time exponent");
    s_norm->add_option("--rt", norm.rt, "local space exponent");
    s_norm->add_option("--sigma", norm.sigma, "Sobolev order");

    EvolveCmd evolve;
    auto* s_evolve = app.add_subcommand("evolve", "apply e^{it Laplacian}|D|^{-sigma} at listed instants");
    add_grid(s_evolve, evolve.grid);
    add_datum(s_evolve, evolve.datum);
    s_evolve->add_option("--times", evolve.times, "comma separated instants")->delimiter(',');
    s_evolve->add_option("--sigma", evolve.sigma);

    KernelProfileCmd kprof;
    auto* s_kprof = app.add_subcommand("kernel-profile", "amalgam norm of the kernel against time");
    kprof.opts.add(s_kprof);

    FitDecayCmd fit;
    auto* s_fit = app.add_subcommand("fit-decay", "kernel profile plus two-regime slope fit");
    fit.opts.add(s_fit);
    s_fit->add_option("--tolerance", fit.tolerance);

    RegionCmd region;
    auto* s_region = app.add_subcommand("region", "scan an exponent region (coordinates: value, free or derived)");
    region.t.add(s_region);
    s_region->add_option("--resolution", region.resolution, "step 1/m in reciprocal coordinates");

    CheckTupleCmd check;
    auto* s_check = app.add_subcommand("check-tuple", "verdict of one condition set on one tuple");
    check.t.add(s_check);

    RatioCmd ratio;
    auto* s_ratio = app.add_subcommand("ratio", "Strichartz ratio over modulation frequencies");
    add_grid(s_ratio, ratio.grid);
    add_datum(s_ratio, ratio.datum);
    add_window(s_ratio, ratio.window_x);
    add_window(s_ratio, ratio.window_t, "time-window");
    s_ratio->add_option("--sigma", ratio.t.sigma);
    s_ratio->add_option("--qt", ratio.t.qt);
    s_ratio->add_option("--rt", ratio.t.rt);
    s_ratio->add_option("--q", ratio.t.q);
    s_ratio->add_option("--r", ratio.t.r);
    s_ratio->add_option("--freqs", ratio.freqs, "comma separated modulation frequencies")->delimiter(',');
    s_ratio->add_flag("--weak", ratio.weak, "weak outer time norm");

    SuiteCmd suite;
    auto* s_suite = app.add_subcommand("suite", "amalgam property suite");
    s_suite->add_option("--corpus-size", suite.corpus_size);
    s_suite->add_option("--corpus", suite.corpus, "mixed | spikes");

    HlsCmd hls;
    auto* s_hls = app.add_subcommand("hls", "fractional integration check in one dimension");
    s_hls->add_option("--p", hls.p);
    s_hls->add_option("--alpha", hls.alpha);
    s_hls->add_option("--trials", hls.opts.trials)->check(CLI::PositiveNumber);
    s_hls->add_option("--cells", hls.opts.N)->check(CLI::PositiveNumber);
    s_hls->add_option("--T", hls.opts.T)->check(CLI::PositiveNumber);

    BilinearCmd bil;
    auto* s_bil = app.add_subcommand("bilinear", "double-sum versus factorized bilinear form");
    add_grid(s_bil, bil.grid);
    s_bil->add_option("--sigma", bil.sigma);
    s_bil->add_option("--pairs", bil.pairs);
    s_bil->add_option("--slices", bil.slices);
    s_bil->add_option("--tolerance", bil.tolerance);

    std::vector<std::string> args;
    try {
        args = merge_config(raw);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    auto* sub = app.get_subcommands().front();
    if (const char* env = std::getenv("AMALGAM_OUT"); env && *env) out_dir = env;
    json params = params_of(sub);
    params["seed"] = seed;

    std::optional<report::RunManifest> manifest;
    try {
        manifest.emplace(out_dir, sub->get_name(), params);
        Context ctx{out, err, *manifest};
        int code = kOk;
        const std::string name = sub->get_name();
        if (name == "norm") code = norm.exec(ctx, seed);
        else if (name == "evolve") code = evolve.exec(ctx, seed);
        else if (name == "kernel-profile") code = kprof.exec(ctx, seed);
        else if (name == "fit-decay") code = fit.exec(ctx, seed);
        else if (name == "region") code = region.exec(ctx, seed);
        else if (name == "check-tuple") code = check.exec(ctx, seed);
        else if (name == "ratio") code = ratio.exec(ctx, seed);
        else if (name == "suite") code = suite.exec(ctx, seed);
        else if (name == "hls") code = hls.exec(ctx, seed);
        else if (name == "bilinear") code = bil.exec(ctx, seed);
        manifest->set("exit_code", code);
        manifest->finish(code == kOk ? "complete" : "failed");
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        if (manifest) manifest->finish("failed");
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        if (manifest) manifest->finish("failed");
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        if (manifest) manifest->finish("failed");
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        if (manifest) manifest->finish("failed");
        return kVerificationFailed;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace amalgam::cli
