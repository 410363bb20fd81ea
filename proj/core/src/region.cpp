#include "amalgam/exponents.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace amalgam::exponents {
namespace {

using Vec = std::array<Rational, 4>;

enum class Rel { gt, ge, eq };

// a . x + c  (rel)  0
struct Halfspace {
    Vec a{};
    Rational c{0};
    Rel rel = Rel::ge;
};

struct Compiled {
    std::vector<Halfspace> halfspaces;
    // Points excluded outright: coordinate index -> value, all must match.
    std::vector<std::vector<std::pair<int, Rational>>> exclusions;
    // Index into halfspaces of the defining equality, if any.
    std::optional<std::size_t> equality;
};

constexpr int QT = 0, RT = 1, Q = 2, R = 3;

Vec unit(int i, Rational v = 1) {
    Vec a{};
    a[static_cast<std::size_t>(i)] = v;
    return a;
}

Vec combo(std::initializer_list<std::pair<int, Rational>> terms) {
    Vec a{};
    for (auto [i, v] : terms) a[static_cast<std::size_t>(i)] += v;
    return a;
}

void box(Compiled& c, int i, Rational hi) {
    c.halfspaces.push_back({unit(i), 0, Rel::ge});
    c.halfspaces.push_back({unit(i, -1), hi, Rel::ge});
}

void constant(Compiled& c, Rational value, Rel rel) { c.halfspaces.push_back({Vec{}, value, rel}); }

Compiled compile(ConditionSet set, int n, Rational s) {
    Compiled c;
    Rational nh(n, 2);
    switch (set) {
    case ConditionSet::classical:
        box(c, Q, Rational(1, 2));
        box(c, R, Rational(1, 2));
        c.equality = c.halfspaces.size();
        c.halfspaces.push_back({combo({{Q, 2}, {R, n}}), -nh, Rel::eq});
        if (n == 2) c.exclusions.push_back({{Q, Rational(1, 2)}, {R, 0}});
        break;
    case ConditionSet::cn2:
        box(c, QT, 1);
        box(c, RT, 1);
        box(c, Q, Rational(1, 2));
        box(c, R, Rational(1, 2));
        c.halfspaces.push_back({combo({{RT, 1}, {R, -1}}), 0, Rel::ge});
        c.halfspaces.push_back({combo({{Q, -2}, {R, -n}}), nh, Rel::ge});
        c.halfspaces.push_back({combo({{QT, 2}, {RT, n}}), -nh, Rel::ge});
        if (n == 2) {
            c.halfspaces.push_back({unit(RT), 0, Rel::gt});
            c.halfspaces.push_back({unit(R), 0, Rel::gt});
        }
        if (n >= 3) c.halfspaces.push_back({unit(RT), -Rational(n - 2, 2 * n), Rel::ge});
        break;
    case ConditionSet::theorem:
        box(c, QT, Rational(1, 2));
        box(c, RT, Rational(1, 2));
        box(c, R, Rational(1, 2));
        c.halfspaces.push_back({combo({{QT, 1}, {Q, -1}}), 0, Rel::gt});
        c.halfspaces.push_back({unit(Q), 0, Rel::gt});
        constant(c, s - std::max(Rational(0), Rational(n - 2, 4)), Rel::gt);
        constant(c, nh - s, Rel::gt);
        c.halfspaces.push_back({combo({{QT, 2}, {RT, n - 1}}), s - nh, Rel::gt});
        c.equality = c.halfspaces.size();
        c.halfspaces.push_back({combo({{Q, 2}, {R, n}, {RT, n - 1}}), s - nh, Rel::eq});
        break;
    case ConditionSet::proposition:
        box(c, RT, Rational(1, 2));
        box(c, R, Rational(1, 2));
        constant(c, s, Rel::gt);
        constant(c, nh - s, Rel::gt);
        if (s <= Rational(n, 4))
            c.halfspaces.push_back({combo({{RT, -(n - 1)}, {R, -n}}), s, Rel::gt});
        else
            c.halfspaces.push_back({combo({{RT, -(n - 1)}, {R, -n}}), nh - s, Rel::gt});
        break;
    case ConditionSet::corollary:
        c.halfspaces.push_back({unit(RT), Rational(-1, 4), Rel::eq});
        constant(c, s - std::max(Rational(0), Rational(n - 2, 8)), Rel::gt);
        constant(c, Rational(n, 4) - s, Rel::gt);
        c.equality = c.halfspaces.size();
        c.halfspaces.push_back({combo({{Q, 2}, {R, n}}), s - nh, Rel::eq});
        c.halfspaces.push_back({unit(QT, 2), s - Rational(n, 4), Rel::gt});
        c.halfspaces.push_back({unit(Q), 0, Rel::gt});
        c.halfspaces.push_back({combo({{QT, 1}, {Q, -1}}), Rational(1, 4), Rel::gt});
        c.halfspaces.push_back({unit(QT, -1), Rational(1, 4), Rel::ge});
        box(c, R, Rational(1, 2));
        box(c, QT, 1);
        if (n == 2) c.halfspaces.push_back({unit(R), 0, Rel::gt});
        break;
    }
    return c;
}

bool affine_accepts(const Compiled& c, const Vec& x) {
    for (const auto& h : c.halfspaces) {
        Rational v = h.c;
        for (std::size_t i = 0; i < 4; ++i) v += h.a[i] * x[i];
        bool ok = h.rel == Rel::gt ? v > 0 : (h.rel == Rel::ge ? v >= 0 : v == 0);
        if (!ok) return false;
    }
    for (const auto& ex : c.exclusions) {
        bool all = std::all_of(ex.begin(), ex.end(), [&](const auto& p) { return x[static_cast<std::size_t>(p.first)] == p.second; });
        if (all) return false;
    }
    return true;
}

bool in_unit_interval(const Vec& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0 && v <= 1; });
}

ExponentTuple to_tuple(int n, Rational sigma, const Vec& x) {
    ExponentTuple t;
    t.n = n;
    t.sigma = sigma;
    t.qt = ExtReal::from_reciprocal(x[0]);
    t.rt = ExtReal::from_reciprocal(x[1]);
    t.q = ExtReal::from_reciprocal(x[2]);
    t.r = ExtReal::from_reciprocal(x[3]);
    return t;
}

std::string describe(const Vec& x) {
    std::ostringstream os;
    os << "(1/qt, 1/rt, 1/q, 1/r) = (" << to_string(x[0]) << ", " << to_string(x[1]) << ", " << to_string(x[2])
       << ", " << to_string(x[3]) << ")";
    return os.str();
}

} // namespace

RegionScan sample_region(const RegionQuery& query) {
    if (query.n < 1) throw std::invalid_argument("dimension must be >= 1");
    if (!(query.resolution > 0) || query.resolution > 1) throw std::invalid_argument("resolution must lie in (0, 1]");
    std::vector<int> free_axes;
    std::optional<int> derived;
    for (int i = 0; i < 4; ++i) {
        const auto& cs = query.coords[static_cast<std::size_t>(i)];
        if (cs.mode == CoordinateSpec::Mode::free) free_axes.push_back(i);
        if (cs.mode == CoordinateSpec::Mode::derived) {
            if (derived) throw std::invalid_argument("at most one derived coordinate");
            derived = i;
        }
    }
    if (free_axes.size() > 2) throw std::invalid_argument("region scans accept at most 2 free reciprocal coordinates");

    Compiled comp = compile(query.set, query.n, query.sigma);
    if (derived) {
        if (!comp.equality) throw std::invalid_argument("condition set has no equality to solve for a derived coordinate");
        if (comp.halfspaces[*comp.equality].a[static_cast<std::size_t>(*derived)] == 0)
            throw std::invalid_argument("derived coordinate does not enter the defining equality");
    }

    Rational step = query.resolution;
    if ((Rational(1) / step).denominator() != 1) throw std::invalid_argument("resolution must be 1/m for an integer m");
    auto m = (Rational(1) / step).numerator();
    std::int64_t n0 = free_axes.size() >= 1 ? m + 1 : 1;
    std::int64_t n1 = free_axes.size() >= 2 ? m + 1 : 1;

    RegionScan scan;
    std::vector<std::vector<int>> verdict(static_cast<std::size_t>(n0), std::vector<int>(static_cast<std::size_t>(n1), 0));
    std::vector<Vec> points;
    for (std::int64_t i = 0; i < n0; ++i) {
        for (std::int64_t j = 0; j < n1; ++j) {
            Vec x{};
            for (int c = 0; c < 4; ++c) x[static_cast<std::size_t>(c)] = query.coords[static_cast<std::size_t>(c)].value;
            if (free_axes.size() >= 1) x[static_cast<std::size_t>(free_axes[0])] = step * i;
            if (free_axes.size() >= 2) x[static_cast<std::size_t>(free_axes[1])] = step * j;
            if (derived) {
                const auto& h = comp.halfspaces[*comp.equality];
                auto d = static_cast<std::size_t>(*derived);
                Rational rest = h.c;
                for (std::size_t k = 0; k < 4; ++k)
                    if (k != d) rest += h.a[k] * x[k];
                x[d] = -rest / h.a[d];
            }
            bool affine = in_unit_interval(x) && affine_accepts(comp, x);
            bool predicate = false;
            if (in_unit_interval(x)) predicate = check(query.set, to_tuple(query.n, query.sigma, x)).accept;
            if (affine != predicate) {
                ++scan.disagreements;
                scan.disagreement_log.push_back(describe(x) + (predicate ? ": predicate accepts" : ": predicate rejects"));
            }
            verdict[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = predicate ? 1 : 0;
            points.push_back(x);
            if (predicate) scan.accepted.push_back(to_tuple(query.n, query.sigma, x));
        }
    }

    std::size_t idx = 0;
    for (std::int64_t i = 0; i < n0; ++i) {
        for (std::int64_t j = 0; j < n1; ++j, ++idx) {
            MeshPoint mp;
            mp.reciprocals = points[idx];
            mp.accepted = verdict[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 1;
            if (mp.accepted) {
                auto rejected = [&](std::int64_t a, std::int64_t b) {
                    if (a < 0 || b < 0 || a >= n0 || b >= n1) return true;
                    return verdict[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 0;
                };
                bool edge = false;
                if (n0 > 1) edge = edge || rejected(i - 1, j) || rejected(i + 1, j);
                if (n1 > 1) edge = edge || rejected(i, j - 1) || rejected(i, j + 1);
                mp.boundary = edge;
            }
            scan.mesh.push_back(mp);
        }
    }
    return scan;
}

} // namespace amalgam::exponents
