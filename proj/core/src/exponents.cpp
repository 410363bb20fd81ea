#include "amalgam/exponents.hpp"

#include <algorithm>
#include <stdexcept>

namespace amalgam::exponents {
namespace {

class Builder {
public:
    explicit Builder(ConditionSet set) { rep_.set = set; }

    void less(std::string name, Rational lhs, Rational rhs) { add(std::move(name), lhs < rhs, rhs - lhs); }
    void less_eq(std::string name, Rational lhs, Rational rhs) { add(std::move(name), lhs <= rhs, rhs - lhs); }
    void equal(std::string name, Rational lhs, Rational rhs) { add(std::move(name), lhs == rhs, rhs - lhs); }
    void flag(std::string name, bool ok) { rep_.constraints.push_back({std::move(name), ok, std::nullopt}); }

    /// Entries must lie in [1, inf] before any reciprocal is taken.
    bool domain(const char* name, const ExtReal& e) {
        bool ok = e.is_inf() || e.value() >= 1;
        flag(std::string(name) + " in [1, inf]", ok);
        return ok;
    }

    RegionReport& report() { return rep_; }

    RegionReport done() {
        rep_.accept = std::all_of(rep_.constraints.begin(), rep_.constraints.end(),
                                  [](const Constraint& c) { return c.passed; });
        return rep_;
    }

private:
    void add(std::string name, bool ok, Rational slack) { rep_.constraints.push_back({std::move(name), ok, slack}); }
    RegionReport rep_;
};

const Rational half{1, 2};

} // namespace

nlohmann::json ExponentTuple::to_json() const {
    return {{"n", n},          {"sigma", to_string(sigma)}, {"qt", qt.str()},
            {"rt", rt.str()}, {"q", q.str()},              {"r", r.str()}};
}

std::string_view label(ConditionSet set) {
    switch (set) {
    case ConditionSet::classical: return "classical";
    case ConditionSet::cn2: return "cn2";
    case ConditionSet::theorem: return "theorem";
    case ConditionSet::proposition: return "proposition";
    case ConditionSet::corollary: return "corollary";
    }
    return "unknown";
}

std::optional<ConditionSet> parse_condition_set(std::string_view text) {
    for (auto s : {ConditionSet::classical, ConditionSet::cn2, ConditionSet::theorem, ConditionSet::proposition,
                   ConditionSet::corollary})
        if (label(s) == text) return s;
    if (text == "prop") return ConditionSet::proposition;
    if (text == "C-N2") return ConditionSet::cn2;
    return std::nullopt;
}

std::vector<std::string> RegionReport::violated() const {
    std::vector<std::string> out;
    for (const auto& c : constraints)
        if (!c.passed) out.push_back(c.name);
    return out;
}

nlohmann::json RegionReport::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : constraints) {
        nlohmann::json j = {{"name", c.name}, {"passed", c.passed}};
        j["slack"] = c.slack ? nlohmann::json(to_string(*c.slack)) : nlohmann::json(nullptr);
        cs.push_back(j);
    }
    nlohmann::json j = {{"set", label(set)}, {"verdict", accept ? "accept" : "reject"}, {"constraints", cs}};
    if (!case_tag.empty()) j["case"] = case_tag;
    return j;
}

RegionReport is_schrodinger_admissible(const ExtReal& q, const ExtReal& r, int n) {
    Builder b(ConditionSet::classical);
    bool ok = b.domain("q", q) & b.domain("r", r);
    if (n < 1) b.flag("n >= 1", false);
    if (!ok || n < 1) return b.done();
    b.less_eq("q >= 2", q.reciprocal(), half);
    b.less_eq("r >= 2", r.reciprocal(), half);
    b.equal("2/q + n/r = n/2", 2 * q.reciprocal() + n * r.reciprocal(), Rational(n, 2));
    b.flag("(q, r, n) != (2, inf, 2)", !(q == ExtReal(2) && r.is_inf() && n == 2));
    return b.done();
}

RegionReport satisfies_cn2(const ExponentTuple& t) {
    Builder b(ConditionSet::cn2);
    bool ok = b.domain("qt", t.qt) & b.domain("rt", t.rt) & b.domain("q", t.q) & b.domain("r", t.r);
    if (t.n < 1) b.flag("n >= 1", false);
    if (!ok || t.n < 1) return b.done();
    int n = t.n;
    b.less_eq("q >= 2", t.q.reciprocal(), half);
    b.less_eq("r >= 2", t.r.reciprocal(), half);
    b.less_eq("rt <= r", t.r.reciprocal(), t.rt.reciprocal());
    b.less_eq("2/q + n/r <= n/2", 2 * t.q.reciprocal() + n * t.r.reciprocal(), Rational(n, 2));
    b.less_eq("n/2 <= 2/qt + n/rt", Rational(n, 2), 2 * t.qt.reciprocal() + n * t.rt.reciprocal());
    if (n == 2) {
        b.less("rt < inf", Rational(0), t.rt.reciprocal());
        b.less("r < inf", Rational(0), t.r.reciprocal());
    }
    if (n >= 3) b.less_eq("rt <= 2n/(n-2)", Rational(n - 2, 2 * n), t.rt.reciprocal());
    return b.done();
}

RegionReport satisfies_theorem(const ExponentTuple& t) {
    Builder b(ConditionSet::theorem);
    bool ok = b.domain("qt", t.qt) & b.domain("rt", t.rt) & b.domain("q", t.q) & b.domain("r", t.r);
    if (t.n < 1) b.flag("n >= 1", false);
    if (!ok || t.n < 1) return b.done();
    int n = t.n;
    Rational s = t.sigma;
    b.less_eq("qt >= 2", t.qt.reciprocal(), half);
    b.report().constraints.push_back({"qt < q", t.qt < t.q, t.qt.reciprocal() - t.q.reciprocal()});
    b.report().constraints.push_back({"q < inf", !t.q.is_inf(), t.q.reciprocal()});
    b.less_eq("rt >= 2", t.rt.reciprocal(), half);
    b.less_eq("r >= 2", t.r.reciprocal(), half);
    b.less("sigma > max{0, (n-2)/4}", std::max(Rational(0), Rational(n - 2, 4)), s);
    b.less("sigma < n/2", s, Rational(n, 2));
    b.less("2/qt + (n-1)/rt > n/2 - sigma", Rational(n, 2) - s, 2 * t.qt.reciprocal() + (n - 1) * t.rt.reciprocal());
    b.equal("2/q + n/r = n/2 - sigma - (n-1)/rt", 2 * t.q.reciprocal() + n * t.r.reciprocal(),
            Rational(n, 2) - s - (n - 1) * t.rt.reciprocal());
    return b.done();
}

RegionReport satisfies_prop_kernel(int n, Rational sigma, const ExtReal& rt, const ExtReal& r) {
    Builder b(ConditionSet::proposition);
    bool ok = b.domain("rt", rt) & b.domain("r", r);
    if (n < 1) b.flag("n >= 1", false);
    Rational quarter(n, 4);
    b.report().case_tag = sigma < quarter ? "small_sigma" : (sigma > quarter ? "large_sigma" : "quarter_sigma");
    if (!ok || n < 1) return b.done();
    b.less_eq("rt >= 2", rt.reciprocal(), half);
    b.less_eq("r >= 2", r.reciprocal(), half);
    b.less("sigma > 0", Rational(0), sigma);
    b.less("sigma < n/2", sigma, Rational(n, 2));
    Rational lhs = (n - 1) * rt.reciprocal() + n * r.reciprocal();
    if (sigma < quarter) {
        b.less("(n-1)/rt + n/r < sigma", lhs, sigma);
    } else if (sigma > quarter) {
        b.less("(n-1)/rt + n/r < n/2 - sigma", lhs, Rational(n, 2) - sigma);
    } else {
        Rational s3 = sigma - lhs;
        Rational s4 = Rational(n, 2) - sigma - lhs;
        Rational best = std::max(s3, s4);
        b.report().constraints.push_back({"either kernel condition at sigma = n/4", best > 0, best});
    }
    return b.done();
}

RegionReport satisfies_corollary(const ExponentTuple& t) {
    Builder b(ConditionSet::corollary);
    bool ok = b.domain("qt", t.qt) & b.domain("rt", t.rt) & b.domain("q", t.q) & b.domain("r", t.r);
    if (t.n < 1) b.flag("n >= 1", false);
    if (!ok || t.n < 1) return b.done();
    int n = t.n;
    Rational s = t.sigma;
    b.equal("rt = 4", t.rt.reciprocal(), Rational(1, 4));
    b.less("sigma > max{0, (n-2)/8}", std::max(Rational(0), Rational(n - 2, 8)), s);
    b.less("sigma < n/4", s, Rational(n, 4));
    b.equal("2/q + n/r = n/2 - sigma", 2 * t.q.reciprocal() + n * t.r.reciprocal(), Rational(n, 2) - s);
    b.less("2/qt > n/4 - sigma", Rational(n, 4) - s, 2 * t.qt.reciprocal());
    b.less("0 < 1/q", Rational(0), t.q.reciprocal());
    b.less("1/q < 1/qt + 1/4", t.q.reciprocal(), t.qt.reciprocal() + Rational(1, 4));
    b.less_eq("1/qt + 1/4 <= 1/2", t.qt.reciprocal() + Rational(1, 4), half);
    b.less_eq("r >= 2", t.r.reciprocal(), half);
    if (n == 2) b.less("r < inf", Rational(0), t.r.reciprocal());
    return b.done();
}

RegionReport check(ConditionSet set, const ExponentTuple& t) {
    switch (set) {
    case ConditionSet::classical: return is_schrodinger_admissible(t.q, t.r, t.n);
    case ConditionSet::cn2: return satisfies_cn2(t);
    case ConditionSet::theorem: return satisfies_theorem(t);
    case ConditionSet::proposition: return satisfies_prop_kernel(t.n, t.sigma, t.rt, t.r);
    case ConditionSet::corollary: return satisfies_corollary(t);
    }
    throw std::invalid_argument("unknown condition set");
}

DecayExponents predicted_kernel_decay(int n, Rational sigma, const ExtReal& rt, const ExtReal& r) {
    DecayExponents d;
    d.small_t = Rational(-n, 2) + sigma + (n - 1) * rt.reciprocal();
    d.large_t = d.small_t + n * r.reciprocal();
    d.extrapolated = !satisfies_prop_kernel(n, sigma, rt, r).accept;
    return d;
}

Rational window_decay_exponent(const ExponentTuple& t) {
    return Rational(-t.n, 2) + t.sigma + (t.n - 1) * t.rt.reciprocal() + t.n * t.r.reciprocal();
}

ExtReal classical_sobolev_line(int n, Rational sigma, const ExtReal& q) {
    if (n < 1) throw std::domain_error("dimension must be >= 1");
    if (!(sigma > 0) || !(sigma < Rational(n, 2))) throw std::domain_error("needs 0 < sigma < n/2");
    if (!q.is_inf() && q.value() < 2) throw std::domain_error("needs q >= 2");
    Rational inv_r = (Rational(n, 2) - sigma - 2 * q.reciprocal()) / n;
    if (inv_r < 0) throw std::domain_error("no admissible r: 2/q exceeds n/2 - sigma (q too small)");
    if (inv_r > half) throw std::domain_error("no admissible r: solution has r < 2");
    return ExtReal::from_reciprocal(inv_r);
}

} // namespace amalgam::exponents
