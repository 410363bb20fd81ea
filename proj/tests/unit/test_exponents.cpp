#include "amalgam/exponents.hpp"
#include "amalgam/wiener.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace amalgam;
using namespace amalgam::exponents;

namespace {

const ExtReal inf = ExtReal::infinity();

ExponentTuple tuple(int n, Rational sigma, ExtReal qt, ExtReal rt, ExtReal q, ExtReal r) {
    return ExponentTuple{n, sigma, qt, rt, q, r};
}

bool has_violation(const RegionReport& r, const std::string& name) {
    auto v = r.violated();
    return std::find(v.begin(), v.end(), name) != v.end();
}

} // namespace

TEST(Admissible, WorkedPairs) {
    for (int n : {1, 2, 3, 7}) EXPECT_TRUE(is_schrodinger_admissible(inf, ExtReal(2), n).accept) << n;
    auto endpoint = is_schrodinger_admissible(ExtReal(2), inf, 2);
    EXPECT_FALSE(endpoint.accept);
    EXPECT_TRUE(has_violation(endpoint, "(q, r, n) != (2, inf, 2)"));
    EXPECT_TRUE(is_schrodinger_admissible(ExtReal(4), ExtReal(4), 2).accept);
    EXPECT_FALSE(is_schrodinger_admissible(ExtReal(4), ExtReal(5), 2).accept);
}

TEST(Cn2, WorkedTuples) {
    EXPECT_TRUE(satisfies_cn2(tuple(3, 0, ExtReal(2), ExtReal(6), ExtReal(2), ExtReal(6))).accept);
    EXPECT_FALSE(satisfies_cn2(tuple(2, 0, ExtReal(2), ExtReal(4), ExtReal(4), inf)).accept);
    auto bad = satisfies_cn2(tuple(1, 0, ExtReal(2), ExtReal(8), ExtReal(4), ExtReal(4)));
    EXPECT_TRUE(has_violation(bad, "rt <= r"));
}

TEST(Theorem, AcceptsWorkedTupleWithExactSlack) {
    auto rep = satisfies_theorem(tuple(1, Rational(3, 10), ExtReal(2), inf, ExtReal(10), inf));
    EXPECT_TRUE(rep.accept);
    for (const auto& c : rep.constraints) {
        if (c.name == "2/qt + (n-1)/rt > n/2 - sigma") EXPECT_EQ(*c.slack, Rational(4, 5));
        if (c.name == "2/q + n/r = n/2 - sigma - (n-1)/rt") EXPECT_EQ(*c.slack, Rational(0));
    }
}

TEST(Theorem, RejectsEqualTimeExponents) {
    auto rep = satisfies_theorem(tuple(1, Rational(3, 10), ExtReal(10), inf, ExtReal(10), inf));
    EXPECT_FALSE(rep.accept);
    EXPECT_TRUE(has_violation(rep, "qt < q"));
}

TEST(Theorem, RejectsSigmaAtHalfDimension) {
    auto rep = satisfies_theorem(tuple(1, Rational(1, 2), ExtReal(2), inf, ExtReal(10), inf));
    EXPECT_TRUE(has_violation(rep, "sigma < n/2"));
}

TEST(Theorem, StrictInequalityBoundaryIsRejected) {
    // 2/qt = n/2 - sigma exactly, with the equality satisfied by (q, r) = (20, 10).
    auto rep = satisfies_theorem(tuple(1, Rational(3, 10), ExtReal(10), inf, ExtReal(20), ExtReal(10)));
    EXPECT_FALSE(rep.accept);
    EXPECT_EQ(rep.violated(), std::vector<std::string>{"2/qt + (n-1)/rt > n/2 - sigma"});
}

TEST(Theorem, OutOfRangeExponentsAreNamedNotClamped) {
    auto rep = satisfies_theorem(tuple(1, Rational(3, 10), ExtReal(Rational(1, 2)), inf, ExtReal(10), inf));
    EXPECT_FALSE(rep.accept);
    EXPECT_TRUE(has_violation(rep, "qt in [1, inf]"));
}

TEST(Proposition, CaseTagsAndVerdicts) {
    auto a = satisfies_prop_kernel(1, Rational(1, 5), inf, ExtReal(10));
    EXPECT_TRUE(a.accept);
    EXPECT_EQ(a.case_tag, "small_sigma");
    auto b = satisfies_prop_kernel(1, Rational(3, 10), inf, ExtReal(4));
    EXPECT_FALSE(b.accept);
    EXPECT_EQ(b.case_tag, "large_sigma");
    EXPECT_EQ(satisfies_prop_kernel(1, Rational(1, 4), inf, ExtReal(8)).case_tag, "quarter_sigma");
    EXPECT_FALSE(satisfies_prop_kernel(1, Rational(0), inf, inf).accept);
    EXPECT_FALSE(satisfies_prop_kernel(1, Rational(1, 2), inf, inf).accept);
}

TEST(Proposition, QuarterSigmaAcceptsEitherStrictCondition) {
    // n = 1, sigma = 1/4: both conditions read 1/r < 1/4.
    EXPECT_TRUE(satisfies_prop_kernel(1, Rational(1, 4), inf, ExtReal(5)).accept);
    EXPECT_FALSE(satisfies_prop_kernel(1, Rational(1, 4), inf, ExtReal(4)).accept);
}

TEST(Corollary, WorkedTuple) {
    EXPECT_TRUE(satisfies_corollary(tuple(1, Rational(1, 5), ExtReal(4), ExtReal(4), ExtReal(10), ExtReal(10))).accept);
    auto two = satisfies_corollary(tuple(1, Rational(1, 5), ExtReal(2), ExtReal(4), ExtReal(10), ExtReal(10)));
    EXPECT_TRUE(has_violation(two, "1/qt + 1/4 <= 1/2"));
    auto planar = satisfies_corollary(tuple(2, Rational(1, 5), ExtReal(4), ExtReal(4), ExtReal(Rational(20, 13)), inf));
    EXPECT_TRUE(has_violation(planar, "r < inf"));
}

TEST(Corollary, InterpolationReproducesTheRelations) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> num(0, 24);
    int done = 0;
    while (done < 100) {
        Rational iqt1(num(rng), 50), iq1(num(rng), 50), iq2(num(rng), 50), ir1(num(rng), 50), ir2(num(rng), 50);
        if (ir1 == 0 && ir2 == 0) continue;
        if (iq1 == 0 && iq2 == 0) continue;
        auto qt1 = ExtReal::from_reciprocal(iqt1), q1 = ExtReal::from_reciprocal(iq1), q2 = ExtReal::from_reciprocal(iq2);
        auto r1 = ExtReal::from_reciprocal(ir1), r2 = ExtReal::from_reciprocal(ir2);
        auto [qt, q] = wiener::interpolate_exponents(qt1, q1, inf, q2, Rational(1, 2));
        auto [rt, r] = wiener::interpolate_exponents(ExtReal(2), r1, inf, r2, Rational(1, 2));
        EXPECT_EQ(qt.reciprocal(), iqt1 / 2);
        EXPECT_EQ(q.reciprocal(), (iq1 + iq2) / 2);
        EXPECT_EQ(rt, ExtReal(4));
        EXPECT_EQ(r.reciprocal(), (ir1 + ir2) / 2);
        ++done;
    }
}

TEST(Decay, PredictedExponents) {
    auto a = predicted_kernel_decay(1, Rational(3, 10), inf, inf);
    EXPECT_EQ(a.small_t, Rational(-1, 5));
    EXPECT_EQ(a.large_t, Rational(-1, 5));
    auto b = predicted_kernel_decay(1, Rational(3, 10), inf, ExtReal(10));
    EXPECT_EQ(b.small_t, Rational(-1, 5));
    EXPECT_EQ(b.large_t, Rational(-1, 10));
    EXPECT_FALSE(b.extrapolated);
    auto c = predicted_kernel_decay(1, Rational(1, 5), inf, ExtReal(10));
    EXPECT_EQ(c.small_t, Rational(-3, 10));
    EXPECT_EQ(c.large_t, Rational(-1, 5));
    EXPECT_TRUE(predicted_kernel_decay(1, Rational(3, 10), inf, ExtReal(4)).extrapolated);
}

TEST(SobolevLine, WorkedValues) {
    EXPECT_TRUE(classical_sobolev_line(1, Rational(3, 10), ExtReal(10)).is_inf());
    EXPECT_TRUE(classical_sobolev_line(2, Rational(1, 2), ExtReal(4)).is_inf());
    EXPECT_TRUE(classical_sobolev_line(1, Rational(9, 20), ExtReal(40)).is_inf());
    EXPECT_EQ(classical_sobolev_line(1, Rational(1, 5), ExtReal(10)), ExtReal(10));
    EXPECT_THROW(classical_sobolev_line(1, Rational(3, 10), ExtReal(4)), std::domain_error);
}

TEST(Region, ScanAgreesWithPredicatesAndKeepsTimeOrder) {
    RegionQuery q;
    q.set = ConditionSet::theorem;
    q.n = 1;
    q.sigma = Rational(3, 10);
    q.coords[0].mode = CoordinateSpec::Mode::free;
    q.coords[1] = {CoordinateSpec::Mode::fixed, Rational(0)};
    q.coords[2].mode = CoordinateSpec::Mode::free;
    q.coords[3].mode = CoordinateSpec::Mode::derived;
    auto scan = sample_region(q);
    EXPECT_EQ(scan.disagreements, 0u);
    ASSERT_FALSE(scan.accepted.empty());
    for (const auto& t : scan.accepted) {
        EXPECT_LT(t.qt, t.q);
        EXPECT_TRUE(satisfies_theorem(t).accept);
    }
    EXPECT_EQ(scan.mesh.size(), 65u * 65u);
}

TEST(Region, EmptyForSigmaAboveHalfDimension) {
    RegionQuery q;
    q.n = 1;
    q.sigma = Rational(9, 10);
    q.coords[0].mode = CoordinateSpec::Mode::free;
    q.coords[2].mode = CoordinateSpec::Mode::free;
    auto scan = sample_region(q);
    EXPECT_TRUE(scan.accepted.empty());
    EXPECT_EQ(scan.disagreements, 0u);
}

TEST(Region, RefinementKeepsCoarseAcceptedPoints) {
    RegionQuery q;
    q.set = ConditionSet::corollary;
    q.n = 1;
    q.sigma = Rational(1, 5);
    q.coords[0].mode = CoordinateSpec::Mode::free;
    q.coords[1] = {CoordinateSpec::Mode::fixed, Rational(1, 4)};
    q.coords[2].mode = CoordinateSpec::Mode::free;
    q.coords[3].mode = CoordinateSpec::Mode::derived;
    q.resolution = Rational(1, 32);
    auto coarse = sample_region(q);
    q.resolution = Rational(1, 64);
    auto fine = sample_region(q);
    std::set<std::pair<Rational, Rational>> fine_set;
    for (const auto& t : fine.accepted) fine_set.insert({t.qt.reciprocal(), t.q.reciprocal()});
    ASSERT_FALSE(coarse.accepted.empty());
    for (const auto& t : coarse.accepted) EXPECT_TRUE(fine_set.count({t.qt.reciprocal(), t.q.reciprocal()}));
    EXPECT_GT(fine.accepted.size(), coarse.accepted.size());
}

TEST(Region, RejectsThreeFreeCoordinates) {
    RegionQuery q;
    for (int i = 0; i < 3; ++i) q.coords[static_cast<std::size_t>(i)].mode = CoordinateSpec::Mode::free;
    EXPECT_THROW(sample_region(q), std::invalid_argument);
}

// Exhaustive scan of 10^4 rational tuples for the containment of the theorem region in the kernel region.
class Containment : public ::testing::Test {
protected:
    template <class F>
    void scan(F&& visit) {
        for (int n : {1, 2, 3})
            for (int s = 1; s < 10 * n; ++s) {
                Rational sigma(s, 20);
                if (sigma >= Rational(n, 2)) break;
                for (int a = 0; a <= 10; ++a)
                    for (int b = 0; b <= 10; ++b)
                        for (int c = 1; c <= 10; ++c) {
                            Rational irt(a, 20), ir(b, 20), iqt(c, 20);
                            Rational iq = (Rational(n, 2) - sigma - (n - 1) * irt - n * ir) / 2;
                            if (iq <= 0) continue;
                            visit(ExponentTuple{n, sigma, ExtReal::from_reciprocal(iqt), ExtReal::from_reciprocal(irt),
                                                ExtReal::from_reciprocal(iq), ExtReal::from_reciprocal(ir)});
                        }
            }
    }
};

TEST_F(Containment, TheoremImpliesLargeSigmaKernelCondition) {
    std::size_t checked = 0, accepted = 0;
    scan([&](const ExponentTuple& t) {
        ++checked;
        if (!satisfies_theorem(t).accept) return;
        ++accepted;
        Rational lhs = (t.n - 1) * t.rt.reciprocal() + t.n * t.r.reciprocal();
        EXPECT_LT(lhs, Rational(t.n, 2) - t.sigma);
        if (t.sigma >= Rational(t.n, 4)) EXPECT_TRUE(satisfies_prop_kernel(t.n, t.sigma, t.rt, t.r).accept);
    });
    EXPECT_GE(checked, 10000u);
    EXPECT_GT(accepted, 0u);
}

TEST_F(Containment, SmallSigmaKernelConditionIsNotImplied) {
    auto t = tuple(1, Rational(1, 5), ExtReal(4), inf, ExtReal(40), ExtReal(4));
    EXPECT_TRUE(satisfies_theorem(t).accept);
    EXPECT_FALSE(satisfies_prop_kernel(1, Rational(1, 5), inf, ExtReal(4)).accept);
}
