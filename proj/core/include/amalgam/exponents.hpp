#pragma once

#include "amalgam/extended_real.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amalgam::exponents {

/// (n, sigma, qt, rt, q, r); qt/rt are the local (inner) exponents.
struct ExponentTuple {
    int n = 1;
    Rational sigma{0};
    ExtReal qt = ExtReal::infinity();
    ExtReal rt = ExtReal::infinity();
    ExtReal q = ExtReal::infinity();
    ExtReal r = ExtReal::infinity();

    nlohmann::json to_json() const;
};

enum class ConditionSet { classical, cn2, theorem, proposition, corollary };

std::string_view label(ConditionSet set);
std::optional<ConditionSet> parse_condition_set(std::string_view text);

struct Constraint {
    std::string name;
    bool passed = false;
    /// Exact margin (positive or zero when satisfied); absent for non-affine clauses.
    std::optional<Rational> slack;
};

struct RegionReport {
    ConditionSet set = ConditionSet::theorem;
    bool accept = false;
    std::vector<Constraint> constraints;
    /// "small_sigma" (sigma < n/4), "large_sigma" (sigma > n/4) or "quarter_sigma" for the kernel region; empty otherwise.
    std::string case_tag;

    std::vector<std::string> violated() const;
    nlohmann::json to_json() const;
};

/// q, r >= 2, 2/q + n/r = n/2, (q, r, n) != (2, inf, 2).
RegionReport is_schrodinger_admissible(const ExtReal& q, const ExtReal& r, int n);

/// 1 <= qt, rt; 2 <= q, r; rt <= r; 2/q + n/r <= n/2 <= 2/qt + n/rt;
/// rt, r < inf if n = 2; rt <= 2n/(n-2) if n >= 3.
RegionReport satisfies_cn2(const ExponentTuple& t);

/// 2 <= qt < q < inf; 2 <= rt, r; max{0,(n-2)/4} < sigma < n/2;
/// 2/qt + (n-1)/rt > n/2 - sigma; 2/q + n/r = n/2 - sigma - (n-1)/rt.
RegionReport satisfies_theorem(const ExponentTuple& t);

/// 0 < sigma < n/2, 2 <= rt, r and
/// (n-1)/rt + n/r < sigma for sigma <= n/4, (n-1)/rt + n/r < n/2 - sigma for sigma >= n/4.
RegionReport satisfies_prop_kernel(int n, Rational sigma, const ExtReal& rt, const ExtReal& r);

/// rt = 4; max{0,(n-2)/8} < sigma < n/4; 2/q + n/r = n/2 - sigma; 2/qt > n/4 - sigma;
/// 0 < 1/q < 1/qt + 1/4 <= 1/2; 2 <= r; r < inf if n = 2.
RegionReport satisfies_corollary(const ExponentTuple& t);

RegionReport check(ConditionSet set, const ExponentTuple& t);

struct DecayExponents {
    /// -n/2 + sigma + (n-1)/rt
    Rational small_t;
    /// small_t + n/r
    Rational large_t;
    /// True when (n, sigma, rt, r) lies outside the kernel proposition's region.
    bool extrapolated = false;
};

DecayExponents predicted_kernel_decay(int n, Rational sigma, const ExtReal& rt, const ExtReal& r);

/// -n/2 + sigma + (n-1)/rt + n/r: tail exponent of the windowed time norms.
Rational window_decay_exponent(const ExponentTuple& t);

/// Solves 2/q + n/r = n/2 - sigma for r; throws std::domain_error naming the violated bound.
ExtReal classical_sobolev_line(int n, Rational sigma, const ExtReal& q);

// ---------------------------------------------------------------------------
// Region scans in reciprocal coordinates (1/qt, 1/rt, 1/q, 1/r).

enum class Coord { inv_qt = 0, inv_rt = 1, inv_q = 2, inv_r = 3 };

struct CoordinateSpec {
    enum class Mode { fixed, free, derived };
    Mode mode = Mode::fixed;
    Rational value{0};
};

struct RegionQuery {
    ConditionSet set = ConditionSet::theorem;
    int n = 1;
    Rational sigma{0};
    std::array<CoordinateSpec, 4> coords{};
    /// Step of the scan over each free reciprocal coordinate in [0, 1].
    Rational resolution{1, 64};
};

struct MeshPoint {
    std::array<Rational, 4> reciprocals;
    bool accepted = false;
    /// Accepted with at least one rejected neighbour along a free axis.
    bool boundary = false;
};

struct RegionScan {
    std::vector<ExponentTuple> accepted;
    std::vector<MeshPoint> mesh;
    /// Points where the compiled half-space form and the predicate disagree.
    std::size_t disagreements = 0;
    std::vector<std::string> disagreement_log;
};

RegionScan sample_region(const RegionQuery& query);

} // namespace amalgam::exponents
