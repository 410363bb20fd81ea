#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

// Exact rational == int overloads for C++20 operator rewriting.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
} // namespace boost

namespace amalgam {

using Rational = boost::rational<std::int64_t>;

/// Exact value in [0, inf]; infinity is stored as a flag.
class ExtReal {
public:
    ExtReal() = default;
    ExtReal(Rational v) : value_(v) {}
    ExtReal(std::int64_t v) : value_(v) {}

    static ExtReal infinity() {
        ExtReal e;
        e.inf_ = true;
        return e;
    }
    /// 1/r with 1/0 = inf.
    static ExtReal from_reciprocal(Rational r);

    bool is_inf() const { return inf_; }
    /// Finite value; throws std::domain_error for inf.
    Rational value() const;
    /// 1/x with 1/inf = 0. Throws for x = 0.
    Rational reciprocal() const;
    double to_double() const;

    /// Hölder conjugate p' with 1/p + 1/p' = 1; requires p >= 1.
    ExtReal conjugate() const;

    std::string str() const;

    friend bool operator==(const ExtReal& a, const ExtReal& b);
    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b);

private:
    Rational value_{0};
    bool inf_ = false;
};

/// Parses "inf", integers, fractions "a/b" and finite decimals "0.45" exactly.
/// Returns nullopt on malformed input.
std::optional<ExtReal> parse_ext_real(std::string_view text);
std::optional<Rational> parse_rational(std::string_view text);

/// Nearest rational with denominator <= max_den (continued fractions).
Rational rational_approx(double x, std::int64_t max_den = 1000000);

double to_double(Rational r);
std::string to_string(Rational r);

} // namespace amalgam
