#include "amalgam/extended_real.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace amalgam {

ExtReal ExtReal::from_reciprocal(Rational r) {
    if (r < 0) throw std::domain_error("negative reciprocal");
    if (r == 0) return infinity();
    return ExtReal(1 / r);
}

Rational ExtReal::value() const {
    if (inf_) throw std::domain_error("value() of infinity");
    return value_;
}

Rational ExtReal::reciprocal() const {
    if (inf_) return Rational(0);
    if (value_ == 0) throw std::domain_error("reciprocal of zero");
    return 1 / value_;
}

double ExtReal::to_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : amalgam::to_double(value_);
}

ExtReal ExtReal::conjugate() const {
    if (!inf_ && value_ < 1) throw std::domain_error("conjugate exponent needs p >= 1");
    return from_reciprocal(1 - reciprocal());
}

std::string ExtReal::str() const { return inf_ ? "inf" : to_string(value_); }

bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ && b.inf_) return std::strong_ordering::equal;
    if (a.inf_) return std::strong_ordering::greater;
    if (b.inf_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

// "12.375" or "-0.5"; no exponent notation.
std::optional<Rational> parse_decimal(std::string_view s) {
    auto dot = s.find('.');
    std::string digits(s.substr(0, dot));
    std::string frac(s.substr(dot + 1));
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    bool neg = !digits.empty() && digits.front() == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    auto whole = parse_int(digits);
    auto tail = parse_int(frac);
    if (!whole || !tail) return std::nullopt;
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational r(*whole);
    Rational f(*tail, den);
    return neg ? r - f : r + f;
}

} // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    auto s = trim(text);
    if (s.empty()) return std::nullopt;
    try {
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            auto num = parse_int(trim(s.substr(0, slash)));
            auto den = parse_int(trim(s.substr(slash + 1)));
            if (!num || !den || *den == 0) return std::nullopt;
            return Rational(*num, *den);
        }
        if (s.find('.') != std::string_view::npos) return parse_decimal(s);
        if (auto v = parse_int(s)) return Rational(*v);
    } catch (const boost::bad_rational&) {
    }
    return std::nullopt;
}

std::optional<ExtReal> parse_ext_real(std::string_view text) {
    auto s = trim(text);
    if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return ExtReal::infinity();
    auto r = parse_rational(s);
    if (!r || *r < 0) return std::nullopt;
    return ExtReal(*r);
}

Rational rational_approx(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw std::domain_error("rational_approx of non-finite value");
    bool neg = x < 0;
    double y = std::fabs(x);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(y);
        if (a > 9.0e15) break;
        auto ai = static_cast<std::int64_t>(a);
        std::int64_t q2 = q0 + ai * q1;
        if (q2 > max_den) break;
        std::int64_t p2 = p0 + ai * p1;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = y - a;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    return neg ? -r : r;
}

double to_double(Rational r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(Rational r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace amalgam
