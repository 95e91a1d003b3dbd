#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace locgh {

// Exact rational scalar. All combinatorial metric computations stay in
// Rational; doubles appear only where exponentials/logarithms enter.
using Rational = mpq_class;

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rational rat_from_double(double x) {
    return Rational(x);
}

// Parses "3", "-0.125", "1/3", "2.5e-3". Decimal strings are exact:
// "0.1" becomes 1/10, never a binary float.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical "p" or "p/q" form.
std::string format_rational(const Rational& q);

// Decimal form when the denominator is 2^a * 5^b, otherwise "p/q".
std::string format_rational_decimal(const Rational& q);

// Nonnegative extended real: a rational or +infinity. Used where the paper's
// metrics take the value infinity (Hausdorff distance to the empty set).
struct ExtReal {
    bool infinite = false;
    Rational value{};

    ExtReal() = default;
    ExtReal(const Rational& v) : infinite(false), value(v) {}  // NOLINT(google-explicit-constructor)
    ExtReal(Rational&& v) : infinite(false), value(std::move(v)) {}  // NOLINT(google-explicit-constructor)

    static ExtReal inf() {
        ExtReal e;
        e.infinite = true;
        return e;
    }

    bool is_finite() const { return !infinite; }

    // 1 ∧ x, finite by construction.
    Rational clamp_one() const {
        if (infinite || value > 1) return Rational(1);
        return value;
    }

    double to_double_clamped() const { return to_double(clamp_one()); }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
};

inline ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
inline ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }

}  // namespace locgh
