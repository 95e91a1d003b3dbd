#include "locgh/curve.hpp"

#include <cmath>

#include "locgh/errors.hpp"

namespace locgh {

void PiecewiseConstantCurve::check() const {
    if (values.size() != breakpoints.size() + 1)
        throw MalformedCurve("curve needs one more value than breakpoints");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= 0) throw MalformedCurve("breakpoints must be positive");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw MalformedCurve("breakpoints must be strictly increasing");
    }
    for (const auto& v : values)
        if (!v.infinite && v.value < 0) throw MalformedCurve("curve values must be nonnegative");
}

double exp_integral(const PiecewiseConstantCurve& curve) {
    curve.check();
    const std::size_t m = curve.breakpoints.size();
    double total = 0.0;
    double prev_exp = 1.0;  // e^{-0}
    for (std::size_t i = 0; i < m; ++i) {
        double next_exp = std::exp(-to_double(curve.breakpoints[i]));
        total += curve.values[i].to_double_clamped() * (prev_exp - next_exp);
        prev_exp = next_exp;
    }
    total += curve.values[m].to_double_clamped() * prev_exp;
    if (total < 0.0) total = 0.0;
    if (total > 1.0) total = 1.0;
    return total;
}

PiecewiseConstantCurve curve_from_steps(const std::vector<Rational>& radii,
                                        const std::vector<ExtReal>& values) {
    if (radii.empty() || radii[0] != 0 || radii.size() != values.size())
        throw MalformedCurve("step samples must start at radius 0 and pair with values");
    PiecewiseConstantCurve c;
    c.values.push_back(values[0]);
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (values[i] == c.values.back()) continue;  // merge equal neighbours
        c.breakpoints.push_back(radii[i]);
        c.values.push_back(values[i]);
    }
    c.check();
    return c;
}

}  // namespace locgh
