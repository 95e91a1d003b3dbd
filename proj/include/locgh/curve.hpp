#pragma once

#include <vector>

#include "locgh/rational.hpp"

namespace locgh {

// Step function r -> value on [0, inf): value(i) holds on [breakpoint(i-1),
// breakpoint(i)) with conventional endpoints 0 and infinity. Breakpoints are
// strictly increasing and positive; values may be infinite (clamped by 1∧·
// before integration).
struct PiecewiseConstantCurve {
    std::vector<Rational> breakpoints;
    std::vector<ExtReal> values;  // size = breakpoints.size() + 1

    void check() const;
};

// Integral of e^{-r} (1 ∧ value(r)) over [0, inf). Each piece contributes
// (1∧v_i)(e^{-a_i} - e^{-b_i}); the final piece integrates to (1∧v_m) e^{-r_m}.
// Result lies in [0, 1]. Error is bounded by a few machine epsilons per piece.
double exp_integral(const PiecewiseConstantCurve& curve);

// Assembles a curve from (radius, value) samples taken at the sorted distinct
// radii where the underlying step function may change, value(i) applying on
// [r_i, r_{i+1}). radii must start at 0.
PiecewiseConstantCurve curve_from_steps(const std::vector<Rational>& radii,
                                        const std::vector<ExtReal>& values);

}  // namespace locgh
