#pragma once

#include <functional>
#include <vector>

#include "locgh/curve.hpp"
#include "locgh/metric_space.hpp"

namespace locgh {

// Subset of a space's points; possibly empty, always sorted and duplicate-free.
using FiniteSubset = std::vector<PointId>;

FiniteSubset normalize_subset(FiniteSubset members);

// Closed eps-neighborhood A^eps = { x : d(x, A) <= eps }. Empty stays empty.
FiniteSubset eps_neighborhood(const FiniteMetricSpace& space, const FiniteSubset& a,
                              const Rational& eps);

// Extended Hausdorff metric: infinity iff exactly one side is empty, 0 iff
// equal (including both empty). Exact.
ExtReal hausdorff(const FiniteMetricSpace& space, const FiniteSubset& a, const FiniteSubset& b);

// Hausdorff with point distances supplied by a callable; used for graph
// metrics over composite spaces.
ExtReal hausdorff_generic(const std::vector<int>& a, const std::vector<int>& b,
                          const std::function<Rational(int, int)>& dist);

// A ∩ D(x, r).
FiniteSubset restrict_subset(const FiniteMetricSpace& space, const FiniteSubset& a, PointId x,
                             const Rational& r);

enum class LocalMetricMode { Rooted, Product };

// The exponentially-weighted extension of the Hausdorff metric: exact
// breakpoint sum over restriction radii; Product additionally takes the max
// with the distance between the two centers.
double local_hausdorff(const FiniteMetricSpace& space, const FiniteSubset& a, PointId x,
                       const FiniteSubset& b, PointId y, LocalMetricMode mode);

// The step curve r -> d_H(A|_x^(r), B|_y^(r)) behind local_hausdorff.
PiecewiseConstantCurve local_hausdorff_curve(const FiniteMetricSpace& space, const FiniteSubset& a,
                                             PointId x, const FiniteSubset& b, PointId y);

}  // namespace locgh
