#pragma once

#include <utility>
#include <vector>

#include "locgh/curve.hpp"
#include "locgh/metric_space.hpp"
#include "locgh/subsets.hpp"

namespace locgh {

// Finite Borel measure on a finite space: point -> nonnegative mass, absent
// points carry zero. Total mass is unconstrained.
struct FiniteMeasure {
    std::vector<std::pair<PointId, Rational>> weights;  // sorted by point, masses > 0

    static FiniteMeasure from_weights(std::vector<std::pair<PointId, Rational>> raw);
    static FiniteMeasure dirac(PointId p, const Rational& mass = Rational(1));

    Rational total() const;
    Rational mass_at(PointId p) const;
    FiniteSubset support() const;
    bool operator==(const FiniteMeasure& other) const { return weights == other.weights; }
};

struct ProhorovWitness {
    // Infeasibility certificate valid for every eps < value (absent when
    // value == 0): a subset with mu(A) - nu(A^eps) >= value from the named
    // side ("left" means mu, "right" means nu).
    bool has_cut = false;
    bool cut_from_left = true;
    FiniteSubset cut_set;
    Rational cut_violation{0};
    // Feasibility certificate at eps = value: a sub-coupling moving
    // min(total masses) - value mass across pairs at distance <= value.
    std::vector<std::tuple<PointId, PointId, Rational>> coupling;
};

struct ProhorovResult {
    Rational value;
    ProhorovWitness witness;
};

// Exact Prohorov distance: the least eps with mu(A) <= nu(A^eps) + eps and
// nu(A) <= mu(A^eps) + eps for all A. Feasibility at fixed eps reduces to a
// max-flow on the bipartite graph with edges where d <= eps; the optimum is
// scanned over the distance breakpoints plus the additive clamp points.
ProhorovResult prohorov(const FiniteMetricSpace& space, const FiniteMeasure& mu,
                        const FiniteMeasure& nu);

// Prohorov over an explicit distance matrix on abstract indices; masses are
// (index, mass) pairs. Used for laws over structure atoms.
ProhorovResult prohorov_matrix(const std::vector<std::vector<Rational>>& dist,
                               const std::vector<std::pair<int, Rational>>& mu,
                               const std::vector<std::pair<int, Rational>>& nu);

// Mass kept exactly on the closed ball D(x, r).
FiniteMeasure restrict_measure(const FiniteMetricSpace& space, const FiniteMeasure& mu, PointId x,
                               const Rational& r);

// Exponentially-weighted extension of the Prohorov metric (the vague metric).
double vague(const FiniteMetricSpace& space, const FiniteMeasure& mu, PointId x,
             const FiniteMeasure& nu, PointId y, LocalMetricMode mode);

PiecewiseConstantCurve vague_curve(const FiniteMetricSpace& space, const FiniteMeasure& mu,
                                   PointId x, const FiniteMeasure& nu, PointId y);

// Pushforward along a point map (caller guarantees the map is total).
FiniteMeasure pushforward_measure(const FiniteMeasure& mu, const std::vector<PointId>& point_map);

}  // namespace locgh
