#pragma once

#include <utility>
#include <vector>

#include "locgh/metric_space.hpp"

namespace locgh {

// Relation between two point sets covering both sides.
struct Correspondence {
    std::vector<std::pair<PointId, PointId>> pairs;

    bool covers(std::size_t left_size, std::size_t right_size) const;
    Correspondence transposed() const;

    static Correspondence diagonal(std::size_t n);
};

// sup over (x,y),(x',y') in R of |d_X(x,x') - d_Y(y,y')|. Exact.
Rational distortion(const Correspondence& corr, const FiniteMetricSpace& X,
                    const FiniteMetricSpace& Y);

enum class GlueMode {
    // Disjoint union, cross metric d(x,y) = min over (x',y') in R of
    // d_X(x,x') + dis(R)/2 + d_Y(y',y). Both canonical maps are isometric
    // embeddings.
    Correspondence,
    // Roots identified, cross metric d(x,y) = d_X(x,rho_X) + d_Y(rho_Y,y).
    RootSum,
    // Cross metric d(x,y) = d_M(f(x),g(y)) + d_M(f(rho_X),g(rho_Y)) taken
    // from an ambient space M (itself built from a correspondence), roots
    // identified afterwards.
    RootIdentifyShift,
};

struct GluedSpace {
    FiniteMetricSpace space;
    // Distance-preserving maps from the inputs into the glued space.
    std::vector<PointId> left_map;
    std::vector<PointId> right_map;
    // Present for rooted modes: the common image of both roots.
    PointId root = -1;
};

struct GlueInputs {
    const FiniteMetricSpace* left = nullptr;
    const FiniteMetricSpace* right = nullptr;
    const Correspondence* corr = nullptr;  // Correspondence / RootIdentifyShift
    PointId left_root = -1;                // rooted modes
    PointId right_root = -1;
    // RootIdentifyShift: optional extra slack added on top of the base
    // cross metric before shifting (used by stability experiments).
    Rational extra_slack = Rational(0);
};

// Zero-distance pairs produced by the gluing are quotiented away, so the
// result is always a genuine metric space; the returned maps absorb the
// quotient. Asserts internally that both maps preserve distances.
GluedSpace glue(GlueMode mode, const GlueInputs& in);

// Disjoint union with cross distances raised uniformly by `slack` above the
// correspondence gluing. Used by the two-gluing stability experiments.
GluedSpace glue_correspondence_with_slack(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                          const Correspondence& corr, const Rational& slack);

}  // namespace locgh
