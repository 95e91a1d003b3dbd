#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locgh/glue.hpp"
#include "locgh/measures.hpp"
#include "locgh/metric_space.hpp"
#include "locgh/structures.hpp"

namespace locgh {

enum class BoundKind { Exact, Upper, Lower };

struct DistanceResult {
    double value = 0.0;
    std::optional<Rational> exact;  // present when the value is rational
    BoundKind kind = BoundKind::Upper;
    std::optional<Correspondence> witness_corr;
    std::vector<std::pair<std::string, double>> terms;  // achieved objective terms
    std::string note;
};

enum class GHMode { ExactTiny, UpperFromCorrespondence, LowerDiameter };

// Gromov-Hausdorff distance between finite spaces: exact on tiny inputs via
// the 1/2 min-distortion characterization (pruned enumeration over all
// correspondences, |X||Y| <= 25), otherwise bounds.
DistanceResult gh_distance(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, GHMode mode,
                           const Correspondence* corr = nullptr);

// Exact when |X||Y| <= 25, otherwise the best cheap upper bound.
DistanceResult gh_distance_auto(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

// Enumerates every correspondence between [0,n) and [0,m); callback may
// return false to stop. Intended for tiny n*m.
void enumerate_correspondences(std::size_t n, std::size_t m,
                               const std::function<bool(const Correspondence&)>& visit);

struct RootedMeasured {
    RootedSpace rooted;
    FiniteMeasure measure;
};

// Pointed GH-Prohorov upper bound from one correspondence gluing: max of the
// Hausdorff term, the Prohorov term, and the root distance in the glued
// space. Exact rational objective.
DistanceResult pghp_upper(const RootedMeasured& X, const RootedMeasured& Y,
                          const Correspondence& corr);

// Upper bound for the exponentially-weighted GH-vague distance with one
// gluing fixed across all truncation radii.
DistanceResult ghv_upper(const RootedMeasured& X, const RootedMeasured& Y,
                         const Correspondence& corr);

struct StructuredSpace {
    RootedSpace rooted;
    StructureValue structure;
    // Auxiliary spaces referenced by Fixed/Composed kinds.
    const std::map<std::string, RootedSpace>* aux_spaces = nullptr;
};

enum class GHTypeMetric { RF, RV };
enum class RFRVMode { Upper, ExactTiny };

// Upper bounds for the root-preserving (RF) and root-free (RV) GH-type
// distances: RV over the correspondence gluing, RF over the root-identified
// shifted gluing built from the same correspondence. ExactTiny minimizes the
// bound over all correspondences (still reported as an upper bound).
DistanceResult rf_rv_distance(const StructuredSpace& X, const StructuredSpace& Y,
                              GHTypeMetric which, RFRVMode mode,
                              const Correspondence* corr = nullptr);

// Compact-case variants: the local Hausdorff term becomes plain Hausdorff
// (plus the root distance on the RV side).
DistanceResult compact_rf_rv_distance(const StructuredSpace& X, const StructuredSpace& Y,
                                      GHTypeMetric which, const Correspondence& corr);

struct SandwichTrial {
    double rv_objective = 0.0;
    double rf_objective = 0.0;
    double bound = 0.0;  // 2 v + Dist(v)
    bool order_ok = false;     // rv <= rf + tol
    bool sandwich_ok = false;  // rf <= 2 rv + Dist(rv) + tol
};

struct SandwichReport {
    std::vector<SandwichTrial> trials;
    bool all_pass = true;
};

// Constructive coincidence check: for each correspondence, v = RV objective
// in the correspondence gluing, w = RF objective in the paired
// root-identified shifted gluing; asserts w <= 2v + Dist(v) and v <= w.
SandwichReport sandwich_check(const StructuredSpace& X, const StructuredSpace& Y,
                              const std::vector<Correspondence>& corrs, bool compact_variant = false);

// The RV / RF objectives inside explicitly glued spaces (shared machinery
// for rf_rv_distance and sandwich_check).
double rv_objective_in_gluing(const StructuredSpace& X, const StructuredSpace& Y,
                              const GluedSpace& glued, bool compact_variant,
                              std::vector<std::pair<std::string, double>>* terms = nullptr);
double rf_objective_in_gluing(const StructuredSpace& X, const StructuredSpace& Y,
                              const GluedSpace& glued, bool compact_variant,
                              std::vector<std::pair<std::string, double>>* terms = nullptr);

}  // namespace locgh
