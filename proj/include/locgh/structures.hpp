#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "locgh/measures.hpp"
#include "locgh/metric_space.hpp"
#include "locgh/subsets.hpp"

namespace locgh {

// The structure kinds: the additional object a space can carry.
enum class StructureKind {
    Point,
    Tuple,
    Fixed,        // element of a declared auxiliary space
    Subset,
    Measure,
    StepCadlag,   // step function with finitely many jumps, values of an inner kind
    VarFunction,  // function on a subset of a transformed space, values of an inner kind
    LZero,        // finite weighted time set, values of a (plainly metrizable) inner kind
    Law,          // finitely many weighted atoms of an inner kind
    Product,
    Composed,     // inner structure over a transformed space
};

std::string kind_name(StructureKind k);

// Psi(X) = X^power x Xi(aux_name); trivial() means Psi = identity.
struct SpaceTransform {
    int power = 1;
    std::string aux_name;

    bool trivial() const { return power == 1 && aux_name.empty(); }
    bool operator==(const SpaceTransform& o) const {
        return power == o.power && aux_name == o.aux_name;
    }
};

struct StructureValue {
    StructureKind kind = StructureKind::Point;

    PointId point = -1;                 // Point
    std::vector<PointId> tuple;         // Tuple
    std::string aux_name;               // Fixed
    PointId aux_point = -1;             // Fixed
    FiniteSubset subset;                // Subset
    FiniteMeasure measure;              // Measure
    std::vector<Rational> times;        // StepCadlag jump times (first 0) / LZero time tags
    std::optional<Rational> horizon;    // StepCadlag; nullopt = unbounded
    std::vector<Rational> weights;      // LZero / Law probability weights (sum 1)
    SpaceTransform transform;           // VarFunction / Composed
    std::vector<PointId> domain;        // VarFunction: ids in the transformed space
    std::vector<StructureValue> children;  // jump values / function values / atoms / parts / inner

    static StructureValue make_point(PointId p);
    static StructureValue make_subset(FiniteSubset s);
    static StructureValue make_measure(FiniteMeasure m);
};

struct StructureContext {
    const FiniteMetricSpace* space = nullptr;
    const std::map<std::string, RootedSpace>* aux_spaces = nullptr;  // may be null
    ToleranceConfig tol;

    const RootedSpace& aux(const std::string& name) const;
};

// Materialized Psi(X) with its rooting map x -> (x,...,x, rho_Xi).
struct TransformedSpace {
    FiniteMetricSpace space;
    std::vector<PointId> root_map;
    std::vector<std::vector<PointId>> coords;  // base coordinates per product point
    std::vector<PointId> aux_coord;            // auxiliary coordinate per point (-1 when none)
    int power = 1;
    std::size_t aux_size = 0;
};

TransformedSpace transform_space(const StructureContext& ctx, const SpaceTransform& t);

// Max-product of two spaces, labels "(a|b)".
FiniteMetricSpace product_space(const FiniteMetricSpace& A, const FiniteMetricSpace& B);

// Recursive shape of a structure: kinds, lengths, time grids, transforms.
// Distances and pushforwards demand equal signatures.
std::string kind_signature(const StructureValue& v);

// Invariant checks (jump times, weight sums, ranges); throws ValidationError.
void validate_structure(const StructureContext& ctx, const StructureValue& v);

bool structure_equal(const StructureValue& a, const StructureValue& b);

// Element-rooted structure distance: the paper's per-kind product
// metrizations, with each basepoint attached to its element.
double structure_distance_er(const StructureContext& ctx, const StructureValue& a, PointId base_a,
                             const StructureValue& b, PointId base_b);

// Space-rooted distance: both elements anchored at the shared root.
double structure_distance_sr(const StructureContext& ctx, const StructureValue& a,
                             const StructureValue& b, PointId root);

// Exact distance for the plainly metrizable kinds (Point, Tuple, Fixed,
// LZero, Product of such); throws KindMismatch elsewhere.
Rational metrizable_structure_distance(const StructureContext& ctx, const StructureValue& a,
                                       const StructureValue& b);

// Compact-level variable-domain function metric: Hausdorff distance between
// graphs in the max product metric. Exact; infinite iff exactly one domain
// is empty. Inner kind must be Point or Fixed.
ExtReal graph_metric(const StructureContext& ctx, const StructureValue& f, const StructureValue& g);

// Graph of a VarFunction with Point or Fixed values: the product space it
// lives in plus the graph subset.
std::pair<FiniteMetricSpace, FiniteSubset> graph_of(const StructureContext& ctx,
                                                    const StructureValue& f);

// Pushforward along a distance-preserving injection (asserted exactly).
StructureValue pushforward(const StructureContext& src, const FiniteMetricSpace& target,
                           const std::vector<PointId>& point_map, const StructureValue& a);

// Symbolic distortion modulus Dist(eps) per structure kind.
struct DistortionFn {
    enum class Node { Zero, Identity, ClampOne, Max, Compose };
    Node node = Node::Identity;
    std::vector<DistortionFn> args;

    double eval(double eps) const;
    Rational eval_exact(const Rational& eps) const;
    std::string describe() const;

    static DistortionFn zero();
    static DistortionFn identity();
    static DistortionFn clamp_one(DistortionFn inner);
    static DistortionFn max_of(std::vector<DistortionFn> parts);
    static DistortionFn compose(DistortionFn outer, DistortionFn inner);
};

DistortionFn distortion_of(const StructureValue& prototype);

// ---- Skorohod machinery -------------------------------------------------

struct SkorohodWitness {
    // (s, lambda(s)) anchor samples of a near-optimal time change.
    std::vector<std::pair<double, double>> anchors;
    double identity_objective = 0.0;
};

struct SkorohodResult {
    double value = 0.0;
    SkorohodWitness witness;
};

// Complete Skorohod distance between two step functions, inner distances by
// the element-rooted metric at the given basepoints. Finite shared horizon
// gives d^{J1,t}; unbounded horizon gives the exponentially weighted
// integral over truncations.
SkorohodResult skorohod_distance(const StructureContext& ctx, const StructureValue& f,
                                 PointId base_f, const StructureValue& g, PointId base_g);

// d^{J1,t} for an explicit horizon t regardless of the stored horizon.
SkorohodResult skorohod_distance_at(const StructureContext& ctx, const StructureValue& f,
                                    PointId base_f, const StructureValue& g, PointId base_g,
                                    const Rational& t);

// Cadlag modulus w(F, h, t): exact minimization over partitions of [0, t)
// into intervals of length >= h (except the final one), oscillation in the
// space-rooted inner metric at `base`.
double skorohod_modulus(const StructureContext& ctx, const StructureValue& f, PointId base,
                        const Rational& h, const Rational& t);

// ---- Variable-domain diagnostics ----------------------------------------

struct VarFnPrecompactness {
    // The three Arzela-Ascoli-type conditions evaluated on a finite family.
    Rational domain_radius{0};          // max distance of any domain point from the rooting image
    int distinct_values = 0;            // size of the pooled value set (precompactness proxy)
    std::vector<std::pair<Rational, double>> modulus;  // (delta, sup oscillation at scale delta)
};

VarFnPrecompactness varfn_precompactness(const StructureContext& ctx,
                                         const std::vector<StructureValue>& family, PointId root,
                                         const std::vector<Rational>& delta_grid);

}  // namespace locgh
