#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locgh/rational.hpp"

namespace locgh {

using PointId = int;

struct ToleranceConfig {
    double eq_tol = 1e-9;
};

enum class MetricDefect {
    NonSquare,
    NegativeEntry,
    AsymmetricEntry,
    TriangleViolation,
    ZeroOffDiagonal,
    NonZeroDiagonal,
    Empty,
};

struct MetricDiagnostic {
    MetricDefect defect;
    // Witness indices; unused slots are -1. Triangle witness is (i,j,k) with
    // d(i,k) > d(i,j) + d(j,k).
    int i = -1, j = -1, k = -1;
    std::string message;
};

class FiniteMetricSpace {
  public:
    FiniteMetricSpace() = default;

    // Trusts its input; use validate_space at system boundaries.
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<Rational>> dist)
        : labels_(std::move(labels)), dist_(std::move(dist)) {}

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(PointId p) const { return labels_[static_cast<std::size_t>(p)]; }
    std::optional<PointId> find(const std::string& label) const;

    const Rational& dist(PointId a, PointId b) const {
        return dist_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    const std::vector<std::vector<Rational>>& matrix() const { return dist_; }

    Rational diameter() const;
    Rational min_positive_distance() const;

    // Closed ball D(center, r) = { p : d(center, p) <= r }, sorted ids.
    std::vector<PointId> closed_ball(PointId center, const Rational& r) const;

    // Sorted distinct distances from center to all points (radii where closed
    // balls change; the ball is constant on [r_i, r_{i+1})).
    std::vector<Rational> ball_breakpoints(PointId center) const;

    bool same_as(const FiniteMetricSpace& other) const {
        return labels_ == other.labels_ && dist_ == other.dist_;
    }

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<Rational>> dist_;
};

struct RootedSpace {
    FiniteMetricSpace space;
    PointId root = 0;
};

// Validates the paper's conventions: non-empty, zero diagonal, symmetric,
// positive off-diagonal, triangle inequality. Returns every violated axiom
// with a witness rather than stopping at the first.
std::variant<FiniteMetricSpace, std::vector<MetricDiagnostic>> validate_space(
    const std::vector<std::string>& labels, const std::vector<std::vector<Rational>>& dist);

// Subspace on the closed ball around the root, same root.
RootedSpace restrict_space(const RootedSpace& rooted, const Rational& r);

// Subspace on an arbitrary (non-empty, sorted) point set. Also returns the
// old-id -> new-id mapping for points kept (-1 elsewhere).
FiniteMetricSpace subspace(const FiniteMetricSpace& space, const std::vector<PointId>& points,
                           std::vector<PointId>* old_to_new = nullptr);

// Metric completion of a weighted edge list via all-pairs shortest paths.
// Fails (diagnostics) when the graph is disconnected or weights are invalid.
std::variant<FiniteMetricSpace, std::vector<MetricDiagnostic>> space_from_edges(
    const std::vector<std::string>& labels,
    const std::vector<std::tuple<std::string, std::string, Rational>>& edges);

}  // namespace locgh
