#include "locgh/metric_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace locgh {

std::optional<PointId> FiniteMetricSpace::find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<PointId>(i);
    return std::nullopt;
}

Rational FiniteMetricSpace::diameter() const {
    Rational d(0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (dist_[i][j] > d) d = dist_[i][j];
    return d;
}

Rational FiniteMetricSpace::min_positive_distance() const {
    bool found = false;
    Rational m(0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (!found || dist_[i][j] < m) {
                m = dist_[i][j];
                found = true;
            }
    return found ? m : Rational(0);
}

std::vector<PointId> FiniteMetricSpace::closed_ball(PointId center, const Rational& r) const {
    if (center < 0 || static_cast<std::size_t>(center) >= size())
        throw std::out_of_range("unknown point");
    std::vector<PointId> out;
    for (std::size_t i = 0; i < size(); ++i)
        if (dist(center, static_cast<PointId>(i)) <= r) out.push_back(static_cast<PointId>(i));
    return out;
}

std::vector<Rational> FiniteMetricSpace::ball_breakpoints(PointId center) const {
    std::vector<Rational> rs;
    for (std::size_t i = 0; i < size(); ++i) rs.push_back(dist(center, static_cast<PointId>(i)));
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

std::variant<FiniteMetricSpace, std::vector<MetricDiagnostic>> validate_space(
    const std::vector<std::string>& labels, const std::vector<std::vector<Rational>>& dist) {
    std::vector<MetricDiagnostic> diags;
    const std::size_t n = labels.size();
    if (n == 0) diags.push_back({MetricDefect::Empty, -1, -1, -1, "space must be non-empty"});
    if (dist.size() != n) {
        diags.push_back({MetricDefect::NonSquare, -1, -1, -1, "row count does not match label count"});
        return diags;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (dist[i].size() != n) {
            diags.push_back({MetricDefect::NonSquare, static_cast<int>(i), -1, -1,
                             "row " + std::to_string(i) + " has wrong length"});
            return diags;
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i][i] != 0)
            diags.push_back({MetricDefect::NonZeroDiagonal, static_cast<int>(i), static_cast<int>(i),
                             -1, "d(" + labels[i] + "," + labels[i] + ") != 0"});
        for (std::size_t j = 0; j < n; ++j) {
            if (dist[i][j] < 0)
                diags.push_back({MetricDefect::NegativeEntry, static_cast<int>(i),
                                 static_cast<int>(j), -1, "negative entry"});
            if (i < j && dist[i][j] != dist[j][i])
                diags.push_back({MetricDefect::AsymmetricEntry, static_cast<int>(i),
                                 static_cast<int>(j), -1,
                                 "d(" + labels[i] + "," + labels[j] + ") != d(" + labels[j] + "," +
                                     labels[i] + ")"});
            if (i != j && dist[i][j] == 0)
                diags.push_back({MetricDefect::ZeroOffDiagonal, static_cast<int>(i),
                                 static_cast<int>(j), -1,
                                 "distinct points " + labels[i] + "," + labels[j] + " at distance 0"});
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist[i][k] > dist[i][j] + dist[j][k]) {
                    diags.push_back({MetricDefect::TriangleViolation, static_cast<int>(i),
                                     static_cast<int>(j), static_cast<int>(k),
                                     "d(" + labels[i] + "," + labels[k] + ") > d(" + labels[i] + "," +
                                         labels[j] + ") + d(" + labels[j] + "," + labels[k] + ")"});
                }
    if (!diags.empty()) return diags;
    return FiniteMetricSpace(labels, dist);
}

RootedSpace restrict_space(const RootedSpace& rooted, const Rational& r) {
    if (r < 0) throw std::invalid_argument("radius must be nonnegative");
    auto kept = rooted.space.closed_ball(rooted.root, r);
    std::vector<PointId> old_to_new;
    FiniteMetricSpace sub = subspace(rooted.space, kept, &old_to_new);
    return RootedSpace{std::move(sub), old_to_new[static_cast<std::size_t>(rooted.root)]};
}

FiniteMetricSpace subspace(const FiniteMetricSpace& space, const std::vector<PointId>& points,
                           std::vector<PointId>* old_to_new) {
    if (points.empty()) throw std::invalid_argument("subspace must be non-empty");
    std::vector<std::string> labels;
    labels.reserve(points.size());
    for (PointId p : points) labels.push_back(space.label(p));
    std::vector<std::vector<Rational>> dist(points.size(), std::vector<Rational>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j) dist[i][j] = space.dist(points[i], points[j]);
    if (old_to_new) {
        old_to_new->assign(space.size(), -1);
        for (std::size_t i = 0; i < points.size(); ++i)
            (*old_to_new)[static_cast<std::size_t>(points[i])] = static_cast<PointId>(i);
    }
    return FiniteMetricSpace(std::move(labels), std::move(dist));
}

std::variant<FiniteMetricSpace, std::vector<MetricDiagnostic>> space_from_edges(
    const std::vector<std::string>& labels,
    const std::vector<std::tuple<std::string, std::string, Rational>>& edges) {
    const std::size_t n = labels.size();
    std::vector<MetricDiagnostic> diags;
    if (n == 0) {
        diags.push_back({MetricDefect::Empty, -1, -1, -1, "space must be non-empty"});
        return diags;
    }
    std::map<std::string, PointId> index;
    for (std::size_t i = 0; i < n; ++i) index[labels[i]] = static_cast<PointId>(i);

    const Rational unreachable(-1);
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, unreachable));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [a, b, w] : edges) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end() || ib == index.end()) {
            diags.push_back({MetricDefect::NonSquare, -1, -1, -1, "edge references unknown label"});
            return diags;
        }
        if (w <= 0) {
            diags.push_back({MetricDefect::NegativeEntry, ia->second, ib->second, -1,
                             "edge weight must be positive"});
            return diags;
        }
        auto i = static_cast<std::size_t>(ia->second), j = static_cast<std::size_t>(ib->second);
        if (d[i][j] == unreachable || w < d[i][j]) d[i][j] = d[j][i] = w;
    }
    // Floyd-Warshall on the rational weights.
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i][k] == unreachable) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (d[k][j] == unreachable) continue;
                Rational via = d[i][k] + d[k][j];
                if (d[i][j] == unreachable || via < d[i][j]) d[i][j] = via;
            }
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (d[i][j] == unreachable) {
                diags.push_back({MetricDefect::TriangleViolation, static_cast<int>(i),
                                 static_cast<int>(j), -1, "edge graph is disconnected"});
                return diags;
            }
    return validate_space(labels, d);
}

}  // namespace locgh
