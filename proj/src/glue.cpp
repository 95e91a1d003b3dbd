#include "locgh/glue.hpp"

#include <algorithm>
#include <numeric>

#include "locgh/errors.hpp"

namespace locgh {

bool Correspondence::covers(std::size_t left_size, std::size_t right_size) const {
    std::vector<char> l(left_size, 0), r(right_size, 0);
    for (const auto& [a, b] : pairs) {
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= left_size ||
            static_cast<std::size_t>(b) >= right_size)
            return false;
        l[static_cast<std::size_t>(a)] = 1;
        r[static_cast<std::size_t>(b)] = 1;
    }
    return std::all_of(l.begin(), l.end(), [](char c) { return c; }) &&
           std::all_of(r.begin(), r.end(), [](char c) { return c; });
}

Correspondence Correspondence::transposed() const {
    Correspondence t;
    t.pairs.reserve(pairs.size());
    for (const auto& [a, b] : pairs) t.pairs.emplace_back(b, a);
    return t;
}

Correspondence Correspondence::diagonal(std::size_t n) {
    Correspondence c;
    for (std::size_t i = 0; i < n; ++i) c.pairs.emplace_back(static_cast<PointId>(i), static_cast<PointId>(i));
    return c;
}

Rational distortion(const Correspondence& corr, const FiniteMetricSpace& X,
                    const FiniteMetricSpace& Y) {
    if (!corr.covers(X.size(), Y.size()))
        throw InvalidCorrespondence("correspondence does not cover both spaces");
    Rational dis(0);
    for (std::size_t i = 0; i < corr.pairs.size(); ++i)
        for (std::size_t j = i; j < corr.pairs.size(); ++j) {
            const auto& [x1, y1] = corr.pairs[i];
            const auto& [x2, y2] = corr.pairs[j];
            Rational gap = X.dist(x1, x2) - Y.dist(y1, y2);
            if (gap < 0) gap = -gap;
            if (gap > dis) dis = gap;
        }
    return dis;
}

namespace {

// Builds the glued space from a full candidate distance matrix on the
// disjoint union: min-plus closure, quotient of zero-distance classes,
// then an exactness assertion on both embedding maps.
GluedSpace finish_gluing(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                         std::vector<std::vector<Rational>> d, PointId left_root,
                         PointId right_root) {
    const std::size_t nx = X.size(), ny = Y.size(), n = nx + ny;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational via = d[i][k] + d[k][j];
                if (via < d[i][j]) d[i][j] = via;
            }

    // Zero-distance classes collapse to one representative.
    std::vector<int> rep(n);
    std::iota(rep.begin(), rep.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (d[i][j] == 0) {
                rep[i] = rep[static_cast<std::size_t>(j)];
                break;
            }
    std::vector<int> class_index(n, -1);
    std::vector<std::string> labels;
    std::vector<std::size_t> class_rep;
    for (std::size_t i = 0; i < n; ++i) {
        if (rep[i] == static_cast<int>(i)) {
            class_index[i] = static_cast<int>(labels.size());
            std::string base = i < nx ? X.label(static_cast<PointId>(i))
                                      : Y.label(static_cast<PointId>(i - nx));
            labels.push_back((i < nx ? "L:" : "R:") + base);
            class_rep.push_back(i);
        } else {
            class_index[i] = class_index[static_cast<std::size_t>(rep[i])];
        }
    }
    const std::size_t m = labels.size();
    std::vector<std::vector<Rational>> q(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) q[i][j] = d[class_rep[i]][class_rep[j]];

    auto validated = validate_space(labels, q);
    if (std::holds_alternative<std::vector<MetricDiagnostic>>(validated))
        throw MetricAxiomFailure("glued construction is not a metric space");

    GluedSpace out;
    out.space = std::get<FiniteMetricSpace>(std::move(validated));
    out.left_map.resize(nx);
    out.right_map.resize(ny);
    for (std::size_t i = 0; i < nx; ++i) out.left_map[i] = class_index[i];
    for (std::size_t j = 0; j < ny; ++j) out.right_map[j] = class_index[nx + j];

    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            if (out.space.dist(out.left_map[i], out.left_map[j]) !=
                X.dist(static_cast<PointId>(i), static_cast<PointId>(j)))
                throw MetricAxiomFailure("left embedding is not distance-preserving");
    for (std::size_t i = 0; i < ny; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (out.space.dist(out.right_map[i], out.right_map[j]) !=
                Y.dist(static_cast<PointId>(i), static_cast<PointId>(j)))
                throw MetricAxiomFailure("right embedding is not distance-preserving");

    if (left_root >= 0) {
        out.root = out.left_map[static_cast<std::size_t>(left_root)];
        if (right_root >= 0 && out.root != out.right_map[static_cast<std::size_t>(right_root)])
            throw MetricAxiomFailure("roots were not identified by the gluing");
    }
    return out;
}

std::vector<std::vector<Rational>> correspondence_cross(const FiniteMetricSpace& X,
                                                        const FiniteMetricSpace& Y,
                                                        const Correspondence& corr,
                                                        const Rational& slack) {
    Rational half_dis = distortion(corr, X, Y) / 2;
    std::vector<std::vector<Rational>> cross(X.size(), std::vector<Rational>(Y.size()));
    for (std::size_t x = 0; x < X.size(); ++x)
        for (std::size_t y = 0; y < Y.size(); ++y) {
            bool first = true;
            Rational best(0);
            for (const auto& [a, b] : corr.pairs) {
                Rational cand =
                    X.dist(static_cast<PointId>(x), a) + half_dis + Y.dist(b, static_cast<PointId>(y));
                if (first || cand < best) {
                    best = cand;
                    first = false;
                }
            }
            cross[x][y] = best + slack;
        }
    return cross;
}

GluedSpace glue_from_cross(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                           const std::vector<std::vector<Rational>>& cross, PointId left_root,
                           PointId right_root) {
    const std::size_t nx = X.size(), ny = Y.size(), n = nx + ny;
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < nx; ++j)
            d[i][j] = X.dist(static_cast<PointId>(i), static_cast<PointId>(j));
    for (std::size_t i = 0; i < ny; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            d[nx + i][nx + j] = Y.dist(static_cast<PointId>(i), static_cast<PointId>(j));
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) d[i][nx + j] = d[nx + j][i] = cross[i][j];
    return finish_gluing(X, Y, std::move(d), left_root, right_root);
}

}  // namespace

GluedSpace glue(GlueMode mode, const GlueInputs& in) {
    const FiniteMetricSpace& X = *in.left;
    const FiniteMetricSpace& Y = *in.right;
    switch (mode) {
        case GlueMode::Correspondence: {
            if (!in.corr) throw InvalidCorrespondence("correspondence gluing requires a correspondence");
            return glue_from_cross(X, Y, correspondence_cross(X, Y, *in.corr, Rational(0)), -1, -1);
        }
        case GlueMode::RootSum: {
            if (in.left_root < 0 || in.right_root < 0) throw MissingRoot("root-sum gluing requires roots");
            std::vector<std::vector<Rational>> cross(X.size(), std::vector<Rational>(Y.size()));
            for (std::size_t x = 0; x < X.size(); ++x)
                for (std::size_t y = 0; y < Y.size(); ++y)
                    cross[x][y] = X.dist(static_cast<PointId>(x), in.left_root) +
                                  Y.dist(in.right_root, static_cast<PointId>(y));
            return glue_from_cross(X, Y, cross, in.left_root, in.right_root);
        }
        case GlueMode::RootIdentifyShift: {
            if (!in.corr) throw InvalidCorrespondence("shifted gluing requires a correspondence");
            if (in.left_root < 0 || in.right_root < 0) throw MissingRoot("shifted gluing requires roots");
            auto base = correspondence_cross(X, Y, *in.corr, in.extra_slack);
            Rational shift = base[static_cast<std::size_t>(in.left_root)]
                                 [static_cast<std::size_t>(in.right_root)];
            std::vector<std::vector<Rational>> cross(X.size(), std::vector<Rational>(Y.size()));
            for (std::size_t x = 0; x < X.size(); ++x)
                for (std::size_t y = 0; y < Y.size(); ++y) {
                    // Direct route or through the identified roots.
                    Rational direct = base[x][y] + shift;
                    Rational via_root = X.dist(static_cast<PointId>(x), in.left_root) +
                                        Y.dist(in.right_root, static_cast<PointId>(y));
                    cross[x][y] = direct < via_root ? direct : via_root;
                }
            return glue_from_cross(X, Y, cross, in.left_root, in.right_root);
        }
    }
    throw std::logic_error("unreachable");
}

GluedSpace glue_correspondence_with_slack(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                          const Correspondence& corr, const Rational& slack) {
    return glue_from_cross(X, Y, correspondence_cross(X, Y, corr, slack), -1, -1);
}

}  // namespace locgh
