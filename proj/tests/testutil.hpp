#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "locgh/glue.hpp"
#include "locgh/measures.hpp"
#include "locgh/metric_space.hpp"
#include "locgh/subsets.hpp"

namespace locgh::testutil {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int max_num = 12, int max_den = 4) {
    std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
    return rat(num(rng), den(rng));
}

// Random metric space with exact rational distances: random positive weights
// on the complete graph, closed under shortest paths.
inline FiniteMetricSpace random_space(Rng& rng, std::size_t max_points, std::size_t min_points = 1) {
    std::uniform_int_distribution<std::size_t> size_dist(min_points, max_points);
    const std::size_t n = size_dist(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = random_rational(rng);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return FiniteMetricSpace(std::move(labels), std::move(d));
}

inline FiniteSubset random_subset(Rng& rng, const FiniteMetricSpace& space, bool allow_empty = true) {
    std::uniform_int_distribution<int> coin(0, 1);
    FiniteSubset s;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (coin(rng)) s.push_back(static_cast<PointId>(i));
    if (s.empty() && !allow_empty) {
        std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
        s.push_back(static_cast<PointId>(pick(rng)));
    }
    return s;
}

inline FiniteMeasure random_measure(Rng& rng, const FiniteMetricSpace& space,
                                    bool allow_zero = true) {
    std::uniform_int_distribution<int> coin(0, 2);
    std::vector<std::pair<PointId, Rational>> w;
    for (std::size_t i = 0; i < space.size(); ++i)
        if (coin(rng) == 0) w.emplace_back(static_cast<PointId>(i), random_rational(rng, 6, 3));
    if (w.empty() && !allow_zero) {
        std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
        w.emplace_back(static_cast<PointId>(pick(rng)), random_rational(rng, 6, 3));
    }
    return FiniteMeasure::from_weights(std::move(w));
}

inline Correspondence random_correspondence(Rng& rng, std::size_t n, std::size_t m) {
    Correspondence corr;
    std::uniform_int_distribution<std::size_t> left(0, n - 1), right(0, m - 1);
    for (std::size_t i = 0; i < n; ++i)
        corr.pairs.emplace_back(static_cast<PointId>(i), static_cast<PointId>(right(rng)));
    for (std::size_t j = 0; j < m; ++j)
        corr.pairs.emplace_back(static_cast<PointId>(left(rng)), static_cast<PointId>(j));
    std::sort(corr.pairs.begin(), corr.pairs.end());
    corr.pairs.erase(std::unique(corr.pairs.begin(), corr.pairs.end()), corr.pairs.end());
    return corr;
}

// Path on {0, 1, ..., n-1} with d(i, j) = |i - j|.
inline FiniteMetricSpace path_space(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] = Rational(static_cast<long>(i > j ? i - j : j - i));
    return FiniteMetricSpace(std::move(labels), std::move(d));
}

inline FiniteMetricSpace two_point_space(const Rational& gap, const std::string& a = "rho",
                                         const std::string& b = "p") {
    return FiniteMetricSpace({a, b}, {{Rational(0), gap}, {gap, Rational(0)}});
}

// Quadrature oracle for the exponentially weighted integrals: composite
// Simpson between the candidate radii where the integrand may jump (taken
// from the input data, not from the implementation), plus the exact constant
// tail. Values are probed at panel nodes via the supplied callable.
inline double exp_integral_quadrature(const std::function<double(double)>& clamped_value,
                                      std::vector<double> splits, double cut, double tail_value) {
    splits.push_back(0.0);
    splits.push_back(cut);
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < splits.size(); ++k) {
        double a = splits[k], b = splits[k + 1];
        if (a >= cut) break;
        if (b > cut) b = cut;
        if (b <= a) continue;
        const int panels = 32;
        double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            // Sample strictly inside the piece so the cadlag convention at
            // the split points cannot leak across.
            double lo = a + p * h, hi = lo + h;
            double l = lo + 1e-9 * h, r = hi - 1e-9 * h, m = 0.5 * (lo + hi);
            auto f = [&](double x) { return std::exp(-x) * clamped_value(x); };
            total += (hi - lo) / 6.0 * (f(l) + 4.0 * f(m) + f(r));
        }
    }
    total += tail_value * std::exp(-cut);
    return total;
}

inline std::vector<double> subset_radii(const FiniteMetricSpace& X, const FiniteSubset& a, PointId x) {
    std::vector<double> out;
    for (PointId p : a) out.push_back(to_double(X.dist(x, p)));
    return out;
}

// Distance-preserving injection into a grown space: appends `extra` points at
// metrically consistent distances and relabels.
struct IsometricExtension {
    FiniteMetricSpace target;
    std::vector<PointId> map;
};

inline IsometricExtension random_isometric_extension(Rng& rng, const FiniteMetricSpace& X,
                                                     int extra = 2) {
    std::size_t n = X.size();
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = X.dist(static_cast<PointId>(i), static_cast<PointId>(j));
    std::vector<std::string> labels = X.labels();
    for (int e = 0; e < extra; ++e) {
        std::size_t m = d.size();
        std::uniform_int_distribution<std::size_t> pick(0, m - 1);
        std::size_t anchor = pick(rng);
        Rational off = random_rational(rng, 6, 2);
        // d(new, x) = off + d(anchor, x) keeps the triangle inequality.
        std::vector<Rational> row(m + 1, Rational(0));
        for (std::size_t i = 0; i < m; ++i) row[i] = off + d[anchor][i];
        for (std::size_t i = 0; i < m; ++i) d[i].push_back(row[i]);
        d.push_back(std::move(row));
        labels.push_back("q" + std::to_string(e) + "_" + std::to_string(m));
    }
    IsometricExtension out;
    out.target = FiniteMetricSpace(std::move(labels), std::move(d));
    out.map.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.map[i] = static_cast<PointId>(i);
    return out;
}

}  // namespace locgh::testutil

// (structure helpers below need the structures module)
#include "locgh/structures.hpp"

namespace locgh::testutil {

inline const std::map<std::string, RootedSpace>& standard_aux() {
    static const std::map<std::string, RootedSpace> aux = {
        {"Xi", RootedSpace{FiniteMetricSpace({"u", "v"},
                                             {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}}),
                           0}}};
    return aux;
}

inline PointId random_point(Rng& rng, const FiniteMetricSpace& X) {
    std::uniform_int_distribution<std::size_t> pick(0, X.size() - 1);
    return static_cast<PointId>(pick(rng));
}

// Random structure value of the requested kind over ctx.space; inner kinds
// default to points.
inline StructureValue random_structure(Rng& rng, const StructureContext& ctx, StructureKind kind) {
    const FiniteMetricSpace& X = *ctx.space;
    StructureValue v;
    v.kind = kind;
    switch (kind) {
        case StructureKind::Point:
            v.point = random_point(rng, X);
            break;
        case StructureKind::Tuple: {
            std::uniform_int_distribution<int> len(1, 2);
            int n = len(rng);
            for (int i = 0; i < n; ++i) v.tuple.push_back(random_point(rng, X));
            break;
        }
        case StructureKind::Fixed: {
            v.aux_name = "Xi";
            v.aux_point = random_point(rng, ctx.aux("Xi").space);
            break;
        }
        case StructureKind::Subset:
            v.subset = random_subset(rng, X);
            break;
        case StructureKind::Measure:
            v.measure = random_measure(rng, X);
            break;
        case StructureKind::StepCadlag: {
            std::uniform_int_distribution<int> jumps(1, 3), horizon_kind(0, 1);
            int n = jumps(rng);
            Rational t(0);
            for (int i = 0; i < n; ++i) {
                v.times.push_back(t);
                v.children.push_back(random_structure(rng, ctx, StructureKind::Point));
                t += random_rational(rng, 3, 2);
            }
            if (horizon_kind(rng)) v.horizon = t + 1;
            break;
        }
        case StructureKind::VarFunction: {
            v.transform = SpaceTransform{1, ""};
            FiniteSubset dom = random_subset(rng, X);
            for (PointId p : dom) {
                v.domain.push_back(p);
                v.children.push_back(random_structure(rng, ctx, StructureKind::Point));
            }
            break;
        }
        case StructureKind::LZero: {
            v.times = {Rational(0), Rational(1)};
            v.weights = {rat(1, 2), rat(1, 2)};
            v.children.push_back(random_structure(rng, ctx, StructureKind::Point));
            v.children.push_back(random_structure(rng, ctx, StructureKind::Point));
            break;
        }
        case StructureKind::Law: {
            std::uniform_int_distribution<int> atoms(1, 2);
            int n = atoms(rng);
            for (int i = 0; i < n; ++i) {
                v.weights.push_back(n == 1 ? Rational(1) : rat(1, 2));
                v.children.push_back(random_structure(rng, ctx, StructureKind::Point));
            }
            break;
        }
        case StructureKind::Product: {
            v.children.push_back(random_structure(rng, ctx, StructureKind::Point));
            v.children.push_back(random_structure(rng, ctx, StructureKind::Measure));
            break;
        }
        case StructureKind::Composed: {
            v.transform = SpaceTransform{1, "Xi"};
            TransformedSpace T = transform_space(ctx, v.transform);
            StructureContext inner{&T.space, ctx.aux_spaces, ctx.tol};
            v.children.push_back(random_structure(rng, inner, StructureKind::Point));
            break;
        }
    }
    return v;
}

// Random value with the same kind signature as the prototype (tuple lengths,
// horizons, time grids, transforms all agree), so distances are defined.
inline StructureValue random_structure_like(Rng& rng, const StructureContext& ctx,
                                            const StructureValue& proto) {
    const FiniteMetricSpace& X = *ctx.space;
    StructureValue v;
    v.kind = proto.kind;
    switch (proto.kind) {
        case StructureKind::Point:
            v.point = random_point(rng, X);
            break;
        case StructureKind::Tuple:
            for (std::size_t i = 0; i < proto.tuple.size(); ++i)
                v.tuple.push_back(random_point(rng, X));
            break;
        case StructureKind::Fixed:
            v.aux_name = proto.aux_name;
            v.aux_point = random_point(rng, ctx.aux(proto.aux_name).space);
            break;
        case StructureKind::Subset:
            v.subset = random_subset(rng, X);
            break;
        case StructureKind::Measure:
            v.measure = random_measure(rng, X);
            break;
        case StructureKind::StepCadlag: {
            v.horizon = proto.horizon;
            std::uniform_int_distribution<int> jumps(1, 3);
            int n = jumps(rng);
            Rational t(0);
            for (int i = 0; i < n; ++i) {
                if (v.horizon && t > *v.horizon) break;
                v.times.push_back(t);
                v.children.push_back(random_structure_like(rng, ctx, proto.children.front()));
                t += random_rational(rng, 2, 2);
            }
            break;
        }
        case StructureKind::VarFunction: {
            v.transform = proto.transform;
            TransformedSpace T = transform_space(ctx, v.transform);
            std::uniform_int_distribution<int> coin(0, 2);
            for (std::size_t i = 0; i < T.space.size(); ++i)
                if (coin(rng) == 0) {
                    v.domain.push_back(static_cast<PointId>(i));
                    v.children.push_back(proto.children.empty()
                                             ? random_structure(rng, ctx, StructureKind::Point)
                                             : random_structure_like(rng, ctx, proto.children.front()));
                }
            break;
        }
        case StructureKind::LZero: {
            v.times = proto.times;
            v.weights = proto.weights;
            for (const auto& c : proto.children)
                v.children.push_back(random_structure_like(rng, ctx, c));
            break;
        }
        case StructureKind::Law: {
            std::uniform_int_distribution<int> atoms(1, 2);
            int n = atoms(rng);
            for (int i = 0; i < n; ++i) {
                v.weights.push_back(n == 1 ? Rational(1) : rat(1, 2));
                v.children.push_back(random_structure_like(rng, ctx, proto.children.front()));
            }
            break;
        }
        case StructureKind::Product:
            for (const auto& c : proto.children)
                v.children.push_back(random_structure_like(rng, ctx, c));
            break;
        case StructureKind::Composed: {
            v.transform = proto.transform;
            TransformedSpace T = transform_space(ctx, v.transform);
            StructureContext inner{&T.space, ctx.aux_spaces, ctx.tol};
            v.children.push_back(random_structure_like(rng, inner, proto.children.front()));
            break;
        }
    }
    return v;
}

inline const std::vector<StructureKind>& all_structure_kinds() {
    static const std::vector<StructureKind> kinds = {
        StructureKind::Point,      StructureKind::Tuple,  StructureKind::Fixed,
        StructureKind::Subset,     StructureKind::Measure, StructureKind::StepCadlag,
        StructureKind::VarFunction, StructureKind::LZero,  StructureKind::Law,
        StructureKind::Product,    StructureKind::Composed};
    return kinds;
}

}  // namespace locgh::testutil
