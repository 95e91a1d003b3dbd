#include "locgh/rsys.hpp"

namespace locgh {

RestrictionSystem<FiniteSubset> make_subset_system(const FiniteMetricSpace& space) {
    RestrictionSystem<FiniteSubset> sys;
    sys.name = "subset";
    sys.space = &space;
    sys.restrict_fn = [&space](const FiniteSubset& a, PointId x, const Rational& r) {
        return restrict_subset(space, a, x, r);
    };
    sys.equal_fn = [](const FiniteSubset& a, const FiniteSubset& b) { return a == b; };
    sys.compact_metric = [&space](const FiniteSubset& a, const FiniteSubset& b) {
        return hausdorff(space, a, b);
    };
    sys.breakpoints = [&space](const FiniteSubset& a, PointId x) {
        std::vector<Rational> rs;
        for (PointId p : a) rs.push_back(space.dist(x, p));
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        return rs;
    };
    return sys;
}

RestrictionSystem<FiniteMeasure> make_measure_system(const FiniteMetricSpace& space) {
    RestrictionSystem<FiniteMeasure> sys;
    sys.name = "measure";
    sys.space = &space;
    sys.restrict_fn = [&space](const FiniteMeasure& m, PointId x, const Rational& r) {
        return restrict_measure(space, m, x, r);
    };
    sys.equal_fn = [](const FiniteMeasure& a, const FiniteMeasure& b) { return a == b; };
    sys.compact_metric = [&space](const FiniteMeasure& a, const FiniteMeasure& b) {
        return ExtReal(prohorov(space, a, b).value);
    };
    sys.breakpoints = [&space](const FiniteMeasure& m, PointId x) {
        std::vector<Rational> rs;
        for (const auto& [p, w] : m.weights) rs.push_back(space.dist(x, p));
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        return rs;
    };
    return sys;
}

RestrictionSystem<FiniteSubset> make_quadratic_ball_system(const FiniteMetricSpace& space) {
    RestrictionSystem<FiniteSubset> sys = make_subset_system(space);
    sys.name = "quadratic-ball";
    sys.restrict_fn = [&space](const FiniteSubset& a, PointId x, const Rational& r) {
        return restrict_subset(space, a, x, r * r);
    };
    sys.breakpoints = [&space](const FiniteSubset& a, PointId x) {
        // Changes where r^2 crosses a member distance; conservative square
        // roots are not rational, so report the member distances themselves
        // plus 1 (enough for stabilization checks on spaces of diameter >= 1).
        std::vector<Rational> rs;
        for (PointId p : a) {
            rs.push_back(space.dist(x, p));
            rs.push_back(space.dist(x, p) + 1);
        }
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        return rs;
    };
    return sys;
}

RestrictionSystem<VarDomainFunction> make_function_system(const FiniteMetricSpace& space,
                                                          const FiniteMetricSpace& aux) {
    RestrictionSystem<VarDomainFunction> sys;
    sys.name = "function";
    sys.space = &space;
    sys.restrict_fn = [&space](const VarDomainFunction& f, PointId x, const Rational& r) {
        VarDomainFunction out;
        for (std::size_t i = 0; i < f.domain.size(); ++i)
            if (space.dist(x, f.domain[i]) <= r) {
                out.domain.push_back(f.domain[i]);
                out.values.push_back(f.values[i]);
            }
        return out;
    };
    sys.equal_fn = [](const VarDomainFunction& a, const VarDomainFunction& b) { return a == b; };
    sys.compact_metric = [&space, &aux](const VarDomainFunction& f, const VarDomainFunction& g) {
        // Hausdorff between graphs in the max product metric on space x aux.
        std::vector<int> fa(f.domain.size()), gb(g.domain.size());
        for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = static_cast<int>(i);
        for (std::size_t j = 0; j < gb.size(); ++j) gb[j] = static_cast<int>(fa.size() + j);
        auto point = [&](int k) -> std::pair<PointId, PointId> {
            if (k < static_cast<int>(f.domain.size()))
                return {f.domain[static_cast<std::size_t>(k)], f.values[static_cast<std::size_t>(k)]};
            auto j = static_cast<std::size_t>(k) - f.domain.size();
            return {g.domain[j], g.values[j]};
        };
        return hausdorff_generic(fa, gb, [&](int u, int v) {
            auto [pu, au] = point(u);
            auto [pv, av] = point(v);
            Rational d1 = space.dist(pu, pv), d2 = aux.dist(au, av);
            return d1 > d2 ? d1 : d2;
        });
    };
    sys.breakpoints = [&space](const VarDomainFunction& f, PointId x) {
        std::vector<Rational> rs;
        for (PointId p : f.domain) rs.push_back(space.dist(x, p));
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        return rs;
    };
    return sys;
}

}  // namespace locgh
