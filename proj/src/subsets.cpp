#include "locgh/subsets.hpp"

#include <algorithm>

#include "locgh/errors.hpp"

namespace locgh {

FiniteSubset normalize_subset(FiniteSubset members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return members;
}

FiniteSubset eps_neighborhood(const FiniteMetricSpace& space, const FiniteSubset& a,
                              const Rational& eps) {
    if (eps < 0) throw ValidationError("eps must be nonnegative");
    FiniteSubset out;
    for (std::size_t x = 0; x < space.size(); ++x) {
        for (PointId y : a) {
            if (y < 0 || static_cast<std::size_t>(y) >= space.size())
                throw UnknownPoint("subset member outside space");
            if (space.dist(static_cast<PointId>(x), y) <= eps) {
                out.push_back(static_cast<PointId>(x));
                break;
            }
        }
    }
    return out;
}

ExtReal hausdorff(const FiniteMetricSpace& space, const FiniteSubset& a, const FiniteSubset& b) {
    return hausdorff_generic(a, b, [&space](int x, int y) { return space.dist(x, y); });
}

ExtReal hausdorff_generic(const std::vector<int>& a, const std::vector<int>& b,
                          const std::function<Rational(int, int)>& dist) {
    if (a.empty() && b.empty()) return Rational(0);
    if (a.empty() || b.empty()) return ExtReal::inf();
    Rational worst(0);
    auto one_sided = [&](const std::vector<int>& from, const std::vector<int>& to) {
        for (int x : from) {
            Rational nearest = dist(x, to[0]);
            for (std::size_t j = 1; j < to.size(); ++j) {
                Rational d = dist(x, to[j]);
                if (d < nearest) nearest = d;
            }
            if (nearest > worst) worst = nearest;
        }
    };
    one_sided(a, b);
    one_sided(b, a);
    return worst;
}

FiniteSubset restrict_subset(const FiniteMetricSpace& space, const FiniteSubset& a, PointId x,
                             const Rational& r) {
    if (x < 0 || static_cast<std::size_t>(x) >= space.size()) throw UnknownPoint("unknown center");
    FiniteSubset out;
    for (PointId p : a) {
        if (p < 0 || static_cast<std::size_t>(p) >= space.size())
            throw UnknownPoint("subset member outside space");
        if (space.dist(x, p) <= r) out.push_back(p);
    }
    return out;
}

PiecewiseConstantCurve local_hausdorff_curve(const FiniteMetricSpace& space, const FiniteSubset& a,
                                             PointId x, const FiniteSubset& b, PointId y) {
    // Restrictions change only at distances from the centers to members.
    std::vector<Rational> radii{Rational(0)};
    for (PointId p : a) radii.push_back(space.dist(x, p));
    for (PointId p : b) radii.push_back(space.dist(y, p));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<ExtReal> vals;
    vals.reserve(radii.size());
    for (const auto& r : radii)
        vals.push_back(hausdorff(space, restrict_subset(space, a, x, r), restrict_subset(space, b, y, r)));
    return curve_from_steps(radii, vals);
}

double local_hausdorff(const FiniteMetricSpace& space, const FiniteSubset& a, PointId x,
                       const FiniteSubset& b, PointId y, LocalMetricMode mode) {
    if (mode == LocalMetricMode::Rooted && x != y)
        throw RootMismatch("rooted local Hausdorff needs a shared root");
    double integral = exp_integral(local_hausdorff_curve(space, a, x, b, y));
    if (mode == LocalMetricMode::Product) return std::max(integral, to_double(space.dist(x, y)));
    return integral;
}

}  // namespace locgh
