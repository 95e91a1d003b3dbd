#include <doctest.h>

#include <cmath>

#include "locgh/errors.hpp"
#include "locgh/glue.hpp"
#include "locgh/measures.hpp"
#include "testutil.hpp"

using namespace locgh;
namespace tu = locgh::testutil;

namespace {

// Independent Prohorov oracle: max over all subsets A (both sides) of the
// least eps making mu(A) <= nu(A^eps) + eps feasible, scanning the distance
// breakpoints directly. Pure subset enumeration, no flows.
Rational prohorov_oracle(const FiniteMetricSpace& space, const FiniteMeasure& mu,
                         const FiniteMeasure& nu) {
    std::vector<Rational> breaks{Rational(0)};
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            breaks.push_back(space.dist(static_cast<PointId>(i), static_cast<PointId>(j)));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto mass_of = [&](const FiniteMeasure& m, const FiniteSubset& s) {
        Rational t(0);
        for (PointId p : s) t += m.mass_at(p);
        return t;
    };
    auto needed = [&](const FiniteMeasure& m, const FiniteMeasure& n, const FiniteSubset& A) {
        // least eps with m(A) <= n(A^eps) + eps
        Rational best(-1);
        for (const Rational& d : breaks) {
            Rational gap = mass_of(m, A) - mass_of(n, eps_neighborhood(space, A, d));
            Rational cand = gap > d ? gap : d;
            if (best < 0 || cand < best) best = cand;
        }
        return best < 0 ? Rational(0) : best;
    };

    Rational worst(0);
    const std::size_t n = space.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        FiniteSubset A;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) A.push_back(static_cast<PointId>(i));
        Rational na = needed(mu, nu, A);
        Rational nb = needed(nu, mu, A);
        if (na > worst) worst = na;
        if (nb > worst) worst = nb;
    }
    return worst;
}

}  // namespace

TEST_CASE("Prohorov distance basics") {
    FiniteMetricSpace X({"x", "y"}, {{Rational(0), rat(3, 10)}, {rat(3, 10), Rational(0)}});
    FiniteMeasure dx = FiniteMeasure::dirac(0);
    FiniteMeasure dy = FiniteMeasure::dirac(1);
    CHECK(prohorov(X, dx, dx).value == 0);
    CHECK(prohorov(X, dx, dy).value == rat(3, 10));
    FiniteMeasure two_dx = FiniteMeasure::dirac(0, Rational(2));
    CHECK(prohorov(X, dx, two_dx).value == 1);
    FiniteMeasure zero;
    CHECK(prohorov(X, zero, dy).value == 1);
    CHECK(prohorov(X, zero, zero).value == 0);
}

TEST_CASE("Prohorov equals the subset-enumeration oracle") {
    tu::Rng rng(43);
    for (int trial = 0; trial < 150; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 6, 1);
        FiniteMeasure mu = tu::random_measure(rng, X);
        FiniteMeasure nu = tu::random_measure(rng, X);
        CHECK(prohorov(X, mu, nu).value == prohorov_oracle(X, mu, nu));
    }
}

TEST_CASE("Prohorov witness certifies both sides of the optimum") {
    tu::Rng rng(44);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 5, 1);
        FiniteMeasure mu = tu::random_measure(rng, X, false);
        FiniteMeasure nu = tu::random_measure(rng, X, false);
        ProhorovResult r = prohorov(X, mu, nu);
        if (r.value == 0) continue;
        REQUIRE(r.witness.has_cut);
        // The cut set violates the defining inequality for every eps < value;
        // spot-check at eps = value/2 (neighborhood evaluated exactly).
        const FiniteMeasure& from = r.witness.cut_from_left ? mu : nu;
        const FiniteMeasure& to = r.witness.cut_from_left ? nu : mu;
        Rational eps = r.value / 2;
        Rational lhs(0);
        for (PointId p : r.witness.cut_set) lhs += from.mass_at(p);
        Rational rhs(0);
        for (PointId p : eps_neighborhood(X, r.witness.cut_set, eps)) rhs += to.mass_at(p);
        CHECK(lhs > rhs + eps);
        CHECK(r.witness.cut_violation >= r.value);
    }
}

TEST_CASE("Prohorov is a metric on random instances") {
    tu::Rng rng(47);
    for (int trial = 0; trial < 150; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 8, 1);
        FiniteMeasure a = tu::random_measure(rng, X);
        FiniteMeasure b = tu::random_measure(rng, X);
        FiniteMeasure c = tu::random_measure(rng, X);
        Rational ab = prohorov(X, a, b).value;
        CHECK(ab == prohorov(X, b, a).value);
        CHECK(prohorov(X, a, a).value == 0);
        if (ab == 0) CHECK(a == b);
        CHECK(ab <= prohorov(X, a, c).value + prohorov(X, c, b).value);
    }
}

TEST_CASE("restrict_measure keeps mass on the closed ball") {
    FiniteMetricSpace path3 = tu::path_space(3);
    FiniteMeasure m = FiniteMeasure::from_weights({{0, Rational(1)}, {2, Rational(1)}});
    CHECK(restrict_measure(path3, m, 0, Rational(1)) ==
          FiniteMeasure::from_weights({{0, Rational(1)}}));
    CHECK(restrict_measure(path3, m, 0, Rational(2)) == m);
    FiniteMeasure zero;
    CHECK(restrict_measure(path3, zero, 0, Rational(1)) == zero);
}

TEST_CASE("rooted vague metric closed form on the two-point space") {
    FiniteMetricSpace X = tu::two_point_space(Rational(2));
    FiniteMeasure mu = FiniteMeasure::dirac(0);
    FiniteMeasure nu = FiniteMeasure::from_weights({{0, Rational(1)}, {1, Rational(1)}});
    double v = vague(X, mu, 0, nu, 0, LocalMetricMode::Rooted);
    CHECK(v == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(vague(X, mu, 0, mu, 0, LocalMetricMode::Rooted) == 0.0);
    CHECK(vague(X, mu, 0, nu, 0, LocalMetricMode::Product) == doctest::Approx(v));
}

TEST_CASE("vague integrator agrees with quadrature") {
    tu::Rng rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 6, 1);
        FiniteMeasure mu = tu::random_measure(rng, X);
        FiniteMeasure nu = tu::random_measure(rng, X);
        PointId x = 0, y = static_cast<PointId>(X.size() - 1);
        double exact = vague(X, mu, x, nu, y, LocalMetricMode::Product);
        auto value_at = [&](double r) {
            Rational rr = rat_from_double(r);
            Rational p =
                prohorov(X, restrict_measure(X, mu, x, rr), restrict_measure(X, nu, y, rr)).value;
            return std::min(1.0, to_double(p));
        };
        double cut = to_double(X.diameter()) + 1.0;
        double tail = std::min(1.0, to_double(prohorov(X, mu, nu).value));
        std::vector<double> splits = tu::subset_radii(X, mu.support(), x);
        for (double s : tu::subset_radii(X, nu.support(), y)) splits.push_back(s);
        double quad = tu::exp_integral_quadrature(value_at, splits, cut, tail);
        double expected = std::max(quad, to_double(X.dist(x, y)));
        CHECK(std::fabs(exact - expected) < 1e-6);
    }
}

TEST_CASE("Prohorov stability under the two-gluing experiment") {
    tu::Rng rng(59);
    const Rational slacks[] = {Rational(0), rat(1, 10), Rational(1), Rational(10)};
    for (int trial = 0; trial < 80; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 5, 1);
        FiniteMetricSpace Y = tu::random_space(rng, 5, 1);
        Correspondence corr = tu::random_correspondence(rng, X.size(), Y.size());
        const Rational& eps = slacks[trial % 4];
        GluedSpace m1 = glue_correspondence_with_slack(X, Y, corr, Rational(0));
        GluedSpace m2 = glue_correspondence_with_slack(X, Y, corr, eps);
        FiniteMeasure mu = tu::random_measure(rng, X);
        FiniteMeasure nu = tu::random_measure(rng, Y);
        Rational p1 = prohorov(m1.space, pushforward_measure(mu, m1.left_map),
                               pushforward_measure(nu, m1.right_map))
                          .value;
        Rational p2 = prohorov(m2.space, pushforward_measure(mu, m2.left_map),
                               pushforward_measure(nu, m2.right_map))
                          .value;
        CHECK(p2 <= p1 + eps);
    }
}

TEST_CASE("pushforward along an isometric injection preserves vague distances") {
    tu::Rng rng(61);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 5, 1);
        auto ext = tu::random_isometric_extension(rng, X, 2);
        FiniteMeasure mu = tu::random_measure(rng, X);
        FiniteMeasure nu = tu::random_measure(rng, X);
        PointId rho = 0;
        double before = vague(X, mu, rho, nu, rho, LocalMetricMode::Rooted);
        double after = vague(ext.target, pushforward_measure(mu, ext.map),
                             ext.map[static_cast<std::size_t>(rho)],
                             pushforward_measure(nu, ext.map),
                             ext.map[static_cast<std::size_t>(rho)], LocalMetricMode::Rooted);
        CHECK(std::fabs(before - after) < 1e-12);
        // Exact at the Prohorov level.
        CHECK(prohorov(X, mu, nu).value ==
              prohorov(ext.target, pushforward_measure(mu, ext.map),
                       pushforward_measure(nu, ext.map))
                  .value);
    }
}

TEST_CASE("restriction and pushforward commute exactly") {
    tu::Rng rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 6, 1);
        auto ext = tu::random_isometric_extension(rng, X, 2);
        FiniteMeasure mu = tu::random_measure(rng, X);
        PointId x = static_cast<PointId>(trial % X.size());
        Rational r = tu::random_rational(rng);
        FiniteMeasure lhs = restrict_measure(ext.target, pushforward_measure(mu, ext.map),
                                             ext.map[static_cast<std::size_t>(x)], r);
        FiniteMeasure rhs = pushforward_measure(restrict_measure(X, mu, x, r), ext.map);
        CHECK(lhs == rhs);
    }
}
