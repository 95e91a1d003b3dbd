#include <doctest.h>

#include <cmath>

#include "locgh/errors.hpp"
#include "locgh/rsys.hpp"
#include "testutil.hpp"

using namespace locgh;
namespace tu = locgh::testutil;

namespace {

std::vector<Rational> sample_radii(const FiniteMetricSpace& X) {
    std::vector<Rational> radii{rat(1, 10), rat(1, 2), Rational(1), Rational(2)};
    radii.push_back(X.diameter());
    radii.push_back(X.diameter() + 1);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

std::vector<PointId> all_points(const FiniteMetricSpace& X) {
    std::vector<PointId> out;
    for (std::size_t i = 0; i < X.size(); ++i) out.push_back(static_cast<PointId>(i));
    return out;
}

std::vector<FiniteSubset> subset_samples(tu::Rng& rng, const FiniteMetricSpace& X) {
    std::vector<FiniteSubset> objects{{}};
    FiniteSubset all;
    for (std::size_t i = 0; i < X.size(); ++i) all.push_back(static_cast<PointId>(i));
    objects.push_back(all);
    for (int k = 0; k < 4; ++k) objects.push_back(tu::random_subset(rng, X));
    return objects;
}

}  // namespace

TEST_CASE("exp_integral basics") {
    PiecewiseConstantCurve zero{{}, {ExtReal(Rational(0))}};
    CHECK(exp_integral(zero) == 0.0);
    PiecewiseConstantCurve clamped{{}, {ExtReal(Rational(5))}};
    CHECK(exp_integral(clamped) == 1.0);
    PiecewiseConstantCurve tail{{Rational(2)}, {ExtReal(Rational(0)), ExtReal(Rational(2))}};
    CHECK(exp_integral(tail) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    PiecewiseConstantCurve inf_tail{{Rational(1)}, {ExtReal(Rational(0)), ExtReal::inf()}};
    CHECK(exp_integral(inf_tail) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("exp_integral rejects malformed curves") {
    PiecewiseConstantCurve bad{{Rational(2), Rational(1)},
                               {ExtReal(Rational(0)), ExtReal(Rational(1)), ExtReal(Rational(2))}};
    CHECK_THROWS_AS(exp_integral(bad), MalformedCurve);
    PiecewiseConstantCurve mismatch{{Rational(1)}, {ExtReal(Rational(0))}};
    CHECK_THROWS_AS(exp_integral(mismatch), MalformedCurve);
}

TEST_CASE("exp_integral is monotone and 1-Lipschitz in the clamped sup gap") {
    tu::Rng rng(71);
    for (int trial = 0; trial < 80; ++trial) {
        std::uniform_int_distribution<int> nb(0, 4);
        int m = nb(rng);
        std::vector<Rational> bps;
        Rational acc(0);
        for (int i = 0; i < m; ++i) {
            acc += tu::random_rational(rng, 4, 2);
            bps.push_back(acc);
        }
        std::vector<ExtReal> lo, hi;
        double sup_gap = 0.0;
        for (int i = 0; i <= m; ++i) {
            Rational v = tu::random_rational(rng, 3, 3);
            Rational bump = tu::random_rational(rng, 2, 4);
            lo.push_back(ExtReal(v));
            hi.push_back(ExtReal(v + bump));
            Rational cl = v > 1 ? Rational(1) : v;
            Rational ch = v + bump > 1 ? Rational(1) : v + bump;
            sup_gap = std::max(sup_gap, to_double(ch - cl));
        }
        double a = exp_integral({bps, lo});
        double b = exp_integral({bps, hi});
        CHECK(a <= b + 1e-12);
        CHECK(b - a <= sup_gap + 1e-12);
    }
}

TEST_CASE("subset and measure systems pass all sampled axioms") {
    tu::Rng rng(73);
    for (int trial = 0; trial < 25; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 5, 1);
        auto radii = sample_radii(X);
        auto centers = all_points(X);

        auto subset_report =
            check_rs_axioms(make_subset_system(X), centers, radii, subset_samples(rng, X));
        CHECK(subset_report.all_pass());

        std::vector<FiniteMeasure> measures{FiniteMeasure{}};
        for (int k = 0; k < 4; ++k) measures.push_back(tu::random_measure(rng, X));
        auto measure_report = check_rs_axioms(make_measure_system(X), centers, radii, measures);
        CHECK(measure_report.all_pass());
    }
}

TEST_CASE("function system passes all sampled axioms") {
    tu::Rng rng(79);
    FiniteMetricSpace aux({"u", "v"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
    for (int trial = 0; trial < 15; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 4, 1);
        auto sys = make_function_system(X, aux);
        std::vector<VarDomainFunction> objects{{}};
        std::uniform_int_distribution<int> aux_pick(0, 1);
        for (int k = 0; k < 3; ++k) {
            VarDomainFunction f;
            f.domain = tu::random_subset(rng, X);
            for (std::size_t i = 0; i < f.domain.size(); ++i) f.values.push_back(aux_pick(rng));
            objects.push_back(std::move(f));
        }
        auto report = check_rs_axioms(sys, all_points(X), sample_radii(X), objects);
        CHECK(report.all_pass());
    }
}

TEST_CASE("the quadratic-ball system fails RS4 with a witness") {
    // Needs sub-unit geometry: (s + r)^2 < s + r when s + r < 1.
    FiniteMetricSpace X({"a", "b"}, {{Rational(0), rat(1, 2)}, {rat(1, 2), Rational(0)}});
    auto sys = make_quadratic_ball_system(X);
    std::vector<FiniteSubset> objects{{}, {0}, {1}, {0, 1}};
    std::vector<Rational> radii{rat(1, 10), rat(1, 2), Rational(1), Rational(2)};
    auto report = check_rs_axioms(sys, all_points(X), radii, objects);
    CHECK_FALSE(report.all_pass());
    bool rs4_failed = false;
    for (const auto& c : report.checks)
        if (c.axiom.rfind("RS4", 0) == 0 && !c.pass) {
            rs4_failed = true;
            CHECK_FALSE(c.witness.empty());
        }
    CHECK(rs4_failed);
    for (const auto& c : report.checks)
        if (c.axiom.rfind("RS1", 0) == 0 || c.axiom.rfind("RS3", 0) == 0) CHECK(c.pass);
}

TEST_CASE("build_local_metric refuses a failing system") {
    FiniteMetricSpace X({"a", "b"}, {{Rational(0), rat(1, 2)}, {rat(1, 2), Rational(0)}});
    auto sys = make_quadratic_ball_system(X);
    std::vector<FiniteSubset> objects{{}, {0}, {1}, {0, 1}};
    std::vector<Rational> radii{rat(1, 10), rat(1, 2), Rational(1), Rational(2)};
    CHECK_THROWS_AS(build_local_metric(sys, all_points(X), radii, objects), AxiomFailure);
}

TEST_CASE("generic local metric reproduces the subset and measure metrics") {
    tu::Rng rng(83);
    for (int trial = 0; trial < 20; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 5, 1);
        auto radii = sample_radii(X);
        auto centers = all_points(X);

        auto subset_metric =
            build_local_metric(make_subset_system(X), centers, radii, subset_samples(rng, X));
        FiniteSubset a = tu::random_subset(rng, X), b = tu::random_subset(rng, X);
        PointId x = 0, y = static_cast<PointId>(X.size() - 1);
        CHECK(subset_metric.rooted(a, b, x) ==
              doctest::Approx(local_hausdorff(X, a, x, b, x, LocalMetricMode::Rooted)).epsilon(1e-14));
        CHECK(subset_metric.paired(a, x, b, y) ==
              doctest::Approx(local_hausdorff(X, a, x, b, y, LocalMetricMode::Product)).epsilon(1e-14));

        std::vector<FiniteMeasure> measures{FiniteMeasure{}};
        for (int k = 0; k < 3; ++k) measures.push_back(tu::random_measure(rng, X));
        auto measure_metric = build_local_metric(make_measure_system(X), centers, radii, measures);
        FiniteMeasure mu = tu::random_measure(rng, X), nu = tu::random_measure(rng, X);
        CHECK(measure_metric.rooted(mu, nu, x) ==
              doctest::Approx(vague(X, mu, x, nu, x, LocalMetricMode::Rooted)).epsilon(1e-14));
        CHECK(measure_metric.paired(mu, x, nu, y) ==
              doctest::Approx(vague(X, mu, x, nu, y, LocalMetricMode::Product)).epsilon(1e-14));
    }
}

TEST_CASE("metrics built by the engine satisfy the metric axioms on samples") {
    tu::Rng rng(89);
    for (int trial = 0; trial < 15; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 5, 1);
        auto metric = build_local_metric(make_subset_system(X), all_points(X), sample_radii(X),
                                         subset_samples(rng, X));
        FiniteSubset a = tu::random_subset(rng, X), b = tu::random_subset(rng, X),
                     c = tu::random_subset(rng, X);
        PointId rho = 0;
        double ab = metric.rooted(a, b, rho);
        CHECK(ab == doctest::Approx(metric.rooted(b, a, rho)).epsilon(1e-14));
        CHECK(metric.rooted(a, a, rho) == 0.0);
        CHECK(ab <= metric.rooted(a, c, rho) + metric.rooted(c, b, rho) + 1e-9);
        if (ab < 1e-15) CHECK(a == b);
    }
}

TEST_CASE("induced comparisons are basepoint independent on convergent families") {
    tu::Rng rng(97);
    for (int trial = 0; trial < 15; ++trial) {
        FiniteMetricSpace X = tu::random_space(rng, 6, 2);
        auto metric = build_local_metric(make_subset_system(X), all_points(X), sample_radii(X),
                                         subset_samples(rng, X));
        FiniteSubset limit = tu::random_subset(rng, X);
        std::vector<FiniteSubset> family;
        for (int n = 0; n < 6; ++n) family.push_back(n < 2 ? tu::random_subset(rng, X) : limit);
        // Convergence to zero of the tail values must not depend on the root.
        std::vector<bool> verdicts;
        for (PointId rho = 0; rho < static_cast<PointId>(X.size()); ++rho) {
            bool tends_to_zero = true;
            for (std::size_t n = 3; n < family.size(); ++n)
                if (metric.rooted(family[n], limit, rho) > 1e-12) tends_to_zero = false;
            verdicts.push_back(tends_to_zero);
        }
        for (bool v : verdicts) CHECK(v == verdicts.front());
    }
}
