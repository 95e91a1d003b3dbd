#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "locgh/curve.hpp"
#include "locgh/errors.hpp"
#include "locgh/measures.hpp"
#include "locgh/metric_space.hpp"
#include "locgh/subsets.hpp"

namespace locgh {

// A restriction system: truncation maps R_x^(r) from "large" objects to
// "compact" objects, together with the compact-level metric and the exact
// radii past which each truncation stops changing.
template <class Obj>
struct RestrictionSystem {
    std::string name;
    const FiniteMetricSpace* space = nullptr;
    std::function<Obj(const Obj&, PointId, const Rational&)> restrict_fn;
    std::function<bool(const Obj&, const Obj&)> equal_fn;
    std::function<ExtReal(const Obj&, const Obj&)> compact_metric;
    // Sorted radii at which r -> restrict(obj, center, r) may change; the
    // restriction is constant on [r_i, r_{i+1}) and beyond the last entry.
    std::function<std::vector<Rational>(const Obj&, PointId)> breakpoints;
};

struct AxiomCheck {
    std::string axiom;
    bool pass = true;
    std::string witness;  // counterexample tuple when failing
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    std::string scope_note;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
    }
};

// Samples the restriction-system axioms over the given centers, radii, and
// objects. RS2 is verified only across the sampled object universe, and RS5
// constructively on compatible sequences built from the samples; the report
// says so.
template <class Obj>
AxiomReport check_rs_axioms(const RestrictionSystem<Obj>& sys, const std::vector<PointId>& centers,
                            const std::vector<Rational>& radii, const std::vector<Obj>& objects) {
    if (centers.empty() || radii.empty() || objects.empty())
        throw ValidationError("axiom check needs non-empty samples");
    AxiomReport report;
    report.scope_note =
        "RS2 quantifies over the sampled object universe only; RS5 is checked constructively on "
        "compatible sequences assembled from sampled objects and radii.";

    auto fmt = [&](std::initializer_list<std::string> parts) {
        std::ostringstream os;
        bool first = true;
        for (const auto& p : parts) {
            if (!first) os << ", ";
            os << p;
            first = false;
        }
        return os.str();
    };
    auto rstr = [](const Rational& r) { return format_rational(r); };

    // RS1: R^r ∘ R^s = R^{s∧r}.
    AxiomCheck rs1{"RS1 composition", true, ""};
    for (const Obj& a : objects)
        for (PointId x : centers)
            for (const Rational& s : radii)
                for (const Rational& r : radii) {
                    Obj lhs = sys.restrict_fn(sys.restrict_fn(a, x, s), x, r);
                    Obj rhs = sys.restrict_fn(a, x, s < r ? s : r);
                    if (!sys.equal_fn(lhs, rhs)) {
                        rs1.pass = false;
                        rs1.witness = fmt({"x=" + sys.space->label(x), "s=" + rstr(s), "r=" + rstr(r)});
                        goto rs1_done;
                    }
                }
rs1_done:
    report.checks.push_back(rs1);

    // RS3: stabilization at the object's own breakpoint bound.
    AxiomCheck rs3{"RS3 stabilization", true, ""};
    for (const Obj& a : objects)
        for (PointId x : centers) {
            auto bps = sys.breakpoints(a, x);
            Rational beyond = bps.empty() ? Rational(1) : bps.back() + 1;
            if (!sys.equal_fn(sys.restrict_fn(a, x, beyond), a)) {
                rs3.pass = false;
                rs3.witness = fmt({"center=" + sys.space->label(x), "r=" + rstr(beyond)});
                goto rs3_done;
            }
        }
rs3_done:
    report.checks.push_back(rs3);

    // RS2: objects separated by restrictions sampled up to stabilization.
    AxiomCheck rs2{"RS2 separation", true, ""};
    for (std::size_t i = 0; i < objects.size() && rs2.pass; ++i)
        for (std::size_t j = i + 1; j < objects.size() && rs2.pass; ++j) {
            if (sys.equal_fn(objects[i], objects[j])) continue;
            for (PointId x : centers) {
                std::vector<Rational> probe = sys.breakpoints(objects[i], x);
                auto more = sys.breakpoints(objects[j], x);
                probe.insert(probe.end(), more.begin(), more.end());
                Rational last = probe.empty() ? Rational(1) : *std::max_element(probe.begin(), probe.end()) + 1;
                probe.push_back(last);
                bool separated = false;
                for (const Rational& r : probe)
                    if (!sys.equal_fn(sys.restrict_fn(objects[i], x, r),
                                      sys.restrict_fn(objects[j], x, r))) {
                        separated = true;
                        break;
                    }
                if (!separated) {
                    rs2.pass = false;
                    rs2.witness = fmt({"objects #" + std::to_string(i) + ",#" + std::to_string(j),
                                       "center=" + sys.space->label(x)});
                    break;
                }
            }
        }
    report.checks.push_back(rs2);

    // RS4: R_y^(r) ∘ R_x^(s+r) = R_y^(r) whenever s >= d(x,y).
    AxiomCheck rs4{"RS4 shifted centers", true, ""};
    for (const Obj& a : objects)
        for (PointId x : centers)
            for (PointId y : centers)
                for (const Rational& s : radii) {
                    if (s < sys.space->dist(x, y)) continue;
                    for (const Rational& r : radii) {
                        Obj lhs = sys.restrict_fn(sys.restrict_fn(a, x, s + r), y, r);
                        Obj rhs = sys.restrict_fn(a, y, r);
                        if (!sys.equal_fn(lhs, rhs)) {
                            rs4.pass = false;
                            rs4.witness = fmt({"x=" + sys.space->label(x), "y=" + sys.space->label(y),
                                               "s=" + rstr(s), "r=" + rstr(r)});
                            goto rs4_done;
                        }
                    }
                }
rs4_done:
    report.checks.push_back(rs4);

    // RS5: every compatible sequence assembled from a sample object admits a
    // sampled union object restricting to it.
    AxiomCheck rs5{"RS5 completeness", true, ""};
    for (const Obj& a : objects)
        for (PointId x : centers) {
            std::vector<Rational> rs = radii;
            std::sort(rs.begin(), rs.end());
            std::vector<Obj> chain;
            for (const Rational& r : rs) chain.push_back(sys.restrict_fn(a, x, r));
            // Compatibility follows from RS1; existence of a union object is
            // witnessed inside the sampled universe.
            bool found = false;
            for (const Obj& b : objects) {
                bool ok = true;
                for (std::size_t k = 0; k < rs.size(); ++k)
                    if (!sys.equal_fn(sys.restrict_fn(b, x, rs[k]), chain[k])) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                rs5.pass = false;
                rs5.witness = fmt({"center=" + sys.space->label(x)});
                goto rs5_done;
            }
        }
rs5_done:
    report.checks.push_back(rs5);

    return report;
}

// Local metric induced by a restriction system via the exponential integral.
template <class Obj>
class LocalMetric {
  public:
    LocalMetric(RestrictionSystem<Obj> sys) : sys_(std::move(sys)) {}

    PiecewiseConstantCurve curve(const Obj& a, PointId x, const Obj& b, PointId y) const {
        std::vector<Rational> radii{Rational(0)};
        for (const Rational& r : sys_.breakpoints(a, x)) radii.push_back(r);
        for (const Rational& r : sys_.breakpoints(b, y)) radii.push_back(r);
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        std::vector<ExtReal> vals;
        vals.reserve(radii.size());
        for (const Rational& r : radii)
            vals.push_back(sys_.compact_metric(sys_.restrict_fn(a, x, r), sys_.restrict_fn(b, y, r)));
        return curve_from_steps(radii, vals);
    }

    double rooted(const Obj& a, const Obj& b, PointId root) const {
        return exp_integral(curve(a, root, b, root));
    }

    double paired(const Obj& a, PointId x, const Obj& b, PointId y) const {
        return std::max(exp_integral(curve(a, x, b, y)), to_double(sys_.space->dist(x, y)));
    }

  private:
    RestrictionSystem<Obj> sys_;
};

// Refuses to build over a system failing the sampled axioms.
template <class Obj>
LocalMetric<Obj> build_local_metric(const RestrictionSystem<Obj>& sys,
                                    const std::vector<PointId>& centers,
                                    const std::vector<Rational>& radii,
                                    const std::vector<Obj>& objects) {
    AxiomReport report = check_rs_axioms(sys, centers, radii, objects);
    if (!report.all_pass()) {
        std::string which;
        for (const auto& c : report.checks)
            if (!c.pass) which += (which.empty() ? "" : "; ") + c.axiom + " [" + c.witness + "]";
        throw AxiomFailure("restriction system failed sampled axioms: " + which);
    }
    return LocalMetric<Obj>(sys);
}

// Built-in systems.
RestrictionSystem<FiniteSubset> make_subset_system(const FiniteMetricSpace& space);
RestrictionSystem<FiniteMeasure> make_measure_system(const FiniteMetricSpace& space);
// Adversarial variant restricting to balls of radius r^2; violates RS4.
RestrictionSystem<FiniteSubset> make_quadratic_ball_system(const FiniteMetricSpace& space);

// Variable-domain functions into a fixed auxiliary space, identified with
// their graphs; the compact metric is the Hausdorff distance between graphs
// in the max product metric.
struct VarDomainFunction {
    FiniteSubset domain;            // points of the base space
    std::vector<PointId> values;    // image point in the auxiliary space, per domain entry

    bool operator==(const VarDomainFunction& o) const {
        return domain == o.domain && values == o.values;
    }
};

RestrictionSystem<VarDomainFunction> make_function_system(const FiniteMetricSpace& space,
                                                          const FiniteMetricSpace& aux);

}  // namespace locgh
