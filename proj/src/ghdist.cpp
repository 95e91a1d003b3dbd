#include "locgh/ghdist.hpp"

#include <algorithm>
#include <cstdint>

#include "locgh/errors.hpp"

namespace locgh {

namespace {

// Exact GH on tiny inputs: d_GH = (1/2) min distortion over correspondences.
// The minimum distortion is one of the finitely many pairwise gap values, so
// we binary-search that candidate set; feasibility of a threshold t asks for
// a correspondence whose cells are pairwise within t, found by row-wise DFS
// over compatibility bitmasks.
class ExactGH {
  public:
    ExactGH(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) : X_(X), Y_(Y) {
        n_ = X.size();
        m_ = Y.size();
        cells_ = n_ * m_;
        if (cells_ > 25) throw TooLargeForExact("exact GH supports |X|*|Y| <= 25");
        gaps_.assign(cells_, std::vector<Rational>(cells_));
        for (std::size_t c = 0; c < cells_; ++c)
            for (std::size_t d = 0; d < cells_; ++d) {
                Rational gap = X.dist(static_cast<PointId>(c / m_), static_cast<PointId>(d / m_)) -
                               Y.dist(static_cast<PointId>(c % m_), static_cast<PointId>(d % m_));
                if (gap < 0) gap = -gap;
                gaps_[c][d] = gap;
                candidates_.push_back(gap);
            }
        std::sort(candidates_.begin(), candidates_.end());
        candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
    }

    // Minimal distortion and an optimal correspondence.
    std::pair<Rational, Correspondence> solve() {
        std::size_t lo = 0, hi = candidates_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (feasible(candidates_[mid]))
                hi = mid;
            else
                lo = mid + 1;
        }
        feasible(candidates_[lo]);  // repopulate the witness
        Correspondence corr;
        for (std::size_t c = 0; c < cells_; ++c)
            if (witness_ >> c & 1)
                corr.pairs.emplace_back(static_cast<PointId>(c / m_), static_cast<PointId>(c % m_));
        return {candidates_[lo], corr};
    }

  private:
    using Mask = std::uint32_t;

    bool feasible(const Rational& t) {
        adj_.assign(cells_, 0);
        for (std::size_t c = 0; c < cells_; ++c)
            for (std::size_t d = 0; d < cells_; ++d)
                if (gaps_[c][d] <= t) adj_[c] |= Mask(1) << d;
        chosen_ = 0;
        Mask all = cells_ == 32 ? ~Mask(0) : (Mask(1) << cells_) - 1;
        return dfs(0, all, 0);
    }

    bool dfs(std::size_t row, Mask allowed, Mask covered) {
        if (row == n_) {
            Mask full = (Mask(1) << m_) - 1;
            if (covered == full) {
                witness_ = chosen_;
                return true;
            }
            return false;
        }
        Mask row_mask = ((Mask(1) << m_) - 1) << (row * m_);
        Mask row_cells = allowed & row_mask;
        if (!row_cells) return false;
        for (Mask S = row_cells;; S = (S - 1) & row_cells) {
            if (S) {
                bool compatible = true;
                Mask next_allowed = allowed;
                Mask next_covered = covered;
                for (Mask rest = S; rest && compatible;) {
                    int c = __builtin_ctz(rest);
                    rest &= rest - 1;
                    if (S & ~adj_[static_cast<std::size_t>(c)]) compatible = false;
                    next_allowed &= adj_[static_cast<std::size_t>(c)];
                    next_covered |= Mask(1) << (static_cast<std::size_t>(c) % m_);
                }
                if (compatible) {
                    chosen_ |= S;
                    if (dfs(row + 1, next_allowed, next_covered)) return true;
                    chosen_ &= ~S;
                }
            }
            if (!S) break;
        }
        return false;
    }

    const FiniteMetricSpace& X_;
    const FiniteMetricSpace& Y_;
    std::size_t n_ = 0, m_ = 0, cells_ = 0;
    std::vector<std::vector<Rational>> gaps_;
    std::vector<Rational> candidates_;
    std::vector<Mask> adj_;
    Mask chosen_ = 0, witness_ = 0;
};

Correspondence heuristic_correspondence(std::size_t n, std::size_t m) {
    Correspondence corr;
    for (std::size_t i = 0; i < n; ++i)
        corr.pairs.emplace_back(static_cast<PointId>(i), static_cast<PointId>(i * m / n));
    for (std::size_t j = 0; j < m; ++j)
        corr.pairs.emplace_back(static_cast<PointId>(j * n / m), static_cast<PointId>(j));
    std::sort(corr.pairs.begin(), corr.pairs.end());
    corr.pairs.erase(std::unique(corr.pairs.begin(), corr.pairs.end()), corr.pairs.end());
    return corr;
}

}  // namespace

DistanceResult gh_distance(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, GHMode mode,
                           const Correspondence* corr) {
    DistanceResult res;
    switch (mode) {
        case GHMode::ExactTiny: {
            auto [dis, witness] = ExactGH(X, Y).solve();
            res.exact = dis / 2;
            res.value = to_double(*res.exact);
            res.kind = BoundKind::Exact;
            res.witness_corr = std::move(witness);
            return res;
        }
        case GHMode::UpperFromCorrespondence: {
            if (!corr) throw InvalidCorrespondence("upper bound needs a correspondence");
            res.exact = distortion(*corr, X, Y) / 2;
            res.value = to_double(*res.exact);
            res.kind = BoundKind::Upper;
            res.witness_corr = *corr;
            return res;
        }
        case GHMode::LowerDiameter: {
            Rational gap = X.diameter() - Y.diameter();
            if (gap < 0) gap = -gap;
            res.exact = gap / 2;
            res.value = to_double(*res.exact);
            res.kind = BoundKind::Lower;
            return res;
        }
    }
    throw std::logic_error("unreachable");
}

DistanceResult gh_distance_auto(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
    if (X.size() * Y.size() <= 25) return gh_distance(X, Y, GHMode::ExactTiny);
    Correspondence corr = heuristic_correspondence(X.size(), Y.size());
    DistanceResult res = gh_distance(X, Y, GHMode::UpperFromCorrespondence, &corr);
    res.note = "heuristic correspondence upper bound";
    return res;
}

void enumerate_correspondences(std::size_t n, std::size_t m,
                               const std::function<bool(const Correspondence&)>& visit) {
    std::vector<std::uint32_t> rows(n, 0);
    bool stop = false;
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t covered) {
        if (stop) return;
        if (row == n) {
            if (covered != (std::uint32_t(1) << m) - 1) return;
            Correspondence corr;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    if (rows[i] >> j & 1)
                        corr.pairs.emplace_back(static_cast<PointId>(i), static_cast<PointId>(j));
            if (!visit(corr)) stop = true;
            return;
        }
        for (std::uint32_t S = 1; S < (std::uint32_t(1) << m); ++S) {
            rows[row] = S;
            rec(row + 1, covered | S);
            if (stop) return;
        }
    };
    rec(0, 0);
}

namespace {

// Both ambient choices give valid upper bounds for the rooted-measured
// objectives: the plain correspondence gluing (roots stay apart, cross
// distances tight) and the root-identified shifted gluing (roots coincide,
// cross distances inflated by the root gap). Neither dominates, so the
// reported bound is the smaller of the two.
std::vector<GluedSpace> candidate_gluings(const FiniteMetricSpace& X, PointId rho_x,
                                          const FiniteMetricSpace& Y, PointId rho_y,
                                          const Correspondence& corr) {
    GlueInputs in;
    in.left = &X;
    in.right = &Y;
    in.corr = &corr;
    std::vector<GluedSpace> out;
    out.push_back(glue(GlueMode::Correspondence, in));
    in.left_root = rho_x;
    in.right_root = rho_y;
    out.push_back(glue(GlueMode::RootIdentifyShift, in));
    return out;
}

// max{Hausdorff, Prohorov, root distance} of the truncations at radius r
// (r < 0 means no truncation) inside one gluing.
Rational pghp_objective(const RootedMeasured& X, const RootedMeasured& Y, const GluedSpace& glued,
                        const Rational& r, bool truncate) {
    FiniteSubset fx, gy;
    FiniteMeasure mu = X.measure, nu = Y.measure;
    for (std::size_t i = 0; i < X.rooted.space.size(); ++i)
        if (!truncate || X.rooted.space.dist(X.rooted.root, static_cast<PointId>(i)) <= r)
            fx.push_back(glued.left_map[i]);
    for (std::size_t j = 0; j < Y.rooted.space.size(); ++j)
        if (!truncate || Y.rooted.space.dist(Y.rooted.root, static_cast<PointId>(j)) <= r)
            gy.push_back(glued.right_map[j]);
    if (truncate) {
        mu = restrict_measure(X.rooted.space, X.measure, X.rooted.root, r);
        nu = restrict_measure(Y.rooted.space, Y.measure, Y.rooted.root, r);
    }
    Rational obj = hausdorff(glued.space, normalize_subset(std::move(fx)),
                             normalize_subset(std::move(gy)))
                       .value;  // both sides contain their root
    Rational proh = prohorov(glued.space, pushforward_measure(mu, glued.left_map),
                             pushforward_measure(nu, glued.right_map))
                        .value;
    if (proh > obj) obj = proh;
    Rational root_d = glued.space.dist(glued.left_map[static_cast<std::size_t>(X.rooted.root)],
                                       glued.right_map[static_cast<std::size_t>(Y.rooted.root)]);
    if (root_d > obj) obj = root_d;
    return obj;
}

}  // namespace

DistanceResult pghp_upper(const RootedMeasured& X, const RootedMeasured& Y,
                          const Correspondence& corr) {
    DistanceResult res;
    res.kind = BoundKind::Upper;
    res.witness_corr = corr;
    bool first = true;
    for (const GluedSpace& glued :
         candidate_gluings(X.rooted.space, X.rooted.root, Y.rooted.space, Y.rooted.root, corr)) {
        Rational obj = pghp_objective(X, Y, glued, Rational(0), false);
        if (first || obj < *res.exact) {
            res.exact = obj;
            res.note = glued.root >= 0 ? "root-identified gluing" : "correspondence gluing";
            first = false;
        }
    }
    res.value = to_double(*res.exact);
    return res;
}

DistanceResult ghv_upper(const RootedMeasured& X, const RootedMeasured& Y,
                         const Correspondence& corr) {
    std::vector<Rational> radii{Rational(0)};
    for (std::size_t i = 0; i < X.rooted.space.size(); ++i)
        radii.push_back(X.rooted.space.dist(X.rooted.root, static_cast<PointId>(i)));
    for (std::size_t j = 0; j < Y.rooted.space.size(); ++j)
        radii.push_back(Y.rooted.space.dist(Y.rooted.root, static_cast<PointId>(j)));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    DistanceResult res;
    res.kind = BoundKind::Upper;
    res.witness_corr = corr;
    bool first = true;
    for (const GluedSpace& glued :
         candidate_gluings(X.rooted.space, X.rooted.root, Y.rooted.space, Y.rooted.root, corr)) {
        std::vector<ExtReal> vals;
        for (const Rational& r : radii)
            vals.push_back(ExtReal(pghp_objective(X, Y, glued, r, true)));
        double v = exp_integral(curve_from_steps(radii, vals));
        if (first || v < res.value) {
            res.value = v;
            res.note = glued.root >= 0 ? "root-identified gluing" : "correspondence gluing";
            first = false;
        }
    }
    return res;
}

namespace {

struct EmbeddedPair {
    StructureValue sx, sy;
    PointId ra, rb;
    StructureContext ctx;
    FiniteSubset fx, gy;
};

EmbeddedPair embed_into(const StructuredSpace& X, const StructuredSpace& Y,
                        const GluedSpace& glued) {
    EmbeddedPair e{{}, {}, -1, -1, StructureContext{&glued.space, X.aux_spaces, {}}, {}, {}};
    StructureContext src_x{&X.rooted.space, X.aux_spaces, {}};
    StructureContext src_y{&Y.rooted.space, Y.aux_spaces, {}};
    e.sx = pushforward(src_x, glued.space, glued.left_map, X.structure);
    e.sy = pushforward(src_y, glued.space, glued.right_map, Y.structure);
    e.ra = glued.left_map[static_cast<std::size_t>(X.rooted.root)];
    e.rb = glued.right_map[static_cast<std::size_t>(Y.rooted.root)];
    for (PointId p : glued.left_map) e.fx.push_back(p);
    for (PointId p : glued.right_map) e.gy.push_back(p);
    e.fx = normalize_subset(std::move(e.fx));
    e.gy = normalize_subset(std::move(e.gy));
    return e;
}

}  // namespace

double rv_objective_in_gluing(const StructuredSpace& X, const StructuredSpace& Y,
                              const GluedSpace& glued, bool compact_variant,
                              std::vector<std::pair<std::string, double>>* terms) {
    EmbeddedPair e = embed_into(X, Y, glued);
    double set_term;
    if (compact_variant) {
        set_term = std::max(to_double(hausdorff(glued.space, e.fx, e.gy).value),
                            to_double(glued.space.dist(e.ra, e.rb)));
    } else {
        set_term = local_hausdorff(glued.space, e.fx, e.ra, e.gy, e.rb, LocalMetricMode::Product);
    }
    double struct_term = structure_distance_er(e.ctx, e.sx, e.ra, e.sy, e.rb);
    if (terms) {
        terms->push_back({compact_variant ? "hausdorff+root" : "local_hausdorff", set_term});
        terms->push_back({"structure", struct_term});
    }
    return std::max(set_term, struct_term);
}

double rf_objective_in_gluing(const StructuredSpace& X, const StructuredSpace& Y,
                              const GluedSpace& glued, bool compact_variant,
                              std::vector<std::pair<std::string, double>>* terms) {
    if (glued.root < 0) throw MissingRoot("RF objective needs a root-identified gluing");
    EmbeddedPair e = embed_into(X, Y, glued);
    double set_term;
    if (compact_variant) {
        set_term = to_double(hausdorff(glued.space, e.fx, e.gy).value);
    } else {
        set_term =
            local_hausdorff(glued.space, e.fx, glued.root, e.gy, glued.root, LocalMetricMode::Rooted);
    }
    double struct_term = structure_distance_sr(e.ctx, e.sx, e.sy, glued.root);
    if (terms) {
        terms->push_back({compact_variant ? "hausdorff" : "local_hausdorff", set_term});
        terms->push_back({"structure", struct_term});
    }
    return std::max(set_term, struct_term);
}

namespace {

GluedSpace build_gluing(const StructuredSpace& X, const StructuredSpace& Y,
                        const Correspondence& corr, GHTypeMetric which) {
    GlueInputs in;
    in.left = &X.rooted.space;
    in.right = &Y.rooted.space;
    in.corr = &corr;
    if (which == GHTypeMetric::RV) return glue(GlueMode::Correspondence, in);
    in.left_root = X.rooted.root;
    in.right_root = Y.rooted.root;
    return glue(GlueMode::RootIdentifyShift, in);
}

DistanceResult rfrv_upper_for(const StructuredSpace& X, const StructuredSpace& Y,
                              GHTypeMetric which, bool compact_variant, const Correspondence& corr) {
    GluedSpace glued = build_gluing(X, Y, corr, which);
    DistanceResult res;
    res.kind = BoundKind::Upper;
    res.witness_corr = corr;
    if (which == GHTypeMetric::RV)
        res.value = rv_objective_in_gluing(X, Y, glued, compact_variant, &res.terms);
    else
        res.value = rf_objective_in_gluing(X, Y, glued, compact_variant, &res.terms);
    return res;
}

}  // namespace

DistanceResult rf_rv_distance(const StructuredSpace& X, const StructuredSpace& Y,
                              GHTypeMetric which, RFRVMode mode, const Correspondence* corr) {
    if (kind_signature(X.structure) != kind_signature(Y.structure))
        throw KindMismatch("structured spaces carry different kinds");
    if (mode == RFRVMode::Upper) {
        if (!corr) throw InvalidCorrespondence("upper mode needs a correspondence");
        return rfrv_upper_for(X, Y, which, false, *corr);
    }
    const std::size_t n = X.rooted.space.size(), m = Y.rooted.space.size();
    if (n * m > 16) throw TooLargeForExact("correspondence enumeration supports |X|*|Y| <= 16");
    std::optional<DistanceResult> best;
    enumerate_correspondences(n, m, [&](const Correspondence& c) {
        DistanceResult r = rfrv_upper_for(X, Y, which, false, c);
        if (!best || r.value < best->value) best = std::move(r);
        return true;
    });
    best->note = "enumeration-optimal upper bound";
    return *best;
}

DistanceResult compact_rf_rv_distance(const StructuredSpace& X, const StructuredSpace& Y,
                                      GHTypeMetric which, const Correspondence& corr) {
    if (kind_signature(X.structure) != kind_signature(Y.structure))
        throw KindMismatch("structured spaces carry different kinds");
    return rfrv_upper_for(X, Y, which, true, corr);
}

SandwichReport sandwich_check(const StructuredSpace& X, const StructuredSpace& Y,
                              const std::vector<Correspondence>& corrs, bool compact_variant) {
    if (kind_signature(X.structure) != kind_signature(Y.structure))
        throw KindMismatch("structured spaces carry different kinds");
    const double tol = 1e-9;
    DistortionFn dist_fn = distortion_of(X.structure);
    SandwichReport report;
    for (const Correspondence& corr : corrs) {
        GluedSpace m1 = build_gluing(X, Y, corr, GHTypeMetric::RV);
        GluedSpace m2 = build_gluing(X, Y, corr, GHTypeMetric::RF);
        SandwichTrial trial;
        trial.rv_objective = rv_objective_in_gluing(X, Y, m1, compact_variant);
        trial.rf_objective = rf_objective_in_gluing(X, Y, m2, compact_variant);
        trial.bound = 2.0 * trial.rv_objective + dist_fn.eval(trial.rv_objective);
        trial.sandwich_ok = trial.rf_objective <= trial.bound + tol;
        // In a root-identified ambient the RV and RF objectives coincide,
        // which realizes the left inequality RV <= RF.
        double rv_in_m2 = rv_objective_in_gluing(X, Y, m2, compact_variant);
        trial.order_ok = rv_in_m2 <= trial.rf_objective + tol;
        if (!trial.sandwich_ok || !trial.order_ok) report.all_pass = false;
        report.trials.push_back(trial);
    }
    return report;
}

}  // namespace locgh
