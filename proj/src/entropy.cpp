#include "locgh/entropy.hpp"

#include <algorithm>
#include <cstdint>

#include "locgh/errors.hpp"
#include "locgh/ghdist.hpp"

namespace locgh {

namespace {

using Mask = std::uint64_t;

struct CoverInstance {
    std::vector<PointId> points;
    std::vector<Mask> ball;  // ball[i] = members covered by a ball at points[i]
    Mask all_mask = 0;
};

CoverInstance build_instance(const FiniteMetricSpace& space, const FiniteSubset& subset,
                             const Rational& eps) {
    if (subset.empty()) throw EmptySet("covering number of the empty set");
    if (subset.size() > 63) throw TooLargeForExact("covering supports at most 63 points");
    CoverInstance inst;
    inst.points = subset;
    inst.ball.resize(subset.size(), 0);
    for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = 0; j < subset.size(); ++j)
            if (space.dist(subset[i], subset[j]) <= eps) inst.ball[i] |= Mask(1) << j;
    inst.all_mask = subset.size() == 64 ? ~Mask(0) : (Mask(1) << subset.size()) - 1;
    return inst;
}

CoveringResult greedy_cover(const CoverInstance& inst) {
    CoveringResult res;
    Mask covered = 0;
    while (covered != inst.all_mask) {
        std::size_t best = 0;
        int best_gain = -1;
        for (std::size_t i = 0; i < inst.points.size(); ++i) {
            int gain = __builtin_popcountll(inst.ball[i] & ~covered);
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        covered |= inst.ball[best];
        res.centers.push_back(inst.points[best]);
        ++res.count;
    }
    return res;
}

struct BnB {
    const CoverInstance& inst;
    int best_count;
    std::vector<std::size_t> best_choice;
    std::vector<std::size_t> current;

    explicit BnB(const CoverInstance& i, const CoveringResult& incumbent) : inst(i) {
        best_count = incumbent.count;
        for (PointId c : incumbent.centers)
            for (std::size_t k = 0; k < inst.points.size(); ++k)
                if (inst.points[k] == c) best_choice.push_back(k);
    }

    void search(Mask covered, int used) {
        if (covered == inst.all_mask) {
            if (used < best_count) {
                best_count = used;
                best_choice = current;
            }
            return;
        }
        if (used + 1 >= best_count) return;
        // Lower bound: each ball covers at most max_gain uncovered points.
        int uncovered = __builtin_popcountll(inst.all_mask & ~covered);
        int max_gain = 0;
        for (std::size_t i = 0; i < inst.ball.size(); ++i)
            max_gain = std::max(max_gain, __builtin_popcountll(inst.ball[i] & ~covered));
        if (used + (uncovered + max_gain - 1) / max_gain >= best_count) return;

        // Branch on the lowest uncovered point: some chosen ball must cover it.
        int pivot = __builtin_ctzll(inst.all_mask & ~covered);
        for (std::size_t i = 0; i < inst.ball.size(); ++i) {
            if (!(inst.ball[i] >> pivot & 1)) continue;
            current.push_back(i);
            search(covered | inst.ball[i], used + 1);
            current.pop_back();
        }
    }
};

int tail_start(std::size_t n) { return static_cast<int>(n - (n + 1) / 2); }

}  // namespace

CoveringResult covering_number(const FiniteMetricSpace& space, const FiniteSubset& subset,
                               const Rational& eps, CoveringMode mode) {
    if (eps <= 0) throw ValidationError("eps must be positive");
    CoverInstance inst = build_instance(space, subset, eps);
    CoveringResult greedy = greedy_cover(inst);
    if (mode == CoveringMode::Greedy) return greedy;
    BnB bnb(inst, greedy);
    bnb.search(0, 0);
    CoveringResult res;
    res.count = bnb.best_count;
    for (std::size_t i : bnb.best_choice) res.centers.push_back(inst.points[i]);
    std::sort(res.centers.begin(), res.centers.end());
    return res;
}

EntropyProfile entropy_profile(const FiniteMetricSpace& space, const std::vector<Rational>& eps_grid,
                               CoveringMode mode) {
    EntropyProfile profile;
    for (const Rational& e : eps_grid) {
        auto c = covering_number(space, e, mode);
        profile.entries.push_back({e, c.count, c.centers});
    }
    return profile;
}

EntropyConvergenceReport entropy_convergence_check(const std::vector<FiniteMetricSpace>& sequence,
                                                   const FiniteMetricSpace& limit,
                                                   const std::vector<Rational>& eps_grid,
                                                   double threshold) {
    if (sequence.empty()) throw ValidationError("empty sequence");
    EntropyConvergenceReport report;
    for (const auto& K : sequence) {
        DistanceResult d = gh_distance_auto(K, limit);
        report.gh_to_limit.push_back(d.value);
    }
    const int t0 = tail_start(sequence.size());
    for (std::size_t i = static_cast<std::size_t>(t0); i < sequence.size(); ++i)
        if (report.gh_to_limit[i] > threshold)
            throw NotConvergent("GH distance to the limit stays above threshold on the tail");

    // Continuity points of N(limit, .): not a pairwise distance, or the count
    // matches the value just below (probed at a rational midpoint).
    std::vector<Rational> critical;
    for (std::size_t i = 0; i < limit.size(); ++i)
        for (std::size_t j = i + 1; j < limit.size(); ++j)
            critical.push_back(limit.dist(static_cast<PointId>(i), static_cast<PointId>(j)));
    std::sort(critical.begin(), critical.end());
    critical.erase(std::unique(critical.begin(), critical.end()), critical.end());

    for (const Rational& eps : eps_grid) {
        EntropyConvergenceRow row;
        row.eps = eps;
        row.limit_count = covering_number(limit, eps, CoveringMode::Exact).count;

        bool critical_eps = std::binary_search(critical.begin(), critical.end(), eps);
        if (!critical_eps) {
            row.locally_constant = true;
        } else {
            Rational below(0);
            for (const Rational& c : critical)
                if (c < eps) below = c;
            Rational probe = (below + eps) / 2;
            if (probe > 0)
                row.locally_constant =
                    covering_number(limit, probe, CoveringMode::Exact).count == row.limit_count;
        }

        int liminf = -1;
        bool tail_equal = true;
        for (std::size_t i = static_cast<std::size_t>(t0); i < sequence.size(); ++i) {
            int n = covering_number(sequence[i], eps, CoveringMode::Exact).count;
            if (liminf < 0 || n < liminf) liminf = n;
            if (n != row.limit_count) tail_equal = false;
        }
        row.liminf_count = liminf;
        row.liminf_inequality = row.limit_count <= liminf;
        row.equality_on_tail = tail_equal;
        if (!row.liminf_inequality) report.all_liminf_hold = false;
        if (row.locally_constant && !row.equality_on_tail) report.equality_at_constant_eps = false;
        report.rows.push_back(row);
    }
    return report;
}

PrecompactnessReport precompactness_diagnostic(const std::vector<RootedSpace>& family,
                                               const std::vector<Rational>& r_grid,
                                               const std::vector<Rational>& eps_grid) {
    if (family.empty()) throw ValidationError("empty family");
    PrecompactnessReport report;
    for (const Rational& r : r_grid)
        for (const Rational& eps : eps_grid) {
            PrecompactnessCell cell;
            cell.radius = r;
            cell.eps = eps;
            for (const auto& rooted : family) {
                RootedSpace ball = restrict_space(rooted, r);
                int n = covering_number(ball.space, eps, CoveringMode::Exact).count;
                cell.counts.push_back(n);
                if (n > cell.sup) {
                    cell.sup = n;
                    cell.argmax = static_cast<int>(cell.counts.size()) - 1;
                }
            }
            // Strictly increasing over the last three members flags blow-up.
            std::size_t m = cell.counts.size();
            if (m >= 3)
                cell.increasing_tail = cell.counts[m - 1] > cell.counts[m - 2] &&
                                       cell.counts[m - 2] > cell.counts[m - 3];
            if (cell.increasing_tail) report.bounded = false;
            report.cells.push_back(std::move(cell));
        }
    report.verdict = report.bounded ? "bounded-entropy (precompactness-consistent)"
                                    : "entropy blow-up flagged";
    return report;
}

}  // namespace locgh
