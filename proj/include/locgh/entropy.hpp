#pragma once

#include <string>
#include <vector>

#include "locgh/metric_space.hpp"
#include "locgh/subsets.hpp"

namespace locgh {

struct CoveringResult {
    int count = 0;
    std::vector<PointId> centers;  // centers drawn from the covered set itself
};

enum class CoveringMode { Exact, Greedy };

// Minimum number of closed eps-balls with centers in the set needed to cover
// it. Exact mode runs branch-and-bound set cover with a greedy incumbent;
// greedy mode returns the classical approximation with its witness.
CoveringResult covering_number(const FiniteMetricSpace& space, const FiniteSubset& subset,
                               const Rational& eps, CoveringMode mode);

inline CoveringResult covering_number(const FiniteMetricSpace& space, const Rational& eps,
                                      CoveringMode mode) {
    FiniteSubset all;
    for (std::size_t i = 0; i < space.size(); ++i) all.push_back(static_cast<PointId>(i));
    return covering_number(space, all, eps, mode);
}

struct EntropyProfileEntry {
    Rational eps;
    int count;
    std::vector<PointId> centers;
};

struct EntropyProfile {
    std::vector<EntropyProfileEntry> entries;
};

EntropyProfile entropy_profile(const FiniteMetricSpace& space, const std::vector<Rational>& eps_grid,
                               CoveringMode mode);

struct EntropyConvergenceRow {
    Rational eps;
    int limit_count = 0;
    int liminf_count = 0;           // min over the tail of the sequence
    bool liminf_inequality = true;  // N(limit) <= liminf N(K_n)
    bool locally_constant = false;  // eps is a continuity point of N(limit, .)
    bool equality_on_tail = false;  // N(K_n) == N(limit) on the tail
};

struct EntropyConvergenceReport {
    std::vector<EntropyConvergenceRow> rows;
    std::vector<double> gh_to_limit;  // certification trail
    bool all_liminf_hold = true;
    bool equality_at_constant_eps = true;
};

// Certifies GH convergence of the sequence to the limit (values must fall
// below `threshold` on the tail; throws NotConvergent otherwise), then checks
// the entropy liminf inequality per eps, flagging equality at locally
// constant eps. The tail is the final half of the sequence.
EntropyConvergenceReport entropy_convergence_check(const std::vector<FiniteMetricSpace>& sequence,
                                                   const FiniteMetricSpace& limit,
                                                   const std::vector<Rational>& eps_grid,
                                                   double threshold = 0.5);

struct PrecompactnessCell {
    Rational radius;
    Rational eps;
    std::vector<int> counts;  // per family member, in order
    int sup = 0;
    int argmax = 0;
    bool increasing_tail = false;  // counts strictly increase over the last entries
};

struct PrecompactnessReport {
    std::vector<PrecompactnessCell> cells;
    bool bounded = true;  // no cell shows an increasing tail
    std::string verdict;
};

// sup_alpha N(X_alpha|_rho^(r), eps) over the grids; a strictly increasing
// tail across the (ordered) family is flagged as entropy blow-up, the
// finite-scale proxy for failure of the precompactness criterion.
PrecompactnessReport precompactness_diagnostic(const std::vector<RootedSpace>& family,
                                               const std::vector<Rational>& r_grid,
                                               const std::vector<Rational>& eps_grid);

}  // namespace locgh
