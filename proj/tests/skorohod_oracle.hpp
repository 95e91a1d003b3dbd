#pragma once

// Independent oracle for the complete Skorohod distance between step
// functions: enumerate the monotone alignment patterns between the two jump
// sequences (Delannoy paths), charge each pattern its exact co-occurrence
// value cost, and minimize the slope cost per pattern by bisection over a
// one-dimensional interval propagation in the free kink coordinates.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace locgh::testutil {

struct J1OracleInstance {
    std::vector<double> sa, sb;  // jump times, first entry 0
    std::vector<std::vector<double>> vd;
    double t = 1.0;
};

namespace j1_detail {

struct Event {
    // 0 = x fixed (F jump), 1 = y fixed (G jump), 2 = both fixed
    int type;
    double x, y;
};

constexpr double kTol = 1e-12;

inline bool pattern_slope_feasible(const std::vector<Event>& events, double theta) {
    const double L = std::exp(-theta), U = std::exp(theta);
    // State: the free coordinate of the previous event lives in [lo, hi]
    // (collapsed to a point when both coordinates are fixed).
    int prev_type = 2;
    double px = 0.0, py = 0.0, lo = 0.0, hi = 0.0;
    for (const Event& e : events) {
        double nlo, nhi;
        if (prev_type == 2) {
            if (e.type == 0) {  // to x fixed: y range
                double dx = e.x - px;
                if (dx < -kTol) return false;
                nlo = py + L * dx;
                nhi = py + U * dx;
            } else if (e.type == 1) {  // to y fixed: x range
                double dy = e.y - py;
                if (dy < -kTol) return false;
                nlo = px + dy / U;
                nhi = px + dy / L;
            } else {
                double dx = e.x - px, dy = e.y - py;
                if (dx < -kTol || dy < -kTol) return false;
                if (dy < L * dx - kTol || dy > U * dx + kTol) return false;
                prev_type = 2;
                px = e.x;
                py = e.y;
                continue;
            }
        } else if (prev_type == 0) {  // previous x fixed, y in [lo, hi]
            if (e.type == 0) {
                double dx = e.x - px;
                if (dx < -kTol) return false;
                nlo = lo + L * dx;
                nhi = hi + U * dx;
            } else if (e.type == 1) {
                double ylo = lo, yhi = std::min(hi, e.y);
                if (ylo > yhi + kTol) return false;
                nlo = px + (e.y - yhi) / U;
                nhi = px + (e.y - ylo) / L;
            } else {
                double dx = e.x - px;
                if (dx < -kTol) return false;
                double ylo = e.y - U * dx, yhi = e.y - L * dx;
                if (std::max(ylo, lo) > std::min(yhi, hi) + kTol) return false;
                prev_type = 2;
                px = e.x;
                py = e.y;
                continue;
            }
        } else {  // previous y fixed, x in [lo, hi]
            if (e.type == 0) {
                double xlo = lo, xhi = std::min(hi, e.x);
                if (xlo > xhi + kTol) return false;
                nlo = py + L * (e.x - xhi);
                nhi = py + U * (e.x - xlo);
            } else if (e.type == 1) {
                double dy = e.y - py;
                if (dy < -kTol) return false;
                nlo = lo + dy / U;
                nhi = hi + dy / L;
            } else {
                double dy = e.y - py;
                if (dy < -kTol) return false;
                double xlo = e.x - dy / L, xhi = e.x - dy / U;
                if (std::max(xlo, lo) > std::min(xhi, hi) + kTol) return false;
                prev_type = 2;
                px = e.x;
                py = e.y;
                continue;
            }
        }
        prev_type = e.type;
        px = e.x;
        py = e.y;
        lo = nlo;
        hi = nhi;
    }
    return true;
}

inline double pattern_slope_min(const std::vector<Event>& events, double hi_start) {
    double lo = 0.0, hi = hi_start;
    if (pattern_slope_feasible(events, 0.0)) return 0.0;
    if (!pattern_slope_feasible(events, hi)) return -1.0;  // pattern infeasible below the cap
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (pattern_slope_feasible(events, mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace j1_detail

// Exact (to ~1e-12) Skorohod distance on [0, t] by pattern enumeration.
inline double j1_oracle(const J1OracleInstance& inst) {
    using j1_detail::Event;
    // Restriction to [0, t] drops the later jumps.
    std::size_t p = 0, q = 0;
    while (p < inst.sa.size() && inst.sa[p] <= inst.t + 1e-15) ++p;
    while (q < inst.sb.size() && inst.sb[q] <= inst.t + 1e-15) ++q;

    // Identity objective caps all searches.
    double cap = inst.vd[0][0];
    {
        std::size_t i = 0, j = 0;
        std::vector<std::pair<double, int>> evs;
        for (std::size_t k = 1; k < p; ++k) evs.push_back({inst.sa[k], 0});
        for (std::size_t k = 1; k < q; ++k) evs.push_back({inst.sb[k], 1});
        std::sort(evs.begin(), evs.end());
        for (const auto& [x, which] : evs) {
            (which == 0 ? i : j) += 1;
            cap = std::max(cap, inst.vd[i][j]);
        }
    }

    double best = cap + 1e-9;
    // Enumerate monotone paths with moves F, G, and matched FG.
    std::vector<Event> events;
    std::function<void(std::size_t, std::size_t, double)> rec = [&](std::size_t i, std::size_t j,
                                                                    double value_cost) {
        if (value_cost >= best) return;
        if (i == p - 1 && j == q - 1) {
            std::vector<Event> full = events;
            full.push_back({2, inst.t, inst.t});
            double slope = j1_detail::pattern_slope_min(full, best);
            if (slope >= 0.0) best = std::min(best, std::max(value_cost, slope));
            return;
        }
        if (i + 1 < p) {
            events.push_back({0, inst.sa[i + 1], 0.0});
            rec(i + 1, j, std::max(value_cost, inst.vd[i + 1][j]));
            events.pop_back();
        }
        if (j + 1 < q) {
            events.push_back({1, 0.0, inst.sb[j + 1]});
            rec(i, j + 1, std::max(value_cost, inst.vd[i][j + 1]));
            events.pop_back();
        }
        if (i + 1 < p && j + 1 < q) {
            events.push_back({2, inst.sa[i + 1], inst.sb[j + 1]});
            rec(i + 1, j + 1, std::max(value_cost, inst.vd[i + 1][j + 1]));
            events.pop_back();
        }
    };
    rec(0, 0, inst.vd[0][0]);
    return std::min(best, cap);
}

}  // namespace locgh::testutil
