#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "locgh/errors.hpp"
#include "locgh/structures.hpp"

namespace locgh {

namespace {

constexpr double kEdgeTol = 1e-12;

struct Interval {
    double lo, hi;      // closed
    double comp_hi;     // right end of the allowed component containing it
};

// Feasibility of "objective <= theta" for the complete Skorohod distance
// between two step functions on [0, t]: is there an increasing continuous
// bijection with slopes in [e^-theta, e^theta] whose value discrepancy stays
// within theta? Closed-interval reach-tube propagation across the F-jumps;
// closure arithmetic computes the infimum exactly in the limit.
class J1Solver {
  public:
    J1Solver(std::vector<double> sa, std::vector<double> sb,
             std::function<double(int, int)> vdist, double t)
        : sa_(std::move(sa)), sb_(std::move(sb)), vdist_(std::move(vdist)), t_(t) {
        p_ = static_cast<int>(sa_.size());
        q_ = static_cast<int>(sb_.size());
        vd_.assign(static_cast<std::size_t>(p_), std::vector<double>(static_cast<std::size_t>(q_)));
        for (int i = 0; i < p_; ++i)
            for (int j = 0; j < q_; ++j) vd_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = vdist_(i, j);
    }

    double identity_objective() const {
        double m = vd_[0][0];
        std::vector<double> events;
        for (int i = 1; i < p_; ++i) events.push_back(sa_[static_cast<std::size_t>(i)]);
        for (int j = 1; j < q_; ++j) events.push_back(sb_[static_cast<std::size_t>(j)]);
        std::sort(events.begin(), events.end());
        for (double x : events) {
            if (x > t_) break;
            m = std::max(m, vd_[static_cast<std::size_t>(seg(sa_, x))][static_cast<std::size_t>(seg(sb_, x))]);
        }
        m = std::max(m, vd_[static_cast<std::size_t>(p_ - 1)][static_cast<std::size_t>(q_ - 1)]);
        return m;
    }

    bool feasible(double theta, std::vector<std::vector<Interval>>* trace = nullptr) const {
        if (t_ <= 0) return vd_[0][0] <= theta + kEdgeTol;
        // The endpoints of lambda are pinned.
        if (vd_[0][0] > theta + kEdgeTol) return false;
        if (vd_[static_cast<std::size_t>(p_ - 1)][static_cast<std::size_t>(q_ - 1)] > theta + kEdgeTol)
            return false;
        const double L = std::exp(-theta), U = std::exp(theta);

        std::vector<Interval> reach{{0.0, 0.0, 0.0}};
        if (!clip(reach, 0, theta)) return false;
        if (trace) trace->push_back(reach);

        double pos = 0.0;
        for (int k = 0; k < p_; ++k) {
            double next = k + 1 < p_ ? sa_[static_cast<std::size_t>(k + 1)] : t_;
            if (next > t_) next = t_;
            double delta = next - pos;
            std::vector<Interval> grown;
            for (const Interval& iv : reach) {
                double lo = iv.lo + L * delta;
                double hi = std::min(iv.hi + U * delta, iv.comp_hi);
                if (lo <= hi + kEdgeTol) grown.push_back({lo, std::max(hi, lo), iv.comp_hi});
            }
            reach = std::move(grown);
            if (reach.empty()) return false;
            pos = next;
            if (k + 1 < p_) {
                if (!clip(reach, k + 1, theta)) return false;
                if (trace) trace->push_back(reach);
            }
        }
        for (const Interval& iv : reach)
            if (iv.lo <= t_ + kEdgeTol && iv.hi >= t_ - kEdgeTol) return true;
        return false;
    }

    double solve(SkorohodWitness* witness = nullptr) const {
        double hi = identity_objective();
        double lo = 0.0;
        if (!feasible(hi + 1e-9)) hi += 1e-9;  // guard against edge rounding
        if (feasible(0.0)) {
            hi = 0.0;
        } else {
            for (int it = 0; it < 90 && hi - lo > 1e-12; ++it) {
                double mid = 0.5 * (lo + hi);
                if (feasible(mid))
                    hi = mid;
                else
                    lo = mid;
            }
        }
        if (witness) extract_witness(hi, witness);
        return hi;
    }

  private:
    static int seg(const std::vector<double>& s, double x) {
        int k = static_cast<int>(std::upper_bound(s.begin(), s.end(), x) - s.begin()) - 1;
        return std::max(k, 0);
    }

    // Closed allowed components for F-segment i at level theta.
    std::vector<std::pair<double, double>> allowed(int i, double theta) const {
        std::vector<std::pair<double, double>> comps;
        for (int j = 0; j < q_; ++j) {
            if (vd_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] > theta + kEdgeTol) continue;
            double lo = sb_[static_cast<std::size_t>(j)];
            double hi = j + 1 < q_ ? sb_[static_cast<std::size_t>(j + 1)] : t_;
            if (lo > t_) break;
            hi = std::min(hi, t_);
            if (!comps.empty() && comps.back().second >= lo - kEdgeTol)
                comps.back().second = hi;
            else
                comps.emplace_back(lo, hi);
        }
        return comps;
    }

    bool clip(std::vector<Interval>& reach, int i, double theta) const {
        auto comps = allowed(i, theta);
        std::vector<Interval> out;
        for (const Interval& iv : reach)
            for (const auto& [clo, chi] : comps) {
                double lo = std::max(iv.lo, clo), hi = std::min(iv.hi, chi);
                if (lo <= hi + kEdgeTol) out.push_back({lo, std::max(hi, lo), chi});
            }
        reach = std::move(out);
        return !reach.empty();
    }

    void extract_witness(double theta, SkorohodWitness* witness) const {
        witness->identity_objective = identity_objective();
        witness->anchors.clear();
        if (t_ <= 0) {
            witness->anchors.emplace_back(0.0, 0.0);
            return;
        }
        std::vector<std::vector<Interval>> trace;
        if (!feasible(theta + 1e-9, &trace)) {
            witness->anchors = {{0.0, 0.0}, {t_, t_}};
            return;
        }
        const double L = std::exp(-(theta + 1e-9)), U = std::exp(theta + 1e-9);
        std::vector<double> xs;
        for (int k = 0; k < p_; ++k) xs.push_back(sa_[static_cast<std::size_t>(k)]);
        std::vector<std::pair<double, double>> rev{{t_, t_}};
        double y_next = t_, x_next = t_;
        for (int k = static_cast<int>(trace.size()) - 1; k >= 0; --k) {
            double x = xs[static_cast<std::size_t>(k)];
            double delta = x_next - x;
            double best = x;  // fallback
            bool found = false;
            for (const Interval& iv : trace[static_cast<std::size_t>(k)]) {
                double lo = std::max(iv.lo, y_next - U * delta);
                double hi = std::min(iv.hi, y_next - L * delta);
                if (lo <= hi + kEdgeTol) {
                    hi = std::max(lo, std::min(hi, y_next));
                    best = 0.5 * (lo + hi);
                    found = true;
                    break;
                }
            }
            if (!found) best = std::max(0.0, y_next - delta);
            rev.emplace_back(x, best);
            y_next = best;
            x_next = x;
        }
        witness->anchors.assign(rev.rbegin(), rev.rend());
    }

    std::vector<double> sa_, sb_;
    std::function<double(int, int)> vdist_;
    double t_;
    int p_ = 0, q_ = 0;
    std::vector<std::vector<double>> vd_;
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double m = 0.5 * (a + b);
    return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 16);
}

struct CadlagView {
    std::vector<double> times;
    std::vector<Rational> times_exact;
    const std::vector<StructureValue>* values;
    std::optional<Rational> horizon;
};

CadlagView view_of(const StructureValue& f) {
    if (f.kind != StructureKind::StepCadlag) throw KindMismatch("expected a step_cadlag value");
    CadlagView v;
    v.times_exact = f.times;
    for (const auto& t : f.times) v.times.push_back(to_double(t));
    v.values = &f.children;
    v.horizon = f.horizon;
    return v;
}

}  // namespace

SkorohodResult skorohod_distance_at(const StructureContext& ctx, const StructureValue& f,
                                    PointId base_f, const StructureValue& g, PointId base_g,
                                    const Rational& t) {
    CadlagView F = view_of(f), G = view_of(g);
    double td = to_double(t);
    // Restrict to [0, t]: keep jumps at times <= t.
    auto prefix = [&](const CadlagView& v) {
        std::size_t n = 0;
        while (n < v.times_exact.size() && v.times_exact[n] <= t) ++n;
        return std::vector<double>(v.times.begin(), v.times.begin() + static_cast<long>(n));
    };
    std::vector<double> sa = prefix(F), sb = prefix(G);
    auto vdist = [&](int i, int j) {
        return structure_distance_er(ctx, (*F.values)[static_cast<std::size_t>(i)], base_f,
                                     (*G.values)[static_cast<std::size_t>(j)], base_g);
    };
    J1Solver solver(std::move(sa), std::move(sb), vdist, td);
    SkorohodResult res;
    res.value = solver.solve(&res.witness);
    return res;
}

SkorohodResult skorohod_distance(const StructureContext& ctx, const StructureValue& f,
                                 PointId base_f, const StructureValue& g, PointId base_g) {
    if (kind_signature(f) != kind_signature(g))
        throw KindMismatch("cadlag signatures differ: " + kind_signature(f) + " vs " + kind_signature(g));
    CadlagView F = view_of(f), G = view_of(g);
    if (F.horizon) {
        return skorohod_distance_at(ctx, f, base_f, g, base_g, *F.horizon);
    }

    // Unbounded horizon: integrate e^{-t} (1 ∧ d^{J1,t}) over truncations.
    // Beyond the last jump the tail contributes at most e^{-T}.
    double last = std::max(F.times.back(), G.times.back());
    double T = std::max(last + 40.0, 40.0);

    // Cache inner distances; truncation only shortens the jump lists.
    std::vector<std::vector<double>> vd(F.times.size(), std::vector<double>(G.times.size()));
    for (std::size_t i = 0; i < F.times.size(); ++i)
        for (std::size_t j = 0; j < G.times.size(); ++j)
            vd[i][j] = structure_distance_er(ctx, (*F.values)[i], base_f, (*G.values)[j], base_g);
    auto vdist = [&vd](int i, int j) {
        return vd[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };

    auto j1_at = [&](double t) {
        if (t <= 0.0) return std::min(1.0, vd[0][0]);
        auto cut = [&](const std::vector<double>& times) {
            std::size_t n = 0;
            while (n < times.size() && times[n] <= t + 1e-15) ++n;
            return std::vector<double>(times.begin(), times.begin() + static_cast<long>(n));
        };
        J1Solver solver(cut(F.times), cut(G.times), vdist, t);
        return std::min(1.0, solver.solve());
    };

    std::vector<double> events{0.0};
    for (double x : F.times)
        if (x > 0) events.push_back(x);
    for (double x : G.times)
        if (x > 0) events.push_back(x);
    events.push_back(T);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        double a = events[k], b = events[k + 1];
        if (b > T) break;
        total += integrate([&](double t) { return std::exp(-t) * j1_at(t); }, a, b,
                           1e-8 * std::max(1e-3, b - a));
    }
    total += j1_at(T) * std::exp(-T);

    SkorohodResult res;
    res.value = std::min(total, 1.0);
    // The witness time change for the truncation at the last jump horizon.
    J1Solver solver(F.times, G.times, vdist, std::max(last, 1.0));
    solver.solve(&res.witness);
    return res;
}

double skorohod_modulus(const StructureContext& ctx, const StructureValue& f, PointId base,
                        const Rational& h, const Rational& t) {
    if (h <= 0 || t <= 0) throw ValidationError("modulus needs h > 0 and t > 0");
    CadlagView F = view_of(f);
    const std::size_t p = F.times_exact.size();

    std::vector<std::vector<double>> W(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
            W[i][j] = W[j][i] =
                structure_distance_sr(ctx, (*F.values)[i], (*F.values)[j], base);

    // Oscillation over [a, b): max pairwise distance among segment values
    // intersecting the window.
    auto osc = [&](const Rational& a, const Rational& b) {
        double m = 0.0;
        std::vector<std::size_t> segs;
        for (std::size_t k = 0; k < p; ++k) {
            const Rational& start = F.times_exact[k];
            bool beyond = k + 1 < p ? F.times_exact[k + 1] <= a : false;
            if (start < b && !beyond) segs.push_back(k);
        }
        for (std::size_t i = 0; i < segs.size(); ++i)
            for (std::size_t j = i + 1; j < segs.size(); ++j) m = std::max(m, W[segs[i]][segs[j]]);
        return m;
    };

    // Exact candidate cuts: jump times and h-chains anchored at them or at t.
    std::vector<Rational> cand{Rational(0)};
    std::vector<Rational> anchors = F.times_exact;
    anchors.push_back(t);
    for (const Rational& s : anchors) {
        Rational c = s;
        while (c > 0) {
            if (c < t) cand.push_back(c);
            c -= h;
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(cand.size(), kInf);
    dp[0] = 0.0;
    for (std::size_t i = 1; i < cand.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (cand[i] - cand[j] < h) continue;
            if (dp[j] == kInf) continue;
            dp[i] = std::min(dp[i], std::max(dp[j], osc(cand[j], cand[i])));
        }
    double best = kInf;
    for (std::size_t j = 0; j < cand.size(); ++j) {
        if (dp[j] == kInf) continue;
        best = std::min(best, std::max(dp[j], osc(cand[j], t)));
    }
    return best;
}

}  // namespace locgh
