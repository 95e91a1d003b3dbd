#include "locgh/measures.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "locgh/errors.hpp"

namespace locgh {

FiniteMeasure FiniteMeasure::from_weights(std::vector<std::pair<PointId, Rational>> raw) {
    std::map<PointId, Rational> acc;
    for (auto& [p, w] : raw) {
        if (w < 0) throw ValidationError("measure weights must be nonnegative");
        if (w > 0) acc[p] += w;
    }
    FiniteMeasure m;
    for (auto& [p, w] : acc)
        if (w > 0) m.weights.emplace_back(p, w);
    return m;
}

FiniteMeasure FiniteMeasure::dirac(PointId p, const Rational& mass) {
    return from_weights({{p, mass}});
}

Rational FiniteMeasure::total() const {
    Rational t(0);
    for (const auto& [p, w] : weights) t += w;
    return t;
}

Rational FiniteMeasure::mass_at(PointId p) const {
    for (const auto& [q, w] : weights)
        if (q == p) return w;
    return Rational(0);
}

FiniteSubset FiniteMeasure::support() const {
    FiniteSubset s;
    for (const auto& [p, w] : weights) s.push_back(p);
    return s;
}

namespace {

// Max-flow with exact rational capacities (BFS augmenting paths); graphs here
// have at most a couple dozen nodes.
class RatMaxFlow {
  public:
    explicit RatMaxFlow(int nodes) : head_(nodes, -1) {}

    void add_edge(int from, int to, Rational cap) {
        edges_.push_back({to, head_[from], std::move(cap)});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], Rational(0)});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    Rational run(int source, int sink) {
        Rational flow(0);
        while (true) {
            std::vector<int> parent_edge(head_.size(), -1);
            std::vector<char> seen(head_.size(), 0);
            std::queue<int> bfs;
            bfs.push(source);
            seen[source] = 1;
            while (!bfs.empty()) {
                int u = bfs.front();
                bfs.pop();
                for (int e = head_[u]; e != -1; e = edges_[e].next) {
                    int v = edges_[e].to;
                    if (!seen[v] && edges_[e].cap > 0) {
                        seen[v] = 1;
                        parent_edge[v] = e;
                        bfs.push(v);
                    }
                }
            }
            if (!seen[sink]) return flow;
            // Bottleneck along the path.
            Rational aug = edges_[parent_edge[sink]].cap;
            for (int v = sink; v != source;) {
                int e = parent_edge[v];
                if (edges_[e].cap < aug) aug = edges_[e].cap;
                v = edges_[e ^ 1].to;
            }
            for (int v = sink; v != source;) {
                int e = parent_edge[v];
                edges_[e].cap -= aug;
                edges_[e ^ 1].cap += aug;
                v = edges_[e ^ 1].to;
            }
            flow += aug;
        }
    }

    std::vector<char> source_side(int source) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> bfs;
        bfs.push(source);
        seen[source] = 1;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (!seen[edges_[e].to] && edges_[e].cap > 0) {
                    seen[edges_[e].to] = 1;
                    bfs.push(edges_[e].to);
                }
        }
        return seen;
    }

    // Flow pushed on forward edge k (even indices), read off residuals.
    Rational edge_flow(int k) const { return edges_[2 * k + 1].cap; }

  private:
    struct Edge {
        int to;
        int next;
        Rational cap;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

struct FlowAtEps {
    Rational flow;
    std::vector<char> source_side;  // node visitation: 0=source, lefts, rights, sink
    std::vector<std::tuple<int, int, Rational>> coupling;  // (left idx, right idx, mass)
};

// Bipartite feasibility network: source -> mu atoms -> (edges where d <= eps)
// -> nu atoms -> sink. When reversed, roles of mu and nu swap.
FlowAtEps flow_at(const std::vector<Rational>& mu_mass, const std::vector<Rational>& nu_mass,
                  const std::vector<std::vector<Rational>>& cross, const Rational& eps,
                  bool reversed) {
    const int L = static_cast<int>(mu_mass.size());
    const int R = static_cast<int>(nu_mass.size());
    const int source = 0, sink = L + R + 1;
    RatMaxFlow net(L + R + 2);
    Rational inf_cap(0);
    for (const auto& w : mu_mass) inf_cap += w;
    for (const auto& w : nu_mass) inf_cap += w;
    inf_cap += 1;

    int edge_count = 0;
    std::vector<std::tuple<int, int, int>> mid_edges;  // (edge idx, left, right)
    for (int i = 0; i < L; ++i) {
        net.add_edge(source, 1 + i, mu_mass[static_cast<std::size_t>(i)]);
        ++edge_count;
    }
    for (int j = 0; j < R; ++j) {
        net.add_edge(1 + L + j, sink, nu_mass[static_cast<std::size_t>(j)]);
        ++edge_count;
    }
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < R; ++j) {
            const Rational& d =
                reversed ? cross[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                         : cross[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (d <= eps) {
                mid_edges.emplace_back(edge_count, i, j);
                net.add_edge(1 + i, 1 + L + j, inf_cap);
                ++edge_count;
            }
        }

    FlowAtEps out;
    out.flow = net.run(source, sink);
    out.source_side = net.source_side(source);
    for (const auto& [e, i, j] : mid_edges) {
        Rational f = net.edge_flow(e);
        if (f > 0) out.coupling.emplace_back(i, j, f);
    }
    return out;
}

ProhorovResult prohorov_impl(const std::vector<std::vector<Rational>>& cross,
                             const std::vector<int>& mu_ids, const std::vector<Rational>& mu_mass,
                             const std::vector<int>& nu_ids, const std::vector<Rational>& nu_mass) {
    ProhorovResult res;
    Rational total_mu(0), total_nu(0);
    for (const auto& w : mu_mass) total_mu += w;
    for (const auto& w : nu_mass) total_nu += w;
    const Rational M = total_mu > total_nu ? total_mu : total_nu;

    if (total_mu == 0 && total_nu == 0) {
        res.value = 0;
        return res;
    }

    // Distance breakpoints; the step functions of eps are constant between
    // consecutive entries.
    std::vector<Rational> breaks{Rational(0)};
    for (const auto& row : cross)
        for (const auto& d : row) breaks.push_back(d);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    bool have = false;
    Rational best(0);
    std::size_t best_interval = 0;
    std::vector<Rational> flows(breaks.size());
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        flows[i] = flow_at(mu_mass, nu_mass, cross, breaks[i], false).flow;
        Rational needed = M - flows[i];
        Rational cand = needed > breaks[i] ? needed : breaks[i];
        bool in_interval = i + 1 == breaks.size() || cand < breaks[i + 1];
        if (in_interval && (!have || cand < best)) {
            have = true;
            best = cand;
            best_interval = i;
        }
    }
    res.value = best;

    if (best > 0) {
        // Largest breakpoint interval strictly below the optimum carries the
        // infeasibility cut; it certifies every eps < value.
        std::size_t wi = best_interval;
        if (breaks[wi] == best) {
            // Optimum sits exactly on a breakpoint; the binding interval is
            // the previous one.
            wi = wi - 1;  // wi > 0 since best > 0 = breaks[0]
        }
        bool left_side = total_mu >= total_nu;
        auto fa = flow_at(left_side ? mu_mass : nu_mass, left_side ? nu_mass : mu_mass, cross,
                          breaks[wi], !left_side);
        res.witness.has_cut = true;
        res.witness.cut_from_left = left_side;
        res.witness.cut_violation = (left_side ? total_mu : total_nu) - fa.flow;
        const auto& ids = left_side ? mu_ids : nu_ids;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (fa.source_side[1 + i]) res.witness.cut_set.push_back(ids[i]);
    }

    auto at_value = flow_at(mu_mass, nu_mass, cross, best, false);
    for (const auto& [i, j, f] : at_value.coupling)
        res.witness.coupling.emplace_back(mu_ids[static_cast<std::size_t>(i)],
                                          nu_ids[static_cast<std::size_t>(j)], f);
    return res;
}

}  // namespace

ProhorovResult prohorov(const FiniteMetricSpace& space, const FiniteMeasure& mu,
                        const FiniteMeasure& nu) {
    std::vector<int> mu_ids, nu_ids;
    std::vector<Rational> mu_mass, nu_mass;
    for (const auto& [p, w] : mu.weights) {
        if (p < 0 || static_cast<std::size_t>(p) >= space.size())
            throw UnknownPoint("measure support outside space");
        mu_ids.push_back(p);
        mu_mass.push_back(w);
    }
    for (const auto& [p, w] : nu.weights) {
        if (p < 0 || static_cast<std::size_t>(p) >= space.size())
            throw UnknownPoint("measure support outside space");
        nu_ids.push_back(p);
        nu_mass.push_back(w);
    }
    std::vector<std::vector<Rational>> cross(mu_ids.size(), std::vector<Rational>(nu_ids.size()));
    for (std::size_t i = 0; i < mu_ids.size(); ++i)
        for (std::size_t j = 0; j < nu_ids.size(); ++j) cross[i][j] = space.dist(mu_ids[i], nu_ids[j]);
    return prohorov_impl(cross, mu_ids, mu_mass, nu_ids, nu_mass);
}

ProhorovResult prohorov_matrix(const std::vector<std::vector<Rational>>& dist,
                               const std::vector<std::pair<int, Rational>>& mu,
                               const std::vector<std::pair<int, Rational>>& nu) {
    std::vector<int> mu_ids, nu_ids;
    std::vector<Rational> mu_mass, nu_mass;
    for (const auto& [i, w] : mu)
        if (w > 0) {
            mu_ids.push_back(i);
            mu_mass.push_back(w);
        }
    for (const auto& [i, w] : nu)
        if (w > 0) {
            nu_ids.push_back(i);
            nu_mass.push_back(w);
        }
    std::vector<std::vector<Rational>> cross(mu_ids.size(), std::vector<Rational>(nu_ids.size()));
    for (std::size_t i = 0; i < mu_ids.size(); ++i)
        for (std::size_t j = 0; j < nu_ids.size(); ++j)
            cross[i][j] = dist[static_cast<std::size_t>(mu_ids[i])][static_cast<std::size_t>(nu_ids[j])];
    return prohorov_impl(cross, mu_ids, mu_mass, nu_ids, nu_mass);
}

FiniteMeasure restrict_measure(const FiniteMetricSpace& space, const FiniteMeasure& mu, PointId x,
                               const Rational& r) {
    if (x < 0 || static_cast<std::size_t>(x) >= space.size()) throw UnknownPoint("unknown center");
    FiniteMeasure out;
    for (const auto& [p, w] : mu.weights)
        if (space.dist(x, p) <= r) out.weights.emplace_back(p, w);
    return out;
}

PiecewiseConstantCurve vague_curve(const FiniteMetricSpace& space, const FiniteMeasure& mu,
                                   PointId x, const FiniteMeasure& nu, PointId y) {
    std::vector<Rational> radii{Rational(0)};
    for (const auto& [p, w] : mu.weights) radii.push_back(space.dist(x, p));
    for (const auto& [p, w] : nu.weights) radii.push_back(space.dist(y, p));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<ExtReal> vals;
    vals.reserve(radii.size());
    for (const auto& r : radii)
        vals.push_back(
            prohorov(space, restrict_measure(space, mu, x, r), restrict_measure(space, nu, y, r))
                .value);
    return curve_from_steps(radii, vals);
}

double vague(const FiniteMetricSpace& space, const FiniteMeasure& mu, PointId x,
             const FiniteMeasure& nu, PointId y, LocalMetricMode mode) {
    if (mode == LocalMetricMode::Rooted && x != y)
        throw RootMismatch("rooted vague metric needs a shared root");
    double integral = exp_integral(vague_curve(space, mu, x, nu, y));
    if (mode == LocalMetricMode::Product) return std::max(integral, to_double(space.dist(x, y)));
    return integral;
}

FiniteMeasure pushforward_measure(const FiniteMeasure& mu, const std::vector<PointId>& point_map) {
    std::vector<std::pair<PointId, Rational>> raw;
    for (const auto& [p, w] : mu.weights) raw.emplace_back(point_map[static_cast<std::size_t>(p)], w);
    return FiniteMeasure::from_weights(std::move(raw));
}

}  // namespace locgh
