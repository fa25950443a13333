#include "genus_atsp/held_karp.hpp"

#include <algorithm>
#include <set>

#include "genus_atsp/flow.hpp"

namespace genus_atsp {

double SymWeights::total() const {
    double s = 0.0;
    for (double v : z) s += v;
    return s;
}

EmbeddedDigraph normalize_metric(const EmbeddedDigraph& g) {
    EmbeddedDigraph out = g;
    const ShortestPaths sp = all_pairs_shortest_paths(g);
    for (int a : out.arcs()) {
        const Arc& arc = out.arc(a);
        out.set_arc_cost(a, sp.dist[arc.tail][arc.head]);
    }
    return out;
}

std::uint64_t mask_of(const std::vector<int>& vertices) {
    std::uint64_t m = 0;
    for (int v : vertices) m |= std::uint64_t{1} << v;
    return m;
}

double x_cut_out(const EmbeddedDigraph& g, const std::vector<double>& x,
                 std::uint64_t mask) {
    double s = 0.0;
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        const Arc& arc = g.arc(a);
        if ((mask >> arc.tail & 1) && !(mask >> arc.head & 1)) s += x[a];
    }
    return s;
}

double x_cut_in(const EmbeddedDigraph& g, const std::vector<double>& x,
                std::uint64_t mask) {
    double s = 0.0;
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        const Arc& arc = g.arc(a);
        if (!(mask >> arc.tail & 1) && (mask >> arc.head & 1)) s += x[a];
    }
    return s;
}

double z_cut(const EmbeddedDigraph& g, const std::vector<double>& z,
             std::uint64_t mask) {
    double s = 0.0;
    for (int e = 0; e < g.edge_slots(); ++e) {
        if (!g.edge_alive(e)) continue;
        const bool a = mask >> g.endpoint(e, 0) & 1;
        const bool b = mask >> g.endpoint(e, 1) & 1;
        if (a != b) s += z[e];
    }
    return s;
}

namespace {

// One separation sweep: min cuts root->t and t->root for every t. Returns
// every distinct violated source side, in deterministic order.
std::vector<std::uint64_t> separation_sweep(const EmbeddedDigraph& g,
                                            const std::vector<double>& x,
                                            double tol, bool stop_at_first) {
    const auto verts = g.vertices();
    std::vector<std::uint64_t> found;
    if (verts.size() < 2) return found;
    const int root = verts[0];
    std::set<std::uint64_t> seen;

    for (int t : verts) {
        if (t == root) continue;
        for (int dir = 0; dir < 2; ++dir) {
            const int s_node = dir == 0 ? root : t;
            const int t_node = dir == 0 ? t : root;
            MaxFlow mf(g.vertex_slots());
            for (int a = 0; a < g.arc_slots(); ++a) {
                if (!g.arc_alive(a)) continue;
                const Arc& arc = g.arc(a);
                if (arc.tail == arc.head || x[a] <= 0.0) continue;
                mf.add_arc(arc.tail, arc.head, x[a]);
            }
            const double value = mf.solve(s_node, t_node);
            if (value >= 1.0 - tol) continue;
            std::vector<int> side = mf.min_cut_source_side();
            side.erase(std::remove_if(side.begin(), side.end(),
                                      [&](int v) { return !g.vertex_alive(v); }),
                       side.end());
            if (side.empty() || side.size() == verts.size()) continue;
            const std::uint64_t mask = mask_of(side);
            if (x_cut_out(g, x, mask) >= 1.0 - tol) continue;
            if (seen.insert(mask).second) {
                found.push_back(mask);
                if (stop_at_first) return found;
            }
        }
    }
    return found;
}

}  // namespace

std::optional<std::vector<int>> separate_subtour(const EmbeddedDigraph& g,
                                                 const std::vector<double>& x,
                                                 double tol) {
    const auto cuts = separation_sweep(g, x, tol, true);
    if (cuts.empty()) return std::nullopt;
    std::vector<int> side;
    for (int v = 0; v < g.vertex_slots(); ++v)
        if (cuts[0] >> v & 1) side.push_back(v);
    return side;
}

LpSolution solve_held_karp(const EmbeddedDigraph& g, const HeldKarpOptions& opt) {
    require(g.vertex_slots() <= 64, ErrorCode::TooLarge,
            "cut separation uses 64-bit vertex masks");
    const auto verts = g.vertices();
    const auto arcs = g.arcs();
    const int m = static_cast<int>(arcs.size());
    const int max_rounds = opt.max_rounds > 0 ? opt.max_rounds : 10 * std::max(m, 1);
    const double sep_tol = opt.tol / 2.0;

    std::vector<int> col_of_arc(g.arc_slots(), -1);
    for (int i = 0; i < m; ++i) col_of_arc[arcs[i]] = i;
    std::vector<int> row_of_vertex(g.vertex_slots(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i)
        row_of_vertex[verts[i]] = static_cast<int>(i);

    // Active subtour cuts; seeded with singletons.
    std::vector<std::uint64_t> cut_masks;
    std::set<std::uint64_t> cut_seen;
    if (verts.size() >= 2) {
        for (int v : verts) {
            const std::uint64_t mask = std::uint64_t{1} << v;
            cut_masks.push_back(mask);
            cut_seen.insert(mask);
        }
    }

    DenseSimplex fallback_backend;
    LpBackend* backend = opt.backend ? opt.backend : &fallback_backend;

    LpSolution sol;
    sol.x.assign(g.arc_slots(), 0.0);

    for (int round = 1; round <= max_rounds; ++round) {
        const int n_cuts = static_cast<int>(cut_masks.size());
        const int rows = static_cast<int>(verts.size()) + n_cuts;
        std::vector<LpColumn> columns(m + n_cuts);
        std::vector<double> cost(m + n_cuts, 0.0);
        std::vector<double> rhs(rows, 0.0);

        for (int i = 0; i < m; ++i) {
            const Arc& arc = g.arc(arcs[i]);
            cost[i] = arc.cost;
            auto& col = columns[i].entries;
            if (arc.tail != arc.head) {
                col.emplace_back(row_of_vertex[arc.tail], 1.0);
                col.emplace_back(row_of_vertex[arc.head], -1.0);
            }
            for (int cix = 0; cix < n_cuts; ++cix) {
                const std::uint64_t mask = cut_masks[cix];
                if ((mask >> arc.tail & 1) && !(mask >> arc.head & 1))
                    col.emplace_back(static_cast<int>(verts.size()) + cix, 1.0);
            }
        }
        for (int cix = 0; cix < n_cuts; ++cix) {
            columns[m + cix].entries.emplace_back(
                static_cast<int>(verts.size()) + cix, -1.0);
            rhs[static_cast<int>(verts.size()) + cix] = 1.0;
        }

        const LpResult res = backend->solve(rows, columns, cost, rhs);
        sol.pivots += res.pivots;
        if (res.status == LpStatus::Infeasible)
            fail(ErrorCode::LpInfeasible,
                 "restricted LP infeasible on a strongly connected instance");
        if (res.status == LpStatus::IterationLimit)
            fail(ErrorCode::SolverStall, "simplex pivot limit exceeded");
        require(res.status == LpStatus::Optimal, ErrorCode::Internal,
                "unbounded restricted LP");

        std::fill(sol.x.begin(), sol.x.end(), 0.0);
        for (int i = 0; i < m; ++i) sol.x[arcs[i]] = std::max(res.x[i], 0.0);
        sol.objective = res.objective;
        sol.rounds = round;
        sol.cuts = n_cuts;

        const auto violated = separation_sweep(g, sol.x, sep_tol, false);
        if (violated.empty()) return sol;
        for (std::uint64_t mask : violated)
            if (cut_seen.insert(mask).second) cut_masks.push_back(mask);
        if (round == max_rounds)
            fail(ErrorCode::SolverStall, "cut generation round limit exceeded");
    }
    fail(ErrorCode::SolverStall, "cut generation round limit exceeded");
}

SymWeights symmetrize(const EmbeddedDigraph& g, const std::vector<double>& x) {
    SymWeights w;
    w.z.assign(g.edge_slots(), 0.0);
    for (int e = 0; e < g.edge_slots(); ++e) {
        if (!g.edge_alive(e)) continue;
        for (int a : g.edge_arcs(e))
            if (a >= 0) w.z[e] += x[a];
    }
    return w;
}

}  // namespace genus_atsp
