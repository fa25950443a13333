#include "genus_atsp/circulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "genus_atsp/flow.hpp"

namespace genus_atsp {

namespace {

// Ceiling with a relative snap so values that are integral up to float dust
// do not get bumped a full unit.
double ceil_snapped(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-6 * std::max(1.0, std::abs(r))) return r;
    return std::ceil(v);
}

}  // namespace

std::vector<int> orient_forest(const EmbeddedDigraph& g,
                               const std::vector<int>& forest_edges) {
    std::vector<int> arcs;
    arcs.reserve(forest_edges.size());
    for (int e : forest_edges) {
        const auto& pair = g.edge_arcs(e);
        require(pair[0] >= 0 || pair[1] >= 0, ErrorCode::MissingArc,
                "forest edge owns no arc");
        int chosen;
        if (pair[1] < 0) {
            chosen = pair[0];
        } else if (pair[0] < 0) {
            chosen = pair[1];
        } else {
            const Arc& a0 = g.arc(pair[0]);
            const Arc& a1 = g.arc(pair[1]);
            if (a0.cost < a1.cost) {
                chosen = pair[0];
            } else if (a1.cost < a0.cost) {
                chosen = pair[1];
            } else {
                chosen = std::make_pair(a0.tail, a0.head) <
                                 std::make_pair(a1.tail, a1.head)
                             ? pair[0]
                             : pair[1];
            }
        }
        arcs.push_back(chosen);
    }
    return arcs;
}

BoundedArcNetwork hoffman_bounds(const EmbeddedDigraph& g,
                                 const std::vector<int>& forest_arcs,
                                 const std::vector<double>& x, double alpha) {
    const double n2 = static_cast<double>(g.vertex_count()) * g.vertex_count();
    BoundedArcNetwork b;
    b.alpha = alpha;
    b.lower.assign(g.arc_slots(), 0);
    b.upper.assign(g.arc_slots(), 0);
    b.upper_grid.assign(g.arc_slots(), 0.0);
    b.forest_arcs = forest_arcs;
    for (int a : forest_arcs) b.lower[a] = 1;

    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        const double w = 2.0 * alpha * x[a];
        const double grid = ceil_snapped(w * n2) / n2;
        const double l = static_cast<double>(b.lower[a]);
        b.upper_grid[a] = l + grid;
        b.upper[a] = b.lower[a] + static_cast<std::int64_t>(ceil_snapped(grid));
        b.slack_budget += g.arc_cost(a) * (grid - w);
    }
    return b;
}

Circulation feasible_integer_circulation(const EmbeddedDigraph& g,
                                         const BoundedArcNetwork& bounds) {
    const int s = g.vertex_slots();
    const int t = s + 1;
    MinCostFlow mcf(g.vertex_slots() + 2);

    std::vector<int> flow_arc(g.arc_slots(), -1);
    std::vector<std::int64_t> excess(g.vertex_slots(), 0);
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        const Arc& arc = g.arc(a);
        require(bounds.lower[a] <= bounds.upper[a], ErrorCode::Internal,
                "lower bound exceeds upper bound");
        if (bounds.upper[a] > bounds.lower[a])
            flow_arc[a] = mcf.add_arc(arc.tail, arc.head,
                                      bounds.upper[a] - bounds.lower[a], arc.cost);
        excess[arc.head] += bounds.lower[a];
        excess[arc.tail] -= bounds.lower[a];
    }
    std::int64_t required = 0;
    for (int v = 0; v < g.vertex_slots(); ++v) {
        if (excess[v] > 0) {
            mcf.add_arc(s, v, excess[v], 0.0);
            required += excess[v];
        } else if (excess[v] < 0) {
            mcf.add_arc(v, t, -excess[v], 0.0);
        }
    }

    const auto [value, cost_unused] = mcf.solve(s, t);
    (void)cost_unused;
    if (value < required) {
        std::string detail = "lower bounds cannot be routed; deficit " +
                             std::to_string(required - value) +
                             "; thinness certificate violated upstream";
        fail(ErrorCode::InfeasibleCirculation, detail);
    }

    Circulation out;
    out.f.assign(g.arc_slots(), 0);
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        out.f[a] = bounds.lower[a] +
                   (flow_arc[a] >= 0 ? mcf.flow_on(flow_arc[a]) : 0);
        require(out.f[a] >= bounds.lower[a] && out.f[a] <= bounds.upper[a],
                ErrorCode::Internal, "circulation violates its bounds");
        out.cost += g.arc_cost(a) * static_cast<double>(out.f[a]);
    }
    // Exact conservation.
    std::vector<std::int64_t> net(g.vertex_slots(), 0);
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        net[g.arc(a).tail] += out.f[a];
        net[g.arc(a).head] -= out.f[a];
    }
    for (int v : g.vertices())
        require(net[v] == 0, ErrorCode::Internal, "circulation not conserved");
    return out;
}

WalkCover walks_from_circulation(const EmbeddedDigraph& g, const Circulation& f,
                                 const std::vector<int>& forest_arcs) {
    for (int a : forest_arcs)
        require(f.f[a] >= 1, ErrorCode::NotEulerian,
                "circulation does not contain the oriented forest");

    // Component structure of the flow-carrying arcs.
    std::vector<int> parent(g.vertex_slots());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::vector<std::vector<int>> out_arcs(g.vertex_slots());
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a) || f.f[a] == 0) continue;
        const Arc& arc = g.arc(a);
        out_arcs[arc.tail].push_back(a);
        parent[find(arc.tail)] = find(arc.head);
    }
    for (auto& lst : out_arcs) std::sort(lst.begin(), lst.end());

    WalkCover cover;
    std::vector<char> component_done(g.vertex_slots(), 0);
    std::vector<std::int64_t> remaining = f.f;

    for (int v : g.vertices()) {
        const bool has_flow = !out_arcs[v].empty();
        if (!has_flow) {
            bool incident = false;
            for (int a = 0; a < g.arc_slots(); ++a)
                if (g.arc_alive(a) && f.f[a] > 0 &&
                    (g.arc(a).tail == v || g.arc(a).head == v))
                    incident = true;
            require(!incident, ErrorCode::NotEulerian,
                    "vertex with inflow but no outflow");
            // Flowless vertex: a degenerate walk keeps it covered.
            ClosedWalk w;
            w.start_vertex = v;
            cover.walks.push_back(std::move(w));
            continue;
        }
        const int root = find(v);
        if (component_done[root]) continue;
        component_done[root] = 1;

        // Hierholzer over arc copies, consumed in ascending id order.
        std::vector<int> scan(g.vertex_slots(), 0);
        std::vector<int> vertex_stack{v};
        std::vector<int> arc_stack;
        std::vector<int> circuit;
        while (!vertex_stack.empty()) {
            const int cur = vertex_stack.back();
            bool advanced = false;
            while (scan[cur] < static_cast<int>(out_arcs[cur].size())) {
                const int a = out_arcs[cur][scan[cur]];
                if (remaining[a] == 0) {
                    ++scan[cur];
                    continue;
                }
                --remaining[a];
                vertex_stack.push_back(g.arc(a).head);
                arc_stack.push_back(a);
                advanced = true;
                break;
            }
            if (!advanced) {
                vertex_stack.pop_back();
                if (!arc_stack.empty() && !vertex_stack.empty()) {
                    circuit.push_back(arc_stack.back());
                    arc_stack.pop_back();
                }
            }
        }
        std::reverse(circuit.begin(), circuit.end());

        ClosedWalk w;
        w.start_vertex = v;
        w.arcs = std::move(circuit);
        require(!w.arcs.empty(), ErrorCode::NotEulerian, "empty Euler circuit");
        require(g.arc(w.arcs.front()).tail == v &&
                    g.arc(w.arcs.back()).head == v,
                ErrorCode::NotEulerian, "Euler circuit does not close");
        int at = v;
        for (int a : w.arcs) {
            require(g.arc(a).tail == at, ErrorCode::NotEulerian,
                    "Euler circuit breaks");
            at = g.arc(a).head;
            w.cost += g.arc_cost(a);
        }
        cover.walks.push_back(std::move(w));
    }
    for (int a = 0; a < g.arc_slots(); ++a)
        if (g.arc_alive(a))
            require(remaining[a] == 0, ErrorCode::NotEulerian,
                    "unused flow units after walk extraction");
    for (const ClosedWalk& w : cover.walks) cover.total_cost += w.cost;
    return cover;
}

}  // namespace genus_atsp
