#include "genus_atsp/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace genus_atsp {

int EmbeddedDigraph::add_arc(int tail, int head, double cost) {
    require(tail >= 0 && tail < vertex_slots() && head >= 0 && head < vertex_slots(),
            ErrorCode::MalformedInstance, "arc endpoint out of range");
    require(std::isfinite(cost), ErrorCode::MalformedInstance, "arc cost not finite");
    require(cost >= 0.0, ErrorCode::NegativeCost, "arc cost is negative");
    arcs_.push_back(Arc{tail, head, cost, -1});
    return static_cast<int>(arcs_.size()) - 1;
}

int EmbeddedDigraph::bind_edge(int arc_fwd, int arc_rev, int sign) {
    require(arc_fwd >= 0 && arc_fwd < arc_slots(), ErrorCode::MalformedInstance,
            "edge references a missing arc");
    require(arcs_[arc_fwd].edge < 0, ErrorCode::MalformedInstance,
            "arc already bound to an edge");
    const int u = arcs_[arc_fwd].tail;
    const int v = arcs_[arc_fwd].head;
    if (arc_rev >= 0) {
        require(arc_rev < arc_slots(), ErrorCode::MalformedInstance,
                "edge references a missing arc");
        require(arcs_[arc_rev].edge < 0, ErrorCode::MalformedInstance,
                "arc already bound to an edge");
        require(arcs_[arc_rev].tail == v && arcs_[arc_rev].head == u,
                ErrorCode::MalformedInstance,
                "edge arcs are not mutual reverses");
    }
    const int e = topo_.add_edge(u, v, sign);
    arcs_[arc_fwd].edge = e;
    if (arc_rev >= 0) arcs_[arc_rev].edge = e;
    edge_arcs_.push_back({arc_fwd, arc_rev});
    return e;
}

int EmbeddedDigraph::bind_edge_between(int u, int v, int arc_uv, int arc_vu,
                                       int sign) {
    require(arc_uv >= 0 || arc_vu >= 0, ErrorCode::MalformedInstance,
            "edge owns no arc");
    for (int a : {arc_uv, arc_vu}) {
        if (a < 0) continue;
        require(a < arc_slots() && arcs_[a].edge < 0, ErrorCode::MalformedInstance,
                "edge references a bad arc");
    }
    if (arc_uv >= 0)
        require(arcs_[arc_uv].tail == u && arcs_[arc_uv].head == v,
                ErrorCode::MalformedInstance, "edge arc direction mismatch");
    if (arc_vu >= 0)
        require(arcs_[arc_vu].tail == v && arcs_[arc_vu].head == u,
                ErrorCode::MalformedInstance, "edge arc direction mismatch");
    const int e = topo_.add_edge(u, v, sign);
    if (arc_uv >= 0) arcs_[arc_uv].edge = e;
    if (arc_vu >= 0) arcs_[arc_vu].edge = e;
    edge_arcs_.push_back({arc_uv, arc_vu});
    return e;
}

int EmbeddedDigraph::add_bidirected(int u, int v, double cost_uv, double cost_vu) {
    const int a = add_arc(u, v, cost_uv);
    const int b = add_arc(v, u, cost_vu);
    return bind_edge(a, b);
}

void EmbeddedDigraph::default_rotations() {
    std::vector<std::vector<EndRef>> rot(vertex_slots());
    for (int e = 0; e < edge_slots(); ++e) {
        if (!edge_alive(e)) continue;
        rot[endpoint(e, 0)].push_back({e, 0});
        rot[endpoint(e, 1)].push_back({e, 1});
    }
    for (int v = 0; v < vertex_slots(); ++v) {
        if (!vertex_alive(v)) continue;
        std::sort(rot[v].begin(), rot[v].end());
        topo_.set_rotation(v, std::move(rot[v]));
    }
}

std::vector<int> EmbeddedDigraph::arcs() const {
    std::vector<int> out;
    for (int a = 0; a < arc_slots(); ++a)
        if (arc_alive(a)) out.push_back(a);
    return out;
}

int EmbeddedDigraph::arc_count() const {
    int n = 0;
    for (int a = 0; a < arc_slots(); ++a)
        if (arc_alive(a)) ++n;
    return n;
}

void EmbeddedDigraph::set_arc_cost(int a, double c) {
    require(std::isfinite(c) && c >= 0.0, ErrorCode::NegativeCost,
            "arc cost must be nonnegative and finite");
    arcs_[a].cost = c;
}

std::vector<int> EmbeddedDigraph::out_arcs(int v) const {
    std::vector<int> out;
    for (int a = 0; a < arc_slots(); ++a)
        if (arc_alive(a) && arcs_[a].tail == v) out.push_back(a);
    return out;
}

std::vector<int> EmbeddedDigraph::in_arcs(int v) const {
    std::vector<int> out;
    for (int a = 0; a < arc_slots(); ++a)
        if (arc_alive(a) && arcs_[a].head == v) out.push_back(a);
    return out;
}

double EmbeddedDigraph::edge_cost(int e) const {
    const auto& pair = edge_arcs_[e];
    double best = std::numeric_limits<double>::infinity();
    for (int a : pair)
        if (a >= 0) best = std::min(best, arcs_[a].cost);
    return best;
}

void EmbeddedDigraph::validate() const {
    topo_.validate();
    for (int a = 0; a < arc_slots(); ++a) {
        const Arc& arc = arcs_[a];
        require(arc.edge >= 0, ErrorCode::MalformedInstance,
                "arc not bound to any edge");
        require(std::isfinite(arc.cost), ErrorCode::MalformedInstance,
                "arc cost not finite");
        require(arc.cost >= 0.0, ErrorCode::NegativeCost, "arc cost is negative");
    }
    for (int e = 0; e < edge_slots(); ++e) {
        if (!edge_alive(e)) continue;
        const auto& pair = edge_arcs_[e];
        require(pair[0] >= 0 || pair[1] >= 0, ErrorCode::MalformedInstance,
                "edge owns no arc");
        if (pair[0] >= 0)
            require(arcs_[pair[0]].tail == endpoint(e, 0) &&
                        arcs_[pair[0]].head == endpoint(e, 1),
                    ErrorCode::MalformedInstance, "edge arc direction mismatch");
        if (pair[1] >= 0)
            require(arcs_[pair[1]].tail == endpoint(e, 1) &&
                        arcs_[pair[1]].head == endpoint(e, 0),
                    ErrorCode::MalformedInstance, "edge arc direction mismatch");
    }
    require(strongly_connected(), ErrorCode::NotStronglyConnected,
            "directed graph is not strongly connected");
}

bool EmbeddedDigraph::strongly_connected() const {
    const auto verts = vertices();
    if (verts.size() <= 1) return true;
    auto reach = [&](bool forward) {
        std::vector<char> seen(vertex_slots(), 0);
        std::queue<int> q;
        q.push(verts[0]);
        seen[verts[0]] = 1;
        std::size_t cnt = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int a = 0; a < arc_slots(); ++a) {
                if (!arc_alive(a)) continue;
                const int from = forward ? arcs_[a].tail : arcs_[a].head;
                const int to = forward ? arcs_[a].head : arcs_[a].tail;
                if (from == v && !seen[to]) {
                    seen[to] = 1;
                    ++cnt;
                    q.push(to);
                }
            }
        }
        return cnt == verts.size();
    };
    return reach(true) && reach(false);
}

std::pair<EmbeddedDigraph, ContractionMap> EmbeddedDigraph::contract(
    const std::vector<int>& edge_set) const {
    auto [topo, map] = contract_edges(topo_, edge_set);
    EmbeddedDigraph out;
    out.topo_ = std::move(topo);
    out.arcs_ = arcs_;
    out.edge_arcs_ = edge_arcs_;
    for (Arc& a : out.arcs_) {
        if (a.edge >= 0 && out.topo_.edge_alive(a.edge)) {
            a.tail = map.image(a.tail);
            a.head = map.image(a.head);
        }
    }
    return {std::move(out), std::move(map)};
}

std::vector<int> ShortestPaths::path_arcs(int u, int v) const {
    std::vector<int> out;
    const int n = static_cast<int>(dist.size());
    int guard = n * n + 2;
    int cur = u;
    while (cur != v) {
        require(guard-- > 0, ErrorCode::Internal, "path reconstruction cycle");
        const int nxt = next[cur][v];
        require(nxt >= 0, ErrorCode::Internal, "path reconstruction gap");
        out.push_back(direct_arc[cur][nxt]);
        cur = nxt;
    }
    return out;
}

ShortestPaths all_pairs_shortest_paths(const EmbeddedDigraph& g) {
    const int n = g.vertex_slots();
    ShortestPaths sp;
    sp.dist.assign(n, std::vector<double>(n, ShortestPaths::kInf));
    sp.direct_arc.assign(n, std::vector<int>(n, -1));
    sp.next.assign(n, std::vector<int>(n, -1));

    for (int v = 0; v < n; ++v)
        if (g.vertex_alive(v)) {
            sp.dist[v][v] = 0.0;
            sp.next[v][v] = v;
        }
    for (int a = 0; a < g.arc_slots(); ++a) {
        if (!g.arc_alive(a)) continue;
        const Arc& arc = g.arc(a);
        if (arc.cost < sp.dist[arc.tail][arc.head]) {
            sp.dist[arc.tail][arc.head] = arc.cost;
            sp.next[arc.tail][arc.head] = arc.head;
        }
        if (sp.direct_arc[arc.tail][arc.head] < 0 ||
            arc.cost < g.arc_cost(sp.direct_arc[arc.tail][arc.head]))
            sp.direct_arc[arc.tail][arc.head] = a;
    }
    for (int k = 0; k < n; ++k) {
        if (!g.vertex_alive(k)) continue;
        for (int i = 0; i < n; ++i) {
            if (sp.dist[i][k] == ShortestPaths::kInf) continue;
            for (int j = 0; j < n; ++j) {
                const double via = sp.dist[i][k] + sp.dist[k][j];
                if (via < sp.dist[i][j]) {
                    sp.dist[i][j] = via;
                    sp.next[i][j] = sp.next[i][k];
                }
            }
        }
    }
    return sp;
}

}  // namespace genus_atsp
