#include "genus_atsp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "genus_atsp/rng.hpp"

namespace genus_atsp {

namespace {

// Planar topology by corner surgery: a base cycle, then edges inserted across
// two corners of one face. Every insertion splits a disk face, so chi stays 2.
EmbeddedMultigraph planar_topology(int n, int extra, Rng& rng) {
    EmbeddedMultigraph g(n);
    if (n == 2) {
        const int e0 = g.add_edge(0, 1);
        g.set_rotation(0, {{e0, 0}});
        g.set_rotation(1, {{e0, 1}});
    } else {
        std::vector<std::vector<EndRef>> rot(n);
        for (int i = 0; i < n; ++i) {
            const int e = g.add_edge(i, (i + 1) % n);
            rot[i].push_back({e, 0});
            rot[(i + 1) % n].push_back({e, 1});
        }
        for (int i = 0; i < n; ++i) g.set_rotation(i, rot[i]);
    }

    for (int t = 0; t < extra; ++t) {
        const FaceSet fs = trace_faces(g);
        std::vector<int> candidates;
        for (int i = 0; i < fs.face_count(); ++i) {
            const Face& f = fs.faces[i];
            bool two_vertices = false;
            for (std::size_t a = 0; a < f.corners.size() && !two_vertices; ++a)
                for (std::size_t b = a + 1; b < f.corners.size(); ++b)
                    if (f.corners[a].vertex != f.corners[b].vertex) {
                        two_vertices = true;
                        break;
                    }
            if (two_vertices) candidates.push_back(i);
        }
        if (candidates.empty()) break;
        const Face& f =
            fs.faces[candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)]];
        const int corners = static_cast<int>(f.corners.size());
        int p = -1, q = -1;
        for (int attempt = 0; attempt < 64 && q < 0; ++attempt) {
            const int a = rng.uniform_int(0, corners - 1);
            const int b = rng.uniform_int(0, corners - 1);
            if (f.corners[a].vertex != f.corners[b].vertex) {
                p = a;
                q = b;
            }
        }
        if (q < 0) {
            for (int a = 0; a < corners && q < 0; ++a)
                for (int b = a + 1; b < corners; ++b)
                    if (f.corners[a].vertex != f.corners[b].vertex) {
                        p = a;
                        q = b;
                        break;
                    }
        }
        const FaceCorner& ca = f.corners[p];
        const FaceCorner& cb = f.corners[q];
        const int e = g.add_edge(ca.vertex, cb.vertex);
        g.insert_end_after(ca.vertex, {e, 0}, ca.insert_after);
        g.insert_end_after(cb.vertex, {e, 1}, cb.insert_after);
    }
    g.validate();
    return g;
}

EmbeddedMultigraph random_topology(int n, int extra, double sig_prob, Rng& rng) {
    EmbeddedMultigraph g(n);
    std::vector<std::vector<EndRef>> rot(n);
    auto link = [&](int u, int v) {
        const int e = g.add_edge(u, v);
        rot[u].push_back({e, 0});
        rot[v].push_back({e, 1});
        return e;
    };
    for (int v = 1; v < n; ++v) link(rng.uniform_int(0, v - 1), v);
    for (int t = 0; t < extra; ++t) {
        const int u = rng.uniform_int(0, n - 1);
        int v = rng.uniform_int(0, n - 2);
        if (v >= u) ++v;
        link(u, v);
    }
    for (int v = 0; v < n; ++v) {
        rng.shuffle(rot[v]);
        g.set_rotation(v, rot[v]);
    }
    for (int e : g.edges())
        if (rng.bernoulli(sig_prob)) g.set_signature(e, -1);
    g.validate();
    return g;
}

void add_crosscaps(EmbeddedMultigraph& g, int crosscaps, Rng& rng) {
    // Spanning tree via BFS; -1 signatures only on the remaining edges so the
    // flips cannot be gauged away.
    std::vector<char> seen(g.vertex_slots(), 0);
    std::vector<char> in_tree(g.edge_slots(), 0);
    std::queue<int> q;
    const int root = g.vertices().front();
    seen[root] = 1;
    q.push(root);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const EndRef& h : g.rotation(v)) {
            const int w = g.endpoint(h.edge, 1 - h.end);
            if (!seen[w]) {
                seen[w] = 1;
                in_tree[h.edge] = 1;
                q.push(w);
            }
        }
    }
    std::vector<int> candidates;
    for (int e : g.edges())
        if (!in_tree[e] && !g.is_loop(e)) candidates.push_back(e);
    rng.shuffle(candidates);
    const int k = std::min<int>(crosscaps, static_cast<int>(candidates.size()));
    for (int i = 0; i < k; ++i) g.set_signature(candidates[i], -1);
}

int random_cost(CostModel model, double skew, bool reverse, int forward_cost,
                Rng& rng) {
    if (model == CostModel::Uniform || !reverse) return rng.uniform_int(1, 100);
    const double scaled = std::round(skew * forward_cost);
    return static_cast<int>(std::min(std::max(scaled, 1.0), 1e6));
}

struct ArcPlan {
    bool fwd = false, rev = false;
    int cost_fwd = 0, cost_rev = 0;
};

bool plan_strongly_connected(const EmbeddedMultigraph& topo,
                             const std::vector<ArcPlan>& plan) {
    const int n = topo.vertex_slots();
    auto reach = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int cnt = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int e : topo.edges()) {
                const int u0 = topo.endpoint(e, 0);
                const int v1 = topo.endpoint(e, 1);
                auto visit = [&](int from, int to) {
                    if (from == v && !seen[to]) {
                        seen[to] = 1;
                        ++cnt;
                        q.push(to);
                    }
                };
                if (plan[e].fwd) visit(forward ? u0 : v1, forward ? v1 : u0);
                if (plan[e].rev) visit(forward ? v1 : u0, forward ? u0 : v1);
            }
        }
        return cnt == n;
    };
    return reach(true) && reach(false);
}

}  // namespace

EmbeddedDigraph generate(const GenSpec& spec) {
    require(spec.n >= 2, ErrorCode::MalformedInstance,
            "instances need at least two vertices");
    require(spec.n <= 64, ErrorCode::TooLarge, "generator capped at 64 vertices");
    Rng rng(spec.seed * 0x2545f4914f6cdd1dull + 0x9e3779b97f4a7c15ull);

    const int extra =
        std::max(0, static_cast<int>(std::lround(spec.density * spec.n)));
    EmbeddedMultigraph topo;
    switch (spec.mode) {
        case GenusMode::Planar:
            topo = planar_topology(spec.n, extra, rng);
            break;
        case GenusMode::RandomRotation:
            topo = random_topology(spec.n, extra, spec.sig_prob, rng);
            break;
        case GenusMode::Crosscaps:
            topo = planar_topology(spec.n, extra, rng);
            add_crosscaps(topo, spec.crosscaps, rng);
            break;
    }

    std::vector<ArcPlan> plan(topo.edge_slots());
    for (int e : topo.edges()) {
        ArcPlan& p = plan[e];
        if (rng.bernoulli(spec.bidirect_prob)) {
            p.fwd = p.rev = true;
        } else if (rng.bernoulli(0.5)) {
            p.fwd = true;
        } else {
            p.rev = true;
        }
        p.cost_fwd = random_cost(spec.cost, spec.skew, false, 0, rng);
        p.cost_rev = p.fwd ? random_cost(spec.cost, spec.skew, true, p.cost_fwd, rng)
                           : random_cost(spec.cost, spec.skew, false, 0, rng);
    }
    // Strong-connectivity repair: open the missing direction of the first
    // one-way edge until the digraph is strongly connected.
    while (!plan_strongly_connected(topo, plan)) {
        bool repaired = false;
        for (int e : topo.edges()) {
            ArcPlan& p = plan[e];
            if (p.fwd && p.rev) continue;
            if (!p.fwd)
                p.fwd = true;
            else
                p.rev = true;
            repaired = true;
            break;
        }
        require(repaired, ErrorCode::Internal, "connectivity repair exhausted");
    }

    EmbeddedDigraph g(topo.vertex_slots());
    for (int e : topo.edges()) {
        const int u = topo.endpoint(e, 0);
        const int v = topo.endpoint(e, 1);
        const ArcPlan& p = plan[e];
        const int a_uv = p.fwd ? g.add_arc(u, v, p.cost_fwd) : -1;
        const int a_vu = p.rev ? g.add_arc(v, u, p.cost_rev) : -1;
        const int id = g.bind_edge_between(u, v, a_uv, a_vu, topo.signature(e));
        require(id == e, ErrorCode::Internal, "edge id drift in generator");
    }
    for (int v : topo.vertices()) g.set_rotation(v, topo.rotation(v));
    g.validate();
    if (spec.mode == GenusMode::Planar)
        require(euler_genus(g.embedding()) == 0, ErrorCode::Internal,
                "planar generator produced positive genus");
    return g;
}

OracleResult brute_force_atsp(const EmbeddedDigraph& g) {
    const auto verts = g.vertices();
    const int n = static_cast<int>(verts.size());
    require(n <= 12, ErrorCode::TooLarge, "oracle capped at 12 vertices");
    OracleResult out;
    if (n == 1) {
        out.tour_vertices = verts;
        return out;
    }

    const ShortestPaths sp = all_pairs_shortest_paths(g);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            d[i][j] = sp.dist[verts[i]][verts[j]];
            require(d[i][j] != ShortestPaths::kInf, ErrorCode::NotStronglyConnected,
                    "oracle needs a strongly connected instance");
        }

    // Minimum closed spanning walk = minimum Hamiltonian cycle of the metric
    // closure; independent of the pipeline's contracted-instance DP.
    const int rest = n - 1;
    const std::size_t combos = std::size_t{1} << rest;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dp(combos, std::vector<double>(rest, inf));
    std::vector<std::vector<int>> parent(combos, std::vector<int>(rest, -1));
    for (int j = 0; j < rest; ++j) dp[std::size_t{1} << j][j] = d[0][j + 1];
    for (std::size_t mask = 1; mask < combos; ++mask)
        for (int j = 0; j < rest; ++j) {
            if (!(mask >> j & 1) || dp[mask][j] == inf) continue;
            for (int nx = 0; nx < rest; ++nx) {
                if (mask >> nx & 1) continue;
                const std::size_t nm = mask | (std::size_t{1} << nx);
                const double cand = dp[mask][j] + d[j + 1][nx + 1];
                if (cand < dp[nm][nx]) {
                    dp[nm][nx] = cand;
                    parent[nm][nx] = j;
                }
            }
        }
    double best = inf;
    int best_j = -1;
    for (int j = 0; j < rest; ++j) {
        const double cand = dp[combos - 1][j] + d[j + 1][0];
        if (cand < best) {
            best = cand;
            best_j = j;
        }
    }
    out.opt_cost = best;
    std::vector<int> rev;
    std::size_t mask = combos - 1;
    int j = best_j;
    while (j >= 0) {
        rev.push_back(j + 1);
        const int pj = parent[mask][j];
        mask &= ~(std::size_t{1} << j);
        j = pj;
    }
    out.tour_vertices.push_back(verts[0]);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        out.tour_vertices.push_back(verts[*it]);
    return out;
}

namespace {

template <typename CrossFn>
CutAudit run_audit(const EmbeddedDigraph& g, const std::vector<double>& z,
                   const AuditSpec& spec, CrossFn cross) {
    const auto verts = g.vertices();
    const int n = static_cast<int>(verts.size());
    CutAudit audit;
    audit.min_cut_weight = std::numeric_limits<double>::infinity();
    require(n >= 2, ErrorCode::DegenerateCut, "audit needs at least two vertices");

    auto z_of = [&](std::uint64_t mask) {
        double s = 0.0;
        for (int e : g.edges()) {
            const bool a = mask >> g.endpoint(e, 0) & 1;
            const bool b = mask >> g.endpoint(e, 1) & 1;
            if (a != b) s += z[e];
        }
        return s;
    };
    auto consume = [&](std::uint64_t mask) {
        const double zw = z_of(mask);
        const double crossings = cross(mask);
        audit.min_cut_weight = std::min(audit.min_cut_weight, zw);
        const double ratio = zw > 0.0
                                 ? crossings / zw
                                 : (crossings == 0.0
                                        ? 0.0
                                        : std::numeric_limits<double>::infinity());
        if (ratio > audit.max_ratio) {
            audit.max_ratio = ratio;
            audit.worst_mask = mask;
        }
        ++audit.cuts_checked;
    };

    if (spec.exhaustive) {
        require(n <= 20, ErrorCode::TooLarge, "exhaustive audit beyond n=20");
        const std::uint64_t combos = (std::uint64_t{1} << (n - 1)) - 1;
        for (std::uint64_t pick = 1; pick <= combos; ++pick) {
            std::uint64_t mask = 0;
            for (int i = 1; i < n; ++i)
                if (pick >> (i - 1) & 1) mask |= std::uint64_t{1} << verts[i];
            consume(mask);
        }
    } else {
        Rng rng(spec.seed * 0x9e3779b97f4a7c15ull + 77);
        for (int k = 0; k < spec.samples; ++k) {
            std::uint64_t mask = 0;
            int members = 0;
            for (int v : verts)
                if (rng.bernoulli(0.5)) {
                    mask |= std::uint64_t{1} << v;
                    ++members;
                }
            if (members == 0 || members == n) {
                --k;
                continue;
            }
            consume(mask);
        }
    }
    return audit;
}

}  // namespace

CutAudit audit_cuts(const EmbeddedDigraph& g, const std::vector<int>& edge_set,
                    const std::vector<double>& z, const AuditSpec& spec) {
    return run_audit(g, z, spec, [&](std::uint64_t mask) {
        int c = 0;
        for (int e : edge_set) {
            const bool a = mask >> g.endpoint(e, 0) & 1;
            const bool b = mask >> g.endpoint(e, 1) & 1;
            if (a != b) ++c;
        }
        return static_cast<double>(c);
    });
}

CutAudit audit_walk_cuts(const EmbeddedDigraph& g,
                         const std::vector<std::int64_t>& arc_multiplicity,
                         const std::vector<double>& z, const AuditSpec& spec) {
    return run_audit(g, z, spec, [&](std::uint64_t mask) {
        std::int64_t c = 0;
        for (int a = 0; a < g.arc_slots(); ++a) {
            if (!g.arc_alive(a) || arc_multiplicity[a] == 0) continue;
            const Arc& arc = g.arc(a);
            const bool ta = mask >> arc.tail & 1;
            const bool hb = mask >> arc.head & 1;
            if (ta != hb) c += arc_multiplicity[a];
        }
        return static_cast<double>(c);
    });
}

}  // namespace genus_atsp
