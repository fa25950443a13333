#include "genus_atsp/ribbons.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace genus_atsp {

int Ribbon::min_edge() const {
    return *std::min_element(edge_order.begin(), edge_order.end());
}

double Ribbon::weight(const std::vector<double>& z) const {
    double s = 0.0;
    for (int e : edge_order) s += z[e];
    return s;
}

RibbonDecomposition ribbon_decomposition(const EmbeddedMultigraph& g) {
    return ribbon_decomposition(g, trace_faces(g));
}

RibbonDecomposition ribbon_decomposition(const EmbeddedMultigraph& g,
                                         const FaceSet& faces) {
    RibbonDecomposition out;
    out.ribbon_of_edge.assign(g.edge_slots(), -1);

    // Bigon adjacency: a face of length two bounded by two distinct non-loop
    // edges chains them. Each edge side lies on one face, so an edge gains at
    // most two adjacency entries (possibly both to the same partner).
    std::vector<std::vector<int>> adj(g.edge_slots());
    for (const Face& f : faces.faces) {
        if (f.size != 2 || f.edge_ids.size() != 2) continue;
        const int e1 = f.edge_ids[0];
        const int e2 = f.edge_ids[1];
        if (g.is_loop(e1) || g.is_loop(e2)) continue;
        adj[e1].push_back(e2);
        adj[e2].push_back(e1);
    }

    std::vector<char> visited(g.edge_slots(), 0);
    for (int start = 0; start < g.edge_slots(); ++start) {
        if (!g.edge_alive(start) || g.is_loop(start) || visited[start]) continue;

        // Collect the chain component.
        std::vector<int> comp{start};
        visited[start] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (int nb : adj[comp[i]])
                if (!visited[nb]) {
                    visited[nb] = 1;
                    comp.push_back(nb);
                }

        std::vector<int> order;
        if (comp.size() == 1) {
            order = comp;
        } else {
            // Path components have two edges of adjacency degree one and the
            // walk starts at the smaller of them. A chain closing on itself
            // (every face a bigon, as in a spherical dipole) has no ends and
            // is broken deterministically at its smallest edge, walking
            // toward the smaller neighbor.
            std::vector<int> ends;
            for (int e : comp)
                if (adj[e].size() == 1) ends.push_back(e);
            const int first = ends.empty()
                                  ? *std::min_element(comp.begin(), comp.end())
                                  : *std::min_element(ends.begin(), ends.end());
            order.push_back(first);
            while (order.size() < comp.size()) {
                int next = -1;
                for (int nb : adj[order.back()])
                    if (std::find(order.begin(), order.end(), nb) == order.end())
                        if (next < 0 || nb < next) next = nb;
                require(next >= 0, ErrorCode::Internal, "broken ribbon chain");
                order.push_back(next);
            }
        }

        Ribbon r;
        r.edge_order = std::move(order);
        const int e0 = r.edge_order.front();
        r.endpoint_u = std::min(g.endpoint(e0, 0), g.endpoint(e0, 1));
        r.endpoint_v = std::max(g.endpoint(e0, 0), g.endpoint(e0, 1));
        for (int e : r.edge_order) {
            const int a = std::min(g.endpoint(e, 0), g.endpoint(e, 1));
            const int b = std::max(g.endpoint(e, 0), g.endpoint(e, 1));
            require(a == r.endpoint_u && b == r.endpoint_v, ErrorCode::Internal,
                    "ribbon chained non-parallel edges");
        }
        const int idx = static_cast<int>(out.ribbons.size());
        for (int e : r.edge_order) out.ribbon_of_edge[e] = idx;
        out.ribbons.push_back(std::move(r));
    }
    return out;
}

std::vector<int> central_edges(const Ribbon& r, const std::vector<double>& z) {
    require(!r.edge_order.empty(), ErrorCode::EmptyRibbon, "central edge of nothing");
    const int k = r.size();
    std::vector<double> w(k);
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
        w[i] = z[r.edge_order[i]];
        total += w[i];
    }
    std::vector<int> medians;
    if (total <= 0.0) {
        medians = r.edge_order;
    } else {
        const double tol = 1e-9 * std::max(1.0, total);
        const double half = total / 2.0;
        double prefix = 0.0;
        for (int i = 0; i < k; ++i) {
            const double suffix = total - prefix - w[i];
            if (prefix <= half + tol && suffix <= half + tol)
                medians.push_back(r.edge_order[i]);
            prefix += w[i];
        }
        // The forest reweighting loop needs strictly positive weight on the
        // chosen edge; a positive median always exists when total > 0.
        std::vector<int> positive;
        for (int e : medians)
            if (z[e] > 0.0) positive.push_back(e);
        require(!positive.empty(), ErrorCode::Internal,
                "no positive-weight median in a positive ribbon");
        medians = std::move(positive);
    }
    std::sort(medians.begin(), medians.end());
    return medians;
}

const Ribbon& max_weight_ribbon(const RibbonDecomposition& d,
                                const std::vector<double>& z) {
    require(!d.ribbons.empty(), ErrorCode::NoRibbons,
            "graph reduced to loops only");
    int best = -1;
    double best_weight = -1.0;
    for (int i = 0; i < d.size(); ++i) {
        const double w = d.ribbons[i].weight(z);
        if (best < 0 || w > best_weight ||
            (w == best_weight && d.ribbons[i].min_edge() < d.ribbons[best].min_edge()))
        {
            best = i;
            best_weight = w;
        }
    }
    return d.ribbons[best];
}

std::pair<ContractionTrace, WeakThinForest> contraction_sequence(
    const EmbeddedMultigraph& g, const std::vector<double>& z, int target,
    const ContractionOptions& opt) {
    const int threshold = std::max(target, 1);
    const int n0 = g.vertex_count();

    ContractionTrace trace;
    trace.total_map.vertex_image.resize(g.vertex_slots());
    for (int v = 0; v < g.vertex_slots(); ++v)
        trace.total_map.vertex_image[v] = g.vertex_alive(v) ? v : -1;
    trace.total_map.edge_fate.assign(g.edge_slots(),
                                     ContractionMap::EdgeFate::Kept);

    WeakThinForest forest;
    EmbeddedMultigraph cur = g;
    int step_index = 0;
    while (cur.vertex_count() > threshold) {
        const FaceSet faces = trace_faces(cur);
        const int chi = cur.vertex_count() - cur.edge_count() + faces.face_count();
        const RibbonDecomposition decomp = ribbon_decomposition(cur, faces);
        require(!decomp.empty(), ErrorCode::NoRibbons,
                "no contractible ribbon although more than one vertex remains");

        const Ribbon& r = max_weight_ribbon(decomp, z);
        const double weight = r.weight(z) / opt.z_scale;
        if (opt.enforce_certificate && weight < opt.min_ribbon_weight - opt.tolerance)
            fail(ErrorCode::CutConditionViolated,
                 "max ribbon weight " + std::to_string(weight) +
                     " below 2/5; caller's weights violate the cut condition");

        const std::vector<int> medians = central_edges(r, z);
        const int central = medians.front();

        ContractionStep step;
        step.index = step_index++;
        step.vertices_before = cur.vertex_count();
        step.ribbon_edges = r.edge_order;
        step.ribbon_weight = weight;
        step.central_edge = central;
        step.ribbon_count = decomp.size();
        step.ribbon_bound = 3 * cur.vertex_count() - 3 * chi;
        trace.steps.push_back(std::move(step));
        forest.edges.push_back(central);

        auto [next, map] = contract_edges(cur, r.edge_order);
        require(next.vertex_count() == cur.vertex_count() - 1, ErrorCode::Internal,
                "ribbon contraction must merge exactly one vertex pair");
        require(next.connected(), ErrorCode::Internal,
                "contraction disconnected the graph");
        trace.total_map = trace.total_map.then(map);
        cur = std::move(next);
    }

    trace.final_vertices = cur.vertex_count();
    forest.components = cur.vertex_count();
    trace.final_graph = std::move(cur);

    // Forest certificate: the recorded edges are acyclic on the original
    // vertex set and leave exactly final_vertices components.
    std::vector<int> parent(g.vertex_slots());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (int e : forest.edges) {
        const int a = find(g.endpoint(e, 0));
        const int b = find(g.endpoint(e, 1));
        require(a != b, ErrorCode::Internal, "forest edges contain a cycle");
        parent[a] = b;
    }
    require(n0 - static_cast<int>(forest.edges.size()) == forest.components,
            ErrorCode::Internal, "forest component count mismatch");
    return {std::move(trace), std::move(forest)};
}

int cut_crossing_mask(const EmbeddedMultigraph& g, const std::vector<int>& edge_set,
                      std::uint64_t mask) {
    int crossings = 0;
    for (int e : edge_set) {
        const bool a = mask >> g.endpoint(e, 0) & 1;
        const bool b = mask >> g.endpoint(e, 1) & 1;
        if (a != b) ++crossings;
    }
    return crossings;
}

double z_cut_mask(const EmbeddedMultigraph& g, const std::vector<double>& z,
                  std::uint64_t mask) {
    double s = 0.0;
    for (int e : g.edges()) {
        const bool a = mask >> g.endpoint(e, 0) & 1;
        const bool b = mask >> g.endpoint(e, 1) & 1;
        if (a != b) s += z[e];
    }
    return s;
}

namespace {

std::uint64_t checked_mask(const EmbeddedMultigraph& g,
                           const std::vector<int>& cut_vertices) {
    require(g.vertex_slots() <= 64, ErrorCode::TooLarge,
            "cut helpers use 64-bit masks");
    std::uint64_t mask = 0;
    int alive_in_cut = 0;
    for (int v : cut_vertices) {
        require(v >= 0 && v < g.vertex_slots() && g.vertex_alive(v),
                ErrorCode::MalformedInstance, "cut names a missing vertex");
        if (!(mask >> v & 1)) ++alive_in_cut;
        mask |= std::uint64_t{1} << v;
    }
    require(alive_in_cut > 0 && alive_in_cut < g.vertex_count(),
            ErrorCode::DegenerateCut, "cut must be a proper nonempty subset");
    return mask;
}

}  // namespace

int cut_crossing(const EmbeddedMultigraph& g, const std::vector<int>& edge_set,
                 const std::vector<int>& cut_vertices) {
    return cut_crossing_mask(g, edge_set, checked_mask(g, cut_vertices));
}

double thinness_ratio(const EmbeddedMultigraph& g, const std::vector<int>& edge_set,
                      const std::vector<double>& z,
                      const std::vector<int>& cut_vertices) {
    const std::uint64_t mask = checked_mask(g, cut_vertices);
    const double denom = z_cut_mask(g, z, mask);
    const int cross = cut_crossing_mask(g, edge_set, mask);
    if (denom <= 0.0)
        return cross == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return cross / denom;
}

}  // namespace genus_atsp
