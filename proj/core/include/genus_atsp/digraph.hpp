#ifndef GENUS_ATSP_DIGRAPH_HPP
#define GENUS_ATSP_DIGRAPH_HPP

#include <limits>
#include <utility>
#include <vector>

#include "genus_atsp/embedding.hpp"

namespace genus_atsp {

struct Arc {
    int tail = -1;
    int head = -1;
    double cost = 0.0;
    int edge = -1;  // owning undirected edge
};

// Directed arcs with costs on top of an embedded undirected multigraph. Every
// arc belongs to exactly one edge; an edge owns one or two arcs (one per
// direction). Immutable after validate(); contraction returns a new graph
// with the same vertex/edge/arc ids (dead slots stay dead).
class EmbeddedDigraph {
public:
    EmbeddedDigraph() = default;
    explicit EmbeddedDigraph(int vertex_count) : topo_(vertex_count) {}

    int add_vertex() { return topo_.add_vertex(); }
    int add_arc(int tail, int head, double cost);

    // Binds arcs into an undirected edge; arc_rev may be -1. End 0 sits at
    // the tail of arc_fwd. Returns the edge id (equal in topo_ and here).
    int bind_edge(int arc_fwd, int arc_rev = -1, int sign = +1);

    // Same, but pins end 0 at u explicitly; exactly one of the arcs may be
    // -1. arc_uv runs u->v, arc_vu runs v->u.
    int bind_edge_between(int u, int v, int arc_uv, int arc_vu, int sign = +1);

    // Convenience: adds both arcs and the edge in one go.
    int add_bidirected(int u, int v, double cost_uv, double cost_vu);

    void set_rotation(int v, std::vector<EndRef> rot) { topo_.set_rotation(v, std::move(rot)); }
    void set_signature(int e, int sign) { topo_.set_signature(e, sign); }

    // Sorts every rotation by (edge, end). Only usable when face structure
    // does not matter or for tests; real instances carry explicit rotations.
    void default_rotations();

    const EmbeddedMultigraph& embedding() const { return topo_; }

    int vertex_count() const { return topo_.vertex_count(); }
    int vertex_slots() const { return topo_.vertex_slots(); }
    bool vertex_alive(int v) const { return topo_.vertex_alive(v); }
    std::vector<int> vertices() const { return topo_.vertices(); }

    int edge_count() const { return topo_.edge_count(); }
    int edge_slots() const { return topo_.edge_slots(); }
    bool edge_alive(int e) const { return topo_.edge_alive(e); }
    std::vector<int> edges() const { return topo_.edges(); }
    int endpoint(int e, int end) const { return topo_.endpoint(e, end); }
    bool is_loop(int e) const { return topo_.is_loop(e); }
    int signature(int e) const { return topo_.signature(e); }
    // Arc ids owned by edge e; slot 0 runs end0 -> end1.
    const std::array<int, 2>& edge_arcs(int e) const { return edge_arcs_[e]; }

    int arc_slots() const { return static_cast<int>(arcs_.size()); }
    bool arc_alive(int a) const { return arcs_[a].edge >= 0 && topo_.edge_alive(arcs_[a].edge); }
    std::vector<int> arcs() const;
    int arc_count() const;
    const Arc& arc(int a) const { return arcs_[a]; }
    double arc_cost(int a) const { return arcs_[a].cost; }
    void set_arc_cost(int a, double c);

    std::vector<int> out_arcs(int v) const;
    std::vector<int> in_arcs(int v) const;

    // min(cost of the two directions) -- the undirected cost extension.
    double edge_cost(int e) const;

    // Full load-time validation: rotation coverage, arc/edge consistency,
    // nonnegative finite costs, strong connectivity.
    void validate() const;

    bool strongly_connected() const;

    std::pair<EmbeddedDigraph, ContractionMap> contract(const std::vector<int>& edge_set) const;

private:
    EmbeddedMultigraph topo_;
    std::vector<Arc> arcs_;
    std::vector<std::array<int, 2>> edge_arcs_;
};

// Shortest-path matrices over arc costs. dist[u][v] = +inf when unreachable.
struct ShortestPaths {
    std::vector<std::vector<double>> dist;
    // Cheapest direct arc u->v (lowest id among ties), -1 if none.
    std::vector<std::vector<int>> direct_arc;
    // next[u][v]: first intermediate vertex on a shortest u->v route, or v.
    std::vector<std::vector<int>> next;

    static constexpr double kInf = std::numeric_limits<double>::infinity();

    // Arc ids of a shortest path u -> v. Empty when u == v.
    std::vector<int> path_arcs(int u, int v) const;
};

ShortestPaths all_pairs_shortest_paths(const EmbeddedDigraph& g);

}  // namespace genus_atsp

#endif
