#ifndef GENUS_ATSP_EMBEDDING_HPP
#define GENUS_ATSP_EMBEDDING_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "genus_atsp/errors.hpp"

namespace genus_atsp {

// One of the two ends of an undirected multiedge. Rotation lists are made of
// these; (edge, 0) and (edge, 1) are distinct even for self-loops.
struct EndRef {
    int edge = -1;
    int end = 0;

    bool operator==(const EndRef&) const = default;
    bool operator<(const EndRef& o) const {
        return edge != o.edge ? edge < o.edge : end < o.end;
    }
};

// Undirected multigraph with a signed rotation system: a cyclic order of
// edge-ends around every vertex plus a +1/-1 signature per edge. This is the
// standard combinatorial encoding of a cellular embedding in an orientable or
// non-orientable surface.
//
// Vertices and edges keep their ids for the lifetime of the object; deletion
// (via contraction) only marks slots dead. Instances are immutable once
// validated, except through operations that return a new graph.
class EmbeddedMultigraph {
public:
    EmbeddedMultigraph() = default;
    explicit EmbeddedMultigraph(int vertex_count);

    int add_vertex();
    // Creates an edge with end 0 at u and end 1 at v. Rotations are not
    // touched; callers place the ends explicitly.
    int add_edge(int u, int v, int sign = +1);

    int vertex_slots() const { return static_cast<int>(rotation_.size()); }
    int edge_slots() const { return static_cast<int>(edges_.size()); }
    int vertex_count() const { return alive_vertices_; }
    int edge_count() const { return alive_edges_; }

    bool vertex_alive(int v) const { return vertex_alive_[v]; }
    bool edge_alive(int e) const { return edges_[e].alive; }
    std::vector<int> vertices() const;
    std::vector<int> edges() const;

    int endpoint(int e, int end) const { return edges_[e].endpoint[end]; }
    bool is_loop(int e) const {
        return edges_[e].endpoint[0] == edges_[e].endpoint[1];
    }
    int signature(int e) const { return edges_[e].sign; }
    void set_signature(int e, int sign);

    const std::vector<EndRef>& rotation(int v) const { return rotation_[v]; }
    void set_rotation(int v, std::vector<EndRef> rot);
    // Inserts new_end immediately after `after` in v's cyclic order.
    void insert_end_after(int v, EndRef new_end, EndRef after);

    int degree(int v) const { return static_cast<int>(rotation_[v].size()); }

    // Checks that every end of every alive edge appears exactly once, at the
    // vertex matching the edge record. Throws MalformedRotation otherwise.
    void validate() const;

    bool connected() const;

    // Reverses v's rotation and negates the signature of every edge incidence
    // at v (loops flip twice, so they are unchanged). A pure re-encoding of
    // the same embedding.
    void flip_vertex(int v);

    // Marks a slot dead. Used by contraction and by builders that must keep
    // ids aligned across derived graphs.
    void kill_edge(int e);
    void kill_vertex(int v);

private:
    struct Edge {
        std::array<int, 2> endpoint{-1, -1};
        int sign = +1;
        bool alive = true;
    };

    std::vector<std::vector<EndRef>> rotation_;
    std::vector<char> vertex_alive_;
    std::vector<Edge> edges_;
    int alive_vertices_ = 0;
    int alive_edges_ = 0;

    friend std::pair<EmbeddedMultigraph, struct ContractionMap> contract_edges(
        const EmbeddedMultigraph&, const std::vector<int>&);
};

// One step of a face boundary walk: the edge is traversed entering at
// from_end and leaving at the other end.
struct FaceStep {
    int edge;
    int from_end;
};

// A corner of a face: the slot between two consecutive edge-ends around
// `vertex` where a new end can be inserted (immediately after insert_after)
// while keeping the face structure consistent.
struct FaceCorner {
    int vertex;
    EndRef insert_after;
};

struct Face {
    std::vector<FaceStep> walk;
    std::vector<FaceCorner> corners;  // aligned with walk positions
    int size = 0;                     // number of edge-side traversals
    std::vector<int> edge_ids;        // distinct edges on the boundary
};

struct FaceSet {
    std::vector<Face> faces;
    int total_sides = 0;  // sums to 2 * edge_count()

    int face_count() const { return static_cast<int>(faces.size()); }
};

// Traces all face boundaries of the embedding. Walks start from the lowest
// edge-end (deterministic); signature -1 edges flip the traversal orientation
// state. Total side count always equals twice the number of alive edges.
FaceSet trace_faces(const EmbeddedMultigraph& g);

int euler_characteristic(const EmbeddedMultigraph& g);

// eg(S) = 2 - chi(S): 2g for orientable genus g, g for non-orientable.
int euler_genus(const EmbeddedMultigraph& g);

// The dual embedded graph: one vertex per face, one edge per primal edge,
// with rotations and signatures derived from the same flag structure, so the
// dual lives on the same surface. Dual edge ids equal primal edge ids; dual
// vertex i corresponds to face i of trace_faces(g).
struct DualGraph {
    EmbeddedMultigraph graph;
    std::vector<int> face_size;  // of the primal face behind each dual vertex
};

DualGraph dual_graph(const EmbeddedMultigraph& g);

// Re-derives a rotation system from the graph's flag structure. The result
// describes the same embedding (equal up to vertex flips) and is exactly what
// dual_graph(dual_graph(g)) produces, which makes the involution testable.
EmbeddedMultigraph embedding_roundtrip(const EmbeddedMultigraph& g);

// Normal form under vertex flips: BFS-tree signatures forced to +1, every
// rotation rotated so its smallest end comes first. Two encodings of the same
// labeled embedding canonicalize identically.
EmbeddedMultigraph canonical_gauge(const EmbeddedMultigraph& g);

// True when a and b encode the same labeled embedding, allowing vertex flips
// and a global reflection.
bool equivalent_embeddings(const EmbeddedMultigraph& a, const EmbeddedMultigraph& b);

// Checks dual(dual(g)) against g: edge ids survive both dualizations, so the
// vertex correspondence is reconstructed from shared edges and the embeddings
// compared up to relabeling, flips and reflection. Requires g connected.
bool is_dual_involution(const EmbeddedMultigraph& g);

struct ContractionMap {
    enum class EdgeFate { Kept, Contracted, BecameLoop };

    // Indexed by vertex slot of the source graph; maps to the surviving
    // vertex id in the contracted graph.
    std::vector<int> vertex_image;
    // Indexed by edge slot of the source graph (dead slots keep Kept).
    std::vector<EdgeFate> edge_fate;

    int image(int v) const { return vertex_image[v]; }

    // Composition with a later contraction: this, then next.
    ContractionMap then(const ContractionMap& next) const;
};

// Contracts every edge in edge_set: endpoints merge (the surviving vertex
// keeps the smaller id), rotations are spliced at the contracted ends so the
// embedding is preserved, and the contracted edges are removed. Parallel
// edges and newly formed self-loops of edges outside the set are retained.
// Throws ContractLoop if the set contains a self-loop of g.
std::pair<EmbeddedMultigraph, ContractionMap> contract_edges(
    const EmbeddedMultigraph& g, const std::vector<int>& edge_set);

}  // namespace genus_atsp

#endif
