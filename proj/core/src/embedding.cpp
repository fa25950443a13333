#include "genus_atsp/embedding.hpp"

#include <algorithm>
#include <queue>

namespace genus_atsp {

namespace {

// Flag structure of an embedding scheme. Every alive edge contributes four
// flags (end, side); three fixed-point-free involutions act on them:
//   a2 : switch side at the same end (crossing the edge-end),
//   a1 : switch end at the same corner (successor/predecessor in rotation),
//   a0 : travel along the edge staying on the same geometric side; a +1
//        signature exchanges the local side labels, a -1 signature keeps them.
// Vertices, edges and faces are the orbits of <a1,a2>, <a0,a2> and <a0,a1>.
// Dualizing is exactly the exchange of a0 and a2.
struct Flags {
    std::vector<int> a0, a1, a2;
    std::vector<int> edge_of_compact;   // compact edge index -> edge id
    std::vector<int> compact_of_edge;   // edge id -> compact index or -1
    std::vector<int> vertex_of_flag;    // vertex holding the flag's end
    int count = 0;

    int flag(int compact_edge, int end, int side) const {
        return 4 * compact_edge + 2 * end + side;
    }
};

Flags build_flags(const EmbeddedMultigraph& g) {
    Flags fl;
    fl.compact_of_edge.assign(g.edge_slots(), -1);
    for (int e = 0; e < g.edge_slots(); ++e) {
        if (!g.edge_alive(e)) continue;
        fl.compact_of_edge[e] = static_cast<int>(fl.edge_of_compact.size());
        fl.edge_of_compact.push_back(e);
    }
    const int m = static_cast<int>(fl.edge_of_compact.size());
    fl.count = 4 * m;
    fl.a0.assign(fl.count, -1);
    fl.a1.assign(fl.count, -1);
    fl.a2.assign(fl.count, -1);
    fl.vertex_of_flag.assign(fl.count, -1);

    for (int k = 0; k < m; ++k) {
        const int e = fl.edge_of_compact[k];
        const bool twist = g.signature(e) == 1;  // +1 exchanges side labels
        for (int end = 0; end < 2; ++end) {
            for (int side = 0; side < 2; ++side) {
                const int f = fl.flag(k, end, side);
                fl.a2[f] = fl.flag(k, end, 1 - side);
                fl.a0[f] = fl.flag(k, 1 - end, twist ? 1 - side : side);
                fl.vertex_of_flag[f] = g.endpoint(e, end);
            }
        }
    }

    for (int v : g.vertices()) {
        const auto& rot = g.rotation(v);
        const int d = static_cast<int>(rot.size());
        for (int j = 0; j < d; ++j) {
            const EndRef h = rot[j];
            const EndRef hn = rot[(j + 1) % d];
            const int a = fl.flag(fl.compact_of_edge[h.edge], h.end, 1);
            const int b = fl.flag(fl.compact_of_edge[hn.edge], hn.end, 0);
            fl.a1[a] = b;
            fl.a1[b] = a;
        }
    }
    return fl;
}

// Orbits of the group generated by two involutions, in order of their
// smallest flag. Returns orbit index per flag.
int group_orbits(const std::vector<int>& pa, const std::vector<int>& pb,
                 std::vector<int>& orbit_of) {
    const int n = static_cast<int>(pa.size());
    orbit_of.assign(n, -1);
    int orbits = 0;
    std::vector<int> stack;
    for (int f = 0; f < n; ++f) {
        if (orbit_of[f] >= 0) continue;
        const int id = orbits++;
        stack.push_back(f);
        orbit_of[f] = id;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            for (int nxt : {pa[cur], pb[cur]}) {
                if (orbit_of[nxt] < 0) {
                    orbit_of[nxt] = id;
                    stack.push_back(nxt);
                }
            }
        }
    }
    return orbits;
}

}  // namespace

EmbeddedMultigraph::EmbeddedMultigraph(int vertex_count)
    : rotation_(vertex_count),
      vertex_alive_(vertex_count, 1),
      alive_vertices_(vertex_count) {}

int EmbeddedMultigraph::add_vertex() {
    rotation_.emplace_back();
    vertex_alive_.push_back(1);
    ++alive_vertices_;
    return static_cast<int>(rotation_.size()) - 1;
}

int EmbeddedMultigraph::add_edge(int u, int v, int sign) {
    require(u >= 0 && u < vertex_slots() && vertex_alive_[u] && v >= 0 &&
                v < vertex_slots() && vertex_alive_[v],
            ErrorCode::MalformedInstance, "edge endpoint out of range");
    require(sign == 1 || sign == -1, ErrorCode::MalformedInstance,
            "signature must be +1 or -1");
    Edge e;
    e.endpoint = {u, v};
    e.sign = sign;
    edges_.push_back(e);
    ++alive_edges_;
    return static_cast<int>(edges_.size()) - 1;
}

std::vector<int> EmbeddedMultigraph::vertices() const {
    std::vector<int> out;
    out.reserve(alive_vertices_);
    for (int v = 0; v < vertex_slots(); ++v)
        if (vertex_alive_[v]) out.push_back(v);
    return out;
}

std::vector<int> EmbeddedMultigraph::edges() const {
    std::vector<int> out;
    out.reserve(alive_edges_);
    for (int e = 0; e < edge_slots(); ++e)
        if (edges_[e].alive) out.push_back(e);
    return out;
}

void EmbeddedMultigraph::set_signature(int e, int sign) {
    require(sign == 1 || sign == -1, ErrorCode::MalformedInstance,
            "signature must be +1 or -1");
    edges_[e].sign = sign;
}

void EmbeddedMultigraph::set_rotation(int v, std::vector<EndRef> rot) {
    rotation_[v] = std::move(rot);
}

void EmbeddedMultigraph::insert_end_after(int v, EndRef new_end, EndRef after) {
    auto& rot = rotation_[v];
    auto it = std::find(rot.begin(), rot.end(), after);
    require(it != rot.end(), ErrorCode::MalformedRotation,
            "anchor end not present in rotation");
    rot.insert(it + 1, new_end);
}

void EmbeddedMultigraph::validate() const {
    // Each end of each alive edge must appear exactly once, at the vertex the
    // edge record names.
    std::vector<std::array<int, 2>> seen(edge_slots(), {0, 0});
    for (int v = 0; v < vertex_slots(); ++v) {
        if (!vertex_alive_[v]) {
            require(rotation_[v].empty(), ErrorCode::MalformedRotation,
                    "dead vertex has rotation entries");
            continue;
        }
        for (const EndRef& h : rotation_[v]) {
            require(h.edge >= 0 && h.edge < edge_slots() && (h.end == 0 || h.end == 1),
                    ErrorCode::MalformedRotation, "rotation names an invalid end");
            require(edges_[h.edge].alive, ErrorCode::MalformedRotation,
                    "rotation names a removed edge");
            require(edges_[h.edge].endpoint[h.end] == v, ErrorCode::MalformedRotation,
                    "edge-end placed at the wrong vertex");
            ++seen[h.edge][h.end];
        }
    }
    for (int e = 0; e < edge_slots(); ++e) {
        if (!edges_[e].alive) continue;
        for (int end = 0; end < 2; ++end) {
            require(seen[e][end] == 1, ErrorCode::MalformedRotation,
                    seen[e][end] == 0 ? "edge-end missing from rotations"
                                      : "edge-end duplicated in rotations");
        }
    }
}

bool EmbeddedMultigraph::connected() const {
    if (alive_vertices_ == 0) return true;
    std::vector<char> seen(vertex_slots(), 0);
    std::queue<int> q;
    int root = -1;
    for (int v = 0; v < vertex_slots(); ++v)
        if (vertex_alive_[v]) {
            root = v;
            break;
        }
    q.push(root);
    seen[root] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const EndRef& h : rotation_[v]) {
            const int w = edges_[h.edge].endpoint[1 - h.end];
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                q.push(w);
            }
        }
    }
    return reached == alive_vertices_;
}

void EmbeddedMultigraph::flip_vertex(int v) {
    auto& rot = rotation_[v];
    std::reverse(rot.begin(), rot.end());
    for (const EndRef& h : rot) edges_[h.edge].sign = -edges_[h.edge].sign;
}

void EmbeddedMultigraph::kill_edge(int e) {
    if (edges_[e].alive) {
        edges_[e].alive = false;
        --alive_edges_;
    }
}

void EmbeddedMultigraph::kill_vertex(int v) {
    if (vertex_alive_[v]) {
        vertex_alive_[v] = 0;
        rotation_[v].clear();
        --alive_vertices_;
    }
}

FaceSet trace_faces(const EmbeddedMultigraph& g) {
    FaceSet out;
    if (g.edge_count() == 0) {
        // A vertex with no edges spans a sphere on its own.
        for (int i = 0; i < g.vertex_count(); ++i) out.faces.emplace_back();
        return out;
    }

    const Flags fl = build_flags(g);
    std::vector<int> orbit_of;
    const int orbit_count = group_orbits(fl.a0, fl.a1, orbit_of);
    std::vector<int> orbit_size(orbit_count, 0);
    for (int f = 0; f < fl.count; ++f) ++orbit_size[orbit_of[f]];

    std::vector<char> emitted(orbit_count, 0);
    for (int f0 = 0; f0 < fl.count; ++f0) {
        const int orb = orbit_of[f0];
        if (emitted[orb]) continue;
        emitted[orb] = 1;

        Face face;
        face.size = orbit_size[orb] / 2;
        int cur = f0;
        do {
            const int k = cur / 4;
            face.walk.push_back(FaceStep{fl.edge_of_compact[k], (cur / 2) % 2});
            const int arrival = fl.a0[cur];
            const int next = fl.a1[arrival];
            FaceCorner corner;
            corner.vertex = fl.vertex_of_flag[arrival];
            const int side_bearer = (arrival & 1) ? arrival : next;
            corner.insert_after = EndRef{fl.edge_of_compact[side_bearer / 4],
                                         (side_bearer / 2) % 2};
            face.corners.push_back(corner);
            cur = next;
        } while (cur != f0 && static_cast<int>(face.walk.size()) < face.size);

        for (int f = 0; f < fl.count; ++f)
            if (orbit_of[f] == orb) {
                const int e = fl.edge_of_compact[f / 4];
                if (face.edge_ids.empty() || face.edge_ids.back() != e)
                    face.edge_ids.push_back(e);
            }
        std::sort(face.edge_ids.begin(), face.edge_ids.end());
        face.edge_ids.erase(std::unique(face.edge_ids.begin(), face.edge_ids.end()),
                            face.edge_ids.end());
        out.total_sides += face.size;
        out.faces.push_back(std::move(face));
    }
    return out;
}

int euler_characteristic(const EmbeddedMultigraph& g) {
    const FaceSet fs = trace_faces(g);
    return g.vertex_count() - g.edge_count() + fs.face_count();
}

int euler_genus(const EmbeddedMultigraph& g) { return 2 - euler_characteristic(g); }

namespace {

// Rebuilds a rotation system from a flag action (a0x, a1x, a2x). Vertices are
// the <a1x,a2x> orbits in order of smallest flag; edges are the flag groups
// 4k..4k+3 and keep the ids supplied in edge_ids. The per-vertex walk fixes a
// local orientation, which is exactly the vertex-flip gauge freedom.
EmbeddedMultigraph rebuild_from_flags(const Flags& fl, const std::vector<int>& a0x,
                                      const std::vector<int>& a1x,
                                      const std::vector<int>& a2x,
                                      int vertex_slot_count,
                                      const std::vector<int>& vertex_ids,
                                      int edge_slot_count,
                                      const std::vector<int>& edge_ids) {
    const int m = static_cast<int>(fl.edge_of_compact.size());
    std::vector<int> side_label(fl.count, -1);
    std::vector<std::array<int, 2>> edge_endpoint(m, {-1, -1});
    std::vector<std::vector<EndRef>> rot(vertex_slot_count);
    std::vector<char> vertex_used(vertex_slot_count, 0);

    std::vector<int> orbit_of;
    group_orbits(a1x, a2x, orbit_of);
    std::vector<char> done(fl.count, 0);
    int next_orbit = 0;
    for (int f0 = 0; f0 < fl.count; ++f0) {
        if (done[f0]) continue;
        const int v = vertex_ids[next_orbit++];
        vertex_used[v] = 1;
        int cur = f0;
        do {
            const int mate = a2x[cur];
            done[cur] = done[mate] = 1;
            side_label[cur] = 0;
            side_label[mate] = 1;
            const int k = cur / 4;
            // End 0 of the rebuilt edge is the a2x-pair holding the group's
            // smallest flag.
            const int base = 4 * k;
            const int end_idx = (cur == base || cur == a2x[base]) ? 0 : 1;
            edge_endpoint[k][end_idx] = v;
            rot[v].push_back(EndRef{edge_ids[k], end_idx});
            cur = a1x[mate];
        } while (cur != f0);
    }

    EmbeddedMultigraph out(vertex_slot_count);
    for (int v = 0; v < vertex_slot_count; ++v)
        if (!vertex_used[v]) out.kill_vertex(v);

    std::vector<int> slot_to_new(edge_slot_count, -1);
    // Edge slots are laid out to preserve the supplied ids, dead slots filled
    // with placeholders that are killed immediately.
    std::vector<std::array<int, 2>> slot_endpoint(edge_slot_count, {-1, -1});
    std::vector<int> slot_sign(edge_slot_count, +1);
    std::vector<char> slot_alive(edge_slot_count, 0);
    for (int k = 0; k < m; ++k) {
        const int base = 4 * k;
        const int sign = (side_label[a0x[base]] == side_label[base]) ? -1 : +1;
        slot_endpoint[edge_ids[k]] = edge_endpoint[k];
        slot_sign[edge_ids[k]] = sign;
        slot_alive[edge_ids[k]] = 1;
    }
    int fallback = 0;
    for (int s = 0; s < edge_slot_count; ++s) {
        if (slot_alive[s]) {
            out.add_edge(slot_endpoint[s][0], slot_endpoint[s][1], slot_sign[s]);
        } else {
            // placeholder in a dead slot to keep ids aligned
            for (int v = 0; v < vertex_slot_count; ++v)
                if (vertex_used[v]) {
                    fallback = v;
                    break;
                }
            const int id = out.add_edge(fallback, fallback, +1);
            out.kill_edge(id);
        }
    }
    for (int v = 0; v < vertex_slot_count; ++v)
        if (vertex_used[v]) out.set_rotation(v, rot[v]);
    return out;
}

}  // namespace

DualGraph dual_graph(const EmbeddedMultigraph& g) {
    DualGraph dual;
    if (g.edge_count() == 0) {
        dual.graph = EmbeddedMultigraph(g.vertex_count());
        dual.face_size.assign(g.vertex_count(), 0);
        return dual;
    }
    const Flags fl = build_flags(g);
    std::vector<int> orbit_of;
    const int face_count = group_orbits(fl.a0, fl.a1, orbit_of);
    std::vector<int> ids(face_count);
    for (int i = 0; i < face_count; ++i) ids[i] = i;

    dual.graph = rebuild_from_flags(fl, fl.a2, fl.a1, fl.a0, face_count, ids,
                                    g.edge_slots(), fl.edge_of_compact);
    std::vector<int> orbit_size(face_count, 0);
    for (int f = 0; f < fl.count; ++f) ++orbit_size[orbit_of[f]];
    dual.face_size.resize(face_count);
    for (int i = 0; i < face_count; ++i) dual.face_size[i] = orbit_size[i] / 2;
    return dual;
}

EmbeddedMultigraph embedding_roundtrip(const EmbeddedMultigraph& g) {
    if (g.edge_count() == 0) {
        EmbeddedMultigraph out(g.vertex_slots());
        for (int v = 0; v < g.vertex_slots(); ++v)
            if (!g.vertex_alive(v)) out.kill_vertex(v);
        return out;
    }
    const Flags fl = build_flags(g);
    std::vector<int> orbit_of;
    const int vcount = group_orbits(fl.a1, fl.a2, orbit_of);
    // Recover original vertex ids in orbit discovery order.
    std::vector<int> ids;
    ids.reserve(vcount);
    std::vector<char> named(vcount, 0);
    for (int f = 0; f < fl.count; ++f) {
        if (!named[orbit_of[f]]) {
            named[orbit_of[f]] = 1;
            ids.push_back(fl.vertex_of_flag[f]);
        }
    }
    EmbeddedMultigraph out = rebuild_from_flags(fl, fl.a0, fl.a1, fl.a2,
                                                g.vertex_slots(), ids,
                                                g.edge_slots(), fl.edge_of_compact);
    return out;
}

EmbeddedMultigraph canonical_gauge(const EmbeddedMultigraph& g) {
    EmbeddedMultigraph out = g;
    std::vector<char> seen(out.vertex_slots(), 0);
    for (int root = 0; root < out.vertex_slots(); ++root) {
        if (!out.vertex_alive(root) || seen[root]) continue;
        seen[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            // Neighbors in ascending edge-id order: the traversal (and with
            // it the chosen flip set) must not depend on the gauge, and
            // rotation order does.
            std::vector<EndRef> ends = out.rotation(v);
            std::sort(ends.begin(), ends.end());
            for (const EndRef& h : ends) {
                const int w = out.endpoint(h.edge, 1 - h.end);
                if (seen[w]) continue;
                seen[w] = 1;
                if (out.signature(h.edge) == -1) out.flip_vertex(w);
                q.push(w);
            }
        }
    }
    for (int v = 0; v < out.vertex_slots(); ++v) {
        if (!out.vertex_alive(v) || out.rotation(v).empty()) continue;
        auto rot = out.rotation(v);
        auto best = std::min_element(rot.begin(), rot.end());
        std::rotate(rot.begin(), best, rot.end());
        out.set_rotation(v, std::move(rot));
    }
    return out;
}

namespace {

bool same_structure(const EmbeddedMultigraph& a, const EmbeddedMultigraph& b) {
    if (a.vertex_slots() != b.vertex_slots() || a.edge_slots() != b.edge_slots())
        return false;
    for (int v = 0; v < a.vertex_slots(); ++v) {
        if (a.vertex_alive(v) != b.vertex_alive(v)) return false;
        if (a.vertex_alive(v) && a.rotation(v) != b.rotation(v)) return false;
    }
    for (int e = 0; e < a.edge_slots(); ++e) {
        if (a.edge_alive(e) != b.edge_alive(e)) return false;
        if (!a.edge_alive(e)) continue;
        if (a.endpoint(e, 0) != b.endpoint(e, 0) ||
            a.endpoint(e, 1) != b.endpoint(e, 1) ||
            a.signature(e) != b.signature(e))
            return false;
    }
    return true;
}

}  // namespace

bool equivalent_embeddings(const EmbeddedMultigraph& a, const EmbeddedMultigraph& b) {
    const EmbeddedMultigraph ca = canonical_gauge(a);
    if (same_structure(ca, canonical_gauge(b))) return true;
    // Allow a global reflection: flipping every vertex reverses all rotations
    // and leaves every signature unchanged.
    EmbeddedMultigraph rb = b;
    for (int v : rb.vertices()) {
        auto rot = rb.rotation(v);
        std::reverse(rot.begin(), rot.end());
        rb.set_rotation(v, std::move(rot));
    }
    return same_structure(ca, canonical_gauge(rb));
}

ContractionMap ContractionMap::then(const ContractionMap& next) const {
    ContractionMap out;
    out.vertex_image.resize(vertex_image.size(), -1);
    for (std::size_t v = 0; v < vertex_image.size(); ++v) {
        const int mid = vertex_image[v];
        out.vertex_image[v] = mid < 0 ? -1 : next.vertex_image[mid];
    }
    out.edge_fate.resize(edge_fate.size(), EdgeFate::Kept);
    for (std::size_t e = 0; e < edge_fate.size(); ++e) {
        const EdgeFate a = edge_fate[e];
        const EdgeFate b = e < next.edge_fate.size() ? next.edge_fate[e] : EdgeFate::Kept;
        if (a == EdgeFate::Contracted || b == EdgeFate::Contracted)
            out.edge_fate[e] = EdgeFate::Contracted;
        else if (a == EdgeFate::BecameLoop || b == EdgeFate::BecameLoop)
            out.edge_fate[e] = EdgeFate::BecameLoop;
    }
    return out;
}

std::pair<EmbeddedMultigraph, ContractionMap> contract_edges(
    const EmbeddedMultigraph& g, const std::vector<int>& edge_set) {
    for (int e : edge_set) {
        require(e >= 0 && e < g.edge_slots() && g.edge_alive(e),
                ErrorCode::MalformedInstance, "contraction set names a missing edge");
        require(!g.is_loop(e), ErrorCode::ContractLoop,
                "contraction set contains a self-loop");
    }

    EmbeddedMultigraph out = g;
    ContractionMap map;
    map.vertex_image.resize(g.vertex_slots());
    for (int v = 0; v < g.vertex_slots(); ++v)
        map.vertex_image[v] = g.vertex_alive(v) ? v : -1;
    map.edge_fate.assign(g.edge_slots(), ContractionMap::EdgeFate::Kept);

    std::vector<char> in_set(g.edge_slots(), 0);
    for (int e : edge_set) {
        in_set[e] = 1;
        map.edge_fate[e] = ContractionMap::EdgeFate::Contracted;
    }

    auto rotated_tail = [](const std::vector<EndRef>& rot, const EndRef& at) {
        std::vector<EndRef> tail;
        const auto it = std::find(rot.begin(), rot.end(), at);
        require(it != rot.end(), ErrorCode::Internal,
                "contracted end missing from rotation");
        const std::size_t pos = static_cast<std::size_t>(it - rot.begin());
        tail.reserve(rot.size() - 1);
        for (std::size_t i = 1; i < rot.size(); ++i)
            tail.push_back(rot[(pos + i) % rot.size()]);
        return tail;
    };

    while (true) {
        int e = -1;
        for (int cand = 0; cand < out.edge_slots(); ++cand) {
            if (in_set[cand] && out.edge_alive(cand) && !out.is_loop(cand)) {
                e = cand;
                break;
            }
        }
        if (e < 0) break;

        int u = out.endpoint(e, 0);
        int v = out.endpoint(e, 1);
        int end_u = 0;
        if (out.signature(e) == -1) out.flip_vertex(v);

        const int w = std::min(u, v);
        const int dead = std::max(u, v);
        const std::vector<EndRef> part_u = rotated_tail(out.rotation(u), EndRef{e, end_u});
        const std::vector<EndRef> part_v = rotated_tail(out.rotation(v), EndRef{e, 1 - end_u});

        std::vector<EndRef> merged;
        merged.reserve(part_u.size() + part_v.size());
        merged.insert(merged.end(), part_u.begin(), part_u.end());
        merged.insert(merged.end(), part_v.begin(), part_v.end());

        for (const EndRef& h : merged) {
            auto& rec = out.edges_[h.edge];
            rec.endpoint[h.end] = w;
        }
        out.rotation_[dead].clear();
        out.set_rotation(w, std::move(merged));
        if (dead != w) out.kill_vertex(dead);
        out.kill_edge(e);

        for (int x = 0; x < static_cast<int>(map.vertex_image.size()); ++x)
            if (map.vertex_image[x] == dead) map.vertex_image[x] = w;
    }

    // Remaining set edges are loops of parallel copies; contraction removes
    // them together with their rotation entries.
    for (int e = 0; e < out.edge_slots(); ++e) {
        if (!in_set[e] || !out.edge_alive(e)) continue;
        const int v = out.endpoint(e, 0);
        auto rot = out.rotation(v);
        rot.erase(std::remove_if(rot.begin(), rot.end(),
                                 [e](const EndRef& h) { return h.edge == e; }),
                  rot.end());
        out.set_rotation(v, std::move(rot));
        out.kill_edge(e);
    }

    for (int e = 0; e < g.edge_slots(); ++e) {
        if (!out.edge_alive(e) || in_set[e]) continue;
        if (out.is_loop(e) && !g.is_loop(e))
            map.edge_fate[e] = ContractionMap::EdgeFate::BecameLoop;
    }
    return {std::move(out), std::move(map)};
}

namespace {

// Applies a vertex relabeling and optional per-edge end swaps, rewriting
// endpoints and rotation entries consistently.
EmbeddedMultigraph relabel(const EmbeddedMultigraph& g,
                           const std::vector<int>& vertex_map,
                           const std::vector<char>& swap_ends,
                           int vertex_slot_count) {
    EmbeddedMultigraph out(vertex_slot_count);
    std::vector<char> used(vertex_slot_count, 0);
    for (int v : g.vertices()) used[vertex_map[v]] = 1;
    for (int v = 0; v < vertex_slot_count; ++v)
        if (!used[v]) out.kill_vertex(v);

    for (int e = 0; e < g.edge_slots(); ++e) {
        int id;
        if (!g.edge_alive(e)) {
            int anchor = 0;
            while (anchor < vertex_slot_count && !used[anchor]) ++anchor;
            id = out.add_edge(anchor, anchor, +1);
            out.kill_edge(id);
            continue;
        }
        const int a = vertex_map[g.endpoint(e, 0)];
        const int b = vertex_map[g.endpoint(e, 1)];
        id = swap_ends[e] ? out.add_edge(b, a, g.signature(e))
                          : out.add_edge(a, b, g.signature(e));
        (void)id;
    }
    for (int v : g.vertices()) {
        std::vector<EndRef> rot = g.rotation(v);
        for (EndRef& h : rot)
            if (swap_ends[h.edge]) h.end = 1 - h.end;
        out.set_rotation(vertex_map[v], std::move(rot));
    }
    return out;
}

bool involution_with_seed(const EmbeddedMultigraph& dd, const EmbeddedMultigraph& g,
                          int seed_edge, bool seed_swapped) {
    std::vector<int> vmap(dd.vertex_slots(), -1);
    vmap[dd.endpoint(seed_edge, 0)] = g.endpoint(seed_edge, seed_swapped ? 1 : 0);
    vmap[dd.endpoint(seed_edge, 1)] = g.endpoint(seed_edge, seed_swapped ? 0 : 1);

    // Propagate the vertex correspondence across shared non-loop edge ids.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e : dd.edges()) {
            if (dd.is_loop(e) || g.is_loop(e)) continue;
            const int a = dd.endpoint(e, 0), b = dd.endpoint(e, 1);
            const int gu = g.endpoint(e, 0), gv = g.endpoint(e, 1);
            for (int dir = 0; dir < 2; ++dir) {
                const int x = dir ? b : a;
                const int y = dir ? a : b;
                if (vmap[x] < 0) continue;
                int want = -1;
                if (vmap[x] == gu) want = gv;
                else if (vmap[x] == gv) want = gu;
                else return false;
                if (vmap[y] < 0) {
                    vmap[y] = want;
                    changed = true;
                } else if (vmap[y] != want) {
                    return false;
                }
            }
        }
    }
    for (int v : dd.vertices())
        if (vmap[v] < 0) return false;

    // End swaps for non-loop edges follow from the vertex map; loops keep a
    // residual choice, searched exhaustively (instances carry few loops).
    std::vector<char> swap_ends(dd.edge_slots(), 0);
    std::vector<int> loop_edges;
    for (int e : dd.edges()) {
        if (dd.is_loop(e)) {
            if (vmap[dd.endpoint(e, 0)] != g.endpoint(e, 0)) return false;
            loop_edges.push_back(e);
            continue;
        }
        if (vmap[dd.endpoint(e, 0)] == g.endpoint(e, 0))
            swap_ends[e] = 0;
        else
            swap_ends[e] = 1;
    }
    if (loop_edges.size() > 12) return false;
    const std::uint64_t combos = 1ull << loop_edges.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        for (std::size_t i = 0; i < loop_edges.size(); ++i)
            swap_ends[loop_edges[i]] = (mask >> i) & 1 ? 1 : 0;
        const EmbeddedMultigraph cand = relabel(dd, vmap, swap_ends, g.vertex_slots());
        if (equivalent_embeddings(cand, g)) return true;
    }
    return false;
}

}  // namespace

bool is_dual_involution(const EmbeddedMultigraph& g) {
    const EmbeddedMultigraph dd = dual_graph(dual_graph(g).graph).graph;
    if (dd.vertex_count() != g.vertex_count() || dd.edge_count() != g.edge_count())
        return false;
    if (g.edge_count() == 0) return true;

    int seed = -1;
    for (int e : g.edges())
        if (!g.is_loop(e) && !dd.is_loop(e)) {
            seed = e;
            break;
        }
    if (seed < 0) {
        // All edges are loops: single-vertex graph, identity map.
        std::vector<int> vmap(dd.vertex_slots(), -1);
        const int v = dd.vertices().front();
        vmap[v] = g.vertices().front();
        std::vector<char> swap_ends(dd.edge_slots(), 0);
        std::vector<int> loops = dd.edges();
        if (loops.size() > 12) return false;
        const std::uint64_t combos = 1ull << loops.size();
        for (std::uint64_t mask = 0; mask < combos; ++mask) {
            for (std::size_t i = 0; i < loops.size(); ++i)
                swap_ends[loops[i]] = (mask >> i) & 1 ? 1 : 0;
            if (equivalent_embeddings(relabel(dd, vmap, swap_ends, g.vertex_slots()), g))
                return true;
        }
        return false;
    }
    return involution_with_seed(dd, g, seed, false) ||
           involution_with_seed(dd, g, seed, true);
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedInstance: return "MalformedInstance";
        case ErrorCode::MalformedRotation: return "MalformedRotation";
        case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
        case ErrorCode::NegativeCost: return "NegativeCost";
        case ErrorCode::ContractLoop: return "ContractLoop";
        case ErrorCode::EmptyRibbon: return "EmptyRibbon";
        case ErrorCode::NoRibbons: return "NoRibbons";
        case ErrorCode::CutConditionViolated: return "CutConditionViolated";
        case ErrorCode::LpInfeasible: return "LpInfeasible";
        case ErrorCode::SolverStall: return "SolverStall";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::InvariantBroken: return "InvariantBroken";
        case ErrorCode::InfeasibleCirculation: return "InfeasibleCirculation";
        case ErrorCode::NotEulerian: return "NotEulerian";
        case ErrorCode::MissingArc: return "MissingArc";
        case ErrorCode::TooManyComponents: return "TooManyComponents";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::DegenerateCut: return "DegenerateCut";
        case ErrorCode::Internal: return "Internal";
    }
    return "UnknownError";
}

}  // namespace genus_atsp
