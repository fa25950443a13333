#include "genus_atsp/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "genus_atsp/errors.hpp"

namespace genus_atsp {

namespace {
constexpr double kEps = 1e-12;
}

MaxFlow::MaxFlow(int node_count) : n_(node_count), adj_(node_count) {}

int MaxFlow::add_arc(int from, int to, double capacity) {
    require(from >= 0 && from < n_ && to >= 0 && to < n_, ErrorCode::Internal,
            "flow arc endpoint out of range");
    require(capacity >= 0.0, ErrorCode::Internal, "negative capacity");
    const int id = static_cast<int>(arc_pos_.size());
    arc_pos_.emplace_back(from, static_cast<int>(adj_[from].size()));
    original_cap_.push_back(capacity);
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), capacity});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, 0.0});
    return id;
}

bool MaxFlow::bfs_levels() {
    level_.assign(n_, -1);
    std::queue<int> q;
    q.push(s_);
    level_[s_] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const HalfArc& a : adj_[v]) {
            if (a.cap > kEps && level_[a.to] < 0) {
                level_[a.to] = level_[v] + 1;
                q.push(a.to);
            }
        }
    }
    return level_[t_] >= 0;
}

double MaxFlow::push(int v, double limit) {
    if (v == t_) return limit;
    for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
        HalfArc& a = adj_[v][i];
        if (a.cap > kEps && level_[a.to] == level_[v] + 1) {
            const double got = push(a.to, std::min(limit, a.cap));
            if (got > kEps) {
                a.cap -= got;
                adj_[a.to][a.rev].cap += got;
                return got;
            }
        }
    }
    return 0.0;
}

double MaxFlow::solve(int s, int t) {
    s_ = s;
    t_ = t;
    double total = 0.0;
    while (bfs_levels()) {
        iter_.assign(n_, 0);
        while (true) {
            const double got = push(s_, std::numeric_limits<double>::infinity());
            if (got <= kEps) break;
            total += got;
        }
    }
    return total;
}

double MaxFlow::flow_on(int arc_id) const {
    const auto [v, i] = arc_pos_[arc_id];
    return original_cap_[arc_id] - adj_[v][i].cap;
}

std::vector<int> MaxFlow::min_cut_source_side() const {
    std::vector<char> seen(n_, 0);
    std::queue<int> q;
    q.push(s_);
    seen[s_] = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const HalfArc& a : adj_[v]) {
            if (a.cap > kEps && !seen[a.to]) {
                seen[a.to] = 1;
                q.push(a.to);
            }
        }
    }
    std::vector<int> side;
    for (int v = 0; v < n_; ++v)
        if (seen[v]) side.push_back(v);
    return side;
}

MinCostFlow::MinCostFlow(int node_count) : n_(node_count), adj_(node_count) {}

int MinCostFlow::add_arc(int from, int to, std::int64_t capacity, double cost) {
    require(from >= 0 && from < n_ && to >= 0 && to < n_, ErrorCode::Internal,
            "flow arc endpoint out of range");
    require(capacity >= 0, ErrorCode::Internal, "negative capacity");
    const int id = static_cast<int>(arc_pos_.size());
    arc_pos_.emplace_back(from, static_cast<int>(adj_[from].size()));
    original_cap_.push_back(capacity);
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), capacity, cost});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, 0, -cost});
    return id;
}

std::pair<std::int64_t, double> MinCostFlow::solve(int s, int t) {
    std::int64_t total_flow = 0;
    double total_cost = 0.0;
    const double inf = std::numeric_limits<double>::infinity();

    while (true) {
        // Bellman-Ford with a fixed node/arc scan order.
        std::vector<double> dist(n_, inf);
        std::vector<int> prev_node(n_, -1), prev_idx(n_, -1);
        dist[s] = 0.0;
        for (int round = 0; round < n_; ++round) {
            bool changed = false;
            for (int v = 0; v < n_; ++v) {
                if (dist[v] == inf) continue;
                for (int i = 0; i < static_cast<int>(adj_[v].size()); ++i) {
                    const HalfArc& a = adj_[v][i];
                    if (a.cap <= 0) continue;
                    const double nd = dist[v] + a.cost;
                    if (nd < dist[a.to] - 1e-12) {
                        dist[a.to] = nd;
                        prev_node[a.to] = v;
                        prev_idx[a.to] = i;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (dist[t] == inf) break;

        std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
        for (int v = t; v != s; v = prev_node[v])
            bottleneck = std::min(bottleneck, adj_[prev_node[v]][prev_idx[v]].cap);
        for (int v = t; v != s; v = prev_node[v]) {
            HalfArc& a = adj_[prev_node[v]][prev_idx[v]];
            a.cap -= bottleneck;
            adj_[a.to][a.rev].cap += bottleneck;
            total_cost += static_cast<double>(bottleneck) * a.cost;
        }
        total_flow += bottleneck;
    }
    return {total_flow, total_cost};
}

std::int64_t MinCostFlow::flow_on(int arc_id) const {
    const auto [v, i] = arc_pos_[arc_id];
    return original_cap_[arc_id] - adj_[v][i].cap;
}

}  // namespace genus_atsp
