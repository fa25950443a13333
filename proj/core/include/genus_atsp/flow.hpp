#ifndef GENUS_ATSP_FLOW_HPP
#define GENUS_ATSP_FLOW_HPP

#include <cstdint>
#include <vector>

namespace genus_atsp {

// Deterministic Dinic max-flow. Arc order is fixed by insertion, so runs are
// reproducible. Used with double capacities for cut separation and with
// integer-valued capacities for circulations (values stay exact).
class MaxFlow {
public:
    explicit MaxFlow(int node_count);

    int add_arc(int from, int to, double capacity);
    double solve(int s, int t);

    double flow_on(int arc_id) const;
    // Source side of a minimum cut after solve(): nodes reachable in the
    // residual network.
    std::vector<int> min_cut_source_side() const;

private:
    struct HalfArc {
        int to;
        int rev;
        double cap;
    };

    bool bfs_levels();
    double push(int v, double limit);

    int n_;
    int s_ = -1, t_ = -1;
    std::vector<std::vector<HalfArc>> adj_;
    std::vector<std::pair<int, int>> arc_pos_;  // public arc -> (node, index)
    std::vector<double> original_cap_;
    std::vector<int> level_, iter_;
};

// Deterministic successive-shortest-path min-cost max-flow with integer
// capacities and double costs (Bellman-Ford distances, fixed scan order).
class MinCostFlow {
public:
    explicit MinCostFlow(int node_count);

    int add_arc(int from, int to, std::int64_t capacity, double cost);
    // Sends as much flow as possible from s to t, cheapest first.
    // Returns (flow value, total cost).
    std::pair<std::int64_t, double> solve(int s, int t);

    std::int64_t flow_on(int arc_id) const;

private:
    struct HalfArc {
        int to;
        int rev;
        std::int64_t cap;
        double cost;
    };

    int n_;
    std::vector<std::vector<HalfArc>> adj_;
    std::vector<std::pair<int, int>> arc_pos_;
    std::vector<std::int64_t> original_cap_;
};

}  // namespace genus_atsp

#endif
