#ifndef GENUS_ATSP_CIRCULATION_HPP
#define GENUS_ATSP_CIRCULATION_HPP

#include <cstdint>
#include <vector>

#include "genus_atsp/digraph.hpp"

namespace genus_atsp {

// Per-arc circulation bounds: l = 1 exactly on the oriented forest, 0
// elsewhere; u = l + 2*alpha*x rounded up first to the 1/n^2 grid and then to
// an integer so Hoffman's integral version applies. upper_grid keeps the
// fractional grid bound, which carries the cost certificate.
struct BoundedArcNetwork {
    std::vector<std::int64_t> lower;   // by arc slot
    std::vector<std::int64_t> upper;   // integer relaxation of upper_grid
    std::vector<double> upper_grid;    // l + ceil(2 alpha x n^2)/n^2
    std::vector<int> forest_arcs;
    double alpha = 0.0;
    // sum_a c(a) * (upper_grid(a) - l(a) - 2 alpha x(a)) >= 0; bounded by
    // |A| * max cost / n^2.
    double slack_budget = 0.0;
};

// One arc per forest edge, the cheaper direction; cost ties break toward the
// lexicographically smaller (tail, head). Throws MissingArc if the edge owns
// no arc at all.
std::vector<int> orient_forest(const EmbeddedDigraph& g,
                               const std::vector<int>& forest_edges);

BoundedArcNetwork hoffman_bounds(const EmbeddedDigraph& g,
                                 const std::vector<int>& forest_arcs,
                                 const std::vector<double>& x, double alpha);

struct Circulation {
    std::vector<std::int64_t> f;  // by arc slot
    double cost = 0.0;
};

// Integral f with conservation everywhere and l <= f <= u, computed through
// the lower-bound elimination reduction to one max-flow. Flow is routed
// cost-minimally so the realized cost stays within the grid bound
// c(T) + 2 alpha sum c x + slack_budget. Throws InfeasibleCirculation with a
// diagnostic cut when the bounds admit no circulation (a violated thinness
// certificate upstream).
Circulation feasible_integer_circulation(const EmbeddedDigraph& g,
                                         const BoundedArcNetwork& bounds);

struct ClosedWalk {
    std::vector<int> arcs;  // empty for a degenerate walk
    int start_vertex = -1;
    double cost = 0.0;
};

// Closed walks covering every vertex: one Euler circuit per flow-carrying
// component plus a zero-length walk per flowless vertex.
struct WalkCover {
    std::vector<ClosedWalk> walks;
    double total_cost = 0.0;

    int count() const { return static_cast<int>(walks.size()); }
};

WalkCover walks_from_circulation(const EmbeddedDigraph& g, const Circulation& f,
                                 const std::vector<int>& forest_arcs);

}  // namespace genus_atsp

#endif
