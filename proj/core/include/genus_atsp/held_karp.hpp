#ifndef GENUS_ATSP_HELD_KARP_HPP
#define GENUS_ATSP_HELD_KARP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "genus_atsp/digraph.hpp"
#include "genus_atsp/simplex.hpp"

namespace genus_atsp {

// Optimal fractional solution of
//   min sum c(a) x(a)
//   s.t. x(out(U)) >= 1 for all proper nonempty U,
//        x(out(v)) = x(in(v)) for all v,
//        x >= 0.
// Degree-1 equalities are deliberately absent; feasible solutions live on the
// instance's own arcs.
struct LpSolution {
    std::vector<double> x;  // indexed by arc slot, dead slots 0
    double objective = 0.0;
    int rounds = 0;  // cutting-plane iterations
    int cuts = 0;    // subtour cuts in the final restricted LP
    int pivots = 0;  // simplex pivots across all rounds
};

// Per-edge symmetrization z(uv) = x(u->v) + x(v->u); a missing direction
// contributes 0. Indexed by edge slot.
struct SymWeights {
    std::vector<double> z;

    double total() const;
};

struct HeldKarpOptions {
    double tol = 1e-6;      // feasibility tolerance enforced on cuts
    int max_rounds = 0;     // 0: defaults to 10 * arc count
    LpBackend* backend = nullptr;  // optional external solver
};

// Replaces every arc cost by the shortest-path distance from its tail to its
// head. Idempotent, never increases a cost, preserves the arc set.
EmbeddedDigraph normalize_metric(const EmbeddedDigraph& g);

LpSolution solve_held_karp(const EmbeddedDigraph& g, const HeldKarpOptions& opt = {});

// Finds a violated subtour cut via minimum s-t cuts in the x-capacitated
// digraph (both directions from a fixed root), or nullopt if none exists.
std::optional<std::vector<int>> separate_subtour(const EmbeddedDigraph& g,
                                                 const std::vector<double>& x,
                                                 double tol = 1e-6);

SymWeights symmetrize(const EmbeddedDigraph& g, const std::vector<double>& x);

// Cut helpers on vertex-set bitmasks (bit v = vertex slot v; needs <= 64
// vertex slots).
std::uint64_t mask_of(const std::vector<int>& vertices);
double x_cut_out(const EmbeddedDigraph& g, const std::vector<double>& x,
                 std::uint64_t mask);
double x_cut_in(const EmbeddedDigraph& g, const std::vector<double>& x,
                std::uint64_t mask);
double z_cut(const EmbeddedDigraph& g, const std::vector<double>& z,
             std::uint64_t mask);

}  // namespace genus_atsp

#endif
