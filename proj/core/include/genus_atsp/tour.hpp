#ifndef GENUS_ATSP_TOUR_HPP
#define GENUS_ATSP_TOUR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "genus_atsp/circulation.hpp"
#include "genus_atsp/digraph.hpp"
#include "genus_atsp/held_karp.hpp"
#include "genus_atsp/ribbons.hpp"
#include "genus_atsp/thin_forest.hpp"

namespace genus_atsp {

// One representative vertex per walk: the minimum vertex id visited.
std::vector<int> representatives(const EmbeddedDigraph& g, const WalkCover& cover);

// Complete asymmetric metric instance on the representatives, with shortest
// directed path costs and stored path preimages.
struct ContractedInstance {
    std::vector<int> reps;
    std::vector<std::vector<double>> cost;            // k x k, diagonal 0
    std::vector<std::vector<std::vector<int>>> path;  // arc ids realizing cost
};

ContractedInstance contracted_instance(const EmbeddedDigraph& g,
                                       const ShortestPaths& sp,
                                       const std::vector<int>& reps);

struct RepTour {
    std::vector<int> order;  // rep indices, a cyclic order starting at 0
    double cost = 0.0;
};

// Held-Karp bitmask DP: the exact optimum over all cyclic orders. Throws
// TooManyComponents beyond the cap.
RepTour exact_atsp_dp(const ContractedInstance& inst, int cap = 24);

// Pluggable solver for the contracted instance, used beyond the DP cap. The
// built-in fallback is nearest-neighbor plus repeated 2-point exchange and
// claims no approximation guarantee.
class AtspHook {
public:
    virtual ~AtspHook() = default;
    virtual RepTour tour(const ContractedInstance& inst) = 0;
};

class GreedyExchangeHook : public AtspHook {
public:
    RepTour tour(const ContractedInstance& inst) override;
};

struct Tour {
    std::vector<int> arcs;         // closed spanning walk, original arc ids
    double cost = 0.0;             // under the instance costs
    std::vector<int> visit_order;  // first-appearance vertex order
};

// Splices each walk into the representative tour and then shortcuts: the walk
// is rebuilt through first-appearance order until the cost stops improving,
// which makes the pass idempotent. Never increases cost on a normalized
// instance.
Tour compose_and_shortcut(const EmbeddedDigraph& g, const ShortestPaths& sp,
                          const ContractedInstance& inst, const RepTour& rep_tour,
                          const WalkCover& cover);

// One shortcut fixpoint pass on an arbitrary closed walk (exposed for the
// idempotence property).
std::vector<int> shortcut_walk(const EmbeddedDigraph& g, const ShortestPaths& sp,
                               const std::vector<int>& walk_arcs);

bool is_closed_spanning_walk(const EmbeddedDigraph& g, const std::vector<int>& arcs);

struct SolveOptions {
    double lp_tol = 1e-6;
    int lp_max_rounds = 0;
    int dp_cap = 24;
    double alpha_prime = 60.0;  // certified thinness constant handed to Hoffman
    ThinForestOptions thin;
    AtspHook* hook = nullptr;  // defaults to GreedyExchangeHook beyond the cap
    std::uint64_t seed = 0;
    bool collect_audit = true;
};

// Full pipeline output with the audited constants of every stage.
struct SolveResult {
    int n = 0;
    int genus = 0;
    LpSolution lp;
    SymWeights z;
    ContractionTrace raw_trace;  // contraction sequence on the raw LP weights
    ThinForest forest;
    std::vector<int> forest_arcs;
    BoundedArcNetwork bounds;
    Circulation circulation;
    WalkCover cover;
    std::vector<int> reps;
    RepTour rep_tour;
    double dp_cost = 0.0;
    bool dp_certified = true;  // false when the uncertified hook was used
    Tour tour;
    double walk_bound = 0.0;  // (2 alpha' + s') lp + rounding slack
    double bound = 0.0;       // walk_bound + dp_cost
    double ratio_vs_lp = 0.0;
};

SolveResult solve(const EmbeddedDigraph& g, const SolveOptions& opt = {});

// Deterministic JSON certificate:
// {lp, forest:{k, alpha_hat, s_hat}, walks:{k_prime, cost}, dp_cost,
//  tour_cost, bound, ratio_vs_lp}.
std::string certificate_json(const SolveResult& result);

}  // namespace genus_atsp

#endif
