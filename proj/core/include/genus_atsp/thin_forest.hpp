#ifndef GENUS_ATSP_THIN_FOREST_HPP
#define GENUS_ATSP_THIN_FOREST_HPP

#include <cstdint>
#include <vector>

#include "genus_atsp/digraph.hpp"
#include "genus_atsp/held_karp.hpp"
#include "genus_atsp/ribbons.hpp"

namespace genus_atsp {

// Edge weights kept as exact integer multiples of 1/n^2, stored scaled by
// n^2 in integer-valued doubles (values stay far below 2^53, so arithmetic in
// the reweighting loop is exact).
struct WeightSchedule {
    std::vector<double> scaled;  // by edge slot, = z_i(e) * n^2
    double scale = 1.0;          // n^2
    int iteration = 0;
    int rounds = 0;              // N = ceil(n^2 / alpha)

    double value(int e) const { return scaled[e] / scale; }
};

// Initial grid weights z_0 = 3 * floor(z * n^2) / n^2.
WeightSchedule initial_schedule(const EmbeddedDigraph& g, const SymWeights& z,
                                int alpha);

// z_{i+1}(e) = z_i(e) - 1/n^2 on forest edges. Throws NegativeWeight when a
// forest edge has no weight left (the positive-median rule prevents this).
void decrement_on_forest(WeightSchedule& schedule, const std::vector<int>& forest);

enum class AuditMode { Off, Exhaustive, Sample };

struct ThinForestOptions {
    int alpha = 20;  // weak-thinness constant
    AuditMode audit = AuditMode::Sample;
    int audit_samples = 2048;
    std::uint64_t audit_seed = 0;
    bool early_exit = true;  // stop once some T_i has cost <= LP objective
};

struct RoundRecord {
    int round = 0;
    double cost = 0.0;
    double min_cut_slack = 0.0;  // min over audited cuts of z_i(cut) - 2
};

struct ThinForest {
    std::vector<int> edges;
    int components = 0;
    double cost = 0.0;        // undirected edge costs
    double alpha_hat = 0.0;   // max audited |T ∩ cut| / z(cut)
    double s_hat = 0.0;       // cost / LP objective
    int chosen_round = 0;
    int rounds_run = 0;
    std::vector<RoundRecord> round_log;
    // Audit counter for the charging argument: appearances[e] counts rounds
    // whose forest contains e; appearances[e]/n^2 <= z_0(e) must hold.
    std::vector<int> appearances;
    std::vector<double> z0_scaled;
    double grid_scale = 1.0;
};

// Runs N = ceil(n^2/alpha) reweighted contraction rounds and keeps the
// cheapest forest. Output satisfies: components <= max(genus,1),
// cost <= 3*alpha*objective, and every audited cut U has
// |T ∩ delta(U)| <= 3*alpha*z(delta(U)).
ThinForest compute_thin_forest(const EmbeddedDigraph& g, const LpSolution& lp,
                               const SymWeights& z, int genus,
                               const ThinForestOptions& opt = {});

}  // namespace genus_atsp

#endif
