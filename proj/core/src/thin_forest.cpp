#include "genus_atsp/thin_forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "genus_atsp/rng.hpp"

namespace genus_atsp {

WeightSchedule initial_schedule(const EmbeddedDigraph& g, const SymWeights& z,
                                int alpha) {
    const int n = g.vertex_count();
    WeightSchedule s;
    s.scale = static_cast<double>(n) * n;
    s.rounds = static_cast<int>(std::ceil(s.scale / alpha));
    s.scaled.assign(g.edge_slots(), 0.0);
    for (int e : g.edges())
        s.scaled[e] = 3.0 * std::floor(z.z[e] * s.scale + 1e-9);
    return s;
}

void decrement_on_forest(WeightSchedule& schedule, const std::vector<int>& forest) {
    for (int e : forest)
        require(schedule.scaled[e] >= 1.0, ErrorCode::NegativeWeight,
                "forest edge has no weight left to spend");
    for (int e : forest) schedule.scaled[e] -= 1.0;
    ++schedule.iteration;
}

namespace {

// Cut masks used for the schedule invariant and the final thinness audit:
// exhaustive when the graph is small, seeded samples otherwise.
std::vector<std::uint64_t> audit_masks(const EmbeddedDigraph& g,
                                       const ThinForestOptions& opt) {
    std::vector<std::uint64_t> masks;
    if (opt.audit == AuditMode::Off) return masks;
    const auto verts = g.vertices();
    const int n = static_cast<int>(verts.size());
    if (n < 2) return masks;

    if (opt.audit == AuditMode::Exhaustive || n <= 12) {
        // All proper cuts, the lowest vertex pinned outside: 2^(n-1) - 1.
        require(n <= 20, ErrorCode::TooLarge, "exhaustive cut audit beyond n=20");
        const std::uint64_t combos = (std::uint64_t{1} << (n - 1)) - 1;
        for (std::uint64_t pick = 1; pick <= combos; ++pick) {
            std::uint64_t mask = 0;
            for (int i = 1; i < n; ++i)
                if (pick >> (i - 1) & 1) mask |= std::uint64_t{1} << verts[i];
            masks.push_back(mask);
        }
        return masks;
    }

    Rng rng(opt.audit_seed * 0x9e3779b97f4a7c15ull + 1);
    for (int k = 0; k < opt.audit_samples; ++k) {
        std::uint64_t mask = 0;
        int members = 0;
        for (int v : verts)
            if (rng.bernoulli(0.5)) {
                mask |= std::uint64_t{1} << v;
                ++members;
            }
        if (members == 0 || members == n) {
            --k;  // resample degenerate draws deterministically
            continue;
        }
        masks.push_back(mask);
    }
    return masks;
}

}  // namespace

ThinForest compute_thin_forest(const EmbeddedDigraph& g, const LpSolution& lp,
                               const SymWeights& z, int genus,
                               const ThinForestOptions& opt) {
    WeightSchedule schedule = initial_schedule(g, z, opt.alpha);
    const int rounds = std::max(schedule.rounds, 1);
    const std::vector<std::uint64_t> masks = audit_masks(g, opt);

    auto schedule_slack = [&]() {
        double slack = std::numeric_limits<double>::infinity();
        for (std::uint64_t mask : masks) {
            const double w =
                z_cut_mask(g.embedding(), schedule.scaled, mask) / schedule.scale;
            slack = std::min(slack, w - 2.0);
        }
        return slack;
    };

    ThinForest best;
    best.appearances.assign(g.edge_slots(), 0);
    best.z0_scaled = schedule.scaled;
    best.grid_scale = schedule.scale;
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<int> best_edges;
    int best_components = 0;
    int chosen_round = 0;

    ContractionOptions copt;
    copt.z_scale = schedule.scale;

    int round = 0;
    double last_slack = std::numeric_limits<double>::quiet_NaN();
    for (round = 1; round <= rounds; ++round) {
        const int i = round - 1;  // schedule index in use this round
        const bool audited =
            !masks.empty() && (i == 0 || i == rounds / 2 || i == rounds);
        if (audited) {
            last_slack = schedule_slack();
            require(last_slack >= 0.0, ErrorCode::InvariantBroken,
                    "schedule cut weight dropped below 2");
        }

        auto [trace, forest] =
            contraction_sequence(g.embedding(), schedule.scaled, genus, copt);
        double cost = 0.0;
        for (int e : forest.edges) cost += g.edge_cost(e);
        for (int e : forest.edges) ++best.appearances[e];
        best.round_log.push_back(RoundRecord{round, cost, last_slack});

        if (cost < best_cost) {
            best_cost = cost;
            best_edges = forest.edges;
            best_components = forest.components;
            chosen_round = round;
        }
        decrement_on_forest(schedule, forest.edges);
        if (opt.early_exit && best_cost <= lp.objective + 1e-9) break;
    }
    best.rounds_run = std::min(round, rounds);
    if (!masks.empty()) {
        // Terminal schedule state keeps every audited cut at weight >= 2.
        last_slack = schedule_slack();
        require(last_slack >= 0.0, ErrorCode::InvariantBroken,
                "schedule cut weight dropped below 2 after the final round");
    }

    // Charging audit: an edge can appear at most z_0(e) * n^2 times.
    for (int e : g.edges())
        require(best.appearances[e] <= best.z0_scaled[e] + 0.5,
                ErrorCode::InvariantBroken, "edge appearance charge exceeded");

    best.edges = std::move(best_edges);
    best.components = best_components;
    best.cost = best_cost;
    best.chosen_round = chosen_round;
    best.s_hat = lp.objective > 0.0 ? best.cost / lp.objective : 0.0;

    const double limit = 3.0 * opt.alpha;
    require(best.components <= std::max(genus, 1), ErrorCode::InvariantBroken,
            "forest has too many components");
    require(best.cost <= limit * lp.objective + 1e-6 * std::max(1.0, lp.objective),
            ErrorCode::InvariantBroken, "forest cost exceeds the 3*alpha bound");

    best.alpha_hat = 0.0;
    for (std::uint64_t mask : masks) {
        const double zw = z_cut(g, z.z, mask);
        const int cross = cut_crossing_mask(g.embedding(), best.edges, mask);
        if (zw > 0.0)
            best.alpha_hat = std::max(best.alpha_hat, cross / zw);
        else
            require(cross == 0, ErrorCode::InvariantBroken,
                    "forest crosses a cut of zero weight");
    }
    require(best.alpha_hat <= limit + 1e-6, ErrorCode::InvariantBroken,
            "audited cut ratio exceeds 3*alpha");
    return best;
}

}  // namespace genus_atsp
