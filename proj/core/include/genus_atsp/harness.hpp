#ifndef GENUS_ATSP_HARNESS_HPP
#define GENUS_ATSP_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "genus_atsp/digraph.hpp"

namespace genus_atsp {

enum class GenusMode { Planar, RandomRotation, Crosscaps };
enum class CostModel { Uniform, AsymmetricSkew };

struct GenSpec {
    int n = 8;
    GenusMode mode = GenusMode::Planar;
    int crosscaps = 1;           // Crosscaps mode: -1 signatures off a spanning tree
    double density = 0.5;        // extra edges as a fraction of n
    double bidirect_prob = 0.7;  // chance an edge carries both directions
    double sig_prob = 0.25;      // RandomRotation: chance of a -1 signature
    CostModel cost = CostModel::Uniform;
    double skew = 4.0;           // AsymmetricSkew: reverse ~= skew * forward
    std::uint64_t seed = 1;
};

// Deterministic under the seed; output is always a valid strongly connected
// ATSPE-1 instance (reverse arcs are added until strong connectivity holds).
// Planar mode yields Euler genus 0 exactly; the other modes measure whatever
// genus the rotation system produces.
EmbeddedDigraph generate(const GenSpec& spec);

struct OracleResult {
    double opt_cost = 0.0;
    std::vector<int> tour_vertices;  // optimal visiting order (cyclic)
};

// Exact minimum-cost closed spanning walk via Held-Karp DP over the metric
// closure. Throws TooLarge above n = 12.
OracleResult brute_force_atsp(const EmbeddedDigraph& g);

struct CutAudit {
    double max_ratio = 0.0;      // max |W ∩ delta(U)| / z(delta(U))
    double min_cut_weight = 0.0; // min z(delta(U))
    int cuts_checked = 0;
    std::uint64_t worst_mask = 0;
};

struct AuditSpec {
    bool exhaustive = true;  // requires n <= 20; otherwise sampled
    int samples = 10000;
    std::uint64_t seed = 0;
};

// Ratio audit of an edge set against symmetrized weights over all (or
// sampled) proper cuts.
CutAudit audit_cuts(const EmbeddedDigraph& g, const std::vector<int>& edge_set,
                    const std::vector<double>& z, const AuditSpec& spec);

// Crossing audit for a walk cover given as arc multiplicities.
CutAudit audit_walk_cuts(const EmbeddedDigraph& g,
                         const std::vector<std::int64_t>& arc_multiplicity,
                         const std::vector<double>& z, const AuditSpec& spec);

}  // namespace genus_atsp

#endif
