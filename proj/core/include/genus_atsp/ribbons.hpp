#ifndef GENUS_ATSP_RIBBONS_HPP
#define GENUS_ATSP_RIBBONS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "genus_atsp/embedding.hpp"

namespace genus_atsp {

// A maximal chain of parallel non-loop edges in which consecutive edges bound
// a bigon face. Chains are the computable form of pairwise-homotopic parallel
// families: two parallel edges bound a bigon exactly when they are homotopic.
struct Ribbon {
    std::vector<int> edge_order;  // canonical chain order
    int endpoint_u = -1;          // endpoint_u < endpoint_v unless a loop pair
    int endpoint_v = -1;

    int size() const { return static_cast<int>(edge_order.size()); }
    int min_edge() const;
    double weight(const std::vector<double>& z) const;
};

// Partition of the non-self-loop edges into ribbons. Unique for a given
// embedding.
struct RibbonDecomposition {
    std::vector<Ribbon> ribbons;
    std::vector<int> ribbon_of_edge;  // edge slot -> ribbon index, -1 for loops/dead

    bool empty() const { return ribbons.empty(); }
    int size() const { return static_cast<int>(ribbons.size()); }
};

RibbonDecomposition ribbon_decomposition(const EmbeddedMultigraph& g);
RibbonDecomposition ribbon_decomposition(const EmbeddedMultigraph& g,
                                         const FaceSet& faces);

// Every weighted median of the ribbon order, restricted to positive-weight
// edges whenever the ribbon has positive total weight. Sorted by edge id.
// Throws EmptyRibbon on an empty ribbon.
std::vector<int> central_edges(const Ribbon& r, const std::vector<double>& z);

// Ribbon of maximum z-weight; ties go to the ribbon with the smallest minimum
// edge id. Zero-weight ribbons lose to any positive one. Throws NoRibbons on
// an empty decomposition.
const Ribbon& max_weight_ribbon(const RibbonDecomposition& d,
                                const std::vector<double>& z);

struct ContractionStep {
    int index = 0;
    int vertices_before = 0;
    std::vector<int> ribbon_edges;
    double ribbon_weight = 0.0;  // in z units (scale divided out)
    int central_edge = -1;
    int ribbon_count = 0;   // decomposition size at this step
    int ribbon_bound = 0;   // 3|V| - 3*chi of the graph at this step
};

struct ContractionTrace {
    std::vector<ContractionStep> steps;
    EmbeddedMultigraph final_graph;
    ContractionMap total_map;
    int final_vertices = 0;
};

// Central edges of the contracted ribbons, lifted to original edge ids.
struct WeakThinForest {
    std::vector<int> edges;
    int components = 0;
};

struct ContractionOptions {
    // Certificate: every contracted ribbon must carry z-weight >= 2/5. A
    // violation means the caller's z broke the cut precondition z(cut) >= 2.
    double min_ribbon_weight = 0.4;
    double tolerance = 1e-6;
    // z values may be handed over scaled by a constant (exact grid
    // arithmetic); the certificate compares against min_ribbon_weight after
    // dividing the scale out.
    double z_scale = 1.0;
    bool enforce_certificate = true;
};

// Contracts the maximum-weight ribbon until at most max(target,1) vertices
// remain, recording the central edge of every step. The recorded edges form
// a forest spanning the original vertex set with exactly |V_t| components.
std::pair<ContractionTrace, WeakThinForest> contraction_sequence(
    const EmbeddedMultigraph& g, const std::vector<double>& z, int target,
    const ContractionOptions& opt = {});

// |T intersect delta(U)| for an edge set T. Throws DegenerateCut for U empty
// or U = V.
int cut_crossing(const EmbeddedMultigraph& g, const std::vector<int>& edge_set,
                 const std::vector<int>& cut_vertices);
double thinness_ratio(const EmbeddedMultigraph& g, const std::vector<int>& edge_set,
                      const std::vector<double>& z,
                      const std::vector<int>& cut_vertices);

// Mask-based fast paths used by the audits (bit v = vertex slot v).
int cut_crossing_mask(const EmbeddedMultigraph& g, const std::vector<int>& edge_set,
                      std::uint64_t mask);
double z_cut_mask(const EmbeddedMultigraph& g, const std::vector<double>& z,
                  std::uint64_t mask);

}  // namespace genus_atsp

#endif
