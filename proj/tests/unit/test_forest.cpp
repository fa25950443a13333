#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "genus_atsp/harness.hpp"
#include "genus_atsp/held_karp.hpp"
#include "genus_atsp/ribbons.hpp"
#include "genus_atsp/thin_forest.hpp"

using namespace genus_atsp;

namespace {

EmbeddedMultigraph aligned_dipole(int m) {
    EmbeddedMultigraph g(2);
    std::vector<EndRef> r0, r1;
    for (int i = 0; i < m; ++i) {
        const int e = g.add_edge(0, 1);
        r0.push_back({e, 0});
        r1.push_back({e, 1});
    }
    std::reverse(r1.begin(), r1.end());
    g.set_rotation(0, r0);
    g.set_rotation(1, r1);
    g.validate();
    return g;
}

EmbeddedMultigraph path_graph(int n) {
    EmbeddedMultigraph g(n);
    std::vector<std::vector<EndRef>> rot(n);
    for (int i = 0; i + 1 < n; ++i) {
        const int e = g.add_edge(i, i + 1);
        rot[i].push_back({e, 0});
        rot[i + 1].push_back({e, 1});
    }
    for (int i = 0; i < n; ++i) g.set_rotation(i, rot[i]);
    g.validate();
    return g;
}

EmbeddedDigraph bidirected_triangle_graph() {
    EmbeddedDigraph g(3);
    for (int i = 0; i < 3; ++i) g.add_bidirected(i, (i + 1) % 3, 1.0, 1.0);
    g.default_rotations();
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("path graph: every edge is a singleton ribbon") {
    const auto g = path_graph(5);
    const RibbonDecomposition d = ribbon_decomposition(g);
    CHECK(d.size() == 4);
    for (const Ribbon& r : d.ribbons) CHECK(r.size() == 1);
    for (int e : g.edges()) CHECK(d.ribbon_of_edge[e] >= 0);
}

TEST_CASE("three aligned parallel edges form one ribbon of size 3") {
    const auto g = aligned_dipole(3);
    const RibbonDecomposition d = ribbon_decomposition(g);
    REQUIRE(d.size() == 1);
    CHECK(d.ribbons[0].size() == 3);
}

TEST_CASE("non-homotopic parallel edges stay in separate ribbons") {
    EmbeddedMultigraph g(2);
    const int e1 = g.add_edge(0, 1, +1);
    const int e2 = g.add_edge(0, 1, -1);
    g.set_rotation(0, {{e1, 0}, {e2, 0}});
    g.set_rotation(1, {{e1, 1}, {e2, 1}});
    g.validate();
    const RibbonDecomposition d = ribbon_decomposition(g);
    CHECK(d.size() == 2);

    EmbeddedMultigraph h(2);
    std::vector<EndRef> r0, r1;
    for (int i = 0; i < 3; ++i) {
        const int e = h.add_edge(0, 1);
        r0.push_back({e, 0});
        r1.push_back({e, 1});  // anti-aligned: torus, no bigons
    }
    h.set_rotation(0, r0);
    h.set_rotation(1, r1);
    h.validate();
    CHECK(ribbon_decomposition(h).size() == 3);
}

TEST_CASE("ribbons partition the non-loop edges") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        GenSpec spec;
        spec.n = 10;
        spec.seed = seed;
        spec.mode = seed % 2 ? GenusMode::Planar : GenusMode::RandomRotation;
        const EmbeddedDigraph g = generate(spec);
        const RibbonDecomposition d = ribbon_decomposition(g.embedding());
        std::set<int> covered;
        for (const Ribbon& r : d.ribbons)
            for (int e : r.edge_order) CHECK(covered.insert(e).second);
        for (int e : g.edges()) {
            if (g.is_loop(e))
                CHECK(d.ribbon_of_edge[e] == -1);
            else
                CHECK(covered.count(e) == 1);
        }
    }
}

TEST_CASE("central edge is the weighted median") {
    Ribbon r;
    r.edge_order = {0, 1, 2};
    SUBCASE("strict middle") {
        const std::vector<double> z{0.5, 1.0, 0.5};
        CHECK(central_edges(r, z) == std::vector<int>{1});
    }
    SUBCASE("two medians on an even split") {
        Ribbon pair;
        pair.edge_order = {0, 1};
        const std::vector<double> z{1.0, 1.0};
        CHECK(central_edges(pair, z) == std::vector<int>{0, 1});
    }
    SUBCASE("singleton") {
        Ribbon one;
        one.edge_order = {2};
        const std::vector<double> z{0.0, 0.0, 0.7};
        CHECK(central_edges(one, z) == std::vector<int>{2});
    }
    SUBCASE("zero-weight medians are skipped when the ribbon has weight") {
        const std::vector<double> z{1.0, 0.0, 1.0};
        CHECK(central_edges(r, z) == std::vector<int>{0, 2});
    }
    SUBCASE("empty ribbon") {
        Ribbon none;
        const std::vector<double> z;
        CHECK_THROWS_AS(central_edges(none, z), Error);
    }
}

TEST_CASE("max weight ribbon and its tie rule") {
    const auto g = path_graph(4);  // edges 0,1,2 as singleton ribbons
    const RibbonDecomposition d = ribbon_decomposition(g);
    SUBCASE("argmax") {
        const std::vector<double> z{0.4, 2.0, 1.0};
        CHECK(max_weight_ribbon(d, z).edge_order == std::vector<int>{1});
    }
    SUBCASE("tie goes to the smaller edge id") {
        const std::vector<double> z{1.0, 1.0, 0.5};
        CHECK(max_weight_ribbon(d, z).edge_order == std::vector<int>{0});
    }
    SUBCASE("empty decomposition") {
        RibbonDecomposition empty;
        CHECK_THROWS_AS(max_weight_ribbon(empty, {}), Error);
    }
}

TEST_CASE("contraction sequence on the unit triangle") {
    const auto g = bidirected_triangle_graph();
    const std::vector<double> z(g.edge_slots(), 1.0);
    const auto [trace, forest] = contraction_sequence(g.embedding(), z, 1);

    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].vertices_before == 3);
    CHECK(trace.steps[0].ribbon_weight == doctest::Approx(1.0));
    CHECK(trace.steps[1].vertices_before == 2);
    CHECK(trace.steps[1].ribbon_weight == doctest::Approx(2.0));
    CHECK(trace.steps[1].ribbon_edges.size() == 2);
    CHECK(forest.edges.size() == 2);
    CHECK(forest.components == 1);
    CHECK(trace.final_vertices == 1);

    // The two-vertex stage of a planar run is the known boundary case of the
    // ribbon-count bound: one ribbon against 3|V| - 3*chi = 0.
    CHECK(trace.steps[1].ribbon_count == 1);
    CHECK(trace.steps[1].ribbon_bound == 0);
    CHECK(trace.steps[0].ribbon_count <= trace.steps[0].ribbon_bound);
}

TEST_CASE("contraction sequence stops immediately at the target") {
    const auto g = bidirected_triangle_graph();
    const std::vector<double> z(g.edge_slots(), 1.0);
    const auto [trace, forest] = contraction_sequence(g.embedding(), z, 5);
    CHECK(trace.steps.empty());
    CHECK(forest.edges.empty());
    CHECK(forest.components == 3);
}

TEST_CASE("contraction certificate rejects starved weights") {
    const auto g = bidirected_triangle_graph();
    const std::vector<double> z(g.edge_slots(), 0.1);
    CHECK_THROWS_AS(contraction_sequence(g.embedding(), z, 1), Error);
}

TEST_CASE("LP weights keep every contracted ribbon above 2/5") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenSpec spec;
        spec.n = 9;
        spec.seed = seed * 13 + 1;
        spec.mode = seed % 3 == 0 ? GenusMode::Crosscaps : GenusMode::Planar;
        spec.crosscaps = 2;
        const EmbeddedDigraph g = normalize_metric(generate(spec));
        const LpSolution lp = solve_held_karp(g);
        const SymWeights z = symmetrize(g, lp.x);
        const int eg = euler_genus(g.embedding());
        const auto [trace, forest] = contraction_sequence(g.embedding(), z.z, eg);
        for (const ContractionStep& s : trace.steps)
            CHECK(s.ribbon_weight >= 0.4 - 1e-6);
        CHECK(forest.components <= std::max(eg, 1));
    }
}

TEST_CASE("genus is preserved when contracting a ribbon") {
    for (std::uint64_t seed = 3; seed <= 6; ++seed) {
        GenSpec spec;
        spec.n = 8;
        spec.seed = seed;
        spec.mode = seed % 2 ? GenusMode::Planar : GenusMode::Crosscaps;
        const EmbeddedDigraph g = generate(spec);
        const int eg_before = euler_genus(g.embedding());
        const RibbonDecomposition d = ribbon_decomposition(g.embedding());
        const std::vector<double> unit(g.edge_slots(), 1.0);
        const Ribbon& r = max_weight_ribbon(d, unit);
        const auto [h, map] = contract_edges(g.embedding(), r.edge_order);
        (void)map;
        CHECK(euler_genus(h) == eg_before);
        CHECK(h.connected());
    }
}

TEST_CASE("cut crossing and thinness ratio on the triangle") {
    const auto g = bidirected_triangle_graph();
    const std::vector<int> tree{0, 1};
    const std::vector<double> z(g.edge_slots(), 1.0);
    CHECK(cut_crossing(g.embedding(), tree, {0}) == 1);
    CHECK(cut_crossing(g.embedding(), tree, {1}) == 2);
    CHECK(thinness_ratio(g.embedding(), tree, z, {1}) == doctest::Approx(1.0));
    CHECK(thinness_ratio(g.embedding(), tree, z, {0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(cut_crossing(g.embedding(), tree, {0, 1, 2}), Error);
    CHECK_THROWS_AS(cut_crossing(g.embedding(), tree, {}), Error);
}

TEST_CASE("weak thinness stays below 20 on exhaustive cuts") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GenSpec spec;
        spec.n = 8;
        spec.seed = seed * 7 + 5;
        spec.mode = seed % 2 ? GenusMode::Planar : GenusMode::Crosscaps;
        const EmbeddedDigraph g = normalize_metric(generate(spec));
        const LpSolution lp = solve_held_karp(g);
        const SymWeights z = symmetrize(g, lp.x);
        const int eg = euler_genus(g.embedding());
        const auto [trace, forest] = contraction_sequence(g.embedding(), z.z, eg);
        (void)trace;
        const CutAudit audit = audit_cuts(g, forest.edges, z.z, AuditSpec{});
        CHECK(audit.max_ratio <= 20.0 + 1e-9);
        CHECK(audit.min_cut_weight >= 2.0 - 1e-6);
    }
}

TEST_CASE("weight schedule: grid arithmetic and decrements") {
    const auto g = bidirected_triangle_graph();
    SymWeights z;
    z.z.assign(g.edge_slots(), 1.0);
    WeightSchedule s = initial_schedule(g, z, 20);
    CHECK(s.scale == doctest::Approx(9.0));
    CHECK(s.rounds == 1);  // ceil(9/20)
    for (int e : g.edges()) {
        CHECK(s.scaled[e] == doctest::Approx(27.0));  // 3 * floor(1 * 9)
        CHECK(s.scaled[e] == doctest::Approx(std::floor(s.scaled[e])));
    }
    decrement_on_forest(s, {0, 1});
    CHECK(s.scaled[0] == doctest::Approx(26.0));
    CHECK(s.scaled[1] == doctest::Approx(26.0));
    CHECK(s.scaled[2] == doctest::Approx(27.0));
    CHECK(s.iteration == 1);

    WeightSchedule starved = s;
    starved.scaled[0] = 0.0;
    CHECK_THROWS_AS(decrement_on_forest(starved, {0}), Error);
}

TEST_CASE("thin forest on the unit triangle costs exactly 2") {
    const auto g = bidirected_triangle_graph();
    const LpSolution lp = solve_held_karp(g);
    const SymWeights z = symmetrize(g, lp.x);
    ThinForestOptions opt;
    opt.audit = AuditMode::Exhaustive;
    const ThinForest t = compute_thin_forest(g, lp, z, 0, opt);
    CHECK(t.components == 1);
    CHECK(t.edges.size() == 2);
    CHECK(t.cost == doctest::Approx(2.0));
    CHECK(t.cost <= 60.0 * lp.objective);
    CHECK(t.alpha_hat <= 60.0);
    CHECK(t.s_hat <= 60.0);
}

TEST_CASE("thin forest on the two-vertex instance picks the single edge") {
    EmbeddedDigraph g(2);
    g.add_bidirected(0, 1, 3.0, 8.0);
    g.default_rotations();
    g.validate();
    const EmbeddedDigraph gn = normalize_metric(g);
    const LpSolution lp = solve_held_karp(gn);
    const SymWeights z = symmetrize(gn, lp.x);
    ThinForestOptions opt;
    opt.audit = AuditMode::Exhaustive;
    const ThinForest t = compute_thin_forest(gn, lp, z, 0, opt);
    CHECK(t.components == 1);
    REQUIRE(t.edges.size() == 1);
    CHECK(t.cost == doctest::Approx(3.0));  // min of the two arc costs
}

TEST_CASE("average round cost stays within 3*alpha*objective") {
    for (std::uint64_t seed = 21; seed <= 24; ++seed) {
        GenSpec spec;
        spec.n = 8;
        spec.seed = seed;
        spec.mode = GenusMode::Planar;
        const EmbeddedDigraph g = normalize_metric(generate(spec));
        const LpSolution lp = solve_held_karp(g);
        const SymWeights z = symmetrize(g, lp.x);
        ThinForestOptions opt;
        opt.audit = AuditMode::Exhaustive;
        opt.early_exit = false;  // run all N rounds so the mean is meaningful
        const ThinForest t = compute_thin_forest(g, lp, z, 0, opt);
        REQUIRE(!t.round_log.empty());
        double sum = 0.0;
        for (const RoundRecord& r : t.round_log) sum += r.cost;
        const double mean = sum / t.round_log.size();
        CHECK(t.cost <= mean + 1e-9);
        CHECK(mean <= 3.0 * 20.0 * lp.objective + 1e-9);
        CHECK(t.rounds_run == t.round_log.back().round);
    }
}

TEST_CASE("thin forest certificates hold on asymmetric instances") {
    for (std::uint64_t seed = 2; seed <= 7; ++seed) {
        GenSpec spec;
        spec.n = 9;
        spec.seed = seed * 31;
        spec.cost = CostModel::AsymmetricSkew;
        spec.skew = 25.0;
        spec.mode = GenusMode::Planar;
        const EmbeddedDigraph g = normalize_metric(generate(spec));
        const LpSolution lp = solve_held_karp(g);
        const SymWeights z = symmetrize(g, lp.x);
        ThinForestOptions opt;
        opt.audit = AuditMode::Exhaustive;
        const ThinForest t = compute_thin_forest(g, lp, z, 0, opt);
        CHECK(t.components == 1);
        CHECK(t.cost <= 60.0 * lp.objective + 1e-9);
        CHECK(t.alpha_hat <= 60.0 + 1e-9);
        // Per-edge charging: appearances never exceed the z0 budget.
        for (int e : g.edges())
            CHECK(t.appearances[e] <= t.z0_scaled[e] + 0.5);
    }
}
