#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "genus_atsp/atspe_io.hpp"
#include "genus_atsp/circulation.hpp"
#include "genus_atsp/harness.hpp"
#include "genus_atsp/rng.hpp"
#include "genus_atsp/tour.hpp"

using namespace genus_atsp;

namespace {

EmbeddedDigraph directed_cycle(int n, double cost = 1.0) {
    EmbeddedDigraph g(n);
    for (int i = 0; i < n; ++i) g.bind_edge(g.add_arc(i, (i + 1) % n, cost));
    g.default_rotations();
    g.validate();
    return g;
}

EmbeddedDigraph bidirected_cycle(int n) {
    EmbeddedDigraph g(n);
    for (int i = 0; i < n; ++i) g.add_bidirected(i, (i + 1) % n, 1.0, 1.0);
    g.default_rotations();
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("orient_forest picks the cheaper direction") {
    EmbeddedDigraph g(3);
    const int e0 = g.add_bidirected(0, 1, 1.0, 5.0);
    const int e1 = g.add_bidirected(1, 2, 3.0, 3.0);
    g.add_bidirected(2, 0, 2.0, 2.0);
    g.default_rotations();
    g.validate();

    const auto arcs = orient_forest(g, {e0, e1});
    REQUIRE(arcs.size() == 2);
    CHECK(g.arc(arcs[0]).tail == 0);
    CHECK(g.arc(arcs[0]).head == 1);
    // Tie on e1: lexicographically smaller (tail, head) = (1, 2).
    CHECK(g.arc(arcs[1]).tail == 1);
    CHECK(g.arc(arcs[1]).head == 2);
}

TEST_CASE("orient_forest uses the only available direction") {
    EmbeddedDigraph g(2);
    const int a = g.add_arc(0, 1, 9.0);
    const int b = g.add_arc(1, 0, 1.0);
    const int e0 = g.bind_edge(a);
    g.bind_edge(b);
    g.default_rotations();
    g.validate();
    const auto arcs = orient_forest(g, {e0});
    CHECK(arcs == std::vector<int>{a});
}

TEST_CASE("hoffman bounds match the rounding rule") {
    EmbeddedDigraph g(10);
    std::vector<int> forest_arcs;
    const int a0 = g.add_arc(0, 1, 1.0);
    const int e0 = g.bind_edge(a0);
    forest_arcs.push_back(a0);
    const int a1 = g.add_arc(1, 0, 1.0);
    g.bind_edge(a1);
    for (int i = 1; i < 10; ++i) g.add_bidirected(i % 10, (i + 1) % 10, 1.0, 1.0);
    g.default_rotations();
    (void)e0;

    std::vector<double> x(g.arc_slots(), 0.0);
    x[a0] = 0.1;  // forest arc
    x[a1] = 0.0;
    const BoundedArcNetwork b = hoffman_bounds(g, forest_arcs, x, 60.0);
    CHECK(b.lower[a0] == 1);
    CHECK(b.upper[a0] == 13);  // 1 + ceil(2 * 60 * 0.1)
    CHECK(b.lower[a1] == 0);
    CHECK(b.upper[a1] == 0);
    for (int a : g.arcs()) CHECK(b.lower[a] <= b.upper[a]);
    CHECK(b.slack_budget >= 0.0);
}

TEST_CASE("circulation on a directed 3-cycle with l=1, u=2 is all ones") {
    const auto g = directed_cycle(3);
    BoundedArcNetwork b;
    b.lower.assign(g.arc_slots(), 1);
    b.upper.assign(g.arc_slots(), 2);
    b.upper_grid.assign(g.arc_slots(), 2.0);
    const Circulation f = feasible_integer_circulation(g, b);
    for (int a : g.arcs()) CHECK(f.f[a] == 1);
    CHECK(f.cost == doctest::Approx(3.0));
}

TEST_CASE("zero bounds give the zero circulation") {
    const auto g = directed_cycle(4);
    BoundedArcNetwork b;
    b.lower.assign(g.arc_slots(), 0);
    b.upper.assign(g.arc_slots(), 0);
    b.upper_grid.assign(g.arc_slots(), 0.0);
    const Circulation f = feasible_integer_circulation(g, b);
    for (int a : g.arcs()) CHECK(f.f[a] == 0);
}

TEST_CASE("infeasible bounds raise a diagnostic") {
    // Lower bound on one arc of a cycle, upper bound zero on the rest.
    const auto g = directed_cycle(3);
    BoundedArcNetwork b;
    b.lower.assign(g.arc_slots(), 0);
    b.upper.assign(g.arc_slots(), 0);
    b.upper_grid.assign(g.arc_slots(), 0.0);
    b.lower[0] = 1;
    b.upper[0] = 1;
    CHECK_THROWS_AS(feasible_integer_circulation(g, b), Error);
}

TEST_CASE("walks: unit flow on a cycle is one closed walk") {
    const auto g = directed_cycle(3);
    Circulation f;
    f.f.assign(g.arc_slots(), 1);
    const WalkCover cover = walks_from_circulation(g, f, {});
    REQUIRE(cover.count() == 1);
    CHECK(cover.walks[0].arcs.size() == 3);
    CHECK(cover.total_cost == doctest::Approx(3.0));
}

TEST_CASE("walks: two flow components give two walks") {
    EmbeddedDigraph g(6);
    std::vector<int> cyc;
    for (int i = 0; i < 3; ++i) cyc.push_back(g.add_arc(i, (i + 1) % 3, 1.0));
    for (int i = 0; i < 3; ++i) cyc.push_back(g.add_arc(3 + i, 3 + (i + 1) % 3, 1.0));
    const int bridge_a = g.add_arc(2, 3, 1.0);
    const int bridge_b = g.add_arc(3, 2, 1.0);
    for (int a : cyc) g.bind_edge(a);
    g.bind_edge(bridge_a, bridge_b);
    g.default_rotations();
    g.validate();

    Circulation f;
    f.f.assign(g.arc_slots(), 0);
    for (int a : cyc) f.f[a] = 1;
    const WalkCover cover = walks_from_circulation(g, f, {});
    CHECK(cover.count() == 2);
    for (const ClosedWalk& w : cover.walks) CHECK(w.arcs.size() == 3);
}

TEST_CASE("walks: flowless vertices become degenerate walks") {
    EmbeddedDigraph g(4);
    std::vector<int> cyc;
    for (int i = 0; i < 3; ++i) cyc.push_back(g.add_arc(i, (i + 1) % 3, 1.0));
    const int out = g.add_arc(2, 3, 1.0);
    const int back = g.add_arc(3, 2, 1.0);
    for (int a : cyc) g.bind_edge(a);
    g.bind_edge(out, back);
    g.default_rotations();
    g.validate();

    Circulation f;
    f.f.assign(g.arc_slots(), 0);
    for (int a : cyc) f.f[a] = 1;
    const WalkCover cover = walks_from_circulation(g, f, {});
    REQUIRE(cover.count() == 2);
    CHECK(cover.walks[1].arcs.empty());
    CHECK(cover.walks[1].start_vertex == 3);

    const auto reps = representatives(g, cover);
    CHECK(reps == std::vector<int>{0, 3});
}

TEST_CASE("contracted instance keeps asymmetric shortest-path costs") {
    EmbeddedDigraph g(3);
    for (int i = 0; i < 3; ++i) g.add_bidirected(i, (i + 1) % 3, 1.0, 10.0);
    g.default_rotations();
    g.validate();
    const ShortestPaths sp = all_pairs_shortest_paths(g);
    const ContractedInstance inst = contracted_instance(g, sp, {0, 1, 2});
    CHECK(inst.cost[0][1] == doctest::Approx(1.0));
    CHECK(inst.cost[1][0] == doctest::Approx(2.0));  // 1->2->0 beats the 10-arc
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                CHECK(inst.cost[i][j] <= inst.cost[i][k] + inst.cost[k][j] + 1e-9);
}

TEST_CASE("exact dp equals permutation brute force") {
    Rng rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = rng.uniform_int(2, 7);
        ContractedInstance inst;
        inst.reps.resize(k);
        inst.cost.assign(k, std::vector<double>(k, 0.0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) inst.cost[i][j] = rng.uniform_int(1, 100);

        const RepTour dp = exact_atsp_dp(inst);
        // Brute force over all cyclic orders fixing rep 0 first.
        std::vector<int> perm;
        for (int i = 1; i < k; ++i) perm.push_back(i);
        double best = std::numeric_limits<double>::infinity();
        do {
            double c = inst.cost[0][perm[0]];
            for (int i = 0; i + 1 < k - 1; ++i) c += inst.cost[perm[i]][perm[i + 1]];
            c += inst.cost[perm.back()][0];
            best = std::min(best, c);
        } while (std::next_permutation(perm.begin(), perm.end()));

        CHECK(dp.cost == best);  // integer costs: exact equality
        CHECK(dp.order.size() == static_cast<std::size_t>(k));
    }
}

TEST_CASE("dp edge cases and the cap") {
    ContractedInstance one;
    one.reps = {7};
    one.cost = {{0.0}};
    CHECK(exact_atsp_dp(one).cost == 0.0);

    ContractedInstance three;
    three.reps = {0, 1, 2};
    three.cost = {{0, 2, 9}, {9, 0, 2}, {2, 9, 0}};
    CHECK(exact_atsp_dp(three).cost == doctest::Approx(6.0));
    CHECK_THROWS_AS(exact_atsp_dp(three, 2), Error);
}

TEST_CASE("greedy hook returns a valid tour no cheaper than the dp") {
    Rng rng(993);
    GreedyExchangeHook hook;
    for (int trial = 0; trial < 20; ++trial) {
        const int k = rng.uniform_int(2, 7);
        ContractedInstance inst;
        inst.reps.resize(k);
        inst.cost.assign(k, std::vector<double>(k, 0.0));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) inst.cost[i][j] = rng.uniform_int(1, 100);
        const RepTour greedy = hook.tour(inst);
        const RepTour dp = exact_atsp_dp(inst);
        std::set<int> seen(greedy.order.begin(), greedy.order.end());
        CHECK(seen.size() == static_cast<std::size_t>(k));
        CHECK(greedy.cost >= dp.cost - 1e-9);
    }
}

TEST_CASE("shortcut pass is idempotent and never increases cost") {
    Rng rng(555);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GenSpec spec;
        spec.n = 7;
        spec.seed = seed + 100;
        spec.mode = GenusMode::Planar;
        const EmbeddedDigraph g = normalize_metric(generate(spec));
        const ShortestPaths sp = all_pairs_shortest_paths(g);

        // A deliberately wasteful closed spanning walk via random hops.
        std::vector<int> stops;
        for (int v : g.vertices()) stops.push_back(v);
        rng.shuffle(stops);
        std::vector<int> walk;
        for (std::size_t i = 0; i < stops.size(); ++i) {
            const auto leg = sp.path_arcs(stops[i], stops[(i + 1) % stops.size()]);
            walk.insert(walk.end(), leg.begin(), leg.end());
        }
        REQUIRE(is_closed_spanning_walk(g, walk));

        double cost = 0.0;
        for (int a : walk) cost += g.arc_cost(a);
        const auto cut1 = shortcut_walk(g, sp, walk);
        double cost1 = 0.0;
        for (int a : cut1) cost1 += g.arc_cost(a);
        CHECK(cost1 <= cost + 1e-9);
        CHECK(is_closed_spanning_walk(g, cut1));
        const auto cut2 = shortcut_walk(g, sp, cut1);
        CHECK(cut2 == cut1);
    }
}

TEST_CASE("solve: bidirected unit cycles come out at cost n") {
    for (int n : {4, 5, 8}) {
        const auto g = bidirected_cycle(n);
        const SolveResult r = solve(g);
        CHECK(r.lp.objective == doctest::Approx(n));
        CHECK(r.tour.cost == doctest::Approx(n));
        CHECK(is_closed_spanning_walk(g, r.tour.arcs));
        CHECK(r.dp_certified);
    }
}

TEST_CASE("solve: two-vertex instance uses both arcs") {
    EmbeddedDigraph g(2);
    g.add_bidirected(0, 1, 4.0, 9.0);
    g.default_rotations();
    g.validate();
    const SolveResult r = solve(g);
    CHECK(r.tour.cost == doctest::Approx(13.0));
    CHECK(r.tour.arcs.size() == 2);
}

TEST_CASE("solve: directed cycle stays untouched by the shortcut") {
    const auto g = directed_cycle(5, 2.0);
    const SolveResult r = solve(g);
    CHECK(r.tour.cost == doctest::Approx(10.0));
    CHECK(r.tour.arcs.size() == 5);
}

TEST_CASE("solve: random instances meet every certificate") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        GenSpec spec;
        spec.n = 4 + static_cast<int>(seed % 5);
        spec.seed = seed * 97 + 3;
        spec.mode = seed % 3 == 0   ? GenusMode::RandomRotation
                    : seed % 3 == 1 ? GenusMode::Planar
                                    : GenusMode::Crosscaps;
        spec.crosscaps = 1 + static_cast<int>(seed % 2);
        const EmbeddedDigraph g = generate(spec);
        const SolveResult r = solve(g);

        CHECK(is_closed_spanning_walk(g, r.tour.arcs));
        CHECK(r.tour.cost <= 181.0 * r.lp.objective + 1e-6);
        CHECK(r.tour.cost <=
              r.cover.total_cost + r.dp_cost + 1e-6 * (1 + r.cover.total_cost));
        CHECK(r.cover.total_cost <= r.walk_bound + 1e-6 * (1 + r.walk_bound));
        CHECK(r.cover.count() <= std::max(r.forest.components, 1));

        const OracleResult oracle = brute_force_atsp(g);
        CHECK(r.lp.objective <= oracle.opt_cost + 1e-6 * (1 + oracle.opt_cost));
        CHECK(r.tour.cost + 1e-9 >= oracle.opt_cost);
    }
}

TEST_CASE("solve is deterministic") {
    GenSpec spec;
    spec.n = 8;
    spec.seed = 2024;
    spec.mode = GenusMode::Crosscaps;
    const EmbeddedDigraph g = generate(spec);
    SolveOptions opt;
    opt.seed = 7;
    const std::string a = certificate_json(solve(g, opt));
    const std::string b = certificate_json(solve(g, opt));
    CHECK(a == b);
    CHECK(a.find("\"lp\"") != std::string::npos);
    CHECK(a.find("\"ratio_vs_lp\"") != std::string::npos);
}

TEST_CASE("generator determinism and round-trips") {
    GenSpec spec;
    spec.n = 11;
    spec.seed = 42;
    spec.mode = GenusMode::Crosscaps;
    spec.crosscaps = 2;
    const EmbeddedDigraph g1 = generate(spec);
    const EmbeddedDigraph g2 = generate(spec);
    const std::string text1 = write_atspe_string(g1);
    CHECK(text1 == write_atspe_string(g2));

    const EmbeddedDigraph parsed = parse_atspe_string(text1);
    CHECK(write_atspe_string(parsed) == text1);
    CHECK(euler_genus(parsed.embedding()) == euler_genus(g1.embedding()));
}

TEST_CASE("generator rejects n < 2 and hits requested modes") {
    GenSpec bad;
    bad.n = 1;
    CHECK_THROWS_AS(generate(bad), Error);

    GenSpec planar;
    planar.n = 9;
    planar.seed = 5;
    planar.mode = GenusMode::Planar;
    CHECK(euler_genus(generate(planar).embedding()) == 0);

    GenSpec cross;
    cross.n = 9;
    cross.seed = 5;
    cross.mode = GenusMode::Crosscaps;
    cross.crosscaps = 2;
    CHECK(euler_genus(generate(cross).embedding()) >= 1);
}

TEST_CASE("oracle values on known instances") {
    CHECK(brute_force_atsp(directed_cycle(3)).opt_cost == doctest::Approx(3.0));
    EmbeddedDigraph pair(2);
    pair.add_bidirected(0, 1, 4.0, 9.0);
    pair.default_rotations();
    pair.validate();
    CHECK(brute_force_atsp(pair).opt_cost == doctest::Approx(13.0));

    GenSpec spec;
    spec.n = 13;
    CHECK_THROWS_AS(brute_force_atsp(generate(spec)), Error);
}

TEST_CASE("cut audit on the triangle tree") {
    EmbeddedDigraph g(3);
    for (int i = 0; i < 3; ++i) g.add_bidirected(i, (i + 1) % 3, 1.0, 1.0);
    g.default_rotations();
    g.validate();
    std::vector<double> z(g.edge_slots(), 1.0);
    const CutAudit audit = audit_cuts(g, {0, 1}, z, AuditSpec{});
    CHECK(audit.cuts_checked == 3);  // 2^{3-1} - 1
    CHECK(audit.max_ratio == doctest::Approx(1.0));
    CHECK(audit.min_cut_weight == doctest::Approx(2.0));

    AuditSpec sampled;
    sampled.exhaustive = false;
    sampled.samples = 64;
    sampled.seed = 9;
    const CutAudit s1 = audit_cuts(g, {0, 1}, z, sampled);
    const CutAudit s2 = audit_cuts(g, {0, 1}, z, sampled);
    CHECK(s1.max_ratio == s2.max_ratio);
    CHECK(s1.worst_mask == s2.worst_mask);
}

TEST_CASE("adding an arc never increases the oracle optimum") {
    // Same 4-cycle with and without a diagonal shortcut.
    auto build = [](bool with_chord) {
        EmbeddedDigraph g(4);
        g.add_bidirected(0, 1, 5.0, 5.0);
        g.add_bidirected(1, 2, 5.0, 5.0);
        g.add_bidirected(2, 3, 5.0, 5.0);
        g.add_bidirected(3, 0, 5.0, 5.0);
        if (with_chord) g.add_bidirected(0, 2, 1.0, 1.0);
        g.default_rotations();
        g.validate();
        return g;
    };
    const double before = brute_force_atsp(build(false)).opt_cost;
    const double after = brute_force_atsp(build(true)).opt_cost;
    CHECK(after <= before);
    CHECK(before == doctest::Approx(20.0));
}

TEST_CASE("exhaustive audit at n=12 checks 2047 cuts") {
    GenSpec spec;
    spec.n = 12;
    spec.seed = 77;
    spec.mode = GenusMode::Planar;
    const EmbeddedDigraph g = generate(spec);
    std::vector<double> z(g.edge_slots(), 1.0);
    const CutAudit audit = audit_cuts(g, {}, z, AuditSpec{});
    CHECK(audit.cuts_checked == 2047);  // 2^{12-1} - 1
}

TEST_CASE("normalization never increases a cost") {
    for (std::uint64_t seed = 11; seed <= 14; ++seed) {
        GenSpec spec;
        spec.n = 9;
        spec.seed = seed;
        spec.mode = GenusMode::RandomRotation;
        const EmbeddedDigraph g = generate(spec);
        const EmbeddedDigraph h = normalize_metric(g);
        for (int a : g.arcs()) CHECK(h.arc_cost(a) <= g.arc_cost(a) + 1e-12);
    }
}

TEST_CASE("parser rejects the documented malformations") {
    const auto g = bidirected_cycle(3);
    std::string text = write_atspe_string(g);

    SUBCASE("round trip is clean") {
        CHECK(write_atspe_string(parse_atspe_string(text)) == text);
    }
    SUBCASE("duplicated end") {
        std::string bad = text;
        const auto pos = bad.find("rot 0");
        bad.insert(bad.find('\n', pos), " 0.0");
        CHECK_THROWS_WITH_AS(parse_atspe_string(bad),
                             doctest::Contains("MalformedRotation"), Error);
    }
    SUBCASE("negative cost") {
        std::string bad = text;
        bad.replace(bad.find("arc 0 0 1 1"), 11, "arc 0 0 1 -1");
        CHECK_THROWS_WITH_AS(parse_atspe_string(bad),
                             doctest::Contains("NegativeCost"), Error);
    }
    SUBCASE("missing strong connectivity") {
        EmbeddedDigraph h(3);
        h.bind_edge(h.add_arc(0, 1, 1.0));
        h.bind_edge(h.add_arc(1, 2, 1.0));
        h.bind_edge(h.add_arc(0, 2, 1.0));
        h.default_rotations();
        CHECK_THROWS_WITH_AS(h.validate(),
                             doctest::Contains("NotStronglyConnected"), Error);
    }
    SUBCASE("missing header") {
        CHECK_THROWS_AS(parse_atspe_string("vertices 2\n"), Error);
    }
}
