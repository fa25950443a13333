#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "genus_atsp/held_karp.hpp"
#include "genus_atsp/flow.hpp"
#include "genus_atsp/simplex.hpp"

using namespace genus_atsp;

namespace {

EmbeddedDigraph directed_cycle(int n, double cost = 1.0) {
    EmbeddedDigraph g(n);
    for (int i = 0; i < n; ++i) {
        const int a = g.add_arc(i, (i + 1) % n, cost);
        g.bind_edge(a);
    }
    g.default_rotations();
    g.validate();
    return g;
}

EmbeddedDigraph bidirected_triangle(double c_fwd = 1.0, double c_rev = 1.0) {
    EmbeddedDigraph g(3);
    for (int i = 0; i < 3; ++i) g.add_bidirected(i, (i + 1) % 3, c_fwd, c_rev);
    g.default_rotations();
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("simplex solves a one-constraint LP") {
    DenseSimplex lp;
    std::vector<LpColumn> cols(3);
    cols[0].entries = {{0, 1.0}};
    cols[1].entries = {{0, 1.0}};
    cols[2].entries = {{0, -1.0}};  // surplus
    const LpResult res = lp.solve(1, cols, {2.0, 3.0, 0.0}, {1.0});
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0));
    CHECK(res.x[0] == doctest::Approx(1.0));
    CHECK(res.x[1] == doctest::Approx(0.0));
}

TEST_CASE("simplex reports infeasibility") {
    DenseSimplex lp;
    std::vector<LpColumn> cols(1);
    cols[0].entries = {{0, -1.0}};
    const LpResult res = lp.solve(1, cols, {1.0}, {1.0});
    CHECK(res.status == LpStatus::Infeasible);
}

TEST_CASE("simplex handles degenerate equality rows") {
    // min x1 + x2 s.t. x1 - x2 = 0, x1 + x2 - s = 2.
    DenseSimplex lp;
    std::vector<LpColumn> cols(3);
    cols[0].entries = {{0, 1.0}, {1, 1.0}};
    cols[1].entries = {{0, -1.0}, {1, 1.0}};
    cols[2].entries = {{1, -1.0}};
    const LpResult res = lp.solve(2, cols, {1.0, 1.0, 0.0}, {0.0, 2.0});
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(2.0));
    CHECK(res.x[0] == doctest::Approx(1.0));
    CHECK(res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("max flow on a diamond") {
    MaxFlow mf(4);
    mf.add_arc(0, 1, 1.0);
    mf.add_arc(0, 2, 1.0);
    mf.add_arc(1, 3, 1.0);
    mf.add_arc(2, 3, 0.5);
    CHECK(mf.solve(0, 3) == doctest::Approx(1.5));
    const auto side = mf.min_cut_source_side();
    CHECK(side.size() >= 1);
}

TEST_CASE("min cost flow prefers the cheap route") {
    MinCostFlow mcf(4);
    mcf.add_arc(0, 1, 5, 1.0);
    mcf.add_arc(1, 3, 5, 1.0);
    mcf.add_arc(0, 2, 5, 10.0);
    mcf.add_arc(2, 3, 5, 10.0);
    const auto [flow, cost] = mcf.solve(0, 3);
    CHECK(flow == 10);
    CHECK(cost == doctest::Approx(5 * 2.0 + 5 * 20.0));
    CHECK(mcf.flow_on(0) == 5);
}

TEST_CASE("normalize_metric replaces costs by shortest-path distances") {
    // Arc (0,1) costs 10 while the route 0 -> 2 -> 1 costs 3.
    EmbeddedDigraph g(3);
    const int direct = g.add_arc(0, 1, 10.0);
    g.bind_edge(direct);
    const int leg1 = g.add_arc(0, 2, 1.0);
    g.bind_edge(leg1);
    const int leg2 = g.add_arc(2, 1, 2.0);
    g.bind_edge(leg2);
    const int back = g.add_arc(1, 0, 1.0);
    g.bind_edge(back);
    g.default_rotations();
    g.validate();

    const EmbeddedDigraph h = normalize_metric(g);
    CHECK(h.arc_cost(direct) == doctest::Approx(3.0));
    CHECK(h.arc_cost(leg1) == doctest::Approx(1.0));

    const EmbeddedDigraph h2 = normalize_metric(h);
    for (int a : h.arcs()) CHECK(h2.arc_cost(a) == doctest::Approx(h.arc_cost(a)));
}

TEST_CASE("held-karp on a directed 3-cycle: x = 1 everywhere, objective 3") {
    const auto g = directed_cycle(3);
    const LpSolution sol = solve_held_karp(g);
    CHECK(sol.objective == doctest::Approx(3.0));
    for (int a : g.arcs()) CHECK(sol.x[a] == doctest::Approx(1.0));
}

TEST_CASE("held-karp on the bidirected triangle: objective 3") {
    const auto g = bidirected_triangle();
    const LpSolution sol = solve_held_karp(g);
    CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("held-karp on two directed 3-cycles sharing a vertex: objective 6") {
    EmbeddedDigraph g(5);
    auto arc = [&](int u, int v) { g.bind_edge(g.add_arc(u, v, 1.0)); };
    arc(0, 1);
    arc(1, 2);
    arc(2, 0);
    arc(0, 3);
    arc(3, 4);
    arc(4, 0);
    g.default_rotations();
    g.validate();
    const LpSolution sol = solve_held_karp(g);
    CHECK(sol.objective == doctest::Approx(6.0));
}

TEST_CASE("held-karp solution satisfies conservation and all cuts") {
    const auto g = bidirected_triangle(1.0, 5.0);
    const LpSolution sol = solve_held_karp(g);
    for (int v : g.vertices()) {
        double out = 0.0, in = 0.0;
        for (int a : g.out_arcs(v)) out += sol.x[a];
        for (int a : g.in_arcs(v)) in += sol.x[a];
        CHECK(std::abs(out - in) <= 1e-6);
    }
    CHECK_FALSE(separate_subtour(g, sol.x).has_value());
    // Exhaustive check of all proper cuts.
    for (std::uint64_t mask = 1; mask < 7; ++mask)
        CHECK(x_cut_out(g, sol.x, mask) >= 1.0 - 1e-6);
}

TEST_CASE("separation finds a starving cut") {
    // Two directed 3-cycles joined by zero-weight arcs.
    EmbeddedDigraph g(6);
    auto arc = [&](int u, int v) {
        const int a = g.add_arc(u, v, 1.0);
        g.bind_edge(a);
        return a;
    };
    std::vector<double> x(14, 0.0);
    x[arc(0, 1)] = 1.0;
    x[arc(1, 2)] = 1.0;
    x[arc(2, 0)] = 1.0;
    x[arc(3, 4)] = 1.0;
    x[arc(4, 5)] = 1.0;
    x[arc(5, 3)] = 1.0;
    arc(2, 3);
    arc(3, 2);
    g.default_rotations();
    g.validate();
    x.resize(g.arc_slots(), 0.0);

    const auto cut = separate_subtour(g, x);
    REQUIRE(cut.has_value());
    const std::uint64_t mask = mask_of(*cut);
    CHECK(x_cut_out(g, x, mask) == doctest::Approx(0.0));
    // One of the two cycles, possibly as the complement side.
    const bool cycle_a = mask == mask_of({0, 1, 2});
    const bool cycle_b = mask == mask_of({3, 4, 5});
    CHECK((cycle_a || cycle_b));
}

TEST_CASE("separation accepts a feasible solution") {
    const auto g = directed_cycle(4);
    std::vector<double> x(g.arc_slots(), 1.0);
    CHECK_FALSE(separate_subtour(g, x).has_value());
}

TEST_CASE("separation flags the all-zero solution") {
    const auto g = directed_cycle(3);
    std::vector<double> x(g.arc_slots(), 0.0);
    CHECK(separate_subtour(g, x).has_value());
}

TEST_CASE("symmetrize adds the two directions") {
    EmbeddedDigraph g(2);
    const int a = g.add_arc(0, 1, 1.0);
    const int b = g.add_arc(1, 0, 1.0);
    const int e = g.bind_edge(a, b);
    g.default_rotations();
    g.validate();
    std::vector<double> x(g.arc_slots(), 0.0);
    x[a] = 0.3;
    x[b] = 0.7;
    CHECK(symmetrize(g, x).z[e] == doctest::Approx(1.0));

    EmbeddedDigraph h(2);
    const int c = h.add_arc(0, 1, 1.0);
    const int d = h.add_arc(1, 0, 1.0);
    const int e1 = h.bind_edge(c);
    const int e2 = h.bind_edge(d);
    h.default_rotations();
    h.validate();
    std::vector<double> y(h.arc_slots(), 0.0);
    y[c] = 1.0;
    CHECK(symmetrize(h, y).z[e1] == doctest::Approx(1.0));
    CHECK(symmetrize(h, y).z[e2] == doctest::Approx(0.0));
}

TEST_CASE("symmetrized optimum puts weight 2 across every cut") {
    for (const auto& g : {bidirected_triangle(), bidirected_triangle(2.0, 9.0)}) {
        const LpSolution sol = solve_held_karp(g);
        const SymWeights w = symmetrize(g, sol.x);
        const std::uint64_t full = (1u << g.vertex_count()) - 1;
        for (std::uint64_t mask = 1; mask < full; ++mask)
            CHECK(z_cut(g, w.z, mask) >= 2.0 - 1e-6);
    }
}
