#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "shforge/lift.hpp"

using namespace shforge;

namespace {
Hypergraph two_triples() { return Hypergraph(3, 5, {{0, 1, 2}, {2, 3, 4}}); }
}

TEST_CASE("component graph example (s=5, m=2)") {
    GtTemplate t2 = build_component_graph(two_triples(), 2);
    CHECK(t2.vertex_count() == 12);
    CHECK(t2.petal_edges.size() == 2 * 10);       // t C(s,2)
    CHECK(t2.core_edges.size() == 1);             // C(m,2)
    CHECK(t2.connector_edges.size() == 3 * 2 * 2);  // r m t
    CHECK(t2.graph_edge_count() == 33);

    GtTemplate t1 = build_component_graph(two_triples(), 1);
    CHECK(t1.vertex_count() == 7);
    CHECK(t1.graph_edge_count() == 17);

    // the three edge sets are pairwise disjoint
    auto norm = [](std::pair<int, int> e) {
        return std::pair<int, int>{std::min(e.first, e.second), std::max(e.first, e.second)};
    };
    std::set<std::pair<int, int>> all;
    for (auto e : t2.all_edges()) CHECK(all.insert(norm(e)).second);
    CHECK(all.size() == 33);

    // petal and core induced subgraphs are complete
    for (int i = 0; i < t2.t; ++i)
        for (int a = 0; a < t2.s; ++a)
            for (int b = a + 1; b < t2.s; ++b)
                CHECK(all.count({i * t2.s + a, i * t2.s + b}));
    for (int a = 0; a < t2.m; ++a)
        for (int b = a + 1; b < t2.m; ++b)
            CHECK(all.count({t2.core_vertex(a), t2.core_vertex(b)}));
}

TEST_CASE("component graph preconditions") {
    CHECK_THROWS_AS(build_component_graph(two_triples(), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_component_graph(Hypergraph(3, 4, {{0, 1, 2}}), 2), std::invalid_argument);
}

TEST_CASE("lifting the embeddings") {
    GtTemplate tmpl = build_component_graph(two_triples(), 2);
    LiftedGraph lifted = lift(tmpl);
    CHECK(lifted.graph.uniformity() == 4);
    CHECK(lifted.graph.edge_count() == 4);  // m t
    CHECK(lifted.graph.vertex_count() == 12);

    // same petal -> distinct cores; cores are the two top vertices
    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < lifted.graph.edge_count(); ++e) {
        CHECK(lifted.meta[e].core >= 10);
        CHECK(seen.insert({lifted.meta[e].petal, lifted.meta[e].core}).second);
    }
    CHECK(verify_lift(lifted, two_triples()));
    CHECK(!find_violation_naive(lifted.graph, 3 * 3 - 1, 3).has_value());
    CHECK(is_almost_linear(lifted.graph));
}

TEST_CASE("single petal lift") {
    GtTemplate tmpl = build_component_graph(two_triples(), 1);
    LiftedGraph lifted = lift(tmpl);
    CHECK(lifted.graph.edge_count() == 2);
    CHECK(verify_lift(lifted, two_triples()));
    CHECK(!find_violation_naive(lifted.graph, 8, 3).has_value());
}

TEST_CASE("lift of a non-almost-linear seed passes only the structural checks") {
    Hypergraph seed(4, 5, {{0, 1, 2, 3}, {0, 1, 2, 4}});
    GtTemplate tmpl = build_component_graph(seed, 2);
    LiftedGraph lifted = lift(tmpl);
    CHECK(lifted.graph.edge_count() == 4);
    CHECK(verify_lift(lifted, seed));  // linearity assertions are gated off
    CHECK_FALSE(is_almost_linear(lifted.graph));
}

TEST_CASE("packing: single slot yields a single copy") {
    GtTemplate tmpl = build_component_graph(two_triples(), 2);
    SimpleGraph g{tmpl.vertex_count(), tmpl.all_edges()};
    PackingPlan plan = greedy_induced_packing(g.n, g, 1, 50);
    CHECK(plan.copies.size() == 1);
    CHECK(verify_packing(plan, g));
}

TEST_CASE("packing: K_2 into K_4 saturates all six pairs") {
    SimpleGraph k2{2, {{0, 1}}};
    PackingPlan plan = greedy_induced_packing(4, k2, 1, 2000);
    CHECK(plan.copies.size() == 6);
    CHECK(verify_packing(plan, k2));
}

TEST_CASE("packing: template into K_40") {
    GtTemplate tmpl = build_component_graph(two_triples(), 2);
    SimpleGraph g{tmpl.vertex_count(), tmpl.all_edges()};
    PackingPlan plan = greedy_induced_packing(40, g, 1, 500);
    CHECK(plan.copies.size() >= 2);
    CHECK(verify_packing(plan, g));
    CHECK_THROWS_AS(greedy_induced_packing(11, g, 1, 10), std::invalid_argument);
}

TEST_CASE("packing plans serialize") {
    SimpleGraph k2{2, {{0, 1}}};
    PackingPlan plan = greedy_induced_packing(4, k2, 1, 100);
    nlohmann::json j = packing_plan_to_json(plan);
    CHECK(j["n"] == 4);
    CHECK(j["copies"].size() == plan.copies.size());
    CHECK(j["copy_count"] == plan.copies.size());
}

TEST_CASE("construct_lifted end to end") {
    Hypergraph seed(3, 6, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}});
    LiftedUnion u = construct_lifted(seed, 2, 40, 1);
    const std::size_t l = u.plan.copies.size();
    CHECK(l >= 1);
    CHECK(u.graph.edge_count() == 3 * 2 * l);
    CHECK(u.graph.uniformity() == 4);
    CHECK(!find_violation_naive(u.graph, 8, 3).has_value());
    CHECK(is_almost_linear(u.graph));
    CHECK(verify_packing(u.plan, SimpleGraph{build_component_graph(seed, 2).vertex_count(),
                                             build_component_graph(seed, 2).all_edges()}));

    // Copy dichotomy: intersections <= 2 within a copy, <= 1 across copies.
    for (std::size_t a = 0; a < u.graph.edge_count(); ++a)
        for (std::size_t b = a + 1; b < u.graph.edge_count(); ++b) {
            int cap = (u.meta[a].copy == u.meta[b].copy) ? 2 : 1;
            CHECK(u.graph.intersection_size(a, b) <= cap);
        }

    nlohmann::json meta = union_meta_to_json(u);
    CHECK(meta["edges"].size() == u.graph.edge_count());
    CHECK(meta["m"] == 3);
    CHECK(meta["t"] == 2);
}

TEST_CASE("construct_lifted with a single copy is the lifted graph relabeled") {
    Hypergraph seed = two_triples();
    GtTemplate tmpl = build_component_graph(seed, 2);
    LiftedUnion u = construct_lifted(seed, 2, tmpl.vertex_count(), 1);
    CHECK(u.plan.copies.size() == 1);
    CHECK(u.graph.edge_count() == lift(tmpl).graph.edge_count());
}

TEST_CASE("construct_lifted preconditions") {
    Hypergraph not_linear(4, 5, {{0, 1, 2, 3}, {0, 1, 2, 4}});
    CHECK_THROWS_AS(construct_lifted(not_linear, 2, 40, 1), std::invalid_argument);

    Hypergraph not_free(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
    CHECK_THROWS_AS(construct_lifted(not_free, 2, 40, 1), std::invalid_argument);

    Hypergraph ok = two_triples();
    CHECK_THROWS_AS(construct_lifted(ok, 2, 5, 1), std::invalid_argument);  // n too small
    CHECK_THROWS_AS(construct_lifted(Hypergraph(3, 3, {{0, 1, 2}}), 2, 40, 1),
                    std::invalid_argument);  // m = 1
}
