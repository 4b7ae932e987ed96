#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "shforge/algebraic.hpp"
#include "shforge/hypergraph.hpp"

using namespace shforge;

TEST_CASE("largest prime below") {
    CHECK(largest_prime_leq(25) == 23);
    CHECK(largest_prime_leq(2) == 2);
    CHECK(largest_prime_leq(23) == 23);
    CHECK_FALSE(largest_prime_leq(1).has_value());
    CHECK_FALSE(largest_prime_leq(0).has_value());
}

TEST_CASE("small base construction") {
    auto [g, report] = construct_recursive(3, 2, 5);
    CHECK(g.edge_count() == 2);
    CHECK(report.verified);
    CHECK(report.levels.size() == 1);
    CHECK(report.levels[0].strategy == "exact-base");
    CHECK(verify_construction(g, 3, 2));
}

TEST_CASE("skeleton recursion at n = 15") {
    auto [g, report] = construct_recursive(3, 2, 15);
    CHECK(g.vertex_count() == 15);
    CHECK(g.edge_count() == 31);  // 25 skeleton + 3 * 2 children
    CHECK(report.verified);
    REQUIRE(report.levels.size() == 2);
    CHECK(report.levels[0].strategy == "skeleton");
    CHECK(report.levels[0].q == 5);
    CHECK(report.levels[0].skeleton_edges == 25);
    CHECK(report.levels[0].child_edges == 2);
    CHECK(report.levels[0].vector == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(report.levels[1].n == 5);
    CHECK(report.target_count == "75/2");  // 15^2 / 6
    CHECK(!find_violation_naive(g, 5, 3).has_value());
    CHECK(max_pairwise_intersection(g) <= 1);
}

TEST_CASE("degenerate sizes") {
    auto [g0, r0] = construct_recursive(3, 2, 0);
    CHECK(g0.edge_count() == 0);
    CHECK(r0.verified);
    auto [g2, r2] = construct_recursive(3, 2, 2);
    CHECK(g2.edge_count() == 0);
    CHECK_THROWS_AS(construct_recursive(2, 2, 10), std::invalid_argument);
    CHECK_THROWS_AS(construct_recursive(3, 1, 10), std::invalid_argument);
}

TEST_CASE("level identity holds along the n = 75 chain") {
    auto [g, report] = construct_recursive(3, 2, 75);
    CHECK(report.verified);
    // every skeleton level satisfies |F| = q^k + r * |child|
    std::size_t skeletons = 0;
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& level = report.levels[i];
        if (level.strategy != "skeleton") continue;
        ++skeletons;
        CHECK(level.skeleton_edges == level.q * level.q);
        CHECK(level.edge_count == level.skeleton_edges + 3 * level.child_edges);
        REQUIRE(i + 1 < report.levels.size());
        CHECK(report.levels[i + 1].edge_count == level.child_edges);
        CHECK(report.levels[i + 1].n == level.q);
    }
    CHECK(skeletons >= 2);
    CHECK(g.edge_count() == report.edge_count);
    CHECK(verify_construction(g, 3, 2));
}

TEST_CASE("isolated vertices are kept when rq < n") {
    auto [g, report] = construct_recursive(3, 2, 17);
    CHECK(g.vertex_count() == 17);
    CHECK(report.levels[0].q == 5);  // 3*5 = 15 active vertices, 2 isolated
    CHECK(g.edge_count() == 31);
    for (const auto& e : g.edges())
        for (int v : e) CHECK(v < 15);
}

TEST_CASE("verify_construction rejects intersection violations") {
    Hypergraph bad(3, 5, {{0, 1, 2}, {0, 1, 3}});  // pair shares k = 2 vertices
    CHECK_FALSE(verify_construction(bad, 3, 2));
    CHECK(verify_construction(Hypergraph::empty(3, 5), 3, 2));
}

TEST_CASE("construction is deterministic") {
    auto [g1, r1] = construct_recursive(3, 2, 33, {0.525, 0, 64, 9});
    auto [g2, r2] = construct_recursive(3, 2, 33, {0.525, 0, 64, 9});
    CHECK(to_hg_string(g1) == to_hg_string(g2));
    CHECK(construction_report_to_json(r1) == construction_report_to_json(r2));
}

TEST_CASE("report serializes with the analytic target") {
    auto [g, report] = construct_recursive(4, 2, 20);
    nlohmann::json j = construction_report_to_json(report);
    CHECK(j["n"] == 20);
    CHECK(j["r"] == 4);
    CHECK(j["k"] == 2);
    CHECK(j["target_count"] == "100/3");  // 400/12
    CHECK(j["edge_count"] == report.edge_count);
    CHECK(j["levels"].size() == report.levels.size());
    CHECK(j["verified"] == true);
}

TEST_CASE("edge counts are monotone in n for (r,k) = (3,2)") {
    std::uint64_t prev = 0;
    for (std::uint64_t n = 3; n <= 200; ++n) {
        auto [g, report] = construct_recursive(3, 2, n);
        CHECK(report.edge_count >= prev);
        CHECK(report.verified);
        prev = report.edge_count;
    }
}
