#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shforge/hypergraph.hpp"
#include "shforge/util.hpp"
#include "test_helpers.hpp"

using namespace shforge;

TEST_CASE("canonicalization and validation") {
    Hypergraph h(3, 5, {{4, 3, 2}, {2, 1, 0}});
    CHECK(h.edges() == std::vector<std::vector<int>>{{0, 1, 2}, {2, 3, 4}});
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1}}), std::invalid_argument);          // arity
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 5}}), std::invalid_argument);       // range
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 1}}), std::invalid_argument);       // repeat
    CHECK_THROWS_AS(Hypergraph(3, 5, {{0, 1, 2}, {2, 1, 0}}), std::invalid_argument);  // duplicate
}

TEST_CASE("codegree examples") {
    Hypergraph h(3, 4, {{0, 1, 2}, {0, 1, 3}});
    CHECK(codegree(h, {0, 1}) == 2);
    CHECK(codegree(h, {}) == 2);  // empty set lies in every edge
    CHECK(codegree(Hypergraph(3, 4, {{0, 1, 2}}), {3}) == 0);
    CHECK_THROWS_AS(codegree(h, {7}), std::invalid_argument);
}

TEST_CASE("freeness examples") {
    Hypergraph loose(3, 6, {{0, 1, 2}, {2, 3, 4}, {0, 4, 5}});
    CHECK(is_free(loose, 5, 3));  // the only triple spans 6 vertices

    Hypergraph tight(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
    auto w = find_violation(tight, 5, 3);
    REQUIRE(w.has_value());
    CHECK(w->union_size == 4);
    CHECK(w->edge_indices == std::vector<std::size_t>{0, 1, 2});
    CHECK(find_violation_naive(tight, 5, 3) == w);
}

TEST_CASE("degenerate cases") {
    Hypergraph two(3, 6, {{0, 1, 2}, {3, 4, 5}});
    CHECK(is_free(two, 5, 3));        // fewer than e edges
    CHECK(is_free(Hypergraph::empty(3, 6), 5, 3));
    CHECK_THROWS_AS(find_violation(two, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(find_violation(two, 2, 2), std::invalid_argument);  // v < r
}

TEST_CASE("pairwise freeness (e = 2)") {
    Hypergraph h(3, 6, {{0, 1, 2}, {0, 1, 3}, {3, 4, 5}});
    // v = 4: a violating pair must share >= 2 vertices
    auto w = find_violation(h, 4, 2);
    REQUIRE(w.has_value());
    CHECK(w->edge_indices == std::vector<std::size_t>{0, 1});
    CHECK(w->union_size == 4);
    CHECK(find_violation_naive(h, 4, 2) == w);
    CHECK(is_free(Hypergraph(3, 8, {{0, 1, 2}, {2, 3, 4}}), 4, 2));
}

TEST_CASE("almost linear") {
    CHECK(is_almost_linear(Hypergraph(4, 6, {{0, 1, 2, 3}, {2, 3, 4, 5}})));
    CHECK_FALSE(is_almost_linear(Hypergraph(4, 6, {{0, 1, 2, 3}, {0, 1, 2, 4}})));
    CHECK(is_almost_linear(Hypergraph(4, 4, {{0, 1, 2, 3}})));
}

TEST_CASE("locally sparse") {
    CHECK(is_locally_sparse(Hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}}), 3, 2));
    CHECK_FALSE(is_locally_sparse(Hypergraph(3, 4, {{0, 1, 2}, {0, 1, 3}}), 2, 2));
}

TEST_CASE("codegree distribution examples and identities") {
    CodegreeCensus c1 = codegree_distribution(Hypergraph(3, 3, {{0, 1, 2}}), 2);
    CHECK(c1.counts == std::map<std::uint64_t, std::uint64_t>{{1, 3}});

    CodegreeCensus c0 = codegree_distribution(Hypergraph::empty(3, 4), 2);
    CHECK(c0.counts == std::map<std::uint64_t, std::uint64_t>{{0, 6}});

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 3 + static_cast<int>(rng() % 3);
        int n = r + 3 + static_cast<int>(rng() % 8);
        int m = 1 + static_cast<int>(rng() % 25);
        Hypergraph h = testing::random_hypergraph(r, n, m, rng);
        for (int k = 1; k < r; ++k) {
            CodegreeCensus c = codegree_distribution(h, k);
            std::uint64_t total = 0, weighted = 0;
            for (auto [d, cnt] : c.counts) {
                total += cnt;
                weighted += d * cnt;
            }
            CHECK(total == binomial_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
            CHECK(weighted == binomial_u64(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(k)) * h.edge_count());
        }
    }
}

TEST_CASE("prune_codegree_one examples") {
    auto [g1, n1] = prune_codegree_one(Hypergraph(3, 3, {{0, 1, 2}}), 2);
    CHECK(g1.edge_count() == 0);
    CHECK(n1 == 1);

    auto [g2, n2] = prune_codegree_one(Hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}}), 2);
    CHECK(g2.edge_count() == 0);
    CHECK(n2 == 2);

    auto [g3, n3] = prune_codegree_one(Hypergraph::empty(3, 5), 2);
    CHECK(g3.edge_count() == 0);
    CHECK(n3 == 0);
}

TEST_CASE("prune_codegree_one leaves no codegree-one subset") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int r = 3 + static_cast<int>(rng() % 2);
        int n = r + 4 + static_cast<int>(rng() % 6);
        Hypergraph h = testing::random_hypergraph(r, n, 4 + static_cast<int>(rng() % 20), rng);
        int k = 2 + static_cast<int>(rng() % (r - 2 ? r - 2 : 1));
        auto [pruned, removed] = prune_codegree_one(h, k);
        CHECK(pruned.edge_count() + removed == h.edge_count());
        for (const auto& [subset, edges] : codegree_incidence(pruned, k - 1))
            CHECK(edges.size() != 1);
        // edge set is a subset of the input's
        for (const auto& e : pruned.edges())
            CHECK(std::binary_search(h.edges().begin(), h.edges().end(), e));
    }
}

TEST_CASE("optimized verifier equals the naive oracle on random graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int r = 3 + static_cast<int>(rng() % 3);
        int n = r + 4 + static_cast<int>(rng() % 10);
        int m = 3 + static_cast<int>(rng() % 50);
        Hypergraph h = testing::random_hypergraph(r, n, m, rng);
        for (int k = 2; k < r; ++k) {
            CHECK(find_violation(h, 3 * r - 2 * k, 3) == find_violation_naive(h, 3 * r - 2 * k, 3));
            CHECK(find_violation(h, 2 * r - k, 2) == find_violation_naive(h, 2 * r - k, 2));
        }
        // thresholds where the pair index is unusable fall back to enumeration
        CHECK(find_violation(h, 3 * r - 3, 3) == find_violation_naive(h, 3 * r - 3, 3));
    }
}

TEST_CASE("naive verifier refuses oversized enumerations") {
    std::mt19937_64 rng(29);
    Hypergraph h = testing::random_hypergraph(3, 20, 100, rng);
    CHECK_THROWS_AS(find_violation_naive(h, 5, 3, 1000), ResourceError);
}

TEST_CASE("hg format golden and round-trip") {
    Hypergraph h(3, 4, {{0, 1, 3}, {0, 1, 2}});
    CHECK(to_hg_string(h) == "3 4 2\n0 1 2\n0 1 3\n");
    CHECK(parse_hg_string(to_hg_string(h)) == h);

    Hypergraph e = Hypergraph::empty(3, 0);
    CHECK(to_hg_string(e) == "3 0 0\n");
    CHECK(parse_hg_string(to_hg_string(e)) == e);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        int r = 2 + static_cast<int>(rng() % 4);
        int n = r + static_cast<int>(rng() % 20);
        Hypergraph g = testing::random_hypergraph(r, n, static_cast<int>(rng() % 30), rng);
        std::string s = to_hg_string(g);
        CHECK(to_hg_string(parse_hg_string(s)) == s);
    }
}

TEST_CASE("hg parser is strict") {
    CHECK_THROWS_AS(parse_hg_string(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_hg_string("3 4 1\n0 1 2"), std::invalid_argument);      // no trailing LF
    CHECK_THROWS_AS(parse_hg_string("3 4 2\n0 1 2\n"), std::invalid_argument);    // count mismatch
    CHECK_THROWS_AS(parse_hg_string("3 4 1\n0 2 1\n"), std::invalid_argument);    // not ascending
    CHECK_THROWS_AS(parse_hg_string("3 4 2\n0 1 3\n0 1 2\n"), std::invalid_argument);  // unsorted lines
    CHECK_THROWS_AS(parse_hg_string("3 4 1\n0  1 2\n"), std::invalid_argument);   // double space
    CHECK_THROWS_AS(parse_hg_string("3 4 1\n0 1 2 \n"), std::invalid_argument);   // trailing space
}
