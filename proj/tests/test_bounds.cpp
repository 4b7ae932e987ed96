#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "shforge/bounds.hpp"
#include "shforge/lift.hpp"
#include "shforge/phm.hpp"

using namespace shforge;

TEST_CASE("density formulas") {
    CHECK(lower_bound_density(3, 2) == Rational(1, 6));
    CHECK(lower_bound_density(4, 2) == Rational(1, 12));
    CHECK(lower_bound_density(4, 3) == Rational(1, 60));
    CHECK(upper_bound_density(3, 2) == Rational(1, 5));
    CHECK(upper_bound_density(4, 2) == Rational(1, 11));
    CHECK(upper_bound_density(4, 3) == Rational(1, 21));
    CHECK(upper_bound_density(5, 3) == Rational(1, 57));
    CHECK(pi_r23(3) == Rational(1, 5));
    CHECK(pi_r23(4) == Rational(1, 11));
    CHECK(pi_r23(5) == Rational(1, 19));
    CHECK_THROWS_AS(lower_bound_density(3, 3), std::invalid_argument);
}

TEST_CASE("edge-count upper bound") {
    CHECK(bes_edge_upper(10, 3, 2, 3) == Rational(30));
    CHECK(bes_edge_upper(10, 3, 2, 1) == Rational(0));
    CHECK(bes_edge_upper(6, 3, 2, 2) == Rational(5));
}

TEST_CASE("upper bound at k=2 collapses to the exact density") {
    for (int r = 3; r <= 12; ++r) CHECK(upper_bound_density(r, 2) == pi_r23(r));
}

TEST_CASE("lower vs upper across the grid (reported, not asserted)") {
    int violations = 0;
    for (int r = 3; r <= 12; ++r)
        for (int k = 2; k < r; ++k)
            if (!(lower_bound_density(r, k) < upper_bound_density(r, k))) {
                ++violations;
                MESSAGE("lower >= upper at r=" << r << " k=" << k);
            }
    MESSAGE("grid comparison violations: " << violations);
}

TEST_CASE("rational strings") {
    CHECK(rational_string(Rational(1, 6)) == "1/6");
    CHECK(rational_string(Rational(4, 2)) == "2");
    CHECK(rational_string(Rational(0)) == "0");
}

TEST_CASE("certificate of the empty graph") {
    UpperBoundCertificate c = certificate_check(Hypergraph::empty(3, 10), 2);
    CHECK(c.K1 == 0);
    CHECK(c.K2 == 0);
    CHECK(c.slack == 0);
    CHECK(c.pruned_removed == 0);
    CHECK(c.phi_disjoint);
    CHECK(c.pair_intersection_exact_k);
}

TEST_CASE("certificate prunes two disjoint edges to nothing") {
    UpperBoundCertificate c = certificate_check(Hypergraph(3, 6, {{0, 1, 2}, {3, 4, 5}}), 2);
    CHECK(c.input_edges == 2);
    CHECK(c.pruned_removed == 2);
    CHECK(c.pruned_edges == 0);
    CHECK(c.K1 == 0);
    CHECK(c.K2 == 0);
}

TEST_CASE("certificate of the algebraic graph (q=5, k=2, r=3)") {
    PrimeField f5(5);
    Hypergraph h = matrix_to_hypergraph(CodeMatrix::build(2, EvaluationVector(f5, {0, 1, 2})));
    UpperBoundCertificate c = certificate_check(h, 2);
    CHECK(c.pruned_removed == 0);  // every vertex has codegree q
    CHECK(c.pruned_edges == 25);
    CHECK(c.K2 == 0);  // pairwise intersections <= k-1 leave no codegree-2 pair
    CHECK(c.K1 == 75);  // C(3,2) * 25 cross-part pairs
    CHECK(c.slack == 75);
    CHECK(c.phi_disjoint);
}

TEST_CASE("certificate with active codegree-2 machinery") {
    // 2-regular almost-linear free seed with two edge pairs sharing 2 vertices
    Hypergraph seed(3, 6, {{0, 1, 2}, {0, 1, 3}, {2, 4, 5}, {3, 4, 5}});
    REQUIRE(is_free(seed, 5, 3));
    REQUIRE(is_almost_linear(seed));
    LiftedUnion u = construct_lifted(seed, 2, 30, 3);
    UpperBoundCertificate c = certificate_check(u.graph, 2);
    CHECK(c.K2 > 0);  // same-petal pairs with |A cap B| = 2 survive pruning
    CHECK(c.pruned_removed == 0);  // the seed is 2-regular, so no codegree-1 vertex exists
    CHECK(c.phi_disjoint);
    CHECK(c.pair_intersection_exact_k);
    // recompute the integer identities from the reported fields
    BigInt crk = big_binomial(4, 2);
    CHECK(crk * c.pruned_edges == BigInt(c.K1) + 2 * BigInt(c.K2));
    CHECK(BigInt(c.K1) + BigInt(c.K2) <= big_binomial(30, 2));
    CHECK(c.slack == BigInt(c.K1) - BigInt(c.K2) * (2 * crk - 2));
    CHECK(c.slack >= 0);

    nlohmann::json j = certificate_to_json(c);
    CHECK(j["K2"] == c.K2);
    CHECK(j["phi_disjoint"] == true);
}

TEST_CASE("certificate rejects non-free input") {
    Hypergraph bad(3, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
    CHECK_THROWS_AS(certificate_check(bad, 2), std::invalid_argument);
    CHECK_THROWS_AS(certificate_check(Hypergraph::empty(3, 5), 3), std::invalid_argument);
}
