#ifndef SHFORGE_ORACLE_HPP
#define SHFORGE_ORACLE_HPP

#include <cstdint>
#include <optional>

#include "shforge/hypergraph.hpp"

namespace shforge {

/// Parameters for the ground-truth generators. `node_budget` is the
/// deterministic time budget of the exact search, counted in search nodes
/// rather than wall clock so that identical inputs always yield identical
/// outputs.
struct SearchConfig {
    int n = 0;
    int r = 3;
    int v = 5;
    int e = 3;
    bool almost_linear = false;
    std::optional<int> max_pairwise_intersection;
    std::uint64_t node_budget = 50'000'000;
    std::uint64_t seed = 1;
    /// Test hook: when set, the exact search processes candidates in a
    /// seeded-random order instead of lexicographic (the value must not
    /// change; the witness is then not the lexicographic minimum).
    std::optional<std::uint64_t> shuffle_candidates_seed;
};

struct ExactResult {
    int max_edges = 0;
    Hypergraph witness;
    std::uint64_t nodes = 0;
};

/// Exact maximum number of edges of a G_r(v,e)-free r-graph on n vertices
/// under the optional constraints, with one witness attaining it (the
/// lexicographically least one in the default candidate order). Branch and
/// bound over the lexicographic edge order with freeness pruning; symmetry
/// is reduced by fixing the first edge, which is sound because any nonempty
/// witness can be relabeled to contain it. Guard: C(n,r) <= 300
/// (std::invalid_argument beyond); exceeding node_budget raises
/// ResourceError naming the best count found.
ExactResult exact_max_edges(const SearchConfig& cfg);

/// Processes candidate r-sets in seeded random order, accepting an edge iff
/// freeness and all optional constraints still hold. The output is maximal
/// (no remaining r-set can be added) and is re-verified with
/// find_violation_naive before returning.
Hypergraph greedy_free_graph(const SearchConfig& cfg);

}  // namespace shforge

#endif
