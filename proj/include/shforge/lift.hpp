#ifndef SHFORGE_LIFT_HPP
#define SHFORGE_LIFT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shforge/hypergraph.hpp"

namespace shforge {

/// A bijection [s] -> target acting on edges coordinatewise; target entries
/// are distinct.
struct EmbeddingSpec {
    int source_size = 0;
    std::vector<int> target;

    EmbeddingSpec(int s, std::vector<int> tgt);
    int operator()(int v) const { return target[static_cast<std::size_t>(v)]; }
    std::vector<int> apply(const std::vector<int>& edge) const;
};

/// The component graph: t petal cliques of size s (one embedded copy of the
/// seed r-graph each), a core clique on m edge-indexing vertices, and
/// connector edges joining core vertex x_j to the j-th embedded edge in
/// every petal. Petal i occupies vertices [i*s, (i+1)*s), the core starts at
/// t*s; the embeddings are the order-preserving maps into those blocks and
/// edge indices follow the seed's canonical (lexicographic) edge order.
struct GtTemplate {
    Hypergraph seed;
    int s = 0;
    int m = 0;
    int t = 0;
    int r = 0;
    std::vector<std::pair<int, int>> petal_edges;      // E1, t*C(s,2) of them
    std::vector<std::pair<int, int>> core_edges;       // E2, C(m,2)
    std::vector<std::pair<int, int>> connector_edges;  // E3, r*m*t

    int vertex_count() const { return t * s + m; }
    std::size_t graph_edge_count() const {
        return petal_edges.size() + core_edges.size() + connector_edges.size();
    }
    std::vector<std::pair<int, int>> all_edges() const;
    EmbeddingSpec petal_embedding(int i) const;
    int core_vertex(int j) const { return t * s + j; }
};

/// Builds the template; requires t >= 1 and a seed with m >= 2 edges (the
/// core clique degenerates below that).
GtTemplate build_component_graph(const Hypergraph& seed, int t);

struct LiftedEdgeMeta {
    int petal = 0;
    int core = 0;  // template vertex id of the edge's core
};

/// The (r+1)-graph on V(G_t): for each petal i and edge index j, the edge
/// Psi_i(A_j) plus core vertex x_j. Every edge is rooted in exactly one
/// petal; meta is aligned with the canonical edge order.
struct LiftedGraph {
    Hypergraph graph;
    std::vector<LiftedEdgeMeta> meta;
    int s = 0;
    int m = 0;
    int t = 0;
};

LiftedGraph lift(const GtTemplate& tmpl);

/// Structural checks on a lifted graph: edge count m*t, one root per petal
/// with one core vertex, same-petal edges have distinct cores, different
/// petals have disjoint roots, per-petal roots form a copy of the seed, and
/// every lifted edge induces a clique in G_t. When the seed is almost
/// linear the lifted graph must be too, and when the seed is additionally
/// G_r(3r-4,3)-free the lifted graph must be G_{r+1}(3r-1,3)-free.
bool verify_lift(const LiftedGraph& lifted, const Hypergraph& seed);

/// A plain 2-graph, the packing currency.
struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

/// Edge-disjoint copies of a template graph in K_n; copies[i] lists image
/// vertices in template-vertex order. Valid plans keep distinct copies
/// edge-disjoint, sharing at most two vertices, and when exactly two are
/// shared that pair is an edge of neither copy (induced condition).
struct PackingPlan {
    int n = 0;
    std::vector<std::vector<int>> copies;
    std::uint64_t attempts = 0;
    std::uint64_t rejections = 0;
};

/// Repeatedly samples seeded-random injections of the template vertex set
/// into [n], accepting a candidate iff it keeps the plan valid against every
/// accepted copy, until max_failures consecutive rejections. No density
/// guarantee; reports state the achieved copy count next to the analytic
/// target n^2 / (2|G|).
PackingPlan greedy_induced_packing(int n, const SimpleGraph& g, std::uint64_t seed,
                                   int max_failures = 2000);

/// Re-validates a plan from scratch, sharing no logic with the greedy
/// acceptance path.
bool verify_packing(const PackingPlan& plan, const SimpleGraph& g);

struct UnionEdgeMeta {
    int copy = 0;
    int petal = 0;
    int core = 0;  // image vertex id in [n]
};

struct LiftedUnion {
    Hypergraph graph;
    std::vector<UnionEdgeMeta> meta;  // aligned with the canonical edge order
    PackingPlan plan;
    int s = 0;
    int m = 0;
    int t = 0;
};

/// End-to-end composition: packs copies of G_t into K_n and maps the lifted
/// graph through every copy. Preconditions: the seed is almost linear and
/// G_r(3r-4,3)-free (std::invalid_argument carrying the witness otherwise),
/// t >= 1, n >= |V(G_t)|. The union has m*t*l edges for l accepted copies
/// and is verified almost linear and G_{r+1}(3r-1,3)-free before returning.
LiftedUnion construct_lifted(const Hypergraph& seed, int t, int n, std::uint64_t seed_value,
                             int max_failures = 2000);

nlohmann::json packing_plan_to_json(const PackingPlan& plan);
nlohmann::json union_meta_to_json(const LiftedUnion& u);

}  // namespace shforge

#endif
