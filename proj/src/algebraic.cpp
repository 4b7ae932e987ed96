#include "shforge/algebraic.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shforge/bounds.hpp"
#include "shforge/ff.hpp"
#include "shforge/oracle.hpp"
#include "shforge/phm.hpp"
#include "shforge/util.hpp"

namespace shforge {

std::optional<std::uint64_t> largest_prime_leq(std::uint64_t x) {
    for (std::uint64_t c = x; c >= 2; --c)
        if (is_prime(c)) return c;
    return std::nullopt;
}

namespace {

Hypergraph base_graph(int r, int k, std::uint64_t n, const RecursionBudget& budget,
                      LevelReport& level) {
    SearchConfig cfg;
    cfg.n = static_cast<int>(n);
    cfg.r = r;
    cfg.v = 3 * r - 2 * k;
    cfg.e = 3;
    cfg.max_pairwise_intersection = k - 1;
    cfg.seed = budget.seed;
    if (binomial_u64(n, static_cast<std::uint64_t>(r)) <= 300) {
        cfg.node_budget = 5'000'000;
        try {
            ExactResult res = exact_max_edges(cfg);
            level.strategy = "exact-base";
            return res.witness;
        } catch (const ResourceError&) {
            // deterministic fall-through: the node cap does not depend on wall clock
        }
    }
    level.strategy = "greedy-base";
    return greedy_free_graph(cfg);
}

Hypergraph build_level(int r, int k, std::uint64_t n, const RecursionBudget& budget,
                       std::vector<LevelReport>& levels) {
    LevelReport level;
    level.n = n;
    if (n < static_cast<std::uint64_t>(r)) {
        level.strategy = "empty";
        levels.push_back(level);
        return Hypergraph::empty(r, static_cast<int>(n));
    }

    const std::uint64_t min_direct = std::max<std::uint64_t>(budget.min_direct_n, static_cast<std::uint64_t>(r));
    std::optional<std::uint64_t> q = largest_prime_leq(n / static_cast<std::uint64_t>(r));
    if (n >= min_direct && q && *q >= static_cast<std::uint64_t>(r)) {
        Check3phOptions check;
        check.threads = budget.verify_threads;
        GoodVectorSearch search =
            find_good_vector(PrimeField(*q), k, r, budget.seed, budget.max_vector_tries, check);
        if (search.vector) {
            CodeMatrix matrix = CodeMatrix::build(k, *search.vector);
            Hypergraph skeleton = matrix_to_hypergraph(matrix);

            level.strategy = "skeleton";
            level.q = *q;
            level.skeleton_edges = skeleton.edge_count();
            level.vector_tries = search.tries;
            level.vector = search.vector->entries;
            std::size_t level_slot = levels.size();
            levels.push_back(level);

            Hypergraph child = build_level(r, k, *q, budget, levels);

            std::vector<std::vector<int>> edges = skeleton.edges();
            for (int part = 0; part < r; ++part) {
                const int shift = part * static_cast<int>(*q);
                for (const auto& e : child.edges()) {
                    std::vector<int> shifted(e);
                    for (int& x : shifted) x += shift;
                    edges.push_back(std::move(shifted));
                }
            }
            Hypergraph out(r, static_cast<int>(n), std::move(edges));
            levels[level_slot].child_edges = child.edge_count();
            levels[level_slot].edge_count = out.edge_count();
            // Construction arithmetic: skeleton plus r disjoint child copies.
            if (out.edge_count() != skeleton.edge_count() + static_cast<std::size_t>(r) * child.edge_count())
                throw std::logic_error("construct_recursive: level edge identity failed");
            return out;
        }
        // vector search exhausted (possible for k >= 3 at small q): use the
        // base for this whole level rather than trying smaller primes
    }

    Hypergraph base = base_graph(r, k, n, budget, level);
    level.edge_count = base.edge_count();
    levels.push_back(level);
    return base;
}

}  // namespace

std::pair<Hypergraph, ConstructionReport> construct_recursive(int r, int k, std::uint64_t n,
                                                              const RecursionBudget& budget) {
    if (k < 2 || k >= r) throw std::invalid_argument("construct_recursive: need r > k >= 2");
    if (budget.delta <= 0.0 || budget.delta > 0.525)
        throw std::invalid_argument("construct_recursive: delta must lie in (0, 0.525]");

    ConstructionReport report;
    report.n = n;
    report.r = r;
    report.k = k;
    report.delta = budget.delta;
    report.target_count = rational_string(
        Rational(big_pow(BigInt(n), static_cast<unsigned>(k)), big_pow(BigInt(r), static_cast<unsigned>(k)) - r));

    Hypergraph graph = build_level(r, k, n, budget, report.levels);
    report.edge_count = graph.edge_count();
    report.verified = verify_construction(graph, r, k);
    return {std::move(graph), std::move(report)};
}

bool verify_construction(const Hypergraph& h, int r, int k) {
    if (h.uniformity() != r) return false;
    return is_free(h, 3 * r - 2 * k, 3) && max_pairwise_intersection(h) <= k - 1;
}

nlohmann::json construction_report_to_json(const ConstructionReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["r"] = report.r;
    j["k"] = report.k;
    j["edge_count"] = report.edge_count;
    j["verified"] = report.verified;
    j["target_count"] = report.target_count;
    j["delta"] = report.delta;
    j["levels"] = nlohmann::json::array();
    for (const auto& level : report.levels) {
        nlohmann::json lj;
        lj["n"] = level.n;
        lj["strategy"] = level.strategy;
        lj["edge_count"] = level.edge_count;
        if (level.strategy == "skeleton") {
            lj["q"] = level.q;
            lj["skeleton_edges"] = level.skeleton_edges;
            lj["child_edges"] = level.child_edges;
            lj["vector"] = level.vector;
            lj["vector_tries"] = level.vector_tries;
        }
        j["levels"].push_back(std::move(lj));
    }
    return j;
}

}  // namespace shforge
