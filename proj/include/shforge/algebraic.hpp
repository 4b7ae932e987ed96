#ifndef SHFORGE_ALGEBRAIC_HPP
#define SHFORGE_ALGEBRAIC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "shforge/hypergraph.hpp"

namespace shforge {

/// Knobs of the recursive construction. `delta` is the prime-gap exponent
/// recorded in reports (the q >= n - n^delta guarantee is asymptotic and not
/// enforced); `min_direct_n` forces the base strategy below a threshold
/// (0 means the uniformity r, i.e. base only where no skeleton fits).
struct RecursionBudget {
    double delta = 0.525;
    std::uint64_t min_direct_n = 0;
    std::uint32_t max_vector_tries = 64;
    std::uint64_t seed = 1;
    int verify_threads = 0;  // forwarded to the matrix verifier; 0 = all cores
};

struct LevelReport {
    std::uint64_t n = 0;
    std::string strategy;  // "skeleton", "exact-base", "greedy-base" or "empty"
    std::uint64_t q = 0;
    std::uint64_t skeleton_edges = 0;  // q^k when the skeleton path was taken
    std::uint64_t child_edges = 0;
    std::uint64_t edge_count = 0;
    std::uint32_t vector_tries = 0;
    std::vector<std::uint64_t> vector;
};

struct ConstructionReport {
    std::uint64_t n = 0;
    int r = 0;
    int k = 0;
    std::uint64_t edge_count = 0;
    bool verified = false;
    /// n^k / (r^k - r), the analytic edge-count target, as an exact rational
    /// string. Reported next to the achieved count, never assumed.
    std::string target_count;
    double delta = 0.525;
    std::vector<LevelReport> levels;
};

/// Largest prime <= x, or nullopt when x < 2.
std::optional<std::uint64_t> largest_prime_leq(std::uint64_t x);

/// The recursive composition: an r-partite skeleton from a strongly
/// 3-perfect-hashing matrix on r parts of size q = largest_prime_leq(n/r),
/// a recursively built child graph copied into every part, and n - rq
/// isolated vertices. Falls back to a direct base (exact search when
/// C(n,r) <= 300, greedy otherwise) when no usable prime or vector exists.
/// The output is G_r(3r-2k,3)-free with all pairwise edge intersections
/// <= k-1, and identical inputs yield byte-identical serializations.
std::pair<Hypergraph, ConstructionReport> construct_recursive(int r, int k, std::uint64_t n,
                                                              const RecursionBudget& budget = {});

/// Re-checks the two construction invariants: G_r(3r-2k,3)-freeness and
/// max pairwise intersection <= k-1.
bool verify_construction(const Hypergraph& h, int r, int k);

nlohmann::json construction_report_to_json(const ConstructionReport& report);

}  // namespace shforge

#endif
