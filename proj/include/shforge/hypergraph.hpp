#ifndef SHFORGE_HYPERGRAPH_HPP
#define SHFORGE_HYPERGRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace shforge {

/// An r-uniform hypergraph on vertices 0..n-1 in canonical form: every edge
/// is a strictly ascending r-tuple, the edge list is sorted
/// lexicographically, and edges are pairwise distinct. The constructor
/// canonicalizes (sorts) and rejects invalid input. Immutable afterwards.
///
/// Each edge additionally carries a bitmask mirror over ceil(n/64) words, so
/// unions and intersections cost O(words); triple enumeration dominates the
/// verifiers' runtime.
class Hypergraph {
public:
    Hypergraph(int r, int n, std::vector<std::vector<int>> edges);

    static Hypergraph empty(int r, int n) { return Hypergraph(r, n, {}); }

    int uniformity() const noexcept { return r_; }
    int vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<std::vector<int>>& edges() const noexcept { return edges_; }
    const std::vector<int>& edge(std::size_t i) const { return edges_[i]; }

    std::size_t mask_words() const noexcept { return words_; }
    const std::uint64_t* edge_mask(std::size_t i) const { return masks_.data() + i * words_; }

    int intersection_size(std::size_t i, std::size_t j) const;
    int union_size2(std::size_t i, std::size_t j) const;
    int union_size3(std::size_t i, std::size_t j, std::size_t l) const;
    /// Union size of an arbitrary edge-index set.
    int union_size(const std::vector<std::size_t>& idxs) const;

    bool operator==(const Hypergraph& o) const {
        return r_ == o.r_ && n_ == o.n_ && edges_ == o.edges_;
    }

private:
    int r_;
    int n_;
    std::vector<std::vector<int>> edges_;
    std::size_t words_;
    std::vector<std::uint64_t> masks_;
};

/// A violation of G_r(v,e)-freeness: e edge indices whose union has at most
/// v vertices. Witnesses are reported lexicographically first, so assertions
/// on them are deterministic.
struct FreenessWitness {
    std::vector<std::size_t> edge_indices;
    int union_size = 0;
    bool operator==(const FreenessWitness& o) const = default;
};

/// Codegree histogram over the k-subsets of [n]: counts[d] = number of
/// k-subsets contained in exactly d edges. Sums to C(n,k) including the
/// zero-codegree class.
struct CodegreeCensus {
    int k = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t count_for(std::uint64_t d) const {
        auto it = counts.find(d);
        return it == counts.end() ? 0 : it->second;
    }
    std::uint64_t max_codegree() const { return counts.empty() ? 0 : counts.rbegin()->first; }
};

/// Number of edges containing T. Invalid vertex ids -> std::invalid_argument.
std::uint64_t codegree(const Hypergraph& h, const std::vector<int>& T);

/// G_r(v,e)-freeness: every e distinct edges span at least v+1 vertices.
/// Returns the lexicographically first violating e-subset, or nullopt when
/// free. Preconditions e >= 2 and v >= r. Fewer than e edges is trivially
/// free.
///
/// For e == 3 with v <= 3r-4 only triples containing a pair of edges with
/// intersection >= ceil((3r-v)/3) are enumerated, fed from a
/// pair-intersection index: a triple spanning <= v vertices forces total
/// pairwise overlap >= 3r-v, so its largest pairwise intersection is at
/// least a third of that. For e == 2 the check reduces to the pairwise
/// intersection bound. Everything else falls back to pruned enumeration.
std::optional<FreenessWitness> find_violation(const Hypergraph& h, int v, int e);

/// Same contract as find_violation, by unconditional enumeration of all
/// C(|H|, e) subsets. Exists solely to cross-check the optimized verifier.
/// Refuses instances with C(|H|, e) > budget via ResourceError.
std::optional<FreenessWitness> find_violation_naive(const Hypergraph& h, int v, int e,
                                                    std::uint64_t budget = 1'000'000'000);

inline bool is_free(const Hypergraph& h, int v, int e) { return !find_violation(h, v, e).has_value(); }
inline bool is_free_naive(const Hypergraph& h, int v, int e, std::uint64_t budget = 1'000'000'000) {
    return !find_violation_naive(h, v, e, budget).has_value();
}

/// True iff all pairwise edge intersections have size <= 2.
bool is_almost_linear(const Hypergraph& h);

/// Largest pairwise edge intersection (0 for graphs with < 2 edges).
int max_pairwise_intersection(const Hypergraph& h);

/// Locally (e,k)-sparse: G_r(i*r - (i-1)*k, i)-free for every 2 <= i <= e.
bool is_locally_sparse(const Hypergraph& h, int e, int k);

/// Codegree census of the k-subsets of [n], 1 <= k < r.
CodegreeCensus codegree_distribution(const Hypergraph& h, int k);

/// k-subsets with positive codegree, each mapped to the (ascending) indices
/// of the edges containing it.
std::map<std::vector<int>, std::vector<std::size_t>> codegree_incidence(const Hypergraph& h, int k);

/// Successively removes edges containing a (k-1)-subset of codegree one
/// (lowest-index qualifying edge first) until none remains; the result can
/// be empty. Returns the pruned graph and the number of removed edges.
/// Precondition 2 <= k < r.
std::pair<Hypergraph, std::size_t> prune_codegree_one(const Hypergraph& h, int k);

// Text format (.hg): line 1 is "r n m", then m lines of r ascending
// space-separated 0-based vertex ids, lines sorted lexicographically, LF
// endings, no comments. Parsing is strict, so serialize(parse(x)) == x.
std::string to_hg_string(const Hypergraph& h);
Hypergraph parse_hg_string(const std::string& text);
void write_hg_file(const Hypergraph& h, const std::string& path);
Hypergraph read_hg_file(const std::string& path);

}  // namespace shforge

#endif
