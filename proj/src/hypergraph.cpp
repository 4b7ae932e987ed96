#include "shforge/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "shforge/util.hpp"

namespace shforge {

Hypergraph::Hypergraph(int r, int n, std::vector<std::vector<int>> edges)
    : r_(r), n_(n), edges_(std::move(edges)) {
    if (r_ < 1) throw std::invalid_argument("Hypergraph: uniformity must be >= 1");
    if (n_ < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
    for (auto& e : edges_) {
        if (static_cast<int>(e.size()) != r_)
            throw std::invalid_argument("Hypergraph: edge of size " + std::to_string(e.size()) +
                                        " in a " + std::to_string(r_) + "-uniform graph");
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n_)
                throw std::invalid_argument("Hypergraph: vertex id " + std::to_string(e[i]) +
                                            " out of range [0," + std::to_string(n_) + ")");
            if (i > 0 && e[i] == e[i - 1])
                throw std::invalid_argument("Hypergraph: repeated vertex " + std::to_string(e[i]) +
                                            " within an edge");
        }
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1]) throw std::invalid_argument("Hypergraph: duplicate edge");

    words_ = static_cast<std::size_t>((n_ + 63) / 64);
    masks_.assign(edges_.size() * words_, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        for (int v : edges_[i])
            masks_[i * words_ + static_cast<std::size_t>(v) / 64] |= 1ULL << (static_cast<std::size_t>(v) % 64);
}

int Hypergraph::intersection_size(std::size_t i, std::size_t j) const {
    const std::uint64_t* a = edge_mask(i);
    const std::uint64_t* b = edge_mask(j);
    int c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

int Hypergraph::union_size2(std::size_t i, std::size_t j) const {
    const std::uint64_t* a = edge_mask(i);
    const std::uint64_t* b = edge_mask(j);
    int c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(a[w] | b[w]);
    return c;
}

int Hypergraph::union_size3(std::size_t i, std::size_t j, std::size_t l) const {
    const std::uint64_t* a = edge_mask(i);
    const std::uint64_t* b = edge_mask(j);
    const std::uint64_t* c = edge_mask(l);
    int cnt = 0;
    for (std::size_t w = 0; w < words_; ++w) cnt += std::popcount(a[w] | b[w] | c[w]);
    return cnt;
}

int Hypergraph::union_size(const std::vector<std::size_t>& idxs) const {
    std::vector<std::uint64_t> acc(words_, 0);
    for (std::size_t i : idxs) {
        const std::uint64_t* m = edge_mask(i);
        for (std::size_t w = 0; w < words_; ++w) acc[w] |= m[w];
    }
    int cnt = 0;
    for (std::uint64_t w : acc) cnt += std::popcount(w);
    return cnt;
}

std::uint64_t codegree(const Hypergraph& h, const std::vector<int>& T) {
    std::vector<std::uint64_t> tmask(h.mask_words(), 0);
    for (int v : T) {
        if (v < 0 || v >= h.vertex_count())
            throw std::invalid_argument("codegree: vertex id " + std::to_string(v) + " out of range");
        tmask[static_cast<std::size_t>(v) / 64] |= 1ULL << (static_cast<std::size_t>(v) % 64);
    }
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        const std::uint64_t* m = h.edge_mask(i);
        bool contained = true;
        for (std::size_t w = 0; w < h.mask_words(); ++w)
            if ((tmask[w] & ~m[w]) != 0) {
                contained = false;
                break;
            }
        if (contained) ++count;
    }
    return count;
}

namespace {

struct PairEntry {
    std::size_t i, j;
    int overlap;
};

// All edge pairs with intersection size >= min_overlap (min_overlap >= 1),
// sorted by (i, j). Built from vertex incidence lists, so disjoint pairs are
// never touched.
std::vector<PairEntry> pair_intersection_index(const Hypergraph& h, int min_overlap) {
    std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(h.vertex_count()));
    for (std::size_t i = 0; i < h.edge_count(); ++i)
        for (int v : h.edge(i)) incident[static_cast<std::size_t>(v)].push_back(i);
    const std::size_t m = h.edge_count();
    std::unordered_map<std::uint64_t, int> counts;
    for (const auto& inc : incident)
        for (std::size_t a = 0; a < inc.size(); ++a)
            for (std::size_t b = a + 1; b < inc.size(); ++b)
                ++counts[static_cast<std::uint64_t>(inc[a]) * m + inc[b]];
    std::vector<PairEntry> out;
    for (const auto& [key, c] : counts)
        if (c >= min_overlap)
            out.push_back({static_cast<std::size_t>(key / m), static_cast<std::size_t>(key % m), c});
    std::sort(out.begin(), out.end(),
              [](const PairEntry& x, const PairEntry& y) { return std::tie(x.i, x.j) < std::tie(y.i, y.j); });
    return out;
}

void check_freeness_args(const Hypergraph& h, int v, int e) {
    if (e < 2) throw std::invalid_argument("freeness check requires e >= 2");
    if (v < h.uniformity()) throw std::invalid_argument("freeness check requires v >= r");
}

std::optional<FreenessWitness> lex_min_witness(std::optional<FreenessWitness> a, FreenessWitness b) {
    if (!a || b.edge_indices < a->edge_indices) return b;
    return a;
}

// Depth-first scan of e-subsets in lexicographic order, pruning branches
// whose partial union already exceeds v (unions only grow). Returns the
// first violation encountered, which is the lexicographic minimum.
std::optional<FreenessWitness> pruned_enumeration(const Hypergraph& h, int v, int e) {
    const std::size_t m = h.edge_count();
    std::vector<std::size_t> chosen;
    std::vector<std::vector<std::uint64_t>> stack_masks;
    stack_masks.emplace_back(h.mask_words(), 0);
    std::optional<FreenessWitness> found;

    auto union_count = [&](const std::vector<std::uint64_t>& mask) {
        int c = 0;
        for (std::uint64_t w : mask) c += std::popcount(w);
        return c;
    };

    std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
        if (static_cast<int>(chosen.size()) == e) {
            int u = union_count(stack_masks.back());
            if (u <= v) {
                found = FreenessWitness{chosen, u};
                return true;
            }
            return false;
        }
        std::size_t need = static_cast<std::size_t>(e) - chosen.size();
        for (std::size_t i = start; i + need <= m; ++i) {
            std::vector<std::uint64_t> next = stack_masks.back();
            const std::uint64_t* em = h.edge_mask(i);
            for (std::size_t w = 0; w < next.size(); ++w) next[w] |= em[w];
            if (union_count(next) > v) continue;
            chosen.push_back(i);
            stack_masks.push_back(std::move(next));
            if (dfs(i + 1)) return true;
            stack_masks.pop_back();
            chosen.pop_back();
        }
        return false;
    };
    dfs(0);
    return found;
}

}  // namespace

std::optional<FreenessWitness> find_violation(const Hypergraph& h, int v, int e) {
    check_freeness_args(h, v, e);
    const std::size_t m = h.edge_count();
    const int r = h.uniformity();
    if (m < static_cast<std::size_t>(e)) return std::nullopt;  // no e-subset exists

    if (e == 2) {
        int t2 = 2 * r - v;  // |A union B| <= v  <=>  |A cap B| >= 2r - v
        if (t2 > r - 1) return std::nullopt;
        if (t2 >= 2) {
            std::optional<FreenessWitness> best;
            for (const auto& p : pair_intersection_index(h, t2))
                best = lex_min_witness(std::move(best), FreenessWitness{{p.i, p.j}, 2 * r - p.overlap});
            return best;
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (h.union_size2(i, j) <= v) return FreenessWitness{{i, j}, h.union_size2(i, j)};
        return std::nullopt;
    }

    if (e == 3) {
        int t3 = (3 * r - v + 2) / 3;  // ceil((3r - v)/3): max pairwise overlap of a violating triple
        if (t3 >= 2) {
            std::optional<FreenessWitness> best;
            for (const auto& p : pair_intersection_index(h, t3)) {
                if (h.union_size2(p.i, p.j) > v) continue;
                for (std::size_t l = 0; l < m; ++l) {
                    if (l == p.i || l == p.j) continue;
                    int u = h.union_size3(p.i, p.j, l);
                    if (u <= v) {
                        std::vector<std::size_t> tri{p.i, p.j, l};
                        std::sort(tri.begin(), tri.end());
                        best = lex_min_witness(std::move(best), FreenessWitness{std::move(tri), u});
                    }
                }
            }
            return best;
        }
    }

    return pruned_enumeration(h, v, e);
}

std::optional<FreenessWitness> find_violation_naive(const Hypergraph& h, int v, int e,
                                                    std::uint64_t budget) {
    check_freeness_args(h, v, e);
    const std::size_t m = h.edge_count();
    if (m < static_cast<std::size_t>(e)) return std::nullopt;
    if (binomial_u64(m, static_cast<std::uint64_t>(e)) > budget)
        throw ResourceError("find_violation_naive: C(" + std::to_string(m) + "," + std::to_string(e) +
                            ") exceeds budget " + std::to_string(budget));
    if (e == 2) {
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                int u = h.union_size2(i, j);
                if (u <= v) return FreenessWitness{{i, j}, u};
            }
        return std::nullopt;
    }
    if (e == 3) {
        for (std::size_t i = 0; i + 2 < m; ++i)
            for (std::size_t j = i + 1; j + 1 < m; ++j)
                for (std::size_t l = j + 1; l < m; ++l) {
                    int u = h.union_size3(i, j, l);
                    if (u <= v) return FreenessWitness{{i, j, l}, u};
                }
        return std::nullopt;
    }
    std::vector<int> comb = first_combination(e);
    std::vector<std::size_t> idxs(static_cast<std::size_t>(e));
    do {
        for (std::size_t i = 0; i < idxs.size(); ++i) idxs[i] = static_cast<std::size_t>(comb[i]);
        int u = h.union_size(idxs);
        if (u <= v) return FreenessWitness{idxs, u};
    } while (next_combination(comb, static_cast<int>(m)));
    return std::nullopt;
}

int max_pairwise_intersection(const Hypergraph& h) {
    int best = 0;
    for (const auto& p : pair_intersection_index(h, 1)) best = std::max(best, p.overlap);
    return best;
}

bool is_almost_linear(const Hypergraph& h) { return max_pairwise_intersection(h) <= 2; }

bool is_locally_sparse(const Hypergraph& h, int e, int k) {
    if (e < 2) throw std::invalid_argument("is_locally_sparse: e must be >= 2");
    if (k < 2 || k >= h.uniformity()) throw std::invalid_argument("is_locally_sparse: need r > k >= 2");
    const int r = h.uniformity();
    for (int i = 2; i <= e; ++i)
        if (!is_free(h, i * r - (i - 1) * k, i)) return false;
    return true;
}

std::map<std::vector<int>, std::vector<std::size_t>> codegree_incidence(const Hypergraph& h, int k) {
    if (k < 1 || k > h.uniformity()) throw std::invalid_argument("codegree_incidence: need 1 <= k <= r");
    std::map<std::vector<int>, std::vector<std::size_t>> inc;
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        const auto& edge = h.edge(i);
        std::vector<int> sel = first_combination(k);
        do {
            for (int j = 0; j < k; ++j) subset[static_cast<std::size_t>(j)] = edge[static_cast<std::size_t>(sel[static_cast<std::size_t>(j)])];
            inc[subset].push_back(i);
        } while (next_combination(sel, h.uniformity()));
    }
    return inc;
}

CodegreeCensus codegree_distribution(const Hypergraph& h, int k) {
    if (k < 1 || k >= h.uniformity()) throw std::invalid_argument("codegree_distribution: need 1 <= k < r");
    CodegreeCensus census;
    census.k = k;
    std::uint64_t seen = 0;
    for (const auto& [subset, edges] : codegree_incidence(h, k)) {
        ++census.counts[edges.size()];
        ++seen;
    }
    std::uint64_t total = binomial_u64(static_cast<std::uint64_t>(h.vertex_count()),
                                       static_cast<std::uint64_t>(k));
    if (total > seen) census.counts[0] = total - seen;
    return census;
}

std::pair<Hypergraph, std::size_t> prune_codegree_one(const Hypergraph& h, int k) {
    if (k < 2 || k >= h.uniformity()) throw std::invalid_argument("prune_codegree_one: need 2 <= k < r");
    std::vector<std::vector<int>> edges = h.edges();
    std::size_t removed = 0;
    const int r = h.uniformity();
    bool changed = true;
    while (changed && !edges.empty()) {
        changed = false;
        std::map<std::vector<int>, std::uint64_t> counts;
        std::vector<int> subset(static_cast<std::size_t>(k - 1));
        for (const auto& edge : edges) {
            std::vector<int> sel = first_combination(k - 1);
            do {
                for (int j = 0; j < k - 1; ++j)
                    subset[static_cast<std::size_t>(j)] = edge[static_cast<std::size_t>(sel[static_cast<std::size_t>(j)])];
                ++counts[subset];
            } while (next_combination(sel, r));
        }
        for (std::size_t i = 0; i < edges.size() && !changed; ++i) {
            std::vector<int> sel = first_combination(k - 1);
            do {
                for (int j = 0; j < k - 1; ++j)
                    subset[static_cast<std::size_t>(j)] = edges[i][static_cast<std::size_t>(sel[static_cast<std::size_t>(j)])];
                if (counts[subset] == 1) {
                    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
                    ++removed;
                    changed = true;
                    break;
                }
            } while (next_combination(sel, r));
        }
    }
    return {Hypergraph(h.uniformity(), h.vertex_count(), std::move(edges)), removed};
}

std::string to_hg_string(const Hypergraph& h) {
    std::ostringstream os;
    os << h.uniformity() << ' ' << h.vertex_count() << ' ' << h.edge_count() << '\n';
    for (const auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) os << ' ';
            os << e[i];
        }
        os << '\n';
    }
    return os.str();
}

namespace {
std::vector<long long> split_ints(const std::string& line, const char* what) {
    std::vector<long long> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t next = line.find(' ', pos);
        std::string tok = line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty()) throw std::invalid_argument(std::string(what) + ": malformed spacing");
        std::size_t used = 0;
        long long val = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
        out.push_back(val);
        if (next == std::string::npos) break;
        pos = next + 1;
        if (pos == line.size()) throw std::invalid_argument(std::string(what) + ": trailing space");
    }
    return out;
}
}  // namespace

Hypergraph parse_hg_string(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) throw std::invalid_argument(".hg: missing trailing newline");
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) throw std::invalid_argument(".hg: empty input");
    auto header = split_ints(lines[0], ".hg header");
    if (header.size() != 3) throw std::invalid_argument(".hg header: expected 'r n m'");
    long long r = header[0], n = header[1], m = header[2];
    if (m < 0 || lines.size() != static_cast<std::size_t>(m) + 1)
        throw std::invalid_argument(".hg: edge count disagrees with header");
    std::vector<std::vector<int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::vector<int> prev;
    for (long long i = 0; i < m; ++i) {
        auto vals = split_ints(lines[static_cast<std::size_t>(i) + 1], ".hg edge");
        if (vals.size() != static_cast<std::size_t>(r)) throw std::invalid_argument(".hg edge: wrong arity");
        std::vector<int> edge(vals.begin(), vals.end());
        for (std::size_t j = 1; j < edge.size(); ++j)
            if (edge[j] <= edge[j - 1]) throw std::invalid_argument(".hg edge: vertices not strictly ascending");
        if (!prev.empty() && !(prev < edge)) throw std::invalid_argument(".hg: edges not in ascending order");
        prev = edge;
        edges.push_back(std::move(edge));
    }
    return Hypergraph(static_cast<int>(r), static_cast<int>(n), std::move(edges));
}

void write_hg_file(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_hg_string(h);
}

Hypergraph read_hg_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hg_string(buf.str());
}

}  // namespace shforge
