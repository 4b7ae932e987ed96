#include "shforge/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <random>
#include <stdexcept>

#include "shforge/util.hpp"

namespace shforge {

namespace {

void check_config(const SearchConfig& cfg) {
    if (cfg.r < 2) throw std::invalid_argument("SearchConfig: r must be >= 2");
    if (cfg.e < 2) throw std::invalid_argument("SearchConfig: e must be >= 2");
    if (cfg.v < cfg.r) throw std::invalid_argument("SearchConfig: v must be >= r");
    if (cfg.max_pairwise_intersection && *cfg.max_pairwise_intersection < 0)
        throw std::invalid_argument("SearchConfig: negative intersection bound");
}

int pair_cap(const SearchConfig& cfg) {
    int cap = cfg.r;  // no constraint
    if (cfg.almost_linear) cap = std::min(cap, 2);
    if (cfg.max_pairwise_intersection) cap = std::min(cap, *cfg.max_pairwise_intersection);
    return cap;
}

// Single-word edge masks: the exact search only runs with C(n,r) <= 300,
// which keeps n below 64.
//
// The search keeps, per node, the list of candidate indices that are still
// individually compatible with the chosen set; descending filters the list
// against the newly added edge only (older conflicts were filtered higher
// up). The node bound is then |chosen| + |list|, which prunes far harder
// than counting unexamined positions.
struct ExactSearch {
    const SearchConfig& cfg;
    std::vector<std::uint64_t> cands;
    std::vector<std::uint64_t> chosen;
    std::vector<std::size_t> chosen_idx;
    int cap;
    std::uint64_t nodes = 0;
    int global_ub;

    explicit ExactSearch(const SearchConfig& c) : cfg(c), cap(pair_cap(c)) {
        std::vector<int> comb = first_combination(cfg.r);
        do {
            std::uint64_t m = 0;
            for (int x : comb) m |= 1ULL << x;
            cands.push_back(m);
        } while (next_combination(comb, cfg.n));
        if (cfg.shuffle_candidates_seed) {
            std::mt19937_64 rng(*cfg.shuffle_candidates_seed);
            seeded_shuffle(cands, rng);
        }
        global_ub = upper_bound();
    }

    // Counting-style caps on the maximum: any ceil((er-v)/(e-1))-subset lies
    // in at most e-1 edges, and a pairwise-intersection cap of p makes every
    // (p+1)-subset lie in at most one edge.
    int upper_bound() const {
        std::uint64_t ub = cands.size();
        int s_num = cfg.e * cfg.r - cfg.v;
        if (s_num > 0) {
            int s = (s_num + cfg.e - 2) / (cfg.e - 1);
            if (s >= 1 && s <= cfg.r) {
                std::uint64_t b = static_cast<std::uint64_t>(cfg.e - 1) *
                                  binomial_u64(static_cast<std::uint64_t>(cfg.n), static_cast<std::uint64_t>(s)) /
                                  binomial_u64(static_cast<std::uint64_t>(cfg.r), static_cast<std::uint64_t>(s));
                ub = std::min(ub, b);
            }
        }
        if (cap < cfg.r) {
            std::uint64_t b = binomial_u64(static_cast<std::uint64_t>(cfg.n), static_cast<std::uint64_t>(cap) + 1) /
                              binomial_u64(static_cast<std::uint64_t>(cfg.r), static_cast<std::uint64_t>(cap) + 1);
            ub = std::min(ub, b);
        }
        return static_cast<int>(ub);
    }

    // Full feasibility of cand against the chosen set (used to seed lists;
    // descent uses the incremental filter instead).
    bool feasible(std::uint64_t cand) const {
        for (std::uint64_t m : chosen)
            if (std::popcount(m & cand) > cap) return false;
        std::function<bool(std::size_t, int, std::uint64_t)> dfs = [&](std::size_t start, int depth,
                                                                       std::uint64_t acc) -> bool {
            if (depth == cfg.e - 1) return std::popcount(acc) <= cfg.v;
            for (std::size_t i = start; i < chosen.size(); ++i) {
                std::uint64_t next = acc | chosen[i];
                if (std::popcount(next) > cfg.v) continue;
                if (dfs(i + 1, depth + 1, next)) return true;
            }
            return false;
        };
        return !dfs(0, 0, cand);
    }

    // Does {cand, fresh} extend to a violating e-subset using e-2 edges from
    // the chosen set? Conflicts of cand avoiding `fresh` were filtered out
    // on the way down.
    bool conflicts_with_fresh(std::uint64_t cand, std::uint64_t fresh) const {
        std::uint64_t base = cand | fresh;
        if (std::popcount(cand & fresh) > cap) return true;
        if (cfg.e == 2) return std::popcount(base) <= cfg.v;
        std::function<bool(std::size_t, int, std::uint64_t)> dfs = [&](std::size_t start, int depth,
                                                                       std::uint64_t acc) -> bool {
            if (depth == cfg.e - 2) return std::popcount(acc) <= cfg.v;
            for (std::size_t i = start; i < chosen.size(); ++i) {
                std::uint64_t next = acc | chosen[i];
                if (std::popcount(next) > cfg.v) continue;
                if (dfs(i + 1, depth + 1, next)) return true;
            }
            return false;
        };
        return dfs(0, 0, base);
    }

    void bump_nodes() {
        if (++nodes > cfg.node_budget)
            throw ResourceError("exact_max_edges: node budget exceeded (best so far " +
                                std::to_string(best) + " edges)");
    }

    int best = 0;
    std::vector<std::size_t> best_set;

    void search(const std::vector<std::size_t>& avail) {
        bump_nodes();
        if (static_cast<int>(chosen.size()) > best) {
            best = static_cast<int>(chosen.size());
            best_set = chosen_idx;
        }
        if (best == global_ub) return;
        for (std::size_t pos = 0; pos < avail.size(); ++pos) {
            if (static_cast<int>(chosen.size() + avail.size() - pos) <= best) break;
            const std::size_t i = avail[pos];
            std::vector<std::size_t> next;
            next.reserve(avail.size() - pos - 1);
            for (std::size_t p2 = pos + 1; p2 < avail.size(); ++p2)
                if (!conflicts_with_fresh(cands[avail[p2]], cands[i])) next.push_back(avail[p2]);
            chosen.push_back(cands[i]);
            chosen_idx.push_back(i);
            search(next);
            chosen.pop_back();
            chosen_idx.pop_back();
            if (best == global_ub) return;
        }
    }

    std::vector<std::size_t> seed_list(std::size_t from_idx) const {
        std::vector<std::size_t> out;
        for (std::size_t i = from_idx; i < cands.size(); ++i)
            if (feasible(cands[i])) out.push_back(i);
        return out;
    }

    // Maximum total size reachable from the current chosen set using
    // candidates at indices >= idx.
    int bounded_max(std::size_t idx, int at_least) {
        best = at_least;
        best_set.clear();
        search(seed_list(idx));
        return best;
    }
};

std::vector<int> mask_to_edge(std::uint64_t m) {
    std::vector<int> e;
    while (m) {
        int b = std::countr_zero(m);
        e.push_back(b);
        m &= m - 1;
    }
    return e;
}

}  // namespace

ExactResult exact_max_edges(const SearchConfig& cfg) {
    check_config(cfg);
    if (cfg.n < cfg.r)
        return {0, Hypergraph::empty(cfg.r, std::max(cfg.n, 0)), 0};
    if (binomial_u64(static_cast<std::uint64_t>(cfg.n), static_cast<std::uint64_t>(cfg.r)) > 300)
        throw std::invalid_argument("exact_max_edges: C(n,r) exceeds the 300-candidate guard");

    ExactSearch s(cfg);
    // Pass 1: optimum value, with the first candidate forced (some maximum
    // graph can be relabeled to contain it).
    s.chosen.push_back(s.cands[0]);
    s.chosen_idx.push_back(0);
    s.best = 1;
    s.best_set = s.chosen_idx;
    s.search(s.seed_list(1));
    const int optimum = s.best;
    std::vector<std::size_t> witness_set = s.best_set;
    s.chosen.clear();
    s.chosen_idx.clear();

    if (!cfg.shuffle_candidates_seed) {
        // Pass 2: lexicographically least witness. Scan candidates in order,
        // keeping one iff the optimum stays reachable.
        s.chosen.push_back(s.cands[0]);
        s.chosen_idx.push_back(0);
        std::vector<std::size_t> lex_set{0};
        for (std::size_t i = 1; i < s.cands.size() && static_cast<int>(lex_set.size()) < optimum; ++i) {
            if (!s.feasible(s.cands[i])) continue;
            s.chosen.push_back(s.cands[i]);
            s.chosen_idx.push_back(i);
            if (s.bounded_max(i + 1, static_cast<int>(s.chosen.size())) == optimum) {
                lex_set.push_back(i);
            } else {
                s.chosen.pop_back();
                s.chosen_idx.pop_back();
            }
        }
        witness_set = lex_set;
    }

    std::vector<std::vector<int>> edges;
    for (std::size_t i : witness_set) edges.push_back(mask_to_edge(s.cands[i]));
    return {optimum, Hypergraph(cfg.r, cfg.n, std::move(edges)), s.nodes};
}

Hypergraph greedy_free_graph(const SearchConfig& cfg) {
    check_config(cfg);
    if (cfg.n < cfg.r) return Hypergraph::empty(cfg.r, std::max(cfg.n, 0));
    if (binomial_u64(static_cast<std::uint64_t>(cfg.n), static_cast<std::uint64_t>(cfg.r)) > 10'000'000)
        throw ResourceError("greedy_free_graph: candidate set exceeds 10^7");

    const std::size_t words = static_cast<std::size_t>((cfg.n + 63) / 64);
    std::vector<std::vector<std::uint64_t>> cands;
    {
        std::vector<int> comb = first_combination(cfg.r);
        do {
            std::vector<std::uint64_t> m(words, 0);
            for (int x : comb) m[static_cast<std::size_t>(x) / 64] |= 1ULL << (x % 64);
            cands.push_back(std::move(m));
        } while (next_combination(comb, cfg.n));
    }
    std::mt19937_64 rng(cfg.seed);
    seeded_shuffle(cands, rng);

    const int cap = pair_cap(cfg);
    auto popcnt = [&](const std::vector<std::uint64_t>& m) {
        int c = 0;
        for (std::uint64_t w : m) c += std::popcount(w);
        return c;
    };
    auto and_count = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        int c = 0;
        for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    };

    std::vector<std::vector<std::uint64_t>> accepted;
    for (const auto& cand : cands) {
        bool ok = true;
        for (const auto& m : accepted)
            if (and_count(m, cand) > cap) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::function<bool(std::size_t, int, std::vector<std::uint64_t>)> violates =
            [&](std::size_t start, int depth, std::vector<std::uint64_t> acc) -> bool {
            if (depth == cfg.e - 1) return popcnt(acc) <= cfg.v;
            for (std::size_t i = start; i < accepted.size(); ++i) {
                std::vector<std::uint64_t> next = acc;
                for (std::size_t w = 0; w < words; ++w) next[w] |= accepted[i][w];
                if (popcnt(next) > cfg.v) continue;
                if (violates(i + 1, depth + 1, std::move(next))) return true;
            }
            return false;
        };
        if (violates(0, 0, cand)) continue;
        accepted.push_back(cand);
    }

    std::vector<std::vector<int>> edges;
    for (const auto& m : accepted) {
        std::vector<int> e;
        for (int v = 0; v < cfg.n; ++v)
            if (m[static_cast<std::size_t>(v) / 64] & (1ULL << (v % 64))) e.push_back(v);
        edges.push_back(std::move(e));
    }
    Hypergraph out(cfg.r, cfg.n, std::move(edges));
    if (find_violation_naive(out, cfg.v, cfg.e).has_value())
        throw std::logic_error("greedy_free_graph: output failed the naive freeness oracle");
    return out;
}

}  // namespace shforge
