#ifndef SHFORGE_TEST_HELPERS_HPP
#define SHFORGE_TEST_HELPERS_HPP

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "shforge/ff.hpp"
#include "shforge/hypergraph.hpp"
#include "shforge/util.hpp"

namespace shforge::testing {

/// Random r-graph with min(m, C(n,r)) distinct edges on [0, n).
inline Hypergraph random_hypergraph(int r, int n, int m, std::mt19937_64& rng) {
    std::uint64_t all = binomial_u64(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r));
    if (static_cast<std::uint64_t>(m) > all) m = static_cast<int>(all);
    std::set<std::vector<int>> edges;
    while (static_cast<int>(edges.size()) < m) {
        std::vector<int> e = sample_distinct(rng, n, r);
        std::sort(e.begin(), e.end());
        edges.insert(std::move(e));
    }
    return Hypergraph(r, n, {edges.begin(), edges.end()});
}

/// Row rank of a matrix over GF(p) by Gaussian elimination. Test-side
/// oracle, independent of the library's polynomial arithmetic.
inline int gf_rank(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    auto inv = [&](std::uint64_t a) {
        std::uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pivot = static_cast<std::size_t>(rank);
        while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[pivot]);
        std::uint64_t scale = inv(rows[static_cast<std::size_t>(rank)][c] % p);
        for (auto& x : rows[static_cast<std::size_t>(rank)]) x = x % p * scale % p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == static_cast<std::size_t>(rank)) continue;
            std::uint64_t f = rows[i][c] % p;
            if (!f) continue;
            for (std::size_t j = 0; j < cols; ++j)
                rows[i][j] = (rows[i][j] + (p - f) * rows[static_cast<std::size_t>(rank)][j]) % p;
        }
        ++rank;
    }
    return rank;
}

/// Rank-based independence oracle: the k1+k2+k3 coefficient vectors of
/// x^j * p_i must be linearly independent over GF(p).
inline bool independence_by_rank(const Polynomial& p1, const Polynomial& p2, const Polynomial& p3,
                                 int k1, int k2, int k3, int k) {
    std::uint64_t p = p1.field().modulus();
    std::vector<std::vector<std::uint64_t>> rows;
    const Polynomial* ps[3] = {&p1, &p2, &p3};
    int ks[3] = {k1, k2, k3};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < ks[i]; ++j) {
            std::vector<std::uint64_t> row(static_cast<std::size_t>(k), 0);
            for (std::size_t c = 0; c < ps[i]->coefficients().size(); ++c)
                row[c + static_cast<std::size_t>(j)] = ps[i]->coefficients()[c];
            rows.push_back(std::move(row));
        }
    return gf_rank(std::move(rows), p) == k1 + k2 + k3;
}

}  // namespace shforge::testing

#endif
