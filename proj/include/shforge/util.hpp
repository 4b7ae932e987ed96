#ifndef SHFORGE_UTIL_HPP
#define SHFORGE_UTIL_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace shforge {

/// Thrown when a computation would exceed a configured enumeration or
/// search budget. The message names the budget and, where meaningful,
/// the best result found so far.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// C(n, k) in unsigned 64-bit arithmetic; throws ResourceError on overflow.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k);

/// Advances `comb` (strictly ascending k-subset of [0, n)) to its
/// lexicographic successor. Returns false when `comb` was the last subset.
bool next_combination(std::vector<int>& comb, int n);

/// First k-subset {0, 1, ..., k-1}; pair with next_combination for scans.
std::vector<int> first_combination(int k);

// Seeded sampling helpers. std::shuffle / std::uniform_int_distribution are
// implementation-defined across standard libraries, so anything that affects
// output bytes uses these instead (mt19937_64 itself is pinned by the
// standard).

/// Uniform-ish draw from [0, bound) via modulo; bound must be nonzero.
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound);

/// In-place Fisher-Yates shuffle.
template <class T>
void seeded_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_rand(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

/// k distinct values from [0, n), in the order drawn (partial Fisher-Yates).
std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int k);

/// FNV-1a 64-bit digest of a byte string, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace shforge

#endif
