#include "shforge/util.hpp"

#include <numeric>

namespace shforge {

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        std::uint64_t num = n - k + i;
        // result * num / i is exact at every step; detect overflow before it happens
        std::uint64_t g = std::gcd(num, i);
        std::uint64_t num_r = num / g;
        std::uint64_t den_r = i / g;
        std::uint64_t g2 = std::gcd(result, den_r);
        std::uint64_t res_r = result / g2;
        den_r /= g2;  // now den_r == 1 since the running product is integral
        if (num_r != 0 && res_r > UINT64_MAX / num_r)
            throw ResourceError("binomial_u64 overflow: C(" + std::to_string(n) + "," + std::to_string(k) + ")");
        result = res_r * num_r;
    }
    return result;
}

bool next_combination(std::vector<int>& comb, int n) {
    int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int k) {
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    return c;
}

std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded_rand(rng, static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace shforge
