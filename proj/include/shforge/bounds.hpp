#ifndef SHFORGE_BOUNDS_HPP
#define SHFORGE_BOUNDS_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include "shforge/hypergraph.hpp"

namespace shforge {

// All bound arithmetic is exact: density comparisons at 1/57 scale must not
// suffer rounding.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt big_binomial(std::uint64_t n, std::uint64_t k);
BigInt big_factorial(unsigned k);
BigInt big_pow(const BigInt& base, unsigned exp);

/// "num/den" in lowest terms ("n" when integral).
std::string rational_string(const Rational& x);

/// Density lower bound 1/(r^k - r), r > k >= 2.
Rational lower_bound_density(int r, int k);

/// Density upper bound 1/(k! C(r,k) - k!/2), r > k >= 2.
Rational upper_bound_density(int r, int k);

/// 1/(r^2 - r - 1), the exact density for k = 2 (coincides with
/// upper_bound_density(r, 2)).
Rational pi_r23(int r);

/// Edge-count upper bound (e-1) C(n,k) / C(r,k).
Rational bes_edge_upper(std::uint64_t n, int r, int k, int e);

/// Codegree-census certificate for a G_r(3r-2k,3)-free graph. All counts
/// refer to the graph after removing edges that contain a (k-1)-subset of
/// codegree one.
struct UpperBoundCertificate {
    int r = 0;
    int k = 0;
    int n = 0;
    std::uint64_t input_edges = 0;
    std::uint64_t pruned_removed = 0;
    std::uint64_t pruned_edges = 0;
    std::uint64_t K1 = 0;  // k-subsets of codegree 1
    std::uint64_t K2 = 0;  // k-subsets of codegree 2
    bool phi_disjoint = true;
    bool pair_intersection_exact_k = true;
    BigInt slack;  // K1 - K2 (2 C(r,k) - 2), nonnegative on free inputs
};

/// Verifies freeness first (violation -> std::invalid_argument naming the
/// witness), prunes by codegree-one (k-1)-subsets, then checks every step of
/// the counting argument as a hard assertion: max k-subset codegree <= 2,
/// |A cap B| = k for both edges through a codegree-2 subset, the K-shadow
/// families Phi_K of size 2 C(r,k) - 2 lying inside the codegree-1 family
/// and pairwise disjoint, the double-count identity C(r,k)|F| = K1 + 2 K2,
/// K1 + K2 <= C(n,k), and the chained edge bound. These are theorems for
/// free inputs, so any failure throws std::logic_error - it means the
/// implementation is wrong, not the input.
UpperBoundCertificate certificate_check(const Hypergraph& h, int k);

nlohmann::json certificate_to_json(const UpperBoundCertificate& cert);

}  // namespace shforge

#endif
