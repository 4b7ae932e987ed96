#include "shforge/bounds.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shforge/util.hpp"

namespace shforge {

BigInt big_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        result *= static_cast<std::uint64_t>(n - k + i);
        result /= i;
    }
    return result;
}

BigInt big_factorial(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

std::string rational_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

namespace {
void check_rk(int r, int k) {
    if (k < 2 || k >= r) throw std::invalid_argument("bounds: need r > k >= 2");
}
}  // namespace

Rational lower_bound_density(int r, int k) {
    check_rk(r, k);
    return Rational(1, big_pow(r, static_cast<unsigned>(k)) - r);
}

Rational upper_bound_density(int r, int k) {
    check_rk(r, k);
    BigInt fk = big_factorial(static_cast<unsigned>(k));
    BigInt den = fk * big_binomial(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(k)) - fk / 2;
    return Rational(1, den);
}

Rational pi_r23(int r) {
    if (r < 3) throw std::invalid_argument("pi_r23: need r >= 3");
    return Rational(1, BigInt(r) * r - r - 1);
}

Rational bes_edge_upper(std::uint64_t n, int r, int k, int e) {
    if (k < 1 || k > r) throw std::invalid_argument("bes_edge_upper: need 1 <= k <= r");
    if (e < 1) throw std::invalid_argument("bes_edge_upper: need e >= 1");
    return Rational(BigInt(e - 1) * big_binomial(n, static_cast<std::uint64_t>(k)),
                    big_binomial(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(k)));
}

UpperBoundCertificate certificate_check(const Hypergraph& h, int k) {
    const int r = h.uniformity();
    check_rk(r, k);
    const int v = 3 * r - 2 * k;

    if (auto w = find_violation(h, v, 3)) {
        std::string idx;
        for (std::size_t i : w->edge_indices) idx += " " + std::to_string(i);
        throw std::invalid_argument("certificate_check: input is not G_" + std::to_string(r) + "(" +
                                    std::to_string(v) + ",3)-free; witness edges" + idx + " span " +
                                    std::to_string(w->union_size) + " vertices");
    }

    UpperBoundCertificate cert;
    cert.r = r;
    cert.k = k;
    cert.n = h.vertex_count();
    cert.input_edges = h.edge_count();

    auto [pruned, removed] = prune_codegree_one(h, k);
    cert.pruned_removed = removed;
    cert.pruned_edges = pruned.edge_count();

    auto incidence = codegree_incidence(pruned, k);
    for (const auto& [subset, edges] : incidence) {
        if (edges.size() > 2)
            throw std::logic_error("certificate_check: k-subset of codegree > 2 in a free graph");
        if (edges.size() == 1) ++cert.K1;
        if (edges.size() == 2) ++cert.K2;
    }

    const BigInt crk = big_binomial(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(k));
    const BigInt phi_size = 2 * crk - 2;

    // Phi_K checks: |A cap B| = k, Phi_K inside the codegree-1 family, and
    // the Phi_K pairwise disjoint across codegree-2 subsets K.
    std::set<std::vector<int>> phi_seen;
    for (const auto& [subset, edges] : incidence) {
        if (edges.size() != 2) continue;
        const auto& A = pruned.edge(edges[0]);
        const auto& B = pruned.edge(edges[1]);
        if (pruned.intersection_size(edges[0], edges[1]) != k) {
            cert.pair_intersection_exact_k = false;
            throw std::logic_error("certificate_check: codegree-2 subset with |A cap B| != k");
        }
        BigInt members = 0;
        for (const auto* edge : {&A, &B}) {
            std::vector<int> sel = first_combination(k);
            do {
                std::vector<int> K(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) K[static_cast<std::size_t>(j)] = (*edge)[static_cast<std::size_t>(sel[static_cast<std::size_t>(j)])];
                std::sort(K.begin(), K.end());
                if (K == subset) continue;
                ++members;
                auto it = incidence.find(K);
                if (it == incidence.end() || it->second.size() != 1)
                    throw std::logic_error("certificate_check: Phi_K member outside the codegree-1 family");
                if (!phi_seen.insert(K).second) {
                    cert.phi_disjoint = false;
                    throw std::logic_error("certificate_check: Phi_K families intersect");
                }
            } while (next_combination(sel, r));
        }
        if (members != phi_size)
            throw std::logic_error("certificate_check: |Phi_K| != 2 C(r,k) - 2");
    }

    cert.slack = BigInt(cert.K1) - BigInt(cert.K2) * phi_size;
    if (cert.slack < 0) throw std::logic_error("certificate_check: negative slack K1 - K2 (2C(r,k)-2)");

    if (crk * cert.pruned_edges != BigInt(cert.K1) + 2 * BigInt(cert.K2))
        throw std::logic_error("certificate_check: C(r,k)|F| != K1 + 2 K2");
    const BigInt cnk = big_binomial(static_cast<std::uint64_t>(cert.n), static_cast<std::uint64_t>(k));
    if (BigInt(cert.K1) + BigInt(cert.K2) > cnk)
        throw std::logic_error("certificate_check: K1 + K2 > C(n,k)");

    // Chained consequence: |F| <= (2 C(r,k) / (2 C(r,k) - 1)) C(n,k)/C(r,k).
    if (Rational(cert.pruned_edges) > Rational(2 * crk * cnk, (2 * crk - 1) * crk))
        throw std::logic_error("certificate_check: chained edge bound violated");

    return cert;
}

nlohmann::json certificate_to_json(const UpperBoundCertificate& cert) {
    const BigInt crk = big_binomial(static_cast<std::uint64_t>(cert.r), static_cast<std::uint64_t>(cert.k));
    const BigInt cnk = big_binomial(static_cast<std::uint64_t>(cert.n), static_cast<std::uint64_t>(cert.k));
    nlohmann::json j;
    j["r"] = cert.r;
    j["k"] = cert.k;
    j["n"] = cert.n;
    j["input_edges"] = cert.input_edges;
    j["pruned_removed"] = cert.pruned_removed;
    j["pruned_edges"] = cert.pruned_edges;
    j["K1"] = cert.K1;
    j["K2"] = cert.K2;
    j["phi_disjoint"] = cert.phi_disjoint;
    j["pair_intersection_exact_k"] = cert.pair_intersection_exact_k;
    j["slack"] = cert.slack.str();
    j["codegree_identity"] = BigInt(crk * cert.pruned_edges).str() + " = " +
                             BigInt(BigInt(cert.K1) + 2 * BigInt(cert.K2)).str();
    j["edge_bound"] = rational_string(Rational(2 * crk * cnk, (2 * crk - 1) * crk));
    return j;
}

}  // namespace shforge
