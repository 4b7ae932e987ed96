// shforge: construct, verify and certify sparse hypergraphs.
//
// Exit codes: 0 success / input free, 1 definite negative (a witness was
// found), 2 usage or precondition error, 3 resource budget exceeded.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shforge/algebraic.hpp"
#include "shforge/bounds.hpp"
#include "shforge/hypergraph.hpp"
#include "shforge/lift.hpp"
#include "shforge/manifest.hpp"
#include "shforge/oracle.hpp"
#include "shforge/phm.hpp"
#include "shforge/util.hpp"

namespace {

using namespace shforge;

constexpr int kExitFree = 0;
constexpr int kExitWitness = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

/// Triple-enumeration cap: --budget beats SHFORGE_BUDGET beats the default.
std::uint64_t effective_budget(std::uint64_t flag_value) {
    if (flag_value != 0) return flag_value;
    if (const char* env = std::getenv("SHFORGE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1'000'000'000ULL;
}

std::string witness_line(const FreenessWitness& w) {
    std::string s = "VIOLATION: edges";
    for (std::size_t i : w.edge_indices) s += " " + std::to_string(i);
    s += " span " + std::to_string(w.union_size) + " vertices";
    return s;
}

int cmd_construct_algebraic(int r, int k, std::uint64_t n, std::uint64_t seed,
                            std::uint32_t max_tries, int threads, const std::string& out) {
    std::int64_t t0 = now_ms();
    RecursionBudget budget;
    budget.seed = seed;
    budget.max_vector_tries = max_tries;
    budget.verify_threads = threads;
    auto [graph, report] = construct_recursive(r, k, n, budget);

    write_hg_file(graph, out + ".hg");
    {
        std::ofstream rep(out + ".report.json", std::ios::binary);
        rep << construction_report_to_json(report).dump(2) << '\n';
    }

    RunManifest manifest;
    manifest.command = "construct-algebraic";
    manifest.parameters = {{"r", std::to_string(r)},
                           {"k", std::to_string(k)},
                           {"n", std::to_string(n)},
                           {"max_tries", std::to_string(max_tries)}};
    manifest.seed = seed;
    manifest.output_digests[out + ".hg"] = file_digest(out + ".hg");
    manifest.output_digests[out + ".report.json"] = file_digest(out + ".report.json");
    manifest.elapsed_ms = now_ms() - t0;
    write_manifest(manifest, out + ".manifest.json");

    std::cout << "edges=" << report.edge_count << " target=" << report.target_count
              << " verified=" << (report.verified ? "true" : "false") << '\n';
    return report.verified ? kExitFree : kExitWitness;
}

int cmd_construct_lift(const std::string& seed_graph, int t, int n, std::uint64_t seed,
                       int max_failures, const std::string& out) {
    std::int64_t t0 = now_ms();
    Hypergraph h = read_hg_file(seed_graph);
    LiftedUnion u = construct_lifted(h, t, n, seed, max_failures);

    write_hg_file(u.graph, out + ".hg");
    {
        std::ofstream meta(out + ".meta.json", std::ios::binary);
        meta << union_meta_to_json(u).dump(2) << '\n';
    }
    {
        std::ofstream plan(out + ".plan.json", std::ios::binary);
        plan << packing_plan_to_json(u.plan).dump(2) << '\n';
    }

    RunManifest manifest;
    manifest.command = "construct-lift";
    manifest.parameters = {{"seed_graph", seed_graph},
                           {"t", std::to_string(t)},
                           {"n", std::to_string(n)},
                           {"max_failures", std::to_string(max_failures)}};
    manifest.seed = seed;
    manifest.input_digests[seed_graph] = file_digest(seed_graph);
    for (const char* suffix : {".hg", ".meta.json", ".plan.json"})
        manifest.output_digests[out + suffix] = file_digest(out + suffix);
    manifest.elapsed_ms = now_ms() - t0;
    write_manifest(manifest, out + ".manifest.json");

    GtTemplate tmpl = build_component_graph(h, t);
    BigInt pair_count = BigInt(n) * (n - 1) / 2;
    std::cout << "copies=" << u.plan.copies.size() << " edges=" << u.graph.edge_count()
              << " packing_target=" << rational_string(Rational(pair_count, BigInt(tmpl.graph_edge_count())))
              << '\n';
    return kExitFree;
}

int cmd_verify(const std::string& path, int v, int e, bool naive, std::uint64_t budget) {
    Hypergraph h = read_hg_file(path);
    std::optional<FreenessWitness> w =
        naive ? find_violation_naive(h, v, e, budget) : find_violation(h, v, e);
    if (w) {
        std::cout << witness_line(*w) << '\n';
        return kExitWitness;
    }
    std::cout << "FREE\n";
    return kExitFree;
}

int cmd_certify(const std::string& path, int k, const std::string& out) {
    Hypergraph h = read_hg_file(path);
    UpperBoundCertificate cert = certificate_check(h, k);
    nlohmann::json j = certificate_to_json(cert);
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary);
        f << j.dump(2) << '\n';
    }
    std::cout << j.dump(2) << '\n';
    return kExitFree;
}

int cmd_bounds(int r_min, int r_max, int k_min, int k_max) {
    std::cout << "r k lower upper lower~ upper~\n";
    for (int r = r_min; r <= r_max; ++r)
        for (int k = k_min; k <= k_max && k < r; ++k) {
            Rational lo = lower_bound_density(r, k);
            Rational hi = upper_bound_density(r, k);
            std::cout << r << ' ' << k << ' ' << rational_string(lo) << ' ' << rational_string(hi)
                      << ' ' << static_cast<double>(lo) << ' ' << static_cast<double>(hi) << '\n';
        }
    return kExitFree;
}

int cmd_oracle(int n, int r, int v, int e, bool greedy, std::uint64_t seed, bool almost_linear,
               int max_pairwise, std::uint64_t node_budget, const std::string& out) {
    std::int64_t t0 = now_ms();
    SearchConfig cfg;
    cfg.n = n;
    cfg.r = r;
    cfg.v = v;
    cfg.e = e;
    cfg.seed = seed;
    cfg.almost_linear = almost_linear;
    if (max_pairwise >= 0) cfg.max_pairwise_intersection = max_pairwise;
    if (node_budget) cfg.node_budget = node_budget;

    std::uint64_t value = 0;
    Hypergraph witness = Hypergraph::empty(r, 0);
    if (greedy) {
        witness = greedy_free_graph(cfg);
        value = witness.edge_count();
    } else {
        ExactResult res = exact_max_edges(cfg);
        witness = std::move(res.witness);
        value = static_cast<std::uint64_t>(res.max_edges);
    }
    if (!out.empty()) write_hg_file(witness, out);

    nlohmann::json row;
    row["n"] = n;
    row["r"] = r;
    row["v"] = v;
    row["e"] = e;
    row["value"] = value;
    row["mode"] = greedy ? "greedy" : "exact";
    row["elapsed_ms"] = now_ms() - t0;
    std::cout << row.dump() << '\n';
    return kExitFree;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse hypergraph constructions with brute-force certification"};
    app.set_version_flag("--version", std::string("shforge ") + kToolVersion);
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "verifier worker cap (0 = all cores)");

    auto* ca = app.add_subcommand("construct-algebraic", "recursive algebraic construction");
    int ca_r = 3, ca_k = 2;
    std::uint64_t ca_n = 0, ca_seed = 1;
    std::uint32_t ca_tries = 64;
    std::string ca_out = "construction";
    ca->add_option("--r", ca_r, "uniformity")->required();
    ca->add_option("--k", ca_k, "intersection parameter")->required();
    ca->add_option("--n", ca_n, "vertex count")->required();
    ca->add_option("--seed", ca_seed, "rng seed")->required();
    ca->add_option("--max-tries", ca_tries, "vector search budget per level");
    ca->add_option("--out", ca_out, "output prefix");

    auto* cl = app.add_subcommand("construct-lift", "combinatorial lift to (r+1)-graphs");
    std::string cl_seed_graph;
    int cl_t = 1, cl_n = 0, cl_failures = 2000;
    std::uint64_t cl_seed = 1;
    std::string cl_out = "lift";
    cl->add_option("--seed-graph", cl_seed_graph, "seed .hg file")->required();
    cl->add_option("--t", cl_t, "petal count")->required();
    cl->add_option("--n", cl_n, "host vertex count")->required();
    cl->add_option("--seed", cl_seed, "rng seed")->required();
    cl->add_option("--max-failures", cl_failures, "packing stop rule");
    cl->add_option("--out", cl_out, "output prefix");

    auto* vf = app.add_subcommand("verify", "G_r(v,e)-freeness check");
    std::string vf_in;
    int vf_v = 0, vf_e = 3;
    bool vf_naive = false;
    std::uint64_t vf_budget = 0;
    vf->add_option("--in", vf_in, "input .hg file")->required();
    vf->add_option("--v", vf_v, "span bound")->required();
    vf->add_option("--e", vf_e, "edge count")->required();
    vf->add_flag("--naive", vf_naive, "force the unconditional enumeration oracle");
    vf->add_option("--budget", vf_budget, "triple-enumeration cap (also SHFORGE_BUDGET)");

    auto* cf = app.add_subcommand("certify", "codegree-census certificate");
    std::string cf_in, cf_out;
    int cf_k = 2;
    cf->add_option("--in", cf_in, "input .hg file")->required();
    cf->add_option("--k", cf_k, "subset size")->required();
    cf->add_option("--out", cf_out, "certificate JSON path");

    auto* bd = app.add_subcommand("bounds", "density bound tables");
    int bd_rmin = 3, bd_rmax = 5, bd_kmin = 2, bd_kmax = 3;
    bd->add_option("--r-min", bd_rmin);
    bd->add_option("--r-max", bd_rmax);
    bd->add_option("--k-min", bd_kmin);
    bd->add_option("--k-max", bd_kmax);

    auto* oc = app.add_subcommand("oracle", "exact maxima and greedy witnesses");
    int oc_n = 0, oc_r = 3, oc_v = 5, oc_e = 3, oc_pairwise = -1;
    bool oc_greedy = false, oc_linear = false;
    std::uint64_t oc_seed = 1, oc_nodes = 0;
    std::string oc_out;
    oc->add_option("--n", oc_n)->required();
    oc->add_option("--r", oc_r)->required();
    oc->add_option("--v", oc_v)->required();
    oc->add_option("--e", oc_e)->required();
    oc->add_flag("--greedy", oc_greedy, "greedy instead of exact search");
    oc->add_option("--seed", oc_seed, "rng seed (greedy)");
    oc->add_flag("--almost-linear", oc_linear, "restrict to pairwise intersections <= 2");
    oc->add_option("--max-pairwise", oc_pairwise, "pairwise intersection cap");
    oc->add_option("--budget", oc_nodes, "search-node budget");
    oc->add_option("--out", oc_out, "witness .hg path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ca) return cmd_construct_algebraic(ca_r, ca_k, ca_n, ca_seed, ca_tries, threads, ca_out);
        if (*cl) return cmd_construct_lift(cl_seed_graph, cl_t, cl_n, cl_seed, cl_failures, cl_out);
        if (*vf) return cmd_verify(vf_in, vf_v, vf_e, vf_naive, effective_budget(vf_budget));
        if (*cf) return cmd_certify(cf_in, cf_k, cf_out);
        if (*bd) return cmd_bounds(bd_rmin, bd_rmax, bd_kmin, bd_kmax);
        if (*oc)
            return cmd_oracle(oc_n, oc_r, oc_v, oc_e, oc_greedy, oc_seed, oc_linear, oc_pairwise,
                              oc_nodes, oc_out);
    } catch (const ResourceError& ex) {
        std::cerr << "resource budget exceeded: " << ex.what() << '\n';
        return kExitResource;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::logic_error& ex) {
        std::cerr << "internal invariant failure: " << ex.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
