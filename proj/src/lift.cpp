#include "shforge/lift.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "shforge/util.hpp"

namespace shforge {

EmbeddingSpec::EmbeddingSpec(int s, std::vector<int> tgt) : source_size(s), target(std::move(tgt)) {
    if (static_cast<int>(target.size()) != source_size)
        throw std::invalid_argument("EmbeddingSpec: target size mismatch");
    std::vector<int> sorted = target;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("EmbeddingSpec: target entries must be distinct");
}

std::vector<int> EmbeddingSpec::apply(const std::vector<int>& edge) const {
    std::vector<int> out;
    out.reserve(edge.size());
    for (int v : edge) out.push_back((*this)(v));
    return out;
}

std::vector<std::pair<int, int>> GtTemplate::all_edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(graph_edge_count());
    out.insert(out.end(), petal_edges.begin(), petal_edges.end());
    out.insert(out.end(), core_edges.begin(), core_edges.end());
    out.insert(out.end(), connector_edges.begin(), connector_edges.end());
    return out;
}

EmbeddingSpec GtTemplate::petal_embedding(int i) const {
    std::vector<int> tgt(static_cast<std::size_t>(s));
    for (int v = 0; v < s; ++v) tgt[static_cast<std::size_t>(v)] = i * s + v;
    return EmbeddingSpec(s, std::move(tgt));
}

GtTemplate build_component_graph(const Hypergraph& seed, int t) {
    if (t < 1) throw std::invalid_argument("build_component_graph: t must be >= 1");
    if (seed.edge_count() < 2)
        throw std::invalid_argument("build_component_graph: seed needs m >= 2 edges (core clique)");

    GtTemplate tmpl{seed, seed.vertex_count(), static_cast<int>(seed.edge_count()), t,
                    seed.uniformity(), {}, {}, {}};
    for (int i = 0; i < t; ++i)
        for (int a = 0; a < tmpl.s; ++a)
            for (int b = a + 1; b < tmpl.s; ++b)
                tmpl.petal_edges.emplace_back(i * tmpl.s + a, i * tmpl.s + b);
    for (int a = 0; a < tmpl.m; ++a)
        for (int b = a + 1; b < tmpl.m; ++b)
            tmpl.core_edges.emplace_back(tmpl.core_vertex(a), tmpl.core_vertex(b));
    for (int i = 0; i < t; ++i) {
        EmbeddingSpec psi = tmpl.petal_embedding(i);
        for (int j = 0; j < tmpl.m; ++j)
            for (int v : seed.edge(static_cast<std::size_t>(j)))
                tmpl.connector_edges.emplace_back(psi(v), tmpl.core_vertex(j));
    }
    return tmpl;
}

LiftedGraph lift(const GtTemplate& tmpl) {
    struct Entry {
        std::vector<int> edge;
        LiftedEdgeMeta meta;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(tmpl.t) * static_cast<std::size_t>(tmpl.m));
    for (int i = 0; i < tmpl.t; ++i) {
        EmbeddingSpec psi = tmpl.petal_embedding(i);
        for (int j = 0; j < tmpl.m; ++j) {
            std::vector<int> edge = psi.apply(tmpl.seed.edge(static_cast<std::size_t>(j)));
            edge.push_back(tmpl.core_vertex(j));
            std::sort(edge.begin(), edge.end());
            entries.push_back({std::move(edge), {i, tmpl.core_vertex(j)}});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.edge < b.edge; });
    std::vector<std::vector<int>> edges;
    std::vector<LiftedEdgeMeta> meta;
    for (auto& e : entries) {
        edges.push_back(std::move(e.edge));
        meta.push_back(e.meta);
    }
    return {Hypergraph(tmpl.r + 1, tmpl.vertex_count(), std::move(edges)), std::move(meta), tmpl.s,
            tmpl.m, tmpl.t};
}

bool verify_lift(const LiftedGraph& lifted, const Hypergraph& seed) {
    const int r = seed.uniformity();
    const int s = lifted.s, m = lifted.m, t = lifted.t;
    const Hypergraph& g = lifted.graph;
    if (g.uniformity() != r + 1) return false;
    if (g.edge_count() != static_cast<std::size_t>(m) * static_cast<std::size_t>(t)) return false;

    // Classify roots and cores from the block layout and cross-check meta.
    std::vector<std::vector<int>> roots(g.edge_count());
    std::vector<int> petal_of(g.edge_count()), core_of(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        int petal = -1, core = -1;
        for (int v : g.edge(e)) {
            if (v >= t * s) {
                if (core != -1) return false;  // two core vertices
                core = v;
            } else {
                int p = v / s;
                if (petal == -1) petal = p;
                if (p != petal) return false;  // root spread over two petals
                roots[e].push_back(v);
            }
        }
        if (core == -1 || static_cast<int>(roots[e].size()) != r) return false;
        if (petal != lifted.meta[e].petal || core != lifted.meta[e].core) return false;
        petal_of[e] = petal;
        core_of[e] = core;
    }

    // (i) same petal -> distinct cores; per-petal roots form a copy of the seed
    for (int p = 0; p < t; ++p) {
        std::set<int> cores;
        std::vector<std::vector<int>> relabeled;
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            if (petal_of[e] != p) continue;
            if (!cores.insert(core_of[e]).second) return false;
            std::vector<int> back = roots[e];
            for (int& v : back) v -= p * s;
            relabeled.push_back(std::move(back));
        }
        std::sort(relabeled.begin(), relabeled.end());
        if (relabeled != seed.edges()) return false;
    }

    // (ii) different petals -> disjoint roots
    for (std::size_t a = 0; a < g.edge_count(); ++a)
        for (std::size_t b = a + 1; b < g.edge_count(); ++b) {
            if (petal_of[a] == petal_of[b]) continue;
            std::vector<int> inter;
            std::set_intersection(roots[a].begin(), roots[a].end(), roots[b].begin(), roots[b].end(),
                                  std::back_inserter(inter));
            if (!inter.empty()) return false;
        }

    // (iv) every lifted edge induces a clique in G_t
    GtTemplate tmpl = build_component_graph(seed, t);
    std::set<std::pair<int, int>> graph_edges;
    for (auto [a, b] : tmpl.all_edges()) graph_edges.insert({std::min(a, b), std::max(a, b)});
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const auto& edge = g.edge(e);
        for (std::size_t x = 0; x < edge.size(); ++x)
            for (std::size_t y = x + 1; y < edge.size(); ++y)
                if (!graph_edges.count({edge[x], edge[y]})) return false;
    }

    // (v) inherited properties, gated on the seed's
    if (is_almost_linear(seed)) {
        if (!is_almost_linear(g)) return false;
        if (is_free(seed, 3 * r - 4, 3) && !is_free(g, 3 * r - 1, 3)) return false;
    }
    return true;
}

namespace {

std::uint64_t pair_key(int a, int b, int n) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(b);
}

}  // namespace

PackingPlan greedy_induced_packing(int n, const SimpleGraph& g, std::uint64_t seed,
                                   int max_failures) {
    if (g.n < 1) throw std::invalid_argument("greedy_induced_packing: template graph is empty");
    if (n < g.n) throw std::invalid_argument("greedy_induced_packing: n < |V(G)|");
    for (auto [a, b] : g.edges)
        if (a == b || a < 0 || b < 0 || a >= g.n || b >= g.n)
            throw std::invalid_argument("greedy_induced_packing: bad template edge");

    PackingPlan plan;
    plan.n = n;
    std::unordered_set<std::uint64_t> used_pairs;
    std::vector<std::unordered_set<std::uint64_t>> copy_edges;  // image edges per copy
    std::vector<std::vector<int>> copy_sorted;                  // image vertices, sorted

    std::mt19937_64 rng(seed);
    int consecutive_failures = 0;
    while (consecutive_failures < max_failures) {
        ++plan.attempts;
        std::vector<int> image = sample_distinct(rng, n, g.n);

        std::vector<std::uint64_t> edges;
        edges.reserve(g.edges.size());
        bool ok = true;
        std::unordered_set<std::uint64_t> cand_edges;
        for (auto [a, b] : g.edges) {
            std::uint64_t key = pair_key(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)], n);
            if (used_pairs.count(key)) {
                ok = false;
                break;
            }
            cand_edges.insert(key);
            edges.push_back(key);
        }
        std::vector<int> sorted_image = image;
        std::sort(sorted_image.begin(), sorted_image.end());
        if (ok) {
            for (std::size_t c = 0; c < plan.copies.size() && ok; ++c) {
                std::vector<int> shared;
                std::set_intersection(sorted_image.begin(), sorted_image.end(), copy_sorted[c].begin(),
                                      copy_sorted[c].end(), std::back_inserter(shared));
                if (shared.size() > 2) ok = false;
                if (shared.size() == 2) {
                    std::uint64_t key = pair_key(shared[0], shared[1], n);
                    // induced condition: the shared pair is an edge of neither copy
                    if (copy_edges[c].count(key) || cand_edges.count(key)) ok = false;
                }
            }
        }
        if (!ok) {
            ++plan.rejections;
            ++consecutive_failures;
            continue;
        }
        used_pairs.insert(edges.begin(), edges.end());
        copy_edges.push_back(std::move(cand_edges));
        copy_sorted.push_back(std::move(sorted_image));
        plan.copies.push_back(std::move(image));
        consecutive_failures = 0;
    }
    return plan;
}

bool verify_packing(const PackingPlan& plan, const SimpleGraph& g) {
    std::vector<std::set<std::pair<int, int>>> images;
    for (const auto& copy : plan.copies) {
        if (static_cast<int>(copy.size()) != g.n) return false;
        std::set<int> distinct(copy.begin(), copy.end());
        if (static_cast<int>(distinct.size()) != g.n) return false;
        for (int v : copy)
            if (v < 0 || v >= plan.n) return false;
        std::set<std::pair<int, int>> img;
        for (auto [a, b] : g.edges) {
            int x = copy[static_cast<std::size_t>(a)], y = copy[static_cast<std::size_t>(b)];
            img.insert({std::min(x, y), std::max(x, y)});
        }
        if (img.size() != g.edges.size()) return false;
        images.push_back(std::move(img));
    }
    for (std::size_t i = 0; i < plan.copies.size(); ++i)
        for (std::size_t j = i + 1; j < plan.copies.size(); ++j) {
            for (const auto& e : images[i])
                if (images[j].count(e)) return false;  // shared 2-edge
            std::set<int> vi(plan.copies[i].begin(), plan.copies[i].end());
            std::vector<int> shared;
            for (int v : plan.copies[j])
                if (vi.count(v)) shared.push_back(v);
            if (shared.size() > 2) return false;
            if (shared.size() == 2) {
                std::pair<int, int> p{std::min(shared[0], shared[1]), std::max(shared[0], shared[1])};
                if (images[i].count(p) || images[j].count(p)) return false;
            }
        }
    return true;
}

LiftedUnion construct_lifted(const Hypergraph& seed, int t, int n, std::uint64_t seed_value,
                             int max_failures) {
    const int r = seed.uniformity();
    if (!is_almost_linear(seed))
        throw std::invalid_argument("construct_lifted: seed is not almost linear (a pair of edges shares more than 2 vertices)");
    if (auto w = find_violation(seed, 3 * r - 4, 3)) {
        std::string idx;
        for (std::size_t i : w->edge_indices) idx += " " + std::to_string(i);
        throw std::invalid_argument("construct_lifted: seed is not free; witness edges" + idx +
                                    " span " + std::to_string(w->union_size) + " vertices");
    }

    GtTemplate tmpl = build_component_graph(seed, t);
    if (n < tmpl.vertex_count())
        throw std::invalid_argument("construct_lifted: n < |V(G_t)| = " +
                                    std::to_string(tmpl.vertex_count()));

    SimpleGraph g{tmpl.vertex_count(), tmpl.all_edges()};
    PackingPlan plan = greedy_induced_packing(n, g, seed_value, max_failures);
    LiftedGraph lifted = lift(tmpl);

    struct Entry {
        std::vector<int> edge;
        UnionEdgeMeta meta;
    };
    std::vector<Entry> entries;
    for (std::size_t c = 0; c < plan.copies.size(); ++c) {
        const auto& copy = plan.copies[c];
        for (std::size_t e = 0; e < lifted.graph.edge_count(); ++e) {
            std::vector<int> edge;
            edge.reserve(static_cast<std::size_t>(r) + 1);
            for (int v : lifted.graph.edge(e)) edge.push_back(copy[static_cast<std::size_t>(v)]);
            std::sort(edge.begin(), edge.end());
            entries.push_back({std::move(edge),
                               {static_cast<int>(c), lifted.meta[e].petal,
                                copy[static_cast<std::size_t>(lifted.meta[e].core)]}});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.edge < b.edge; });
    std::vector<std::vector<int>> edges;
    std::vector<UnionEdgeMeta> meta;
    for (auto& e : entries) {
        edges.push_back(std::move(e.edge));
        meta.push_back(e.meta);
    }

    LiftedUnion out{Hypergraph(r + 1, n, std::move(edges)), std::move(meta), std::move(plan),
                    tmpl.s, tmpl.m, tmpl.t};
    if (out.graph.edge_count() != static_cast<std::size_t>(tmpl.m) * static_cast<std::size_t>(tmpl.t) *
                                      out.plan.copies.size())
        throw std::logic_error("construct_lifted: edge count is not m*t*l");
    if (!is_almost_linear(out.graph))
        throw std::logic_error("construct_lifted: union lost almost linearity");
    if (!is_free(out.graph, 3 * (r + 1) - 4, 3))
        throw std::logic_error("construct_lifted: union lost freeness");
    return out;
}

nlohmann::json packing_plan_to_json(const PackingPlan& plan) {
    nlohmann::json j;
    j["n"] = plan.n;
    j["copies"] = plan.copies;
    j["copy_count"] = plan.copies.size();
    j["attempts"] = plan.attempts;
    j["rejections"] = plan.rejections;
    return j;
}

nlohmann::json union_meta_to_json(const LiftedUnion& u) {
    nlohmann::json meta = nlohmann::json::array();
    for (const auto& m : u.meta)
        meta.push_back({{"copy", m.copy}, {"petal", m.petal}, {"core", m.core}});
    nlohmann::json j;
    j["s"] = u.s;
    j["m"] = u.m;
    j["t"] = u.t;
    j["copies"] = u.plan.copies.size();
    j["edges"] = std::move(meta);
    return j;
}

}  // namespace shforge
