#include "galign/generate.hpp"

#include <algorithm>
#include <string>

#include "galign/parallel.hpp"

namespace galign {

std::string_view to_string(NoiseMode mode) {
    return mode == NoiseMode::add_remove ? "add-remove" : "add-only";
}

NoiseMode noise_mode_from_string(std::string_view s) {
    if (s == "add-remove")
        return NoiseMode::add_remove;
    if (s == "add-only")
        return NoiseMode::add_only;
    throw argument_error("unknown noise mode '" + std::string(s) +
                         "' (expected add-remove or add-only)");
}

EdgeProbs derive_probs(const NoiseConfig& cfg, const Graph& g) {
    if (cfg.eta < 0.0 || cfg.eta >= 1.0)
        throw config_error("noise level eta must lie in [0, 1)");
    const double n = static_cast<double>(g.vertex_count());
    const double m = static_cast<double>(g.edge_count());
    const double ordered_edges = 2.0 * m;          // |E| of the double-sum convention
    const double ordered_pairs = n * (n - 1.0);    // N(N-1)
    EdgeProbs probs;
    probs.p_remove = cfg.mode == NoiseMode::add_remove ? cfg.eta : 0.0;
    if (m == 0.0) {
        probs.p_add = 0.0;
        return probs;
    }
    const double bound = ordered_pairs / ordered_edges - 1.0;
    if (cfg.eta > bound)
        throw config_error("eta=" + std::to_string(cfg.eta) +
                           " exceeds the dense-graph bound N(N-1)/|E| - 1 = " +
                           std::to_string(bound));
    probs.p_add = cfg.eta * ordered_edges / (ordered_pairs - ordered_edges);
    return probs;
}

Graph erdos_renyi(int n, double avg_degree, Rng& rng) {
    if (n < 2)
        throw argument_error("erdos_renyi: n must be >= 2");
    if (avg_degree <= 0.0 || avg_degree > static_cast<double>(n - 1))
        throw argument_error("erdos_renyi: avg_degree must lie in (0, n-1]");
    const double p = avg_degree / static_cast<double>(n - 1);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.2) + 16);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p))
                edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Graph correlate(const Graph& g, const NoiseConfig& cfg, Rng& rng) {
    const auto probs = derive_probs(cfg, g);
    const int n = g.vertex_count();
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()) + 16);
    // One draw per unordered pair in lexicographic order; the symmetric
    // Bernoulli masks are implicit in the mirroring of the result.
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const bool present = g.has_edge(u, v);
            const bool keep = present ? !rng.bernoulli(probs.p_remove)
                                      : rng.bernoulli(probs.p_add);
            if (keep)
                edges.push_back({u, v});
        }
    }
    return Graph(n, std::move(edges));
}

AlignmentSample plant_sample(const Graph& g, const NoiseConfig& cfg, Rng& rng) {
    Graph correlated = correlate(g, cfg, rng);
    Permutation truth = Permutation::random(g.vertex_count(), rng);
    Graph noisy = permute(correlated, truth);
    return {g, std::move(noisy), std::move(truth), cfg.eta, 0};
}

AlignmentSample plant_sample(const Graph& g, const NoiseConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    AlignmentSample sample = plant_sample(g, cfg, rng);
    sample.seed = seed;
    return sample;
}

AlignmentDataset build_dataset(std::span<const Graph> bases, const NoiseConfig& cfg,
                               std::uint64_t master_seed, std::string_view split,
                               std::string_view name, int workers) {
    // Validate every base graph up front so errors name the offender.
    for (std::size_t i = 0; i < bases.size(); ++i) {
        try {
            derive_probs(cfg, bases[i]);
        } catch (const config_error& e) {
            throw config_error("base graph " + std::to_string(i) + ": " + e.what());
        }
    }
    AlignmentDataset ds;
    ds.meta = {std::string(name), cfg.eta, cfg.mode, master_seed, std::string(split)};
    ds.samples.resize(bases.size());
    parallel_for(bases.size(), workers, [&](std::size_t i) {
        ds.samples[i] = plant_sample(bases[i], cfg, derive_seed(master_seed, split, i));
    });
    return ds;
}

std::vector<Graph> erdos_renyi_corpus(int count, int n, double avg_degree,
                                      std::uint64_t master_seed, std::string_view tag,
                                      int workers) {
    std::vector<Graph> graphs(static_cast<std::size_t>(count));
    parallel_for(graphs.size(), workers, [&](std::size_t i) {
        Rng rng(derive_seed(master_seed, tag, i));
        graphs[i] = erdos_renyi(n, avg_degree, rng);
    });
    return graphs;
}

BfsSample bfs_sample(const Graph& g, const BfsConfig& cfg, Rng& rng) {
    return bfs_sample(g, cfg.target_size, rng);
}

BfsSample bfs_sample(const Graph& g, int target_size, Rng& rng) {
    const int n = g.vertex_count();
    if (n < 1)
        throw argument_error("bfs_sample: graph has no vertices");
    if (target_size < 1 || target_size > n)
        throw argument_error("bfs_sample: target size " + std::to_string(target_size) +
                             " out of range for n=" + std::to_string(n));

    std::vector<char> selected(static_cast<std::size_t>(n), 0);
    std::vector<int> chosen;
    chosen.reserve(static_cast<std::size_t>(target_size));
    const int seed_vertex = rng.next_int(n);
    selected[static_cast<std::size_t>(seed_vertex)] = 1;
    chosen.push_back(seed_vertex);

    bool undersized = false;
    while (static_cast<int>(chosen.size()) < target_size) {
        // Full neighbor frontier of the current V', minus V' itself.
        std::vector<int> frontier;
        std::vector<char> in_frontier(static_cast<std::size_t>(n), 0);
        for (int v : chosen) {
            for (int w : g.neighbors(v)) {
                if (!selected[static_cast<std::size_t>(w)] && !in_frontier[static_cast<std::size_t>(w)]) {
                    in_frontier[static_cast<std::size_t>(w)] = 1;
                    frontier.push_back(w);
                }
            }
        }
        if (frontier.empty()) {
            undersized = true; // component exhausted
            break;
        }
        const int room = target_size - static_cast<int>(chosen.size());
        if (static_cast<int>(frontier.size()) > room) {
            // Uniform trim without replacement: keep a random subset of size room.
            for (int i = 0; i < room; ++i) {
                const int j = i + rng.next_int(static_cast<int>(frontier.size()) - i);
                std::swap(frontier[static_cast<std::size_t>(i)], frontier[static_cast<std::size_t>(j)]);
            }
            frontier.resize(static_cast<std::size_t>(room));
        }
        for (int w : frontier) {
            selected[static_cast<std::size_t>(w)] = 1;
            chosen.push_back(w);
        }
    }

    std::sort(chosen.begin(), chosen.end());
    std::vector<int> relabel(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < chosen.size(); ++i)
        relabel[static_cast<std::size_t>(chosen[i])] = static_cast<int>(i);

    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        const int u = relabel[static_cast<std::size_t>(e.u)];
        const int v = relabel[static_cast<std::size_t>(e.v)];
        if (u >= 0 && v >= 0)
            edges.push_back({u, v});
    }
    return {Graph(static_cast<int>(chosen.size()), std::move(edges)), std::move(chosen), undersized};
}

} // namespace galign
