#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "galign/graph.hpp"
#include "galign/rng.hpp"

namespace galign {

enum class NoiseMode { add_remove, add_only };

std::string_view to_string(NoiseMode mode);
NoiseMode noise_mode_from_string(std::string_view s);

/// Noise level eta in [0, 1) plus the edge-flip mode. The per-pair
/// probabilities are derived per graph at application time.
struct NoiseConfig {
    double eta = 0.0;
    NoiseMode mode = NoiseMode::add_remove;
};

struct EdgeProbs {
    double p_add = 0.0;
    double p_remove = 0.0;
};

/// p_add = eta*|E| / (N(N-1) - |E|) with |E| the ordered edge count 2m;
/// p_remove = eta (add_remove) or 0 (add_only). Expected added and removed
/// undirected edge counts are both eta*m under add_remove.
/// Throws config_error when eta > N(N-1)/|E| - 1 (p_add would exceed 1).
EdgeProbs derive_probs(const NoiseConfig& cfg, const Graph& g);

/// G(n, p) with p = avg_degree/(n-1); every unordered pair drawn independently.
Graph erdos_renyi(int n, double avg_degree, Rng& rng);

/// Correlated copy: each edge survives with probability 1 - p_remove, each
/// non-edge appears with probability p_add. Masks are symmetric: one draw
/// per unordered pair, mirrored.
Graph correlate(const Graph& g, const NoiseConfig& cfg, Rng& rng);

/// One dataset unit: (G, H, pi*) with H the permuted correlated copy and
/// pi* the planted alignment. overlap(base, noisy, truth) equals the
/// pre-permutation overlap by construction.
struct AlignmentSample {
    Graph base;
    Graph noisy;
    Permutation truth;
    double eta = 0.0;
    std::uint64_t seed = 0;
};

AlignmentSample plant_sample(const Graph& g, const NoiseConfig& cfg, Rng& rng);

/// Convenience: sample owns its RNG stream; records the seed.
AlignmentSample plant_sample(const Graph& g, const NoiseConfig& cfg, std::uint64_t seed);

struct DatasetMeta {
    std::string name;
    double eta = 0.0;
    NoiseMode mode = NoiseMode::add_remove;
    std::uint64_t master_seed = 0;
    std::string split; // "train" | "val"
};

struct AlignmentDataset {
    DatasetMeta meta;
    std::vector<AlignmentSample> samples;
};

/// One sample per base graph; sample i is generated from
/// derive_seed(master_seed, split, i), so the result is identical for any
/// worker count. workers = 0 means hardware concurrency.
AlignmentDataset build_dataset(std::span<const Graph> bases, const NoiseConfig& cfg,
                               std::uint64_t master_seed, std::string_view split,
                               std::string_view name, int workers = 0);

/// Base-graph corpus for the builtin Erdos-Renyi source; graph i drawn from
/// derive_seed(master_seed, tag, i).
std::vector<Graph> erdos_renyi_corpus(int count, int n, double avg_degree,
                                      std::uint64_t master_seed, std::string_view tag,
                                      int workers = 0);

struct BfsConfig {
    int target_size = 0; // N'
    int count = 1;       // subgraphs to extract
};

struct BfsSample {
    Graph graph;
    std::vector<int> vertices; // original ids, ascending; row i of graph = vertices[i]
    bool undersized = false;   // seed component exhausted before reaching N'
};

/// BFS subgraph sampling: grow V' from a uniform seed vertex by whole
/// neighbor frontiers, trimming the last frontier uniformly at random when
/// it would overshoot N'. Induced subgraph, relabeled 0..|V'|-1 in ascending
/// original-id order. Connected whenever the seed's component has >= N'
/// vertices; if the component is smaller, returns it with undersized set.
BfsSample bfs_sample(const Graph& g, int target_size, Rng& rng);
BfsSample bfs_sample(const Graph& g, const BfsConfig& cfg, Rng& rng);

} // namespace galign
