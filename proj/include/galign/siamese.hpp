#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "galign/generate.hpp"
#include "galign/model.hpp"

namespace galign {

/// Sigma(i, j) = <x_i, x~_j>.
Matrix similarity(const Matrix& x, const Matrix& x_tilde);

/// -sum_i log (row-softmax(sigma))_{i, truth(i)}, max-subtraction stabilized.
/// Per-sample sum, not mean.
double bce_loss(const Matrix& sigma, const Permutation& truth);

struct TrainConfig {
    int epochs = 300;
    int batch_size = 32;
    double max_lr = 0.003;
    int warmup_steps = 30;
    double weight_decay = 0.01;
    double grad_clip = 0.1;
    std::uint64_t seed = 1;
    int eval_every = 10; // epochs between validation passes (0 = final only)
    int workers = 0;
};

struct EvalPoint {
    int epoch = 0;
    double mean = 0.0;
    double stddev = 0.0;
};

struct TrainReport {
    std::vector<double> epoch_loss; // mean per-sample loss
    std::vector<EvalPoint> evals;
    double wall_seconds = 0.0;
    long long steps = 0;
    bool diverged = false;
    TrainConfig cfg;
    std::uint64_t seed = 0;
};

struct TrainResult {
    ModelParams params;
    TrainReport report;
};

/// Shared-weight training per the siamese objective: both graphs of a
/// sample are encoded with the same parameters, the loss is the mean of
/// per-sample BCE sums over the batch, AdamW with one-cycle lr and global
/// gradient clipping. Deterministic for a fixed config and seed, for any
/// worker count (per-sample gradients reduce in index order). On loss
/// divergence the parameters from before the failing step are returned
/// with report.diverged set.
TrainResult train(ModelParams params, const AlignmentDataset& train_ds,
                  const AlignmentDataset& val_ds, const TrainConfig& cfg);

struct EvalResult {
    double mean = 0.0;
    double stddev = 0.0;
    std::vector<double> per_sample;
};

/// Per sample: decode(forward(base), forward(noisy)) scored against truth.
EvalResult evaluate(const ModelParams& params, const AlignmentDataset& ds, int workers = 0);

/// Embedding file: one n x d_out matrix per graph, text (default) or binary.
/// Both variants round-trip bit-exactly.
void export_embeddings(const std::filesystem::path& path, const ModelParams& params,
                       std::span<const Graph> graphs, bool binary = false);

std::vector<Matrix> load_embeddings(const std::filesystem::path& path);

} // namespace galign
