#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "galign/generate.hpp"
#include "galign/siamese.hpp"

namespace galign {

struct SweepSource {
    enum class Kind { erdos_renyi, corpus };
    Kind kind = Kind::erdos_renyi;
    // erdos_renyi source
    int n = 100;
    double avg_degree = 8.0;
    // corpus source
    std::string corpus_path;
    // split sizes (corpus splits are disjoint by index: train first, val after)
    int train_count = 0;
    int val_count = 0;
};

/// Declarative sweep description; parsed from a JSON spec file.
struct SweepSpec {
    std::string name = "sweep";
    SweepSource source;
    std::vector<double> etas;
    NoiseMode mode = NoiseMode::add_remove;
    std::vector<std::uint64_t> seeds;   // run seeds (model init + shuffling)
    std::vector<std::string> models;    // "laplacian" | "gcn" | "gated-gcn"
    TrainConfig train_cfg;
    int d = 64;                         // baseline encoding width
    std::uint64_t master_seed = 1;      // dataset generation seed
};

SweepSpec parse_sweep_spec(const std::filesystem::path& path);
std::string sweep_spec_to_json(const SweepSpec& spec);

struct RunRecord {
    std::string model;
    double eta = 0.0;
    std::uint64_t seed = 0;
    bool ok = false;
    bool cache_hit = false;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    long long steps = 0;
    double wall_seconds = 0.0;
    std::string error;
};

struct Aggregate {
    std::string model;
    double eta = 0.0;
    int runs = 0;
    double mean = 0.0;   // mean over run means
    double stddev = 0.0; // std over run means
    double median = 0.0;
    double gap = 0.0;    // mean minus the worst model mean at this eta
};

struct BenchResult {
    std::vector<RunRecord> runs;
    std::vector<Aggregate> aggregates;
    long long training_steps_executed = 0; // excludes cache hits
};

/// Materializes datasets per eta (cached on disk), trains/evaluates each
/// (model, eta, seed) cell, persists one record per cell under a
/// content-hash key before aggregating. Completed cells are skipped on
/// rerun. Per-run failures are recorded and excluded from aggregates.
BenchResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                      int workers = 0);

/// report.tsv (one row per model, one eta column each, "mean+-std (median)"
/// percentages with one decimal), gaps.tsv (plot data: model, eta, gap),
/// aggregates.json (full precision).
void write_report(const BenchResult& result, const SweepSpec& spec,
                  const std::filesystem::path& out_dir);

/// Parses a report.tsv back into (model, eta, mean, std, median) percent
/// values, for round-trip checks.
struct ReportCell {
    std::string model;
    double eta = 0.0;
    double mean_pct = 0.0;
    double std_pct = 0.0;
    double median_pct = 0.0;
};
std::vector<ReportCell> parse_report(const std::filesystem::path& path);

} // namespace galign
