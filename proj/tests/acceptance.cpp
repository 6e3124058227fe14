// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 8 (full-protocol reproduction, an overnight run) is
// gated behind --extended.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "galign/bench.hpp"
#include "galign/cli.hpp"
#include "galign/io.hpp"
#include "galign/spectral.hpp"

#include "fd_support.hpp"

using namespace galign;
using nlohmann::json;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string description)
        : number_(number), description_(std::move(description)),
          start_(std::chrono::steady_clock::now()) {}

    void fail(const std::string& why) {
        ok_ = false;
        notes_.push_back(why);
    }

    void note(const std::string& text) { notes_.push_back(text); }

    void check(bool condition, const std::string& why) {
        if (!condition)
            fail(why);
    }

    ~Criterion() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("%s criterion-%d (%.1fs): %s", ok_ ? "PASS" : "FAIL", number_, secs,
                    description_.c_str());
        for (const auto& n : notes_)
            std::printf(" | %s", n.c_str());
        std::printf("\n");
        std::fflush(stdout);
        if (!ok_)
            ++failures;
    }

private:
    int number_;
    std::string description_;
    std::vector<std::string> notes_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

std::filesystem::path work_dir() {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / "galign-acceptance";
        std::filesystem::remove_all(d);
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string fmt(double x, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return std::string(buf);
}

Matrix random_matrix(int rows, int cols, Rng& rng, double scale = 1.0) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = (2.0 * rng.next_double() - 1.0) * scale;
    return m;
}

Graph random_graph(int n, double p, Rng& rng) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p))
                edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

Matrix row_permute(const Matrix& m, const Permutation& p) {
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        out.row(p(i)) = m.row(i);
    return out;
}

double bruteforce_lap_value(const Matrix& reward) {
    const int n = static_cast<int>(reward.rows());
    std::vector<int> map(static_cast<std::size_t>(n));
    std::iota(map.begin(), map.end(), 0);
    double best = -std::numeric_limits<double>::infinity();
    do {
        double value = 0.0;
        for (int i = 0; i < n; ++i)
            value += reward(i, map[static_cast<std::size_t>(i)]);
        best = std::max(best, value);
    } while (std::next_permutation(map.begin(), map.end()));
    return best;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_1_laplacian_baseline() {
    Criterion c(1, "Laplacian baseline matches the reference synthetic-benchmark accuracies (+-2.0)");
    const auto dir = work_dir() / "c1";
    const std::vector<double> etas{0.04, 0.06, 0.08, 0.12, 0.15, 0.18, 0.24, 0.30};
    const std::vector<double> targets{16.7, 12.9, 10.3, 7.5, 6.6, 5.9, 4.8, 4.1};

    std::vector<std::string> gen_args{"generate", "--er",    "n=100",        "deg=8",
                                      "--train",  "0",       "--val",        "500",
                                      "--seed",   "1",       "--mode",       "add-remove",
                                      "--out",    dir.string(), "--name",    "er"};
    for (double eta : etas) {
        gen_args.push_back("--eta");
        gen_args.push_back(format_double(eta));
    }
    if (cli(gen_args) != 0) {
        c.fail("dataset generation via the CLI failed");
        return;
    }

    std::string means_note = "means ";
    double prev = 1e9;
    for (std::size_t k = 0; k < etas.size(); ++k) {
        char tag[16];
        std::snprintf(tag, sizeof tag, "%g", etas[k] * 100.0);
        const auto val_path = dir / ("er-eta" + std::string(tag) + "-val.gad");
        const auto out_json = dir / ("baseline-eta" + std::string(tag) + ".json");
        if (cli({"baseline", "--dataset", val_path.string(), "--d", "64", "--out",
                 out_json.string()}) != 0) {
            c.fail("baseline command failed at eta=" + std::string(tag));
            return;
        }
        const json j = json::parse(read_file(out_json));
        const double pct = 100.0 * j.at("mean-accuracy").get<double>();
        means_note += fmt(pct) + (k + 1 < etas.size() ? "/" : "");
        c.check(std::abs(pct - targets[k]) <= 2.0,
                "eta=" + std::string(tag) + ": " + fmt(pct) + " vs " + fmt(targets[k], 1) +
                    " exceeds +-2.0");
        c.check(pct < prev, "eta=" + std::string(tag) + ": not strictly decreasing");
        prev = pct;
    }
    c.note(means_note + " vs 16.7/12.9/10.3/7.5/6.6/5.9/4.8/4.1");
}

// --- criterion 2 -----------------------------------------------------------

void criterion_2_lap_exactness() {
    Criterion c(2, "Hungarian objective equals brute force on 500 random instances, exactly");
    Rng rng(20240);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 6; // n in {2..7}
        const Matrix r = random_matrix(n, n, rng, 2.0);
        const double got = assignment_value(r, hungarian(r));
        if (got != bruteforce_lap_value(r))
            ++mismatches;
    }
    c.check(mismatches == 0, std::to_string(mismatches) + " of 500 instances mismatched");
}

// --- criterion 3 -----------------------------------------------------------

void criterion_3_theorem_suite() {
    Criterion c(3, "equivariance/invariance suite: objective, loss, LAP decoding");

    { // item 1: objective equivariance, exact integers, 100 instances
        Rng rng(31001);
        int bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + rng.next_int(7);
            const Graph g = random_graph(n, 0.45, rng);
            const Graph h = random_graph(n, 0.45, rng);
            const Permutation p = Permutation::random(n, rng);
            const Permutation q = Permutation::random(n, rng);
            if (overlap(g, h, p) != overlap(permute(g, q), h, compose(p, q.inverse())))
                ++bad;
        }
        c.check(bad == 0, "objective equivariance failed on " + std::to_string(bad) + "/100");
    }

    { // item 2: loss invariance <= 1e-10, 100 instances
        Rng rng(31002);
        int bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 3 + rng.next_int(8);
            const Matrix sigma = random_matrix(n, n, rng, 3.0);
            const Permutation truth = Permutation::random(n, rng);
            const Permutation p = Permutation::random(n, rng);
            const double a = bce_loss(sigma, truth);
            const double b = bce_loss(row_permute(sigma, p), compose(truth, p.inverse()));
            if (std::abs(a - b) > 1e-10)
                ++bad;
        }
        c.check(bad == 0, "loss invariance failed on " + std::to_string(bad) + "/100");
    }

    { // item 3: LAP equivariance at the argmax level on unique-optimum instances
        Rng rng(31003);
        int bad = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 5;
            Matrix x = Matrix::Identity(n, n) * 4.0;
            x += random_matrix(n, n, rng, 0.1);
            Matrix xt = Matrix::Identity(n, n) * 4.0;
            xt += random_matrix(n, n, rng, 0.1);
            const Permutation sigma = decode(x, xt);
            const Permutation q = Permutation::random(n, rng);
            if (decode(row_permute(x, q), xt) != compose(sigma, q.inverse()))
                ++bad;
        }
        c.check(bad == 0, "LAP equivariance failed on " + std::to_string(bad) + "/100");
    }
}

// --- criterion 4 -----------------------------------------------------------

void criterion_4_gradient_fidelity() {
    Criterion c(4, "finite-difference gradients (h=1e-5) within 1e-4, both architectures");
    double worst = 0.0;
    for (auto arch : {Arch::gcn, Arch::gated_gcn}) {
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            const auto params = ModelParams::init({arch, 2, 8, 5}, seed);
            Rng rng(seed);
            const Graph g = erdos_renyi(6, 2.5, rng);
            const auto sample = plant_sample(g, {0.2, NoiseMode::add_only}, seed);
            const auto result = testing::fd_check(params, sample);
            worst = std::max(worst, result.max_rel);
            c.check(result.plain_matches, "tape and plain losses disagree");
            c.check(result.max_rel < 1e-4,
                    std::string(to_string(arch)) + " seed " + std::to_string(seed) +
                        ": max rel error " + fmt(result.max_rel, 8));
            c.check(result.straddled <= result.checked / 20, "too many kink-straddled probes");
        }
    }
    c.note("worst relative error " + fmt(worst, 8));
}

// --- criterion 5 -----------------------------------------------------------

void criterion_5_noise_statistics() {
    Criterion c(5, "noise statistics at N=100, m=400, eta=0.15 over 500 trials");
    std::vector<Edge> edges;
    for (int u = 0; u < 100 && edges.size() < 400; ++u)
        for (int v = u + 1; v < 100 && edges.size() < 400; ++v)
            edges.push_back({u, v});
    const Graph g(100, std::move(edges));

    Rng rng(50001);
    const int trials = 500;
    double removed_total = 0.0, added_total = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Graph noisy = correlate(g, {0.15, NoiseMode::add_remove}, rng);
        int removed = 0, added = 0;
        for (const auto& e : g.edges())
            if (!noisy.has_edge(e.u, e.v))
                ++removed;
        for (const auto& e : noisy.edges())
            if (!g.has_edge(e.u, e.v))
                ++added;
        removed_total += removed;
        added_total += added;
    }
    const double sigma = std::sqrt(400.0 * 0.15 * 0.85); // ~7.1
    const double mean_removed = removed_total / trials;
    const double mean_added = added_total / trials;
    c.check(std::abs(mean_removed - 60.0) < 3.0 * sigma,
            "mean removed " + fmt(mean_removed) + " outside 60 +- 3*7.1");
    c.check(std::abs(mean_added - 60.0) < 3.0 * sigma,
            "mean added " + fmt(mean_added) + " outside 60 +- 3*7.1");
    c.note("mean removed " + fmt(mean_removed) + ", mean added " + fmt(mean_added));

    // Add-only never removes an edge: exhaustive over 500 trials.
    Rng rng_add(50002);
    int removals = 0;
    for (int t = 0; t < trials; ++t) {
        const Graph base = erdos_renyi(40, 5.0, rng_add);
        const Graph noisy = correlate(base, {0.3, NoiseMode::add_only}, rng_add);
        for (const auto& e : base.edges())
            if (!noisy.has_edge(e.u, e.v))
                ++removals;
    }
    c.check(removals == 0, "add-only removed " + std::to_string(removals) + " edges");
}

// --- criterion 6 -----------------------------------------------------------

void criterion_6_planting_validity() {
    Criterion c(6, "planting preserves the objective on 1000 samples across modes and noise");
    int checked = 0, bad = 0, bad_zero = 0;
    for (double eta : {0.0, 0.08, 0.15, 0.30}) {
        for (auto mode : {NoiseMode::add_remove, NoiseMode::add_only}) {
            const std::string tag = "c6/" + std::string(to_string(mode)) + "/" +
                                    format_double(eta);
            const auto bases = erdos_renyi_corpus(125, 60, 6.0, 60601, tag, 2);
            const auto ds = build_dataset(bases, {eta, mode}, 60601, tag, "c6", 2);
            for (const auto& s : ds.samples) {
                Rng replay(s.seed);
                const Graph correlated = correlate(s.base, {eta, mode}, replay);
                const long long planted = overlap(s.base, s.noisy, s.truth);
                if (planted !=
                    overlap(s.base, correlated, Permutation::identity(s.base.vertex_count())))
                    ++bad;
                if (eta == 0.0 && planted != 2LL * s.base.edge_count())
                    ++bad_zero;
                ++checked;
            }
        }
    }
    c.check(checked == 1000, "expected 1000 samples, checked " + std::to_string(checked));
    c.check(bad == 0, std::to_string(bad) + " samples broke overlap preservation");
    c.check(bad_zero == 0,
            std::to_string(bad_zero) + " zero-noise samples missed the 2|E| overlap");
}

// --- criterion 7 -----------------------------------------------------------

void criterion_7_learning_signal(int workers) {
    Criterion c(7, "GatedGCN beats the spectral baseline by 20+ points at eta=8%");
    const auto dir = work_dir() / "c7";
    std::filesystem::create_directories(dir);

    const auto train_bases = erdos_renyi_corpus(1000, 100, 8.0, 7, "c7/train-base", workers);
    const auto val_bases = erdos_renyi_corpus(200, 100, 8.0, 7, "c7/val-base", workers);
    const NoiseConfig noise{0.08, NoiseMode::add_remove};
    const auto train_ds = build_dataset(train_bases, noise, 7, "train", "c7", workers);
    const auto val_ds = build_dataset(val_bases, noise, 7, "val", "c7", workers);

    const auto baseline = baseline_accuracy(val_ds, 64, workers);
    // The reference value for this baseline is ~10.3%; use whichever is
    // higher so the bar never weakens.
    const double bar = std::max(baseline.mean, 0.103) + 0.20;
    c.note("baseline " + fmt(100.0 * baseline.mean) + "%, bar " + fmt(100.0 * bar) + "%");

    TrainConfig cfg;
    cfg.epochs = 100;
    cfg.batch_size = 32;
    cfg.max_lr = 0.003;
    cfg.warmup_steps = 30;
    cfg.weight_decay = 0.01;
    cfg.grad_clip = 0.1;
    cfg.eval_every = 0;
    cfg.workers = workers;

    int passing = 0;
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        cfg.seed = seed;
        const auto result = train(ModelParams::init(default_config(Arch::gated_gcn), seed),
                                  train_ds, val_ds, cfg);
        if (result.report.diverged) {
            c.note("seed " + std::to_string(seed) + ": diverged");
            continue;
        }
        const double acc = result.report.evals.back().mean;
        c.note("seed " + std::to_string(seed) + ": " + fmt(100.0 * acc) + "% (" +
               fmt(result.report.wall_seconds / 60.0, 1) + " min)");
        if (acc >= bar)
            ++passing;
    }
    c.check(passing >= 2, "only " + std::to_string(passing) + "/3 seeds beat the bar");
}

// --- criterion 8 (extended) -------------------------------------------------

void criterion_8_full_protocol(int workers) {
    Criterion c(8, "full-protocol run matches the reference GCN/GatedGCN accuracies");
    const auto dir = work_dir() / "c8";
    std::filesystem::create_directories(dir);

    const auto train_bases = erdos_renyi_corpus(5000, 100, 8.0, 8, "c8/train-base", workers);
    const auto val_bases = erdos_renyi_corpus(500, 100, 8.0, 8, "c8/val-base", workers);

    struct Cell {
        Arch arch;
        double eta;
        double target; // reference percentage
    };
    const std::vector<Cell> cells{{Arch::gated_gcn, 0.08, 89.1},
                                  {Arch::gated_gcn, 0.15, 45.4},
                                  {Arch::gcn, 0.08, 78.9},
                                  {Arch::gcn, 0.15, 34.3}};

    TrainConfig cfg;
    cfg.epochs = 300;
    cfg.batch_size = 32;
    cfg.max_lr = 0.003;
    cfg.warmup_steps = 30;
    cfg.weight_decay = 0.01;
    cfg.grad_clip = 0.1;
    cfg.eval_every = 0;
    cfg.workers = workers;

    std::map<std::pair<int, std::uint64_t>, double> acc_at_15; // (arch, seed) -> accuracy
    for (const auto& cell : cells) {
        const NoiseConfig noise{cell.eta, NoiseMode::add_remove};
        const auto train_ds = build_dataset(train_bases, noise, 8, "train", "c8", workers);
        const auto val_ds = build_dataset(val_bases, noise, 8, "val", "c8", workers);
        std::vector<double> means;
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            cfg.seed = seed;
            const auto result = train(ModelParams::init(default_config(cell.arch), seed),
                                      train_ds, val_ds, cfg);
            if (result.report.diverged) {
                c.fail(std::string(to_string(cell.arch)) + " eta=" +
                       format_double(cell.eta) + " seed " + std::to_string(seed) +
                       " diverged");
                continue;
            }
            const double acc = result.report.evals.back().mean;
            means.push_back(acc);
            if (cell.eta == 0.15)
                acc_at_15[{cell.arch == Arch::gcn ? 0 : 1, seed}] = acc;
            c.note(std::string(to_string(cell.arch)) + " eta=" + format_double(cell.eta) +
                   " seed " + std::to_string(seed) + ": " + fmt(100.0 * acc));
        }
        if (!means.empty()) {
            const double mean =
                std::accumulate(means.begin(), means.end(), 0.0) / means.size();
            c.check(std::abs(100.0 * mean - cell.target) <= 5.0,
                    std::string(to_string(cell.arch)) + " eta=" + format_double(cell.eta) +
                        ": " + fmt(100.0 * mean) + " vs " + fmt(cell.target, 1) +
                        " exceeds +-5");
        }
    }
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto gcn = acc_at_15.find({0, seed});
        const auto gated = acc_at_15.find({1, seed});
        if (gcn == acc_at_15.end() || gated == acc_at_15.end())
            continue;
        c.check(gated->second > gcn->second,
                "seed " + std::to_string(seed) + ": GatedGCN did not beat GCN at eta=15%");
    }
}

// --- criterion 9 -----------------------------------------------------------

void criterion_9_determinism_roundtrips() {
    Criterion c(9, "determinism across worker counts; bit-exact round trips; sweep resume");
    const auto dir = work_dir() / "c9";
    std::filesystem::create_directories(dir);

    { // dataset generation byte-identical for any worker count, via the CLI
        const auto dir1 = dir / "w1";
        const auto dir3 = dir / "w3";
        for (const auto& [d, workers] : {std::pair{dir1, "1"}, std::pair{dir3, "3"}}) {
            if (cli({"generate", "--er", "n=40", "deg=5", "--eta", "0.12", "--train", "20",
                     "--val", "10", "--seed", "77", "--out", d.string(), "--name", "det",
                     "--workers", workers}) != 0) {
                c.fail("generate failed");
                return;
            }
        }
        c.check(read_file(dir1 / "det-eta12-train.gad") == read_file(dir3 / "det-eta12-train.gad"),
                "train dataset differs across worker counts");
        c.check(read_file(dir1 / "det-eta12-val.gad") == read_file(dir3 / "det-eta12-val.gad"),
                "val dataset differs across worker counts");
    }

    { // dataset round trip
        const auto path = dir / "w1" / "det-eta12-train.gad";
        const auto ds = load_dataset(path);
        c.check(dataset_to_string(ds) == read_file(path), "dataset round trip not byte-exact");
    }

    { // checkpoint round trip, with optimizer state
        const auto params = ModelParams::init(default_config(Arch::gated_gcn), 5);
        auto state = AdamWState::init(params);
        state.step = 3;
        const auto p1 = dir / "a.ckpt";
        const auto p2 = dir / "b.ckpt";
        save_checkpoint(p1, params, &state);
        const auto loaded = load_checkpoint(p1);
        if (!loaded.opt_state.has_value()) {
            c.fail("optimizer state lost");
        } else {
            save_checkpoint(p2, loaded.params, &*loaded.opt_state);
            c.check(read_file(p1) == read_file(p2), "checkpoint round trip not byte-exact");
        }
    }

    { // embedding round trip, text and binary
        const auto params = ModelParams::init(default_config(Arch::gcn), 6);
        const auto graphs = erdos_renyi_corpus(2, 15, 3.0, 6, "c9/emb");
        const auto t1 = dir / "e1.txt";
        export_embeddings(t1, params, graphs, false);
        const auto mats = load_embeddings(t1);
        const auto b1 = dir / "e1.bin";
        export_embeddings(b1, params, graphs, true);
        const auto bmats = load_embeddings(b1);
        bool equal = mats.size() == bmats.size();
        for (std::size_t i = 0; equal && i < mats.size(); ++i)
            equal = mats[i] == bmats[i];
        c.check(equal, "text and binary embeddings disagree");
        const auto t2 = dir / "e2.txt";
        export_embeddings(t2, params, graphs, false);
        c.check(read_file(t1) == read_file(t2), "embedding export not reproducible");
    }

    { // sweep resume reproduces uninterrupted aggregates bit-exactly
        SweepSpec spec;
        spec.name = "c9";
        spec.source.kind = SweepSource::Kind::erdos_renyi;
        spec.source.n = 16;
        spec.source.avg_degree = 3.0;
        spec.source.train_count = 6;
        spec.source.val_count = 4;
        spec.etas = {0.1};
        spec.seeds = {1, 2};
        spec.models = {"laplacian", "gcn"};
        spec.train_cfg.epochs = 2;
        spec.train_cfg.batch_size = 3;
        spec.train_cfg.warmup_steps = 1;
        spec.train_cfg.eval_every = 0;
        spec.train_cfg.workers = 2;
        spec.d = 8;
        spec.master_seed = 9;

        const auto full = run_sweep(spec, dir / "sweep-full", 2);
        const auto part_dir = dir / "sweep-part";
        (void)run_sweep(spec, part_dir, 2);
        int i = 0;
        for (const auto& entry : std::filesystem::directory_iterator(part_dir / "runs"))
            if (entry.path().extension() == ".json" && i++ % 2 == 0)
                std::filesystem::remove(entry.path());
        const auto resumed = run_sweep(spec, part_dir, 2);
        bool same = full.aggregates.size() == resumed.aggregates.size();
        for (std::size_t k = 0; same && k < full.aggregates.size(); ++k)
            same = full.aggregates[k].mean == resumed.aggregates[k].mean &&
                   full.aggregates[k].stddev == resumed.aggregates[k].stddev &&
                   full.aggregates[k].median == resumed.aggregates[k].median &&
                   full.aggregates[k].gap == resumed.aggregates[k].gap;
        c.check(same, "resumed sweep aggregates differ from the uninterrupted run");

        const auto replay = run_sweep(spec, dir / "sweep-full", 2);
        c.check(replay.training_steps_executed == 0, "rerun executed training steps");
    }
}

} // namespace

int main(int argc, char** argv) {
    bool extended = false;
    int workers = 2;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--extended") == 0)
            extended = true;
        else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc)
            workers = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only.push_back(std::atoi(argv[++i]));
    }
    auto wanted = [&](int n) {
        return only.empty() ? true : std::find(only.begin(), only.end(), n) != only.end();
    };

    if (wanted(1))
        criterion_1_laplacian_baseline();
    if (wanted(2))
        criterion_2_lap_exactness();
    if (wanted(3))
        criterion_3_theorem_suite();
    if (wanted(4))
        criterion_4_gradient_fidelity();
    if (wanted(5))
        criterion_5_noise_statistics();
    if (wanted(6))
        criterion_6_planting_validity();
    if (wanted(7))
        criterion_7_learning_signal(workers);
    if (wanted(8)) {
        if (extended || !only.empty())
            criterion_8_full_protocol(workers);
        else
            std::printf("SKIP criterion-8: full-protocol reproduction (run with --extended; "
                        "overnight CPU budget)\n");
    }
    if (wanted(9))
        criterion_9_determinism_roundtrips();

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
