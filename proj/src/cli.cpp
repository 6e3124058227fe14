#include "galign/cli.hpp"

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "galign/bench.hpp"
#include "galign/io.hpp"
#include "galign/spectral.hpp"

namespace galign {

namespace {

using nlohmann::json;

std::string eta_tag(double eta) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", eta * 100.0);
    std::string s(buf);
    while (s.back() == '0')
        s.pop_back();
    if (s.back() == '.')
        s.pop_back();
    return s;
}

struct GenerateArgs {
    std::vector<std::string> er; // "n=100" "deg=8"
    std::string corpus;
    std::vector<double> etas;
    int train_count = 0;
    int val_count = 0;
    std::uint64_t seed = 1;
    std::string mode = "add-remove";
    std::string out_dir = ".";
    std::string name;
    int workers = 0;
};

int run_generate(const GenerateArgs& a) {
    if (a.er.empty() == a.corpus.empty())
        throw argument_error("generate: exactly one of --er and --corpus is required");
    if (a.etas.empty())
        throw argument_error("generate: at least one --eta is required");
    const NoiseMode mode = noise_mode_from_string(a.mode);

    std::vector<Graph> train_bases, val_bases;
    std::string name = a.name;
    if (!a.er.empty()) {
        int n = 0;
        double deg = 0.0;
        for (const auto& tok : a.er) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw argument_error("generate: --er expects n=<int> deg=<real>, got '" + tok +
                                     "'");
            const auto key = tok.substr(0, eq);
            const auto value = tok.substr(eq + 1);
            if (key == "n")
                n = std::stoi(value);
            else if (key == "deg")
                deg = std::stod(value);
            else
                throw argument_error("generate: unknown --er key '" + key + "'");
        }
        if (n < 2 || deg <= 0.0)
            throw argument_error("generate: --er needs n>=2 and deg>0");
        if (name.empty())
            name = "er-n" + std::to_string(n) + "-deg" + eta_tag(deg / 100.0);
        train_bases = erdos_renyi_corpus(a.train_count, n, deg, a.seed, "train/base", a.workers);
        val_bases = erdos_renyi_corpus(a.val_count, n, deg, a.seed, "val/base", a.workers);
    } else {
        const auto corpus = import_edgelist(a.corpus);
        for (const auto& w : corpus.warnings)
            std::cerr << "warning: " << w << "\n";
        const auto need =
            static_cast<std::size_t>(a.train_count) + static_cast<std::size_t>(a.val_count);
        if (corpus.graphs.size() < need)
            throw argument_error("generate: corpus has " + std::to_string(corpus.graphs.size()) +
                                 " graphs, need " + std::to_string(need));
        train_bases.assign(corpus.graphs.begin(), corpus.graphs.begin() + a.train_count);
        val_bases.assign(corpus.graphs.begin() + a.train_count,
                         corpus.graphs.begin() + static_cast<std::ptrdiff_t>(need));
        if (name.empty())
            name = std::filesystem::path(a.corpus).stem().string();
    }

    for (double eta : a.etas) {
        const NoiseConfig noise{eta, mode};
        const auto train_path =
            std::filesystem::path(a.out_dir) / (name + "-eta" + eta_tag(eta) + "-train.gad");
        const auto val_path =
            std::filesystem::path(a.out_dir) / (name + "-eta" + eta_tag(eta) + "-val.gad");
        save_dataset(train_path,
                     build_dataset(train_bases, noise, a.seed, "train", name, a.workers));
        save_dataset(val_path, build_dataset(val_bases, noise, a.seed, "val", name, a.workers));
        std::cout << "wrote " << train_path.string() << "\n";
        std::cout << "wrote " << val_path.string() << "\n";
    }
    return 0;
}

int run_bfs_sample(const std::string& corpus_path, int target_size, int count,
                   std::uint64_t seed, const std::string& out_path) {
    const auto corpus = import_edgelist(corpus_path);
    if (corpus.graphs.empty())
        throw argument_error("bfs-sample: corpus is empty");
    const BfsConfig cfg{target_size, count};
    std::vector<Graph> sampled;
    int undersized = 0;
    for (std::size_t gi = 0; gi < corpus.graphs.size(); ++gi) {
        for (int k = 0; k < cfg.count; ++k) {
            Rng rng(derive_seed(seed, "bfs/" + std::to_string(gi), static_cast<std::uint64_t>(k)));
            auto sub = bfs_sample(corpus.graphs[gi], cfg, rng);
            if (sub.undersized)
                ++undersized;
            sampled.push_back(std::move(sub.graph));
        }
    }
    save_corpus(out_path, sampled);
    std::cout << "wrote " << out_path << " (" << sampled.size() << " graphs)\n";
    if (undersized > 0)
        std::cerr << "warning: " << undersized
                  << " samples hit a component smaller than the target size\n";
    return 0;
}

int run_baseline(const std::string& dataset_path, int d, int workers,
                 const std::string& out_path) {
    const auto ds = load_dataset(dataset_path);
    const auto result = baseline_accuracy(ds, d, workers);
    double sq = 0.0;
    for (double a : result.per_sample)
        sq += (a - result.mean) * (a - result.mean);
    const double stddev = result.per_sample.empty()
                              ? 0.0
                              : std::sqrt(sq / static_cast<double>(result.per_sample.size()));
    std::cout << "samples " << result.per_sample.size() << "\n";
    std::cout << "mean-accuracy " << format_double(result.mean) << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * result.mean);
    std::cout << "mean-accuracy-percent " << buf << "\n";
    std::snprintf(buf, sizeof buf, "%.1f", 100.0 * stddev);
    std::cout << "std-percent " << buf << "\n";
    if (!out_path.empty()) {
        json j;
        j["samples"] = result.per_sample.size();
        j["mean-accuracy"] = result.mean;
        j["std-accuracy"] = stddev;
        j["per-sample"] = result.per_sample;
        write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
}

struct TrainArgs {
    std::string dataset;
    std::string val;
    std::string model = "gated-gcn";
    int layers = 0;
    int width = 0;
    int d_out = 0;
    TrainConfig cfg;
    std::string out_checkpoint;
    std::string report_path;
};

int run_train(const TrainArgs& a) {
    const auto train_ds = load_dataset(a.dataset);
    AlignmentDataset val_ds;
    if (!a.val.empty())
        val_ds = load_dataset(a.val);

    ModelConfig mc = default_config(arch_from_string(a.model));
    if (a.layers > 0)
        mc.layers = a.layers;
    if (a.width > 0)
        mc.width = a.width;
    if (a.d_out > 0)
        mc.d_out = a.d_out;

    const auto result = train(ModelParams::init(mc, a.cfg.seed), train_ds, val_ds, a.cfg);
    if (!a.out_checkpoint.empty())
        save_checkpoint(a.out_checkpoint, result.params);
    if (!a.report_path.empty()) {
        json j;
        j["model"] = a.model;
        j["layers"] = mc.layers;
        j["width"] = mc.width;
        j["d-out"] = mc.d_out;
        j["parameter-count"] = result.params.parameter_count();
        j["seed"] = result.report.seed;
        j["steps"] = result.report.steps;
        j["wall-seconds"] = result.report.wall_seconds;
        j["diverged"] = result.report.diverged;
        j["epoch-loss"] = result.report.epoch_loss;
        j["evals"] = json::array();
        for (const auto& ev : result.report.evals) {
            json je;
            je["epoch"] = ev.epoch;
            je["mean"] = ev.mean;
            je["std"] = ev.stddev;
            j["evals"].push_back(je);
        }
        write_file(a.report_path, j.dump(2) + "\n");
    }
    if (result.report.diverged) {
        std::cerr << "galign-error: training diverged; checkpoint holds the last finite state\n";
        return 1;
    }
    if (!result.report.evals.empty()) {
        const auto& ev = result.report.evals.back();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f", ev.mean);
        std::cout << "final-val-accuracy " << buf << "\n";
    }
    std::cout << "final-train-loss " << format_double(result.report.epoch_loss.back()) << "\n";
    return 0;
}

int run_evaluate(const std::string& checkpoint_path, const std::string& dataset_path,
                 int workers, const std::string& out_path) {
    const auto ck = load_checkpoint(checkpoint_path);
    const auto ds = load_dataset(dataset_path);
    const auto result = evaluate(ck.params, ds, workers);
    std::cout << "samples " << result.per_sample.size() << "\n";
    std::cout << "mean-accuracy " << format_double(result.mean) << "\n";
    std::cout << "std-accuracy " << format_double(result.stddev) << "\n";
    if (!out_path.empty()) {
        json j;
        j["samples"] = result.per_sample.size();
        j["mean-accuracy"] = result.mean;
        j["std-accuracy"] = result.stddev;
        j["per-sample"] = result.per_sample;
        write_file(out_path, j.dump(2) + "\n");
    }
    return 0;
}

int run_sweep_cmd(const std::string& spec_path, const std::string& out_dir, int workers) {
    const SweepSpec spec = parse_sweep_spec(spec_path);
    const auto result = run_sweep(spec, out_dir, workers);
    write_report(result, spec, out_dir);
    int failed = 0;
    for (const auto& r : result.runs)
        if (!r.ok) {
            ++failed;
            std::cerr << "warning: run (" << r.model << ", eta=" << r.eta << ", seed=" << r.seed
                      << ") failed: " << r.error << "\n";
        }
    std::cout << "runs " << result.runs.size() << "\n";
    std::cout << "failed " << failed << "\n";
    std::cout << "training-steps-executed " << result.training_steps_executed << "\n";
    std::cout << "report " << (std::filesystem::path(out_dir) / "report.tsv").string() << "\n";
    return 0;
}

int run_export_pe(const std::string& checkpoint_path, const std::string& corpus_path,
                  const std::string& out_path, bool binary) {
    const auto ck = load_checkpoint(checkpoint_path);
    const auto corpus = import_edgelist(corpus_path);
    export_embeddings(out_path, ck.params, corpus.graphs, binary);
    std::cout << "wrote " << out_path << " (" << corpus.graphs.size() << " graphs, d="
              << ck.params.cfg.d_out << (binary ? ", binary" : ", text") << ")\n";
    return 0;
}

int run_validate(const std::string& path) {
    const std::string text = read_file(path);
    std::string kind;
    if (text.starts_with("galign-dataset")) {
        kind = "dataset";
        const auto ds = dataset_from_string(text);
        // Beyond parse-time invariants: the planted truth must be consistent.
        for (std::size_t i = 0; i < ds.samples.size(); ++i) {
            const auto& s = ds.samples[i];
            if (s.base.vertex_count() != s.noisy.vertex_count() ||
                s.truth.size() != s.base.vertex_count())
                throw validation_error("sample " + std::to_string(i) + ": size mismatch");
        }
        std::cout << "ok dataset samples=" << ds.samples.size() << "\n";
    } else if (text.starts_with("galign-checkpoint")) {
        kind = "checkpoint";
        const auto ck = load_checkpoint(path);
        std::cout << "ok checkpoint params=" << ck.params.parameter_count() << "\n";
    } else if (text.starts_with("galign-embeddings") || text.starts_with("GALNEMB1")) {
        kind = "embeddings";
        const auto mats = load_embeddings(path);
        for (const auto& m : mats)
            if (!m.allFinite())
                throw validation_error("embeddings: non-finite entries");
        std::cout << "ok embeddings graphs=" << mats.size() << "\n";
    } else if (text.starts_with("graph") || text.starts_with("#")) {
        kind = "corpus";
        const auto corpus = parse_edgelist(text, {.strict = true});
        std::cout << "ok corpus graphs=" << corpus.graphs.size() << "\n";
    } else {
        throw validation_error("unrecognized file type");
    }
    return 0;
}

} // namespace

int cli(const std::vector<std::string>& args) {
    CLI::App app{"graph alignment benchmarking toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "build alignment dataset files");
    generate->add_option("--er", gen.er, "builtin random source: n=<int> deg=<real>")
        ->expected(2);
    generate->add_option("--corpus", gen.corpus, "edge-list corpus as base graphs");
    generate->add_option("--eta", gen.etas, "noise levels in [0,1)")->required();
    generate->add_option("--train", gen.train_count, "train split size")->required();
    generate->add_option("--val", gen.val_count, "val split size")->required();
    generate->add_option("--seed", gen.seed, "master seed");
    generate->add_option("--mode", gen.mode, "add-remove | add-only");
    generate->add_option("--out", gen.out_dir, "output directory");
    generate->add_option("--name", gen.name, "dataset name");
    generate->add_option("--workers", gen.workers, "worker threads (0 = auto)");

    std::string bfs_corpus, bfs_out;
    int bfs_target = 0, bfs_count = 1;
    std::uint64_t bfs_seed = 1;
    auto* bfs = app.add_subcommand("bfs-sample", "subsample large graphs by BFS frontiers");
    bfs->add_option("--corpus", bfs_corpus, "input edge-list corpus")->required();
    bfs->add_option("--target-size", bfs_target, "subgraph size N'")->required();
    bfs->add_option("--count", bfs_count, "subgraphs per input graph");
    bfs->add_option("--seed", bfs_seed, "seed");
    bfs->add_option("--out", bfs_out, "output corpus path")->required();

    std::string base_dataset, base_out;
    int base_d = 64, base_workers = 0;
    auto* baseline =
        app.add_subcommand("baseline", "training-free spectral baseline accuracy");
    baseline->add_option("--dataset", base_dataset, "alignment dataset file")->required();
    baseline->add_option("--d", base_d, "encoding dimension");
    baseline->add_option("--workers", base_workers, "worker threads (0 = auto)");
    baseline->add_option("--out", base_out, "JSON result path");

    TrainArgs tr;
    auto* train_cmd = app.add_subcommand("train", "train a siamese encoder");
    train_cmd->add_option("--dataset", tr.dataset, "training dataset file")->required();
    train_cmd->add_option("--val", tr.val, "validation dataset file");
    train_cmd->add_option("--model", tr.model, "gcn | gated-gcn");
    train_cmd->add_option("--layers", tr.layers, "message-passing rounds");
    train_cmd->add_option("--width", tr.width, "hidden width");
    train_cmd->add_option("--d-out", tr.d_out, "output embedding dimension");
    train_cmd->add_option("--epochs", tr.cfg.epochs, "epochs");
    train_cmd->add_option("--batch-size", tr.cfg.batch_size, "batch size");
    train_cmd->add_option("--max-lr", tr.cfg.max_lr, "one-cycle peak learning rate");
    train_cmd->add_option("--warmup-steps", tr.cfg.warmup_steps, "warmup steps");
    train_cmd->add_option("--weight-decay", tr.cfg.weight_decay, "decoupled weight decay");
    train_cmd->add_option("--grad-clip", tr.cfg.grad_clip, "global gradient-norm clip");
    train_cmd->add_option("--seed", tr.cfg.seed, "run seed");
    train_cmd->add_option("--eval-every", tr.cfg.eval_every, "epochs between validations");
    train_cmd->add_option("--workers", tr.cfg.workers, "worker threads (0 = auto)");
    train_cmd->add_option("--out", tr.out_checkpoint, "checkpoint path");
    train_cmd->add_option("--report", tr.report_path, "JSON training report path");

    std::string eval_ck, eval_ds, eval_out;
    int eval_workers = 0;
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate a checkpoint on a dataset");
    eval_cmd->add_option("--checkpoint", eval_ck, "checkpoint file")->required();
    eval_cmd->add_option("--dataset", eval_ds, "alignment dataset file")->required();
    eval_cmd->add_option("--workers", eval_workers, "worker threads (0 = auto)");
    eval_cmd->add_option("--out", eval_out, "JSON result path");

    std::string sweep_spec, sweep_out = "sweep-out";
    int sweep_workers = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a multi-model noise sweep");
    sweep_cmd->add_option("--spec", sweep_spec, "JSON sweep spec")->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory");
    sweep_cmd->add_option("--workers", sweep_workers, "worker threads (0 = auto)");

    std::string pe_ck, pe_corpus, pe_out;
    bool pe_binary = false;
    auto* pe_cmd = app.add_subcommand("export-pe", "export node embeddings for a corpus");
    pe_cmd->add_option("--checkpoint", pe_ck, "checkpoint file")->required();
    pe_cmd->add_option("--corpus", pe_corpus, "edge-list corpus")->required();
    pe_cmd->add_option("--out", pe_out, "embedding file path")->required();
    pe_cmd->add_flag("--binary", pe_binary, "binary embedding layout");

    std::string validate_file;
    auto* validate_cmd = app.add_subcommand("validate", "check a file's invariants");
    validate_cmd->add_option("--file", validate_file, "file to validate")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed())
            return run_generate(gen);
        if (bfs->parsed())
            return run_bfs_sample(bfs_corpus, bfs_target, bfs_count, bfs_seed, bfs_out);
        if (baseline->parsed())
            return run_baseline(base_dataset, base_d, base_workers, base_out);
        if (train_cmd->parsed())
            return run_train(tr);
        if (eval_cmd->parsed())
            return run_evaluate(eval_ck, eval_ds, eval_workers, eval_out);
        if (sweep_cmd->parsed()) {
            try {
                return run_sweep_cmd(sweep_spec, sweep_out, sweep_workers);
            } catch (const parse_error& e) {
                std::cerr << "galign-error: " << e.what() << "\n";
                return 2; // malformed spec is a usage error
            } catch (const config_error& e) {
                std::cerr << "galign-error: " << e.what() << "\n";
                return 2;
            }
        }
        if (pe_cmd->parsed())
            return run_export_pe(pe_ck, pe_corpus, pe_out, pe_binary);
        if (validate_cmd->parsed())
            return run_validate(validate_file);
    } catch (const std::exception& e) {
        std::cerr << "galign-error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

int cli(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return cli(args);
}

} // namespace galign
