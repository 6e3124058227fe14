#include "galign/bench.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "galign/io.hpp"
#include "galign/spectral.hpp"

namespace galign {

namespace {

using nlohmann::json;

json spec_to_json_obj(const SweepSpec& spec) {
    json j;
    j["name"] = spec.name;
    json src;
    if (spec.source.kind == SweepSource::Kind::erdos_renyi) {
        src["type"] = "er";
        src["n"] = spec.source.n;
        src["avg-degree"] = spec.source.avg_degree;
    } else {
        src["type"] = "corpus";
        src["path"] = spec.source.corpus_path;
    }
    src["train"] = spec.source.train_count;
    src["val"] = spec.source.val_count;
    j["source"] = src;
    j["etas"] = spec.etas;
    j["mode"] = std::string(to_string(spec.mode));
    j["seeds"] = spec.seeds;
    j["models"] = spec.models;
    json t;
    t["epochs"] = spec.train_cfg.epochs;
    t["batch-size"] = spec.train_cfg.batch_size;
    t["max-lr"] = spec.train_cfg.max_lr;
    t["warmup-steps"] = spec.train_cfg.warmup_steps;
    t["weight-decay"] = spec.train_cfg.weight_decay;
    t["grad-clip"] = spec.train_cfg.grad_clip;
    t["eval-every"] = spec.train_cfg.eval_every;
    j["train"] = t;
    j["d"] = spec.d;
    j["master-seed"] = spec.master_seed;
    return j;
}

SweepSpec spec_from_json_obj(const json& j) {
    SweepSpec spec;
    spec.name = j.value("name", "sweep");
    const auto& src = j.at("source");
    const std::string type = src.at("type").get<std::string>();
    if (type == "er") {
        spec.source.kind = SweepSource::Kind::erdos_renyi;
        spec.source.n = src.value("n", 100);
        spec.source.avg_degree = src.value("avg-degree", 8.0);
    } else if (type == "corpus") {
        spec.source.kind = SweepSource::Kind::corpus;
        spec.source.corpus_path = src.at("path").get<std::string>();
    } else {
        throw config_error("sweep spec: unknown source type '" + type + "'");
    }
    spec.source.train_count = src.at("train").get<int>();
    spec.source.val_count = src.at("val").get<int>();
    spec.etas = j.at("etas").get<std::vector<double>>();
    spec.mode = noise_mode_from_string(j.value("mode", "add-remove"));
    spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    spec.models = j.at("models").get<std::vector<std::string>>();
    if (j.contains("train")) {
        const auto& t = j.at("train");
        spec.train_cfg.epochs = t.value("epochs", spec.train_cfg.epochs);
        spec.train_cfg.batch_size = t.value("batch-size", spec.train_cfg.batch_size);
        spec.train_cfg.max_lr = t.value("max-lr", spec.train_cfg.max_lr);
        spec.train_cfg.warmup_steps = t.value("warmup-steps", spec.train_cfg.warmup_steps);
        spec.train_cfg.weight_decay = t.value("weight-decay", spec.train_cfg.weight_decay);
        spec.train_cfg.grad_clip = t.value("grad-clip", spec.train_cfg.grad_clip);
        spec.train_cfg.eval_every = t.value("eval-every", spec.train_cfg.eval_every);
    }
    spec.d = j.value("d", 64);
    spec.master_seed = j.value("master-seed", std::uint64_t{1});

    if (spec.etas.empty())
        throw config_error("sweep spec: at least one eta required");
    if (spec.seeds.empty())
        throw config_error("sweep spec: at least one seed required");
    if (spec.models.empty())
        throw config_error("sweep spec: at least one model required");
    for (double eta : spec.etas)
        if (eta < 0.0 || eta >= 1.0)
            throw config_error("sweep spec: eta out of [0, 1)");
    for (const auto& model : spec.models)
        if (model != "laplacian")
            (void)arch_from_string(model);
    return spec;
}

std::string eta_tag(double eta) {
    // Percent with up to two decimals, trailing zeros trimmed: 0.04 -> "4".
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", eta * 100.0);
    std::string s(buf);
    while (s.back() == '0')
        s.pop_back();
    if (s.back() == '.')
        s.pop_back();
    return s;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return std::string(buf);
}

/// Content hash of the spec slice that determines one run's result.
std::string cell_key(const SweepSpec& spec, const std::string& model, double eta,
                     std::uint64_t seed) {
    json j = spec_to_json_obj(spec);
    j.erase("models");
    j.erase("seeds");
    j.erase("etas");
    j.erase("name");
    j["cell-model"] = model;
    j["cell-eta"] = eta;
    j["cell-seed"] = seed;
    if (model == "laplacian") {
        // Training settings do not affect the training-free baseline.
        j.erase("train");
    }
    return hex64(fnv1a(j.dump()));
}

json record_to_json(const RunRecord& r, const std::string& key) {
    json j;
    if (!key.empty())
        j["key"] = key;
    j["model"] = r.model;
    j["eta"] = r.eta;
    j["seed"] = r.seed;
    j["ok"] = r.ok;
    j["mean-accuracy"] = r.mean_accuracy;
    j["std-accuracy"] = r.std_accuracy;
    j["steps"] = r.steps;
    j["wall-seconds"] = r.wall_seconds;
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

RunRecord record_from_json(const json& j) {
    RunRecord r;
    r.model = j.at("model").get<std::string>();
    r.eta = j.at("eta").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ok = j.at("ok").get<bool>();
    r.mean_accuracy = j.value("mean-accuracy", 0.0);
    r.std_accuracy = j.value("std-accuracy", 0.0);
    r.steps = j.value("steps", 0LL);
    r.wall_seconds = j.value("wall-seconds", 0.0);
    r.error = j.value("error", std::string{});
    return r;
}

double median_of(std::vector<double> xs) {
    if (xs.empty())
        return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t mid = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
}

} // namespace

SweepSpec parse_sweep_spec(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw parse_error("sweep spec: " + std::string(e.what()));
    }
    try {
        return spec_from_json_obj(j);
    } catch (const json::exception& e) {
        throw config_error("sweep spec: " + std::string(e.what()));
    }
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
    return spec_to_json_obj(spec).dump(2) + "\n";
}

BenchResult run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                      int workers) {
    // Validates ranges and model names; throws config_error on bad specs.
    (void)spec_from_json_obj(spec_to_json_obj(spec));

    const auto dataset_dir = out_dir / "datasets";
    const auto runs_dir = out_dir / "runs";
    std::filesystem::create_directories(dataset_dir);
    std::filesystem::create_directories(runs_dir);

    // Base corpus: generated or imported once, shared across etas.
    std::vector<Graph> train_bases, val_bases;
    if (spec.source.kind == SweepSource::Kind::erdos_renyi) {
        train_bases = erdos_renyi_corpus(spec.source.train_count, spec.source.n,
                                         spec.source.avg_degree, spec.master_seed,
                                         "train/base", workers);
        val_bases = erdos_renyi_corpus(spec.source.val_count, spec.source.n,
                                       spec.source.avg_degree, spec.master_seed,
                                       "val/base", workers);
    } else {
        const auto corpus = import_edgelist(spec.source.corpus_path);
        const auto need = static_cast<std::size_t>(spec.source.train_count) +
                          static_cast<std::size_t>(spec.source.val_count);
        if (corpus.graphs.size() < need)
            throw config_error("sweep: corpus has " + std::to_string(corpus.graphs.size()) +
                               " graphs, need " + std::to_string(need));
        train_bases.assign(corpus.graphs.begin(),
                           corpus.graphs.begin() + spec.source.train_count);
        val_bases.assign(corpus.graphs.begin() + spec.source.train_count,
                         corpus.graphs.begin() + static_cast<std::ptrdiff_t>(need));
    }

    struct EtaData {
        std::filesystem::path train_path, val_path;
    };
    std::vector<EtaData> eta_data;
    for (double eta : spec.etas) {
        const NoiseConfig noise{eta, spec.mode};
        EtaData data;
        data.train_path = dataset_dir / (spec.name + "-eta" + eta_tag(eta) + "-train.gad");
        data.val_path = dataset_dir / (spec.name + "-eta" + eta_tag(eta) + "-val.gad");
        if (!std::filesystem::exists(data.train_path))
            save_dataset(data.train_path,
                         build_dataset(train_bases, noise, spec.master_seed, "train",
                                       spec.name, workers));
        if (!std::filesystem::exists(data.val_path))
            save_dataset(data.val_path, build_dataset(val_bases, noise, spec.master_seed,
                                                      "val", spec.name, workers));
        eta_data.push_back(std::move(data));
    }

    BenchResult result;
    for (std::size_t ei = 0; ei < spec.etas.size(); ++ei) {
        const double eta = spec.etas[ei];
        AlignmentDataset train_ds, val_ds;
        bool loaded = false;
        auto ensure_loaded = [&] {
            if (!loaded) {
                train_ds = load_dataset(eta_data[ei].train_path);
                val_ds = load_dataset(eta_data[ei].val_path);
                loaded = true;
            }
        };

        for (const auto& model : spec.models) {
            for (const std::uint64_t seed : spec.seeds) {
                const std::string key = cell_key(spec, model, eta, seed);
                const auto record_path = runs_dir / (key + ".json");
                if (std::filesystem::exists(record_path)) {
                    try {
                        const json j = json::parse(read_file(record_path));
                        if (j.value("key", "") == key) {
                            RunRecord r = record_from_json(j);
                            r.cache_hit = true;
                            result.runs.push_back(std::move(r));
                            continue;
                        }
                    } catch (...) {
                        // unreadable record: recompute below
                    }
                }

                RunRecord r;
                r.model = model;
                r.eta = eta;
                r.seed = seed;
                try {
                    ensure_loaded();
                    if (model == "laplacian") {
                        const auto baseline = baseline_accuracy(val_ds, spec.d, workers);
                        r.mean_accuracy = baseline.mean;
                        double sq = 0.0;
                        for (double a : baseline.per_sample)
                            sq += (a - baseline.mean) * (a - baseline.mean);
                        r.std_accuracy =
                            baseline.per_sample.empty()
                                ? 0.0
                                : std::sqrt(sq /
                                            static_cast<double>(baseline.per_sample.size()));
                        r.ok = true;
                    } else {
                        TrainConfig cfg = spec.train_cfg;
                        cfg.seed = seed;
                        cfg.workers = workers;
                        auto init =
                            ModelParams::init(default_config(arch_from_string(model)), seed);
                        auto trained = train(std::move(init), train_ds, val_ds, cfg);
                        if (trained.report.diverged)
                            throw numeric_error("training diverged");
                        const auto eval = evaluate(trained.params, val_ds, workers);
                        r.mean_accuracy = eval.mean;
                        r.std_accuracy = eval.stddev;
                        r.steps = trained.report.steps;
                        r.wall_seconds = trained.report.wall_seconds;
                        result.training_steps_executed += trained.report.steps;
                        save_checkpoint(runs_dir / (key + ".ckpt"), trained.params);
                        r.ok = true;
                    }
                } catch (const std::exception& e) {
                    r.ok = false;
                    r.error = e.what();
                }
                write_file(record_path, record_to_json(r, key).dump(2) + "\n");
                result.runs.push_back(std::move(r));
            }
        }
    }

    // Aggregate per (model, eta) over seeds, then the gap per eta.
    for (const auto& model : spec.models) {
        for (const double eta : spec.etas) {
            Aggregate agg;
            agg.model = model;
            agg.eta = eta;
            std::vector<double> means;
            for (const auto& r : result.runs)
                if (r.ok && r.model == model && r.eta == eta)
                    means.push_back(r.mean_accuracy);
            agg.runs = static_cast<int>(means.size());
            if (!means.empty()) {
                double total = 0.0;
                for (double m : means)
                    total += m;
                agg.mean = total / static_cast<double>(means.size());
                double sq = 0.0;
                for (double m : means)
                    sq += (m - agg.mean) * (m - agg.mean);
                agg.stddev = std::sqrt(sq / static_cast<double>(means.size()));
                agg.median = median_of(means);
            }
            result.aggregates.push_back(std::move(agg));
        }
    }
    for (const double eta : spec.etas) {
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& a : result.aggregates)
            if (a.eta == eta && a.runs > 0)
                worst = std::min(worst, a.mean);
        for (auto& a : result.aggregates)
            if (a.eta == eta && a.runs > 0)
                a.gap = a.mean - worst;
    }
    return result;
}

void write_report(const BenchResult& result, const SweepSpec& spec,
                  const std::filesystem::path& out_dir) {
    if (spec.models.empty())
        throw argument_error("report: no models");
    bool any = false;
    for (const auto& a : result.aggregates)
        any = any || a.runs > 0;
    if (!any)
        throw argument_error("report: no successful runs to report");

    auto pct = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", 100.0 * x);
        return std::string(buf);
    };

    // Table: one row per model, one column per eta.
    std::string table = "model";
    for (double eta : spec.etas)
        table += "\teta=" + eta_tag(eta) + "%";
    table += '\n';
    for (const auto& model : spec.models) {
        table += model;
        for (double eta : spec.etas) {
            const Aggregate* agg = nullptr;
            for (const auto& a : result.aggregates)
                if (a.model == model && a.eta == eta)
                    agg = &a;
            table += '\t';
            if (agg == nullptr || agg->runs == 0)
                table += "n/a";
            else
                table +=
                    pct(agg->mean) + "+-" + pct(agg->stddev) + " (" + pct(agg->median) + ")";
        }
        table += '\n';
    }
    write_file(out_dir / "report.tsv", table);

    // Plot data: accuracy gap vs eta per model.
    std::string gaps = "model\teta\tgap\n";
    for (const auto& model : spec.models)
        for (const auto& a : result.aggregates)
            if (a.model == model && a.runs > 0)
                gaps += model + '\t' + format_double(a.eta) + '\t' + format_double(a.gap) + '\n';
    write_file(out_dir / "gaps.tsv", gaps);

    // Full-precision aggregates plus raw run records.
    json j;
    j["spec"] = spec_to_json_obj(spec);
    j["aggregates"] = json::array();
    for (const auto& a : result.aggregates) {
        json ja;
        ja["model"] = a.model;
        ja["eta"] = a.eta;
        ja["runs"] = a.runs;
        ja["mean"] = a.mean;
        ja["std"] = a.stddev;
        ja["median"] = a.median;
        ja["gap"] = a.gap;
        j["aggregates"].push_back(ja);
    }
    j["runs"] = json::array();
    for (const auto& r : result.runs)
        j["runs"].push_back(record_to_json(r, ""));
    write_file(out_dir / "aggregates.json", j.dump(2) + "\n");
}

std::vector<ReportCell> parse_report(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<ReportCell> cells;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw parse_error("report: empty file");
    std::vector<double> etas;
    {
        std::istringstream header(line);
        std::string col;
        std::getline(header, col, '\t'); // "model"
        while (std::getline(header, col, '\t')) {
            if (!col.starts_with("eta=") || col.back() != '%')
                throw parse_error("report: bad eta column '" + col + "'");
            etas.push_back(std::stod(col.substr(4, col.size() - 5)) / 100.0);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string model;
        std::getline(row, model, '\t');
        for (double eta : etas) {
            std::string cell;
            if (!std::getline(row, cell, '\t'))
                throw parse_error("report: short row for model " + model);
            if (cell == "n/a")
                continue;
            ReportCell c;
            c.model = model;
            c.eta = eta;
            const auto pm = cell.find("+-");
            const auto par = cell.find(" (");
            if (pm == std::string::npos || par == std::string::npos || cell.back() != ')')
                throw parse_error("report: bad cell '" + cell + "'");
            c.mean_pct = std::stod(cell.substr(0, pm));
            c.std_pct = std::stod(cell.substr(pm + 2, par - pm - 2));
            c.median_pct = std::stod(cell.substr(par + 2, cell.size() - par - 3));
            cells.push_back(std::move(c));
        }
    }
    return cells;
}

} // namespace galign
