#include "galign/siamese.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <numeric>
#include <sstream>

#include "galign/assign.hpp"
#include "galign/io.hpp"
#include "galign/optim.hpp"
#include "galign/parallel.hpp"

namespace galign {

namespace {

constexpr int kMaxTrainVertices = 10000;

std::vector<int> truth_targets(const Permutation& truth) {
    return std::vector<int>(truth.map().begin(), truth.map().end());
}

struct SampleOps {
    GraphOps base;
    GraphOps noisy;
};

double mean_of(const std::vector<double>& xs) {
    if (xs.empty())
        return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2)
        return 0.0;
    double sq = 0.0;
    for (double x : xs)
        sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(xs.size()));
}

/// One forward/backward pass for one sample; grads come back in canonical
/// tensor order.
double sample_pass(const ModelParams& params, const SampleOps& ops, const Permutation& truth,
                   Grads& grads_out) {
    ad::Tape tape;
    const auto vars = register_params(tape, params);
    const ad::Var x = forward_tape(tape, params, vars, ops.base);
    const ad::Var x_tilde = forward_tape(tape, params, vars, ops.noisy);
    const ad::Var sigma = tape.matmul_nt(x, x_tilde);
    const ad::Var loss = tape.softmax_nll(sigma, truth_targets(truth));
    const double loss_value = tape.value(loss)(0, 0);
    tape.backward(loss);
    for (std::size_t i = 0; i < vars.size(); ++i)
        grads_out[i] = tape.grad(vars[i]);
    return loss_value;
}

} // namespace

Matrix similarity(const Matrix& x, const Matrix& x_tilde) {
    if (x.cols() != x_tilde.cols())
        throw argument_error("similarity: embedding dimensions differ");
    return x * x_tilde.transpose();
}

double bce_loss(const Matrix& sigma, const Permutation& truth) {
    if (sigma.rows() != sigma.cols())
        throw argument_error("bce_loss: similarity matrix must be square");
    if (truth.size() != sigma.rows())
        throw argument_error("bce_loss: truth size does not match");
    if (!sigma.allFinite())
        throw argument_error("bce_loss: non-finite similarity");
    double loss = 0.0;
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
        const double rowmax = sigma.row(i).maxCoeff();
        const double denom = (sigma.row(i).array() - rowmax).exp().sum();
        loss -= sigma(i, truth(static_cast<int>(i))) - rowmax - std::log(denom);
    }
    return loss;
}

TrainResult train(ModelParams params, const AlignmentDataset& train_ds,
                  const AlignmentDataset& val_ds, const TrainConfig& cfg) {
    if (cfg.epochs < 1 || cfg.batch_size < 1)
        throw argument_error("train: epochs and batch_size must be positive");
    if (train_ds.samples.empty())
        throw argument_error("train: empty training dataset");
    for (const auto* ds : {&train_ds, &val_ds})
        for (const auto& s : ds->samples)
            if (s.base.vertex_count() > kMaxTrainVertices)
                throw argument_error("train: graph exceeds the vertex budget of " +
                                     std::to_string(kMaxTrainVertices));

    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = train_ds.samples.size();

    std::vector<SampleOps> ops(n);
    parallel_for(n, cfg.workers, [&](std::size_t i) {
        ops[i] = {build_graph_ops(train_ds.samples[i].base),
                  build_graph_ops(train_ds.samples[i].noisy)};
    });

    const long long batches_per_epoch =
        static_cast<long long>((n + static_cast<std::size_t>(cfg.batch_size) - 1) /
                               static_cast<std::size_t>(cfg.batch_size));
    const long long total_steps = static_cast<long long>(cfg.epochs) * batches_per_epoch;
    if (cfg.warmup_steps > total_steps)
        throw argument_error("train: warmup_steps (" + std::to_string(cfg.warmup_steps) +
                             ") exceeds the total optimizer steps (" +
                             std::to_string(total_steps) + ")");

    TrainReport report;
    report.cfg = cfg;
    report.seed = cfg.seed;

    AdamWState opt = AdamWState::init(params);
    Rng shuffle_rng(derive_seed(cfg.seed, "train/shuffle", 0));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    std::vector<Grads> batch_grads(static_cast<std::size_t>(cfg.batch_size));
    for (auto& g : batch_grads)
        g = zero_grads(params);
    std::vector<double> batch_loss(static_cast<std::size_t>(cfg.batch_size), 0.0);

    ModelParams before_step = params;
    long long step = 0;

    auto run_eval = [&](int epoch) {
        if (val_ds.samples.empty())
            return;
        const EvalResult ev = evaluate(params, val_ds, cfg.workers);
        report.evals.push_back({epoch, ev.mean, ev.stddev});
    };

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // Fisher-Yates reshuffle per epoch from the run seed.
        for (std::size_t i = n - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(shuffle_rng.next_int(static_cast<int>(i + 1)));
            std::swap(order[i], order[j]);
        }
        double epoch_loss_sum = 0.0;

        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t count = std::min(static_cast<std::size_t>(cfg.batch_size), n - start);
            parallel_for(count, cfg.workers, [&](std::size_t k) {
                const auto& sample = train_ds.samples[order[start + k]];
                batch_loss[k] =
                    sample_pass(params, ops[order[start + k]], sample.truth, batch_grads[k]);
            });

            // Ordered reduction keeps results identical for any worker count.
            Grads grads = zero_grads(params);
            double loss_sum = 0.0;
            for (std::size_t k = 0; k < count; ++k) {
                loss_sum += batch_loss[k];
                for (std::size_t i = 0; i < grads.size(); ++i)
                    grads[i] += batch_grads[k][i];
            }
            const double batch_mean_loss = loss_sum / static_cast<double>(count);
            if (!std::isfinite(batch_mean_loss)) {
                report.diverged = true;
                report.steps = step;
                const auto t1 = std::chrono::steady_clock::now();
                report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
                return {std::move(before_step), std::move(report)};
            }
            for (auto& g : grads)
                g /= static_cast<double>(count);

            clip_gradients(grads, cfg.grad_clip);
            const double lr = one_cycle_lr(step, total_steps, cfg.warmup_steps, cfg.max_lr);
            before_step = params;
            adamw_step(params, opt, grads, lr, cfg.weight_decay);
            ++step;
            epoch_loss_sum += loss_sum;
        }

        report.epoch_loss.push_back(epoch_loss_sum / static_cast<double>(n));
        if (cfg.eval_every > 0 && (epoch + 1) % cfg.eval_every == 0 && epoch + 1 < cfg.epochs)
            run_eval(epoch + 1);
    }
    run_eval(cfg.epochs);
    report.steps = step;
    const auto t1 = std::chrono::steady_clock::now();
    report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    return {std::move(params), std::move(report)};
}

EvalResult evaluate(const ModelParams& params, const AlignmentDataset& ds, int workers) {
    EvalResult result;
    result.per_sample.resize(ds.samples.size(), 0.0);
    parallel_for(ds.samples.size(), workers, [&](std::size_t i) {
        const auto& s = ds.samples[i];
        const Matrix x = forward(params, s.base);
        const Matrix x_tilde = forward(params, s.noisy);
        result.per_sample[i] = alignment_accuracy(decode(x, x_tilde), s.truth);
    });
    result.mean = mean_of(result.per_sample);
    result.stddev = stddev_of(result.per_sample, result.mean);
    return result;
}

namespace {

constexpr std::string_view kEmbTextMagic = "galign-embeddings";
constexpr std::string_view kEmbBinaryMagic = "GALNEMB1";

void append_u64(std::string& out, std::uint64_t x) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

std::uint64_t read_u64(const std::string& in, std::size_t& pos) {
    if (pos + 8 > in.size())
        throw parse_error("embeddings: truncated binary file");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i)
        x |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(i)]))
             << (8 * i);
    pos += 8;
    return x;
}

} // namespace

void export_embeddings(const std::filesystem::path& path, const ModelParams& params,
                       std::span<const Graph> graphs, bool binary) {
    std::vector<Matrix> mats(graphs.size());
    parallel_for(graphs.size(), 0, [&](std::size_t i) { mats[i] = forward(params, graphs[i]); });

    std::string out;
    if (binary) {
        out += kEmbBinaryMagic;
        append_u64(out, graphs.size());
        append_u64(out, static_cast<std::uint64_t>(params.cfg.d_out));
        for (const auto& m : mats) {
            append_u64(out, static_cast<std::uint64_t>(m.rows()));
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    std::uint64_t bits;
                    const double v = m(i, j);
                    std::memcpy(&bits, &v, sizeof bits);
                    append_u64(out, bits);
                }
        }
    } else {
        out += kEmbTextMagic;
        out += " 1\n";
        out += "count " + std::to_string(graphs.size()) + '\n';
        out += "dim " + std::to_string(params.cfg.d_out) + '\n';
        for (const auto& m : mats) {
            out += "graph " + std::to_string(m.rows()) + '\n';
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    if (j > 0)
                        out += ' ';
                    out += format_double(m(i, j));
                }
                out += '\n';
            }
        }
    }
    write_file(path, out);
}

std::vector<Matrix> load_embeddings(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<Matrix> mats;

    if (text.starts_with(kEmbBinaryMagic)) {
        std::size_t pos = kEmbBinaryMagic.size();
        const std::uint64_t count = read_u64(text, pos);
        const std::uint64_t dim = read_u64(text, pos);
        for (std::uint64_t g = 0; g < count; ++g) {
            const std::uint64_t n = read_u64(text, pos);
            Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    const std::uint64_t bits = read_u64(text, pos);
                    double v;
                    std::memcpy(&v, &bits, sizeof v);
                    m(i, j) = v;
                }
            mats.push_back(std::move(m));
        }
        if (pos != text.size())
            throw parse_error("embeddings: trailing bytes");
        return mats;
    }

    std::istringstream in(text);
    std::string word;
    auto next = [&]() -> std::string {
        if (!(in >> word))
            throw parse_error("embeddings: unexpected end of file");
        return word;
    };
    if (next() != std::string(kEmbTextMagic) || next() != "1")
        throw parse_error("embeddings: bad header");
    if (next() != "count")
        throw parse_error("embeddings: expected count");
    const auto count = std::stoull(next());
    if (next() != "dim")
        throw parse_error("embeddings: expected dim");
    const auto dim = std::stoll(next());
    for (std::uint64_t g = 0; g < count; ++g) {
        if (next() != "graph")
            throw parse_error("embeddings: expected graph record");
        const auto n = std::stoll(next());
        Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                m(i, j) = parse_double(next(), 0);
        mats.push_back(std::move(m));
    }
    if (in >> word)
        throw parse_error("embeddings: trailing content");
    return mats;
}

} // namespace galign
