#include "galign/model.hpp"

#include <cctype>
#include <cmath>

#include "galign/io.hpp"
#include "galign/rng.hpp"

namespace galign {

namespace {

constexpr double kGraphNormEps = 1e-8;

// Tensors per message-passing round.
constexpr int kGcnRound = 5;    // w, b, gn_gamma, gn_beta, gn_alpha
constexpr int kGatedRound = 11; // u, bu, v, bv, a1, ba1, a2, ba2, gn_gamma, gn_beta, gn_alpha

int round_stride(Arch arch) { return arch == Arch::gcn ? kGcnRound : kGatedRound; }

Matrix xavier(int rows, int cols, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = (2.0 * rng.next_double() - 1.0) * limit;
    return m;
}

/// GraphNorm: x -> gamma * (x - alpha*mean) / sqrt(var + eps) + beta, with
/// mean and variance per feature over the nodes of one graph.
ad::Var graph_norm(ad::Tape& t, ad::Var x, ad::Var gamma, ad::Var beta, ad::Var alpha) {
    const ad::Var mu = t.col_mean(x);
    const ad::Var centered = t.sub(x, t.mul(alpha, mu));
    const ad::Var var = t.col_mean(t.mul(centered, centered));
    const ad::Var inv_std = t.rsqrt(t.add_scalar(var, kGraphNormEps));
    return t.add(t.mul(t.mul(centered, inv_std), gamma), beta);
}

} // namespace

std::string_view to_string(Arch arch) { return arch == Arch::gcn ? "gcn" : "gated-gcn"; }

Arch arch_from_string(std::string_view s) {
    if (s == "gcn")
        return Arch::gcn;
    if (s == "gated-gcn")
        return Arch::gated_gcn;
    throw argument_error("unknown architecture '" + std::string(s) +
                         "' (expected gcn or gated-gcn)");
}

ModelConfig default_config(Arch arch) {
    ModelConfig cfg;
    cfg.arch = arch;
    cfg.width = arch == Arch::gcn ? 128 : 48;
    cfg.layers = 3;
    cfg.d_out = 64;
    return cfg;
}

ModelParams ModelParams::init(const ModelConfig& cfg, std::uint64_t seed) {
    if (cfg.layers < 1 || cfg.width < 1 || cfg.d_out < 1)
        throw argument_error("ModelParams::init: layers, width, d_out must be positive");
    Rng rng(seed);
    const int w = cfg.width;
    ModelParams params;
    params.cfg = cfg;
    params.tensors.push_back(xavier(1, w, rng)); // embedding row
    for (int l = 0; l < cfg.layers; ++l) {
        const int mats = cfg.arch == Arch::gcn ? 1 : 4;
        for (int k = 0; k < mats; ++k) {
            params.tensors.push_back(xavier(w, w, rng));
            params.tensors.push_back(Matrix::Zero(1, w));
        }
        params.tensors.push_back(Matrix::Ones(1, w)); // gn_gamma
        params.tensors.push_back(Matrix::Zero(1, w)); // gn_beta
        params.tensors.push_back(Matrix::Ones(1, w)); // gn_alpha
    }
    params.tensors.push_back(xavier(w, cfg.d_out, rng));
    params.tensors.push_back(Matrix::Zero(1, cfg.d_out));
    return params;
}

std::size_t ModelParams::parameter_count() const {
    std::size_t count = 0;
    for (const auto& t : tensors)
        count += static_cast<std::size_t>(t.size());
    return count;
}

std::vector<std::string> ModelParams::tensor_names() const {
    std::vector<std::string> names;
    names.push_back("embed");
    for (int l = 0; l < cfg.layers; ++l) {
        const std::string p = "l" + std::to_string(l) + ".";
        if (cfg.arch == Arch::gcn) {
            names.push_back(p + "w");
            names.push_back(p + "b");
        } else {
            for (const char* m : {"u", "v", "a1", "a2"}) {
                names.push_back(p + m);
                names.push_back(p + m + std::string(".b"));
            }
        }
        names.push_back(p + "gn.gamma");
        names.push_back(p + "gn.beta");
        names.push_back(p + "gn.alpha");
    }
    names.push_back("out.w");
    names.push_back("out.b");
    return names;
}

GraphOps build_graph_ops(const Graph& g) {
    GraphOps ops;
    ops.n = g.vertex_count();
    const auto m = static_cast<std::size_t>(g.edge_count());
    ops.src.reserve(2 * m);
    ops.dst.reserve(2 * m);
    for (const auto& e : g.edges()) {
        ops.src.push_back(e.u);
        ops.dst.push_back(e.v);
        ops.src.push_back(e.v);
        ops.dst.push_back(e.u);
    }
    ops.conv_src = ops.src;
    ops.conv_dst = ops.dst;
    for (int v = 0; v < ops.n; ++v) {
        ops.conv_src.push_back(v);
        ops.conv_dst.push_back(v);
    }
    ops.conv_coeff.resize(static_cast<Eigen::Index>(ops.conv_src.size()));
    for (std::size_t k = 0; k < ops.conv_src.size(); ++k) {
        const double du = 1.0 + g.degree(ops.conv_src[k]);
        const double dv = 1.0 + g.degree(ops.conv_dst[k]);
        ops.conv_coeff(static_cast<Eigen::Index>(k)) = 1.0 / std::sqrt(du * dv);
    }
    return ops;
}

std::vector<ad::Var> register_params(ad::Tape& tape, const ModelParams& params) {
    std::vector<ad::Var> vars;
    vars.reserve(params.tensors.size());
    for (const auto& t : params.tensors)
        vars.push_back(tape.param(t));
    return vars;
}

ad::Var forward_tape(ad::Tape& t, const ModelParams& params,
                     const std::vector<ad::Var>& tv, const GraphOps& ops,
                     std::vector<ad::Var>* relu_inputs) {
    if (tv.size() != params.tensors.size())
        throw argument_error("forward_tape: tensor variable count mismatch");
    const int stride = round_stride(params.cfg.arch);

    // Constant input feature 1 per node, lifted by the embedding row.
    ad::Var h = t.matmul(t.constant(Matrix::Ones(ops.n, 1)), tv[0]);

    for (int l = 0; l < params.cfg.layers; ++l) {
        const std::size_t base = 1 + static_cast<std::size_t>(l) * static_cast<std::size_t>(stride);
        ad::Var z{};
        if (params.cfg.arch == Arch::gcn) {
            // z = Ahat H W + b with Ahat = Dhat^{-1/2} (A + I) Dhat^{-1/2}.
            const ad::Var agg = t.scatter_sum(
                t.scale_rows(t.gather_rows(h, ops.conv_src), ops.conv_coeff), ops.conv_dst, ops.n);
            z = t.add(t.matmul(agg, tv[base]), tv[base + 1]);
        } else {
            const ad::Var hu = t.add(t.matmul(h, tv[base]), tv[base + 1]);
            const ad::Var hv = t.add(t.matmul(h, tv[base + 2]), tv[base + 3]);
            const ad::Var ha1 = t.add(t.matmul(h, tv[base + 4]), tv[base + 5]);
            const ad::Var ha2 = t.add(t.matmul(h, tv[base + 6]), tv[base + 7]);
            // Edge (i <- j) carries the gated message
            // sigmoid(A1 h_i + A2 h_j) .* V h_j, summed over N(i).
            // Sum aggregation (no gate normalization): with the constant
            // input features of this task, normalized gates collapse to a
            // mean and the network can never tell two vertices apart.
            const ad::Var gate =
                t.sigmoid(t.add(t.gather_rows(ha1, ops.dst), t.gather_rows(ha2, ops.src)));
            const ad::Var msg = t.mul(gate, t.gather_rows(hv, ops.src));
            z = t.add(hu, t.scatter_sum(msg, ops.dst, ops.n));
        }
        const ad::Var gamma = tv[base + static_cast<std::size_t>(stride) - 3];
        const ad::Var beta = tv[base + static_cast<std::size_t>(stride) - 2];
        const ad::Var alpha = tv[base + static_cast<std::size_t>(stride) - 1];
        const ad::Var pre = graph_norm(t, z, gamma, beta, alpha);
        if (relu_inputs != nullptr)
            relu_inputs->push_back(pre);
        h = t.add(t.relu(pre), h);
    }

    const std::size_t out = tv.size() - 2;
    return t.add(t.matmul(h, tv[out]), tv[out + 1]);
}

Matrix forward(const ModelParams& params, const GraphOps& ops) {
    ad::Tape tape;
    const auto vars = register_params(tape, params);
    return tape.value(forward_tape(tape, params, vars, ops));
}

Matrix forward(const ModelParams& params, const Graph& g) {
    return forward(params, build_graph_ops(g));
}

AdamWState AdamWState::init(const ModelParams& params) {
    AdamWState state;
    state.m.reserve(params.tensors.size());
    state.v.reserve(params.tensors.size());
    for (const auto& t : params.tensors) {
        state.m.push_back(Matrix::Zero(t.rows(), t.cols()));
        state.v.push_back(Matrix::Zero(t.rows(), t.cols()));
    }
    return state;
}

namespace {

constexpr std::string_view kCheckpointMagic = "galign-checkpoint";
constexpr int kCheckpointVersion = 1;

void append_tensor(std::string& out, const Matrix& t) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
        for (Eigen::Index j = 0; j < t.cols(); ++j) {
            if (j > 0)
                out += ' ';
            out += format_double(t(i, j));
        }
        out += '\n';
    }
}

class TokenReader {
public:
    explicit TokenReader(const std::string& text) : text_(text) {}

    std::string next() {
        skip_ws();
        if (pos_ >= text_.size())
            throw parse_error("checkpoint: unexpected end of file");
        const auto start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    void expect(std::string_view word) {
        const auto got = next();
        if (got != word)
            throw parse_error("checkpoint: expected '" + std::string(word) + "', got '" + got +
                              "'");
    }

    long long next_int() {
        const auto tok = next();
        try {
            return std::stoll(tok);
        } catch (...) {
            throw parse_error("checkpoint: expected integer, got '" + tok + "'");
        }
    }

    Matrix next_tensor(Eigen::Index rows, Eigen::Index cols) {
        Matrix t(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                t(i, j) = parse_double(next(), 0);
        return t;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

} // namespace

void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     const AdamWState* opt_state) {
    std::string out;
    out += kCheckpointMagic;
    out += ' ';
    out += std::to_string(kCheckpointVersion);
    out += '\n';
    out += "arch ";
    out += to_string(params.cfg.arch);
    out += '\n';
    out += "layers " + std::to_string(params.cfg.layers) + '\n';
    out += "width " + std::to_string(params.cfg.width) + '\n';
    out += "d-out " + std::to_string(params.cfg.d_out) + '\n';
    out += "params " + std::to_string(params.parameter_count()) + '\n';
    const auto names = params.tensor_names();
    for (std::size_t i = 0; i < params.tensors.size(); ++i) {
        const auto& t = params.tensors[i];
        out += "tensor " + names[i] + ' ' + std::to_string(t.rows()) + ' ' +
               std::to_string(t.cols()) + '\n';
        append_tensor(out, t);
    }
    if (opt_state == nullptr) {
        out += "optimizer none\n";
    } else {
        out += "optimizer adamw\n";
        out += "step " + std::to_string(opt_state->step) + '\n';
        for (std::size_t i = 0; i < params.tensors.size(); ++i) {
            out += "moment1 " + names[i] + '\n';
            append_tensor(out, opt_state->m[i]);
            out += "moment2 " + names[i] + '\n';
            append_tensor(out, opt_state->v[i]);
        }
    }
    write_file(path, out);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    TokenReader r(text);
    r.expect(kCheckpointMagic);
    if (r.next_int() != kCheckpointVersion)
        throw parse_error("checkpoint: unsupported version");
    r.expect("arch");
    ModelConfig cfg;
    cfg.arch = arch_from_string(r.next());
    r.expect("layers");
    cfg.layers = static_cast<int>(r.next_int());
    r.expect("width");
    cfg.width = static_cast<int>(r.next_int());
    r.expect("d-out");
    cfg.d_out = static_cast<int>(r.next_int());
    r.expect("params");
    const long long declared = r.next_int();

    Checkpoint ck;
    ck.params.cfg = cfg;
    const auto expected_names = [&] {
        ModelParams probe;
        probe.cfg = cfg;
        return probe.tensor_names();
    }();
    for (const auto& name : expected_names) {
        r.expect("tensor");
        const auto got = r.next();
        if (got != name)
            throw validation_error("checkpoint: tensor '" + got + "' where '" + name +
                                   "' was expected");
        const auto rows = r.next_int();
        const auto cols = r.next_int();
        if (rows < 0 || cols < 0)
            throw validation_error("checkpoint: negative tensor shape");
        ck.params.tensors.push_back(
            r.next_tensor(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
    }
    if (static_cast<long long>(ck.params.parameter_count()) != declared)
        throw validation_error("checkpoint: parameter count mismatch");

    r.expect("optimizer");
    const auto opt = r.next();
    if (opt == "adamw") {
        AdamWState state;
        r.expect("step");
        state.step = r.next_int();
        for (const auto& name : expected_names) {
            r.expect("moment1");
            if (r.next() != name)
                throw validation_error("checkpoint: optimizer tensors out of order");
            const auto& shape = ck.params.tensors[state.m.size()];
            state.m.push_back(r.next_tensor(shape.rows(), shape.cols()));
            r.expect("moment2");
            if (r.next() != name)
                throw validation_error("checkpoint: optimizer tensors out of order");
            state.v.push_back(r.next_tensor(shape.rows(), shape.cols()));
        }
        ck.opt_state = std::move(state);
    } else if (opt != "none") {
        throw parse_error("checkpoint: unknown optimizer '" + opt + "'");
    }
    if (!r.at_end())
        throw parse_error("checkpoint: trailing content");
    return ck;
}

} // namespace galign
