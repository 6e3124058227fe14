#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "galign/autodiff.hpp"
#include "galign/graph.hpp"

namespace galign {

using Matrix = Eigen::MatrixXd;

enum class Arch { gcn, gated_gcn };

std::string_view to_string(Arch arch);
Arch arch_from_string(std::string_view s);

struct ModelConfig {
    Arch arch = Arch::gated_gcn;
    int layers = 3; // message-passing rounds between the input lift and the projection
    int width = 48;
    int d_out = 64;
};

/// Benchmark defaults: gcn width 128, gated-gcn width 48, 3 rounds, d_out 64.
ModelConfig default_config(Arch arch);

/// Flat, canonically ordered tensor list (embedding row, per-round tensors,
/// output projection). Row parameters are stored as 1 x k matrices. The order
/// is the checkpoint and optimizer layout.
struct ModelParams {
    ModelConfig cfg;
    std::vector<Matrix> tensors;

    static ModelParams init(const ModelConfig& cfg, std::uint64_t seed);

    std::size_t parameter_count() const;
    std::vector<std::string> tensor_names() const;
};

/// Per-graph message structure shared by forward passes: directed edge
/// endpoint lists plus the self-loop-augmented, degree-normalized
/// convolution support.
struct GraphOps {
    int n = 0;
    std::vector<int> src, dst;           // each undirected edge in both directions
    std::vector<int> conv_src, conv_dst; // src/dst plus self-loops
    Eigen::VectorXd conv_coeff;          // ((deg_u+1)(deg_v+1))^{-1/2} per conv edge
};

GraphOps build_graph_ops(const Graph& g);

/// Builds the encoder on the tape and returns the n x d_out output node.
/// relu_inputs, when given, collects the pre-activation nodes (one per
/// round) so callers can check how far the forward pass sits from the
/// ReLU kinks.
ad::Var forward_tape(ad::Tape& tape, const ModelParams& params,
                     const std::vector<ad::Var>& tensor_vars, const GraphOps& ops,
                     std::vector<ad::Var>* relu_inputs = nullptr);

/// Registers every parameter tensor on the tape (canonical order).
std::vector<ad::Var> register_params(ad::Tape& tape, const ModelParams& params);

/// Inference-only forward pass.
Matrix forward(const ModelParams& params, const Graph& g);
Matrix forward(const ModelParams& params, const GraphOps& ops);

struct AdamWState {
    long long step = 0;
    std::vector<Matrix> m, v; // aligned with ModelParams::tensors

    static AdamWState init(const ModelParams& params);
};

/// Checkpoint file: versioned text, canonical formatting; save/load/save is
/// byte-identical. Optimizer state optional.
void save_checkpoint(const std::filesystem::path& path, const ModelParams& params,
                     const AdamWState* opt_state = nullptr);

struct Checkpoint {
    ModelParams params;
    std::optional<AdamWState> opt_state;
};

Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace galign
