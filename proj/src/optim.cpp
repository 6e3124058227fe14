#include "galign/optim.hpp"

#include <cmath>

namespace galign {

namespace {
constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEps = 1e-8;
} // namespace

Grads zero_grads(const ModelParams& params) {
    Grads grads;
    grads.reserve(params.tensors.size());
    for (const auto& t : params.tensors)
        grads.push_back(Matrix::Zero(t.rows(), t.cols()));
    return grads;
}

double grad_norm(const Grads& grads) {
    double sq = 0.0;
    for (const auto& g : grads)
        sq += g.squaredNorm();
    return std::sqrt(sq);
}

void clip_gradients(Grads& grads, double max_norm) {
    if (max_norm <= 0.0)
        throw argument_error("clip_gradients: max_norm must be positive");
    const double norm = grad_norm(grads);
    if (norm <= max_norm)
        return;
    const double scale = max_norm / norm;
    for (auto& g : grads)
        g *= scale;
}

double one_cycle_lr(long long step, long long total, long long warmup, double max_lr) {
    if (max_lr < 0.0)
        throw argument_error("one_cycle_lr: negative learning rate");
    if (total < 1 || warmup < 0 || warmup > total)
        throw argument_error("one_cycle_lr: invalid schedule bounds");
    if (step < 0)
        throw argument_error("one_cycle_lr: negative step");
    if (step > total)
        step = total;
    if (step < warmup)
        return max_lr * static_cast<double>(step) / static_cast<double>(warmup);
    if (step == warmup)
        return max_lr;
    const double progress =
        static_cast<double>(step - warmup) / static_cast<double>(total - warmup);
    return 0.5 * max_lr * (1.0 + std::cos(progress * M_PI));
}

void adamw_step(ModelParams& params, AdamWState& state, const Grads& grads, double lr,
                double weight_decay) {
    if (lr < 0.0)
        throw argument_error("adamw_step: negative learning rate");
    if (grads.size() != params.tensors.size() || state.m.size() != params.tensors.size())
        throw argument_error("adamw_step: gradient/state layout mismatch");
    ++state.step;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < params.tensors.size(); ++i) {
        auto& p = params.tensors[i];
        auto& m = state.m[i];
        auto& v = state.v[i];
        const auto& g = grads[i];
        m = kBeta1 * m + (1.0 - kBeta1) * g;
        v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
        const Matrix m_hat = m / bc1;
        const Matrix v_hat = v / bc2;
        p.array() -= lr * (m_hat.array() / (v_hat.array().sqrt() + kEps) +
                           weight_decay * p.array());
    }
}

} // namespace galign
