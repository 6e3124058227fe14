#pragma once

#include <vector>

#include "galign/model.hpp"

namespace galign {

using Grads = std::vector<Matrix>; // aligned with ModelParams::tensors

Grads zero_grads(const ModelParams& params);

double grad_norm(const Grads& grads);

/// Rescales so the global L2 norm is at most max_norm.
void clip_gradients(Grads& grads, double max_norm);

/// Linear warmup 0 -> max_lr over warmup steps, then cosine decay to 0 at
/// total. one_cycle_lr(warmup, ...) == max_lr.
double one_cycle_lr(long long step, long long total, long long warmup, double max_lr);

/// AdamW with decoupled weight decay; beta1=0.9, beta2=0.999, eps=1e-8.
void adamw_step(ModelParams& params, AdamWState& state, const Grads& grads, double lr,
                double weight_decay);

} // namespace galign
