#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "galign/optim.hpp"

using namespace galign;

namespace {

ModelParams scalar_model() {
    // Smallest valid model; the first tensor is a 1x1 embedding row.
    return ModelParams::init({Arch::gcn, 1, 1, 1}, 1);
}

} // namespace

TEST_CASE("one_cycle_lr: warmup endpoints from the training protocol") {
    CHECK(one_cycle_lr(0, 1000, 30, 0.003) == 0.0);
    CHECK(one_cycle_lr(30, 1000, 30, 0.003) == 0.003);
    CHECK(one_cycle_lr(15, 1000, 30, 0.003) == doctest::Approx(0.0015).epsilon(1e-12));
}

TEST_CASE("one_cycle_lr: cosine decay to zero at total") {
    const double mid = one_cycle_lr(515, 1000, 30, 0.003);
    CHECK(mid == doctest::Approx(0.5 * 0.003).epsilon(1e-12));
    CHECK(one_cycle_lr(1000, 1000, 30, 0.003) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(one_cycle_lr(2000, 1000, 30, 0.003) == doctest::Approx(0.0).epsilon(1e-15));
    // Monotone decreasing after warmup.
    double prev = 1.0;
    for (long long s = 30; s <= 1000; s += 10) {
        const double lr = one_cycle_lr(s, 1000, 30, 0.003);
        CHECK(lr <= prev + 1e-15);
        prev = lr;
    }
}

TEST_CASE("one_cycle_lr: argument validation") {
    CHECK_THROWS_AS(one_cycle_lr(0, 100, 30, -0.1), argument_error);
    CHECK_THROWS_AS(one_cycle_lr(-1, 100, 30, 0.1), argument_error);
    CHECK_THROWS_AS(one_cycle_lr(0, 0, 0, 0.1), argument_error);
    CHECK_THROWS_AS(one_cycle_lr(0, 100, 200, 0.1), argument_error);
}

TEST_CASE("clip_gradients: below the threshold is untouched") {
    auto params = scalar_model();
    Grads g = zero_grads(params);
    g[0](0, 0) = 0.03;
    g[1](0, 0) = 0.04; // norm 0.05
    const Grads before = g;
    clip_gradients(g, 0.1);
    CHECK(g[0] == before[0]);
    CHECK(g[1] == before[1]);
}

TEST_CASE("clip_gradients: rescales the global norm to max_norm") {
    auto params = scalar_model();
    Grads g = zero_grads(params);
    g[0](0, 0) = 0.6;
    g[1](0, 0) = 0.8; // norm 1.0
    clip_gradients(g, 0.1);
    CHECK(grad_norm(g) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(g[0](0, 0) == doctest::Approx(0.06).epsilon(1e-12));
    CHECK_THROWS_AS(clip_gradients(g, 0.0), argument_error);
}

TEST_CASE("adamw: first step matches the closed form") {
    auto params = scalar_model();
    for (auto& t : params.tensors)
        t.setConstant(1.0);
    auto state = AdamWState::init(params);
    Grads g = zero_grads(params);
    for (auto& t : g)
        t.setConstant(0.5);

    adamw_step(params, state, g, 0.01, 0.0);
    // With bias correction, the first update is lr * g/(|g| + eps) = lr.
    for (const auto& t : params.tensors)
        CHECK(t(0, 0) == doctest::Approx(1.0 - 0.01 * (0.5 / (0.5 + 1e-8))).epsilon(1e-12));
    CHECK(state.step == 1);
}

TEST_CASE("adamw: decoupled weight decay acts even at zero gradient") {
    auto params = scalar_model();
    for (auto& t : params.tensors)
        t.setConstant(2.0);
    auto state = AdamWState::init(params);
    const Grads g = zero_grads(params);
    adamw_step(params, state, g, 0.1, 0.01);
    for (const auto& t : params.tensors)
        CHECK(t(0, 0) == doctest::Approx(2.0 - 0.1 * 0.01 * 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(adamw_step(params, state, g, -0.1, 0.0), argument_error);
}

TEST_CASE("adamw: converges on a quadratic") {
    auto params = scalar_model();
    for (auto& t : params.tensors)
        t.setConstant(3.0);
    auto state = AdamWState::init(params);
    for (int i = 0; i < 2000; ++i) {
        Grads g;
        for (const auto& t : params.tensors)
            g.push_back(2.0 * (t.array() - 0.5).matrix()); // d/dx (x-0.5)^2
        adamw_step(params, state, g, 0.01, 0.0);
    }
    for (const auto& t : params.tensors)
        CHECK(std::abs(t(0, 0) - 0.5) < 1e-3);
}
