#include "galign/autodiff.hpp"

#include <cmath>
#include <string>

namespace galign::ad {

namespace {

/// Resolves elementwise-op shapes: returns 0 (same shape), 1 (b is a row
/// broadcast over a), 2 (a is a row broadcast over b).
int broadcast_kind(const Matrix& a, const Matrix& b) {
    if (a.rows() == b.rows() && a.cols() == b.cols())
        return 0;
    if (b.rows() == 1 && b.cols() == a.cols())
        return 1;
    if (a.rows() == 1 && a.cols() == b.cols())
        return 2;
    throw argument_error("tape op: incompatible shapes " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

} // namespace

int Tape::check(Var v) const {
    if (!v.valid() || static_cast<std::size_t>(v.id) >= nodes_.size())
        throw argument_error("tape: invalid node handle");
    return v.id;
}

Var Tape::emit(Matrix value, bool needs_grad, std::function<void()> backprop) {
    Node node;
    node.value = std::move(value);
    node.needs_grad = needs_grad;
    if (needs_grad) {
        node.grad = Matrix::Zero(node.value.rows(), node.value.cols());
        node.backprop = std::move(backprop);
    }
    nodes_.push_back(std::move(node));
    return {static_cast<int>(nodes_.size()) - 1};
}

Var Tape::param(const Matrix& value) { return emit(value, true, nullptr); }

Var Tape::constant(Matrix value) { return emit(std::move(value), false, nullptr); }

const Matrix& Tape::grad(Var v) const {
    const int i = check(v);
    if (!nodes_[static_cast<std::size_t>(i)].needs_grad)
        throw argument_error("tape: node does not track gradients");
    if (!backward_done_)
        throw argument_error("tape: backward has not run");
    return nodes_[static_cast<std::size_t>(i)].grad;
}

Var Tape::matmul(Var a, Var b) {
    const int ia = check(a), ib = check(b);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const auto& vb = nodes_[static_cast<std::size_t>(ib)].value;
    if (va.cols() != vb.rows())
        throw argument_error("matmul: inner dimensions differ");
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad ||
                       nodes_[static_cast<std::size_t>(ib)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(va * vb, needs, [this, ia, ib, out] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        if (nodes_[static_cast<std::size_t>(ia)].needs_grad)
            nodes_[static_cast<std::size_t>(ia)].grad.noalias() +=
                g * nodes_[static_cast<std::size_t>(ib)].value.transpose();
        if (nodes_[static_cast<std::size_t>(ib)].needs_grad)
            nodes_[static_cast<std::size_t>(ib)].grad.noalias() +=
                nodes_[static_cast<std::size_t>(ia)].value.transpose() * g;
    });
}

Var Tape::matmul_nt(Var a, Var b) {
    const int ia = check(a), ib = check(b);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const auto& vb = nodes_[static_cast<std::size_t>(ib)].value;
    if (va.cols() != vb.cols())
        throw argument_error("matmul_nt: column counts differ");
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad ||
                       nodes_[static_cast<std::size_t>(ib)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(va * vb.transpose(), needs, [this, ia, ib, out] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        if (nodes_[static_cast<std::size_t>(ia)].needs_grad)
            nodes_[static_cast<std::size_t>(ia)].grad.noalias() +=
                g * nodes_[static_cast<std::size_t>(ib)].value;
        if (nodes_[static_cast<std::size_t>(ib)].needs_grad)
            nodes_[static_cast<std::size_t>(ib)].grad.noalias() +=
                g.transpose() * nodes_[static_cast<std::size_t>(ia)].value;
    });
}

Var Tape::add(Var a, Var b) {
    const int ia = check(a), ib = check(b);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const auto& vb = nodes_[static_cast<std::size_t>(ib)].value;
    const int kind = broadcast_kind(va, vb);
    Matrix value;
    if (kind == 0)
        value = va + vb;
    else if (kind == 1)
        value = va.rowwise() + vb.row(0);
    else
        value = vb.rowwise() + va.row(0);
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad ||
                       nodes_[static_cast<std::size_t>(ib)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs, [this, ia, ib, out, kind] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        auto& na = nodes_[static_cast<std::size_t>(ia)];
        auto& nb = nodes_[static_cast<std::size_t>(ib)];
        if (na.needs_grad)
            na.grad.noalias() += (kind == 2) ? Matrix(g.colwise().sum()) : g;
        if (nb.needs_grad)
            nb.grad.noalias() += (kind == 1) ? Matrix(g.colwise().sum()) : g;
    });
}

Var Tape::sub(Var a, Var b) {
    const int ia = check(a), ib = check(b);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const auto& vb = nodes_[static_cast<std::size_t>(ib)].value;
    const int kind = broadcast_kind(va, vb);
    Matrix value;
    if (kind == 0)
        value = va - vb;
    else if (kind == 1)
        value = va.rowwise() - vb.row(0);
    else
        value = (-vb).rowwise() + va.row(0);
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad ||
                       nodes_[static_cast<std::size_t>(ib)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs, [this, ia, ib, out, kind] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        auto& na = nodes_[static_cast<std::size_t>(ia)];
        auto& nb = nodes_[static_cast<std::size_t>(ib)];
        if (na.needs_grad)
            na.grad.noalias() += (kind == 2) ? Matrix(g.colwise().sum()) : g;
        if (nb.needs_grad)
            nb.grad.noalias() -= (kind == 1) ? Matrix(g.colwise().sum()) : g;
    });
}

Var Tape::mul(Var a, Var b) {
    const int ia = check(a), ib = check(b);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const auto& vb = nodes_[static_cast<std::size_t>(ib)].value;
    const int kind = broadcast_kind(va, vb);
    Matrix value;
    if (kind == 0)
        value = va.cwiseProduct(vb);
    else if (kind == 1)
        value = va.array().rowwise() * vb.row(0).array();
    else
        value = vb.array().rowwise() * va.row(0).array();
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad ||
                       nodes_[static_cast<std::size_t>(ib)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs, [this, ia, ib, out, kind] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        auto& na = nodes_[static_cast<std::size_t>(ia)];
        auto& nb = nodes_[static_cast<std::size_t>(ib)];
        if (na.needs_grad) {
            if (kind == 0)
                na.grad.noalias() += g.cwiseProduct(nb.value);
            else if (kind == 1)
                na.grad.array() += g.array().rowwise() * nb.value.row(0).array();
            else
                na.grad.noalias() += Matrix(g.cwiseProduct(nb.value).colwise().sum());
        }
        if (nb.needs_grad) {
            if (kind == 0)
                nb.grad.noalias() += g.cwiseProduct(na.value);
            else if (kind == 1)
                nb.grad.noalias() += Matrix(g.cwiseProduct(na.value).colwise().sum());
            else
                nb.grad.array() += g.array().rowwise() * na.value.row(0).array();
        }
    });
}

Var Tape::div(Var a, Var b) {
    const int ia = check(a), ib = check(b);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const auto& vb = nodes_[static_cast<std::size_t>(ib)].value;
    const int kind = broadcast_kind(va, vb);
    if (kind == 2)
        throw argument_error("div: broadcasting the numerator is not supported");
    Matrix value;
    if (kind == 0)
        value = va.cwiseQuotient(vb);
    else
        value = va.array().rowwise() / vb.row(0).array();
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad ||
                       nodes_[static_cast<std::size_t>(ib)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs, [this, ia, ib, out, kind] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        auto& na = nodes_[static_cast<std::size_t>(ia)];
        auto& nb = nodes_[static_cast<std::size_t>(ib)];
        if (kind == 0) {
            if (na.needs_grad)
                na.grad.noalias() += g.cwiseQuotient(nb.value);
            if (nb.needs_grad)
                nb.grad.array() -= g.cwiseProduct(na.value).array() /
                                   nb.value.cwiseProduct(nb.value).array();
        } else {
            if (na.needs_grad)
                na.grad.array() += g.array().rowwise() / nb.value.row(0).array();
            if (nb.needs_grad) {
                const Matrix num = g.cwiseProduct(na.value).colwise().sum();
                nb.grad.array() -=
                    num.array() / nb.value.row(0).cwiseProduct(nb.value.row(0)).array();
            }
        }
    });
}

Var Tape::add_scalar(Var a, double s) {
    const int ia = check(a);
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(nodes_[static_cast<std::size_t>(ia)].value.array() + s, needs, [this, ia, out] {
        nodes_[static_cast<std::size_t>(ia)].grad.noalias() +=
            nodes_[static_cast<std::size_t>(out)].grad;
    });
}

Var Tape::scale(Var a, double s) {
    const int ia = check(a);
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(nodes_[static_cast<std::size_t>(ia)].value * s, needs, [this, ia, out, s] {
        nodes_[static_cast<std::size_t>(ia)].grad.noalias() +=
            s * nodes_[static_cast<std::size_t>(out)].grad;
    });
}

Var Tape::relu(Var a) {
    const int ia = check(a);
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(nodes_[static_cast<std::size_t>(ia)].value.cwiseMax(0.0), needs, [this, ia, out] {
        const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
        nodes_[static_cast<std::size_t>(ia)].grad.array() +=
            nodes_[static_cast<std::size_t>(out)].grad.array() *
            (va.array() > 0.0).cast<double>();
    });
}

Var Tape::sigmoid(Var a) {
    const int ia = check(a);
    const Matrix s =
        (1.0 + (-nodes_[static_cast<std::size_t>(ia)].value.array()).exp()).inverse();
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(s, needs, [this, ia, out] {
        const auto& sv = nodes_[static_cast<std::size_t>(out)].value;
        nodes_[static_cast<std::size_t>(ia)].grad.array() +=
            nodes_[static_cast<std::size_t>(out)].grad.array() * sv.array() *
            (1.0 - sv.array());
    });
}

Var Tape::rsqrt(Var a) {
    const int ia = check(a);
    const Matrix r = nodes_[static_cast<std::size_t>(ia)].value.array().rsqrt();
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(r, needs, [this, ia, out] {
        const auto& rv = nodes_[static_cast<std::size_t>(out)].value;
        nodes_[static_cast<std::size_t>(ia)].grad.array() +=
            -0.5 * nodes_[static_cast<std::size_t>(out)].grad.array() * rv.array().cube();
    });
}

Var Tape::col_mean(Var a) {
    const int ia = check(a);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    const double inv_n = 1.0 / static_cast<double>(va.rows());
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(va.colwise().mean(), needs, [this, ia, out, inv_n] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        auto& na = nodes_[static_cast<std::size_t>(ia)];
        na.grad.noalias() += Eigen::VectorXd::Constant(na.value.rows(), inv_n) * g.row(0);
    });
}

Var Tape::gather_rows(Var a, const std::vector<int>& index) {
    const int ia = check(a);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    Matrix value(static_cast<Eigen::Index>(index.size()), va.cols());
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] < 0 || index[k] >= va.rows())
            throw argument_error("gather_rows: index out of range");
        value.row(static_cast<Eigen::Index>(k)) = va.row(index[k]);
    }
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs, [this, ia, out, index] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        Matrix& ga = nodes_[static_cast<std::size_t>(ia)].grad;
        for (std::size_t k = 0; k < index.size(); ++k)
            ga.row(index[k]) += g.row(static_cast<Eigen::Index>(k));
    });
}

Var Tape::scatter_sum(Var a, const std::vector<int>& index, int rows_out) {
    const int ia = check(a);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    if (static_cast<std::size_t>(va.rows()) != index.size())
        throw argument_error("scatter_sum: index length must match rows");
    Matrix value = Matrix::Zero(rows_out, va.cols());
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] < 0 || index[k] >= rows_out)
            throw argument_error("scatter_sum: index out of range");
        value.row(index[k]) += va.row(static_cast<Eigen::Index>(k));
    }
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs, [this, ia, out, index] {
        const Matrix& g = nodes_[static_cast<std::size_t>(out)].grad;
        Matrix& ga = nodes_[static_cast<std::size_t>(ia)].grad;
        for (std::size_t k = 0; k < index.size(); ++k)
            ga.row(static_cast<Eigen::Index>(k)) += g.row(index[k]);
    });
}

Var Tape::scale_rows(Var a, const Eigen::VectorXd& coeffs) {
    const int ia = check(a);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    if (va.rows() != coeffs.size())
        throw argument_error("scale_rows: coefficient length must match rows");
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(coeffs.asDiagonal() * va, needs, [this, ia, out, coeffs] {
        nodes_[static_cast<std::size_t>(ia)].grad.noalias() +=
            coeffs.asDiagonal() * nodes_[static_cast<std::size_t>(out)].grad;
    });
}

Var Tape::softmax_nll(Var logits, const std::vector<int>& targets) {
    const int ia = check(logits);
    const auto& va = nodes_[static_cast<std::size_t>(ia)].value;
    if (static_cast<std::size_t>(va.rows()) != targets.size())
        throw argument_error("softmax_nll: one target per row required");
    Matrix probs(va.rows(), va.cols());
    double loss = 0.0;
    for (Eigen::Index i = 0; i < va.rows(); ++i) {
        const int t = targets[static_cast<std::size_t>(i)];
        if (t < 0 || t >= va.cols())
            throw argument_error("softmax_nll: target out of range");
        const double rowmax = va.row(i).maxCoeff();
        const Eigen::ArrayXd shifted = va.row(i).transpose().array() - rowmax;
        const Eigen::ArrayXd exps = shifted.exp();
        const double denom = exps.sum();
        probs.row(i) = (exps / denom).matrix().transpose();
        loss -= shifted(t) - std::log(denom);
    }
    Matrix value(1, 1);
    value(0, 0) = loss;
    const bool needs = nodes_[static_cast<std::size_t>(ia)].needs_grad;
    const int out = static_cast<int>(nodes_.size());
    return emit(std::move(value), needs,
                [this, ia, out, targets, probs = std::move(probs)] {
                    const double g = nodes_[static_cast<std::size_t>(out)].grad(0, 0);
                    Matrix& ga = nodes_[static_cast<std::size_t>(ia)].grad;
                    ga.noalias() += g * probs;
                    for (std::size_t i = 0; i < targets.size(); ++i)
                        ga(static_cast<Eigen::Index>(i), targets[i]) -= g;
                });
}

Var Tape::add_all(const std::vector<Var>& terms) {
    if (terms.empty())
        throw argument_error("add_all: no terms");
    Var acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i)
        acc = add(acc, terms[i]);
    return acc;
}

void Tape::backward(Var out) {
    const int io = check(out);
    auto& node = nodes_[static_cast<std::size_t>(io)];
    if (node.value.rows() != 1 || node.value.cols() != 1)
        throw argument_error("backward: output must be 1x1");
    if (!node.needs_grad)
        throw argument_error("backward: output does not depend on any parameter");
    if (backward_done_)
        throw argument_error("backward: tape already consumed");
    backward_done_ = true;
    node.grad(0, 0) = 1.0;
    for (int i = io; i >= 0; --i) {
        auto& n = nodes_[static_cast<std::size_t>(i)];
        if (n.needs_grad && n.backprop)
            n.backprop();
    }
}

void Tape::check_finite() const {
    for (const auto& n : nodes_)
        if (!n.value.allFinite())
            throw numeric_error("tape: non-finite value in forward pass");
}

} // namespace galign::ad
