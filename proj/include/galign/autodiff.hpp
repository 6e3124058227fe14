#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "galign/errors.hpp"

namespace galign::ad {

using Matrix = Eigen::MatrixXd;

/// Handle into a Tape; cheap to copy.
struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
};

/// Reverse-mode tape over dense matrices. Build the forward computation
/// through the ops below, then call backward(scalar) once; gradients of
/// every param() leaf are available through grad(). A tape records one
/// forward pass and is not reusable.
///
/// Binary elementwise ops broadcast a 1-row operand over the rows of the
/// other, mirroring the bias-row and per-feature-parameter patterns.
class Tape {
public:
    /// Leaf with gradient tracking.
    Var param(const Matrix& value);
    /// Leaf without gradient tracking.
    Var constant(Matrix value);

    const Matrix& value(Var v) const { return nodes_[check(v)].value; }
    const Matrix& grad(Var v) const;

    Var matmul(Var a, Var b);
    /// a * b^T without materializing the transpose.
    Var matmul_nt(Var a, Var b);
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var mul(Var a, Var b);
    Var div(Var a, Var b);
    Var add_scalar(Var a, double s);
    Var scale(Var a, double s);
    Var relu(Var a);
    Var sigmoid(Var a);
    Var rsqrt(Var a);
    /// Column means: n x c -> 1 x c.
    Var col_mean(Var a);
    /// out.row(k) = a.row(index[k]).
    Var gather_rows(Var a, const std::vector<int>& index);
    /// out.row(i) = sum of a.row(k) over k with index[k] == i.
    Var scatter_sum(Var a, const std::vector<int>& index, int rows_out);
    /// Rows scaled by fixed coefficients (not differentiated).
    Var scale_rows(Var a, const Eigen::VectorXd& coeffs);
    /// Row-softmax negative log likelihood: -sum_i log softmax(a)_{i, t(i)},
    /// computed with max-subtraction; returns a 1x1 node.
    Var softmax_nll(Var logits, const std::vector<int>& targets);
    Var add_all(const std::vector<Var>& terms);

    /// Seeds d(out)/d(out) = 1 and propagates; out must be 1x1.
    void backward(Var out);

    /// Throws numeric_error if any forward value is non-finite.
    void check_finite() const;

private:
    struct Node {
        Matrix value;
        Matrix grad;
        bool needs_grad = false;
        // Pulls this node's grad back into its inputs.
        std::function<void()> backprop;
    };

    int check(Var v) const;
    Var emit(Matrix value, bool needs_grad, std::function<void()> backprop);

    std::vector<Node> nodes_;
    bool backward_done_ = false;
};

} // namespace galign::ad
