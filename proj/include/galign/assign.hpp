#pragma once

#include <Eigen/Dense>

#include "galign/graph.hpp"

namespace galign {

using Matrix = Eigen::MatrixXd;

/// Exact maximum-reward assignment: returns pi maximizing sum_i R(i, pi(i)).
/// O(n^3) augmenting-path solver on the negated matrix; deterministic for a
/// fixed input (fixed scan order). Throws argument_error on non-square or
/// non-finite input.
Permutation hungarian(const Matrix& reward);

/// sum_i R(i, pi(i)), summed in row order.
double assignment_value(const Matrix& reward, const Permutation& p);

/// Fraction of i with predicted(i) == truth(i).
double alignment_accuracy(const Permutation& predicted, const Permutation& truth);

/// LAP decoding of a pair of embeddings: hungarian(x * x_tilde^T).
Permutation decode(const Matrix& x, const Matrix& x_tilde);

} // namespace galign
