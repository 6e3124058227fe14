#pragma once

#include <Eigen/Dense>
#include <vector>

#include "galign/assign.hpp"
#include "galign/generate.hpp"
#include "galign/graph.hpp"

namespace galign {

struct EigResult {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // orthonormal columns, vectors.col(k) pairs with values(k)
};

/// Eigendecomposition of a symmetric real matrix. Residuals satisfy
/// ||M v_k - lambda_k v_k|| <= 1e-9 * ||M||_F and the vectors are
/// orthonormal to 1e-9. Throws argument_error when the input deviates from
/// symmetry by more than 1e-12 relative.
EigResult eig_symmetric(const Matrix& m);

/// L = I - D^{-1/2} A D^{-1/2}; isolated vertices get D^{-1/2} entry 0.
Matrix normalized_laplacian(const Graph& g);

/// L = D - A.
Matrix combinatorial_laplacian(const Graph& g);

/// Spectral node encoding: entrywise absolute values of the eigenvectors of
/// the d largest eigenvalues of the combinatorial Laplacian, zero-padded
/// when n-1 < d. The absolute value removes the per-eigenvector sign
/// ambiguity, so the encoding is a deterministic function of the graph.
Matrix laplacian_pe(const Graph& g, int d);

struct BaselineResult {
    double mean = 0.0;
    std::vector<double> per_sample;
};

/// Training-free alignment accuracy: LAP-decode the Laplacian encodings of
/// each pair and score against the planted truth.
BaselineResult baseline_accuracy(const AlignmentDataset& ds, int d, int workers = 0);

} // namespace galign
