#include "galign/spectral.hpp"

#include <cmath>

#include "galign/parallel.hpp"

namespace galign {

EigResult eig_symmetric(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw argument_error("eig_symmetric: matrix must be square and non-empty");
    if (!m.allFinite())
        throw argument_error("eig_symmetric: non-finite entries");
    const double scale = m.norm();
    const double asym = (m - m.transpose()).norm();
    if (asym > 1e-12 * std::max(scale, 1.0))
        throw argument_error("eig_symmetric: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eig_symmetric: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix normalized_laplacian(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 1)
        throw argument_error("normalized_laplacian: empty graph");
    Eigen::VectorXd inv_sqrt_deg(n);
    for (int v = 0; v < n; ++v) {
        const int deg = g.degree(v);
        inv_sqrt_deg(v) = deg > 0 ? 1.0 / std::sqrt(static_cast<double>(deg)) : 0.0;
    }
    Matrix lap = Matrix::Identity(n, n);
    for (const auto& e : g.edges()) {
        const double w = inv_sqrt_deg(e.u) * inv_sqrt_deg(e.v);
        lap(e.u, e.v) -= w;
        lap(e.v, e.u) -= w;
    }
    return lap;
}

Matrix combinatorial_laplacian(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 1)
        throw argument_error("combinatorial_laplacian: empty graph");
    Matrix lap = Matrix::Zero(n, n);
    for (int v = 0; v < n; ++v)
        lap(v, v) = static_cast<double>(g.degree(v));
    for (const auto& e : g.edges()) {
        lap(e.u, e.v) -= 1.0;
        lap(e.v, e.u) -= 1.0;
    }
    return lap;
}

Matrix laplacian_pe(const Graph& g, int d) {
    if (d < 1)
        throw argument_error("laplacian_pe: d must be positive");
    const int n = g.vertex_count();
    if (n < 1)
        throw argument_error("laplacian_pe: empty graph");

    const EigResult eig = eig_symmetric(combinatorial_laplacian(g));
    Matrix pe = Matrix::Zero(n, d);
    const int take = std::min(d, n - 1); // the trivial 0-eigenvector is never used
    for (int k = 0; k < take; ++k)
        pe.col(k) = eig.vectors.col(n - 1 - k).cwiseAbs();
    return pe;
}

BaselineResult baseline_accuracy(const AlignmentDataset& ds, int d, int workers) {
    BaselineResult result;
    result.per_sample.resize(ds.samples.size(), 0.0);
    parallel_for(ds.samples.size(), workers, [&](std::size_t i) {
        const auto& s = ds.samples[i];
        const Permutation predicted = decode(laplacian_pe(s.base, d), laplacian_pe(s.noisy, d));
        result.per_sample[i] = alignment_accuracy(predicted, s.truth);
    });
    double sum = 0.0;
    for (double a : result.per_sample)
        sum += a;
    result.mean = result.per_sample.empty() ? 0.0 : sum / static_cast<double>(result.per_sample.size());
    return result;
}

} // namespace galign
