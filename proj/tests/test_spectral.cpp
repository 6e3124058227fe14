#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "galign/generate.hpp"
#include "galign/spectral.hpp"

using namespace galign;

namespace {

Matrix random_symmetric(int n, Rng& rng) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double x = rng.next_double() * 2.0 - 1.0;
            m(i, j) = x;
            m(j, i) = x;
        }
    return m;
}

Matrix row_permute(const Matrix& m, const Permutation& p) {
    Matrix out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        out.row(p(i)) = m.row(i);
    return out;
}

} // namespace

TEST_CASE("eig_symmetric: diagonal matrix") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    const auto eig = eig_symmetric(m);
    CHECK(eig.values(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eig.values(2) == doctest::Approx(3.0).epsilon(1e-12));
    for (int k = 0; k < 3; ++k)
        CHECK(eig.vectors.col(k).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_symmetric: 2x2 swap matrix has eigenvalues -1, 1") {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    const auto eig = eig_symmetric(m);
    CHECK(eig.values(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig_symmetric: rejects non-symmetric and non-finite input") {
    Matrix m(2, 2);
    m << 0, 1, 2, 0;
    CHECK_THROWS_AS(eig_symmetric(m), argument_error);
    m << 0, 1, 1, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eig_symmetric(m), argument_error);
    CHECK_THROWS_AS(eig_symmetric(Matrix::Zero(2, 3)), argument_error);
}

TEST_CASE("eig_symmetric: reconstruction, residual, orthonormality on random 50x50") {
    Rng rng(17);
    const Matrix m = random_symmetric(50, rng);
    const auto eig = eig_symmetric(m);

    const Matrix reconstructed =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((reconstructed - m).norm() / m.norm() < 1e-8);

    const double frob = m.norm();
    for (int k = 0; k < 50; ++k) {
        const double residual = (m * eig.vectors.col(k) - eig.values(k) * eig.vectors.col(k)).norm();
        CHECK(residual <= 1e-9 * frob);
    }
    const Matrix gram = eig.vectors.transpose() * eig.vectors;
    CHECK((gram - Matrix::Identity(50, 50)).norm() < 1e-9);

    for (int k = 1; k < 50; ++k)
        CHECK(eig.values(k) >= eig.values(k - 1));
}

TEST_CASE("normalized laplacian: P3 spectrum is {0, 1, 2}") {
    const Graph p3(3, {{0, 1}, {1, 2}});
    const auto eig = eig_symmetric(normalized_laplacian(p3));
    CHECK(eig.values(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eig.values(2) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("normalized laplacian: eigenvalues lie in [0, 2]") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = erdos_renyi(40, 5.0, rng);
        const auto eig = eig_symmetric(normalized_laplacian(g));
        CHECK(eig.values(0) >= -1e-9);
        CHECK(eig.values(eig.values.size() - 1) <= 2.0 + 1e-9);
    }
}

TEST_CASE("normalized laplacian: isolated vertices get unit diagonal rows") {
    const Graph g(3, {{0, 1}});
    const Matrix lap = normalized_laplacian(g);
    CHECK(lap(2, 2) == 1.0);
    CHECK(lap(2, 0) == 0.0);
    CHECK(lap(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("combinatorial laplacian: P3 spectrum is {0, 1, 3}") {
    const Graph p3(3, {{0, 1}, {1, 2}});
    const auto eig = eig_symmetric(combinatorial_laplacian(p3));
    CHECK(eig.values(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eig.values(2) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("laplacian_pe: zero padding when n-1 < d") {
    const Graph p3(3, {{0, 1}, {1, 2}});
    const Matrix pe = laplacian_pe(p3, 64);
    REQUIRE(pe.rows() == 3);
    REQUIRE(pe.cols() == 64);
    CHECK(pe.rightCols(62).norm() == 0.0); // columns 2..63 are padding
    CHECK(pe.col(0).norm() > 0.9);
    CHECK_THROWS_AS(laplacian_pe(p3, 0), argument_error);
}

TEST_CASE("laplacian_pe: entries are nonnegative and columns unit norm") {
    Rng rng(29);
    const Graph g = erdos_renyi(20, 4.0, rng);
    const Matrix pe = laplacian_pe(g, 10);
    CHECK(pe.minCoeff() >= 0.0);
    for (int c = 0; c < 10; ++c)
        CHECK(pe.col(c).norm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("laplacian_pe: P3 hand-computed encoding") {
    // Combinatorial Laplacian of the 3-path has eigenpairs
    // 3: (1,-2,1)/sqrt(6) and 1: (1,0,-1)/sqrt(2); absolute values.
    const Graph p3(3, {{0, 1}, {1, 2}});
    const Matrix pe = laplacian_pe(p3, 2);
    const double s6 = 1.0 / std::sqrt(6.0), s2 = 1.0 / std::sqrt(2.0);
    CHECK(pe(0, 0) == doctest::Approx(s6).epsilon(1e-9));
    CHECK(pe(1, 0) == doctest::Approx(2.0 * s6).epsilon(1e-9));
    CHECK(pe(2, 0) == doctest::Approx(s6).epsilon(1e-9));
    CHECK(pe(0, 1) == doctest::Approx(s2).epsilon(1e-9));
    CHECK(pe(1, 1) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pe(2, 1) == doctest::Approx(s2).epsilon(1e-9));
}

TEST_CASE("laplacian_pe: self-alignment decodes to the identity") {
    // Needs pairwise-distinct encoding rows so the LAP optimum is unique;
    // automorphic vertices (e.g. the endpoints of P3) collapse to equal rows.
    Rng rng(83);
    int tested = 0;
    while (tested < 10) {
        const Graph g = erdos_renyi(10, 3.5, rng);
        const Matrix pe = laplacian_pe(g, 8);
        double min_gap = 1e9;
        for (int i = 0; i < pe.rows(); ++i)
            for (int j = i + 1; j < pe.rows(); ++j)
                min_gap = std::min(min_gap, (pe.row(i) - pe.row(j)).norm());
        if (min_gap < 1e-5)
            continue;
        ++tested;
        CHECK(decode(pe, pe) == Permutation::identity(10));
    }
}

namespace {

/// The equivariance statement needs a simple spectrum: inside a degenerate
/// eigenspace the solver's basis is arbitrary, so only the subspace (not
/// the individual columns) is equivariant.
bool spectrum_is_simple(const Graph& g) {
    const auto eig = eig_symmetric(combinatorial_laplacian(g));
    for (int k = 1; k < eig.values.size(); ++k)
        if (eig.values(k) - eig.values(k - 1) < 1e-5)
            return false;
    return true;
}

} // namespace

TEST_CASE("laplacian_pe: permutation equivariance on simple-spectrum graphs") {
    Rng rng(31);
    int tested = 0;
    while (tested < 15) {
        const Graph g = erdos_renyi(10, 3.5, rng);
        if (!spectrum_is_simple(g))
            continue;
        ++tested;
        const Matrix pe = laplacian_pe(g, 5);
        const Permutation p = Permutation::random(10, rng);
        const Matrix pe_permuted = laplacian_pe(permute(g, p), 5);
        CHECK((pe_permuted - row_permute(pe, p)).norm() < 1e-9);
    }
}

TEST_CASE("baseline_accuracy: eta=0 datasets decode perfectly") {
    // Generic bases (simple spectrum, unambiguous signs, distinct encoding
    // rows): the noisy copy is an exact relabeling, the encodings match, and
    // the LAP optimum is uniquely the planted permutation.
    std::vector<Graph> bases;
    Rng rng(37);
    while (bases.size() < 5) {
        const Graph g = erdos_renyi(12, 3.5, rng);
        if (!spectrum_is_simple(g))
            continue;
        const Matrix pe = laplacian_pe(g, 8);
        double min_row_gap = 1e9;
        for (int i = 0; i < pe.rows(); ++i)
            for (int j = i + 1; j < pe.rows(); ++j)
                min_row_gap = std::min(min_row_gap, (pe.row(i) - pe.row(j)).norm());
        if (min_row_gap > 1e-5)
            bases.push_back(g);
    }
    const auto ds = build_dataset(bases, {0.0, NoiseMode::add_remove}, 3, "val", "zero");
    const auto result = baseline_accuracy(ds, 8);
    CHECK(result.mean == doctest::Approx(1.0).epsilon(1e-12));
    for (double a : result.per_sample)
        CHECK(a == 1.0);
}

TEST_CASE("baseline_accuracy: worker count does not change results") {
    const auto bases = erdos_renyi_corpus(8, 30, 4.0, 41, "b/base");
    const auto ds = build_dataset(bases, {0.1, NoiseMode::add_remove}, 41, "val", "er30");
    const auto one = baseline_accuracy(ds, 16, 1);
    const auto four = baseline_accuracy(ds, 16, 4);
    CHECK(one.mean == four.mean);
    CHECK(one.per_sample == four.per_sample);
}
