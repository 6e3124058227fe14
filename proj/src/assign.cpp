#include "galign/assign.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace galign {

Permutation hungarian(const Matrix& reward) {
    const auto n = static_cast<int>(reward.rows());
    if (reward.cols() != reward.rows())
        throw argument_error("hungarian: reward matrix must be square");
    if (n == 0)
        return Permutation::identity(0);
    if (!reward.allFinite())
        throw argument_error("hungarian: reward matrix has non-finite entries");

    // Classical potentials formulation on cost = -reward, 1-based with a
    // virtual column 0. p[j] is the row matched to column j.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
        std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = p[static_cast<std::size_t>(j0)];
            int j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)])
                    continue;
                const double cur =
                    -reward(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> map(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        map[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return Permutation(std::move(map));
}

double assignment_value(const Matrix& reward, const Permutation& p) {
    if (p.size() != reward.rows() || reward.rows() != reward.cols())
        throw argument_error("assignment_value: size mismatch");
    double value = 0.0;
    for (int i = 0; i < p.size(); ++i)
        value += reward(i, p(i));
    return value;
}

double alignment_accuracy(const Permutation& predicted, const Permutation& truth) {
    if (predicted.size() != truth.size())
        throw argument_error("alignment_accuracy: size mismatch");
    if (predicted.size() == 0)
        return 1.0;
    int correct = 0;
    for (int i = 0; i < predicted.size(); ++i)
        if (predicted(i) == truth(i))
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

Permutation decode(const Matrix& x, const Matrix& x_tilde) {
    if (x.rows() != x_tilde.rows() || x.cols() != x_tilde.cols())
        throw argument_error("decode: embedding shape mismatch");
    return hungarian(x * x_tilde.transpose());
}

} // namespace galign
