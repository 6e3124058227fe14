#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "galign/errors.hpp"
#include "galign/rng.hpp"

namespace galign {

/// Undirected edge with the canonical orientation u < v.
struct Edge {
    int u = 0;
    int v = 0;
    auto operator<=>(const Edge&) const = default;
};

/// Immutable simple undirected graph in compressed adjacency form.
/// Invariants: no self-loops, no duplicates, edges sorted lexicographically
/// with u < v, endpoints in [0, n), symmetric adjacency.
class Graph {
public:
    Graph() = default;

    /// Edges may arrive in any orientation/order; they are canonicalized.
    /// Throws argument_error on self-loops, duplicates or range violations.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    std::span<const Edge> edges() const { return edges_; }
    std::span<const int> neighbors(int v) const;
    int degree(int v) const;
    bool has_edge(int u, int v) const;

    bool operator==(const Graph&) const = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<int> adj_offsets_; // size n_+1
    std::vector<int> adj_;         // per-vertex sorted neighbor lists
};

/// Bijection on {0..n-1}; map[i] = pi(i).
class Permutation {
public:
    Permutation() = default;

    /// Throws argument_error unless map is a bijection on [0, n).
    explicit Permutation(std::vector<int> map);

    static Permutation identity(int n);

    /// Uniform over S_n (Fisher-Yates).
    static Permutation random(int n, Rng& rng);

    int size() const { return static_cast<int>(map_.size()); }
    int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
    std::span<const int> map() const { return map_; }

    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> map_;
};

/// compose(f, g)(i) = f(g(i)).
Permutation compose(const Permutation& f, const Permutation& g);

/// Relabels g: vertex i of g becomes vertex p(i) of the result, so
/// (p(u), p(v)) is an edge of the result iff (u, v) is an edge of g.
Graph permute(const Graph& g, const Permutation& p);

/// Ordered-pair edge overlap: sum over (i, j) of A_ij * A~_{p(i), p(j)}.
/// A matched undirected edge contributes 2. Always even.
long long overlap(const Graph& g, const Graph& h, const Permutation& p);

struct AlignmentSolution {
    Permutation perm;
    long long overlap = 0;
};

/// Exhaustive alignment oracle; refuses n > 10. Ties break toward the
/// lexicographically smallest permutation map.
AlignmentSolution solve_alignment_bruteforce(const Graph& g, const Graph& h);

} // namespace galign
