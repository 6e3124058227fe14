#include "galign/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace galign {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0)
        throw argument_error("Graph: negative vertex count");
    for (auto& e : edges_) {
        if (e.u == e.v)
            throw argument_error("Graph: self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n_)
            throw argument_error("Graph: edge (" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + ") out of range for n=" +
                                 std::to_string(n_));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw argument_error("Graph: duplicate edge");

    adj_offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const auto& e : edges_) {
        ++adj_offsets_[static_cast<std::size_t>(e.u) + 1];
        ++adj_offsets_[static_cast<std::size_t>(e.v) + 1];
    }
    std::partial_sum(adj_offsets_.begin(), adj_offsets_.end(), adj_offsets_.begin());
    adj_.resize(static_cast<std::size_t>(adj_offsets_.back()));
    std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
    for (const auto& e : edges_) {
        adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = e.v;
        adj_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] = e.u;
    }
    for (int v = 0; v < n_; ++v) {
        auto begin = adj_.begin() + adj_offsets_[static_cast<std::size_t>(v)];
        auto end = adj_.begin() + adj_offsets_[static_cast<std::size_t>(v) + 1];
        std::sort(begin, end);
    }
}

std::span<const int> Graph::neighbors(int v) const {
    if (v < 0 || v >= n_)
        throw argument_error("Graph::neighbors: vertex out of range");
    const auto begin = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(v)]);
    const auto end = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(v) + 1]);
    return {adj_.data() + begin, end - begin};
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
        return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
    std::vector<char> seen(map_.size(), 0);
    for (int x : map_) {
        if (x < 0 || static_cast<std::size_t>(x) >= map_.size() || seen[static_cast<std::size_t>(x)])
            throw argument_error("Permutation: map is not a bijection on [0, n)");
        seen[static_cast<std::size_t>(x)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

Permutation Permutation::random(int n, Rng& rng) {
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(rng.next_int(i + 1))]);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i)
        inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.size() != g.size())
        throw argument_error("compose: size mismatch");
    std::vector<int> m(static_cast<std::size_t>(f.size()));
    for (int i = 0; i < g.size(); ++i)
        m[static_cast<std::size_t>(i)] = f(g(i));
    return Permutation(std::move(m));
}

Graph permute(const Graph& g, const Permutation& p) {
    if (p.size() != g.vertex_count())
        throw argument_error("permute: permutation size does not match vertex count");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()));
    for (const auto& e : g.edges())
        edges.push_back({p(e.u), p(e.v)});
    return Graph(g.vertex_count(), std::move(edges));
}

long long overlap(const Graph& g, const Graph& h, const Permutation& p) {
    if (g.vertex_count() != h.vertex_count() || p.size() != g.vertex_count())
        throw argument_error("overlap: size mismatch");
    long long matched = 0;
    for (const auto& e : g.edges())
        if (h.has_edge(p(e.u), p(e.v)))
            ++matched;
    return 2 * matched;
}

AlignmentSolution solve_alignment_bruteforce(const Graph& g, const Graph& h) {
    const int n = g.vertex_count();
    if (h.vertex_count() != n)
        throw argument_error("solve_alignment_bruteforce: size mismatch");
    if (n > 10)
        throw argument_error("solve_alignment_bruteforce: n=" + std::to_string(n) +
                             " exceeds the n<=10 guard");
    std::vector<int> map(static_cast<std::size_t>(n));
    std::iota(map.begin(), map.end(), 0);
    std::vector<int> best = map;
    long long best_overlap = -1;
    do {
        const Permutation p{std::vector<int>(map)};
        const long long val = overlap(g, h, p);
        if (val > best_overlap) { // strict: keeps the lexicographically smallest
            best_overlap = val;
            best = map;
        }
    } while (std::next_permutation(map.begin(), map.end()));
    return {Permutation(std::move(best)), best_overlap};
}

} // namespace galign
