#pragma once

#include <vector>

#include "wlkit/graph.hpp"

namespace wlkit::testing {

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(n, std::move(edges));
}

/// Star K_{1,n} with the center at vertex 0.
inline Graph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, std::move(edges));
}

/// Petersen graph as the Kneser graph K(5,2): 2-subsets of {0..4},
/// adjacent when disjoint.
inline Graph petersen() {
    std::vector<std::pair<int, int>> subsets;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) subsets.emplace_back(a, b);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < subsets.size(); ++i)
        for (std::size_t j = i + 1; j < subsets.size(); ++j) {
            auto [a, b] = subsets[i];
            auto [c, d] = subsets[j];
            if (a != c && a != d && b != c && b != d)
                edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    return Graph::from_edges(10, std::move(edges));
}

inline Graph two_triangles() {
    return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

/// Two triangles sharing one vertex (vertex 2).
inline Graph bowtie() {
    return Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

inline Graph complete_minus_edge(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(i == 0 && j == 1)) edges.emplace_back(i, j);
    return Graph::from_edges(n, std::move(edges));
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    Graph out = Graph::from_edges(g.vertex_count(), std::move(edges));
    if (g.has_vertex_colors()) {
        std::vector<int> colors(static_cast<std::size_t>(g.vertex_count()));
        for (int v = 0; v < g.vertex_count(); ++v)
            colors[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = g.vertex_color(v);
        out = out.with_vertex_colors(std::move(colors));
    }
    return out;
}

}  // namespace wlkit::testing
