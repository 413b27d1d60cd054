#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wlkit/errors.hpp"

namespace wlkit {

using Vertex = int;

/// Sentinel for the distance between vertices in different components.
inline constexpr int kInfiniteDistance = -1;

inline std::uint64_t pack_arc(int u, int v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

/// Immutable simple undirected graph on vertices 0..n-1, with optional
/// vertex colors and optional arc colors (loops plus both orientations of
/// every edge). Color ids are dense 0-based initial segments.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n) { build_adjacency({}); }

    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
        Graph g;
        g.n_ = n;
        for (auto& [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw Error(ErrorCode::kVertexOutOfRange, "edge endpoint out of range");
            if (u == v) throw Error(ErrorCode::kSelfLoop, "loops are not allowed");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        g.build_adjacency(edges);
        return g;
    }

    Graph with_vertex_colors(std::vector<int> colors) const {
        if (static_cast<int>(colors.size()) != n_)
            throw Error(ErrorCode::kInvalidArgument, "vertex color vector size mismatch");
        validate_initial_segment(colors);
        Graph g = *this;
        g.vertex_colors_ = std::move(colors);
        return g;
    }

    Graph with_arc_colors(std::unordered_map<std::uint64_t, int> colors) const {
        std::size_t expected = static_cast<std::size_t>(n_) + 2 * edges_.size();
        if (colors.size() != expected)
            throw Error(ErrorCode::kInvalidArgument,
                        "arc color domain must be all loops plus both arc orientations");
        std::vector<int> values;
        values.reserve(expected);
        for (int v = 0; v < n_; ++v) {
            auto it = colors.find(pack_arc(v, v));
            if (it == colors.end())
                throw Error(ErrorCode::kInvalidArgument, "missing loop color");
            values.push_back(it->second);
        }
        for (auto [u, v] : edges_) {
            auto a = colors.find(pack_arc(u, v));
            auto b = colors.find(pack_arc(v, u));
            if (a == colors.end() || b == colors.end())
                throw Error(ErrorCode::kInvalidArgument, "missing arc color");
            values.push_back(a->second);
            values.push_back(b->second);
        }
        validate_initial_segment(values);
        Graph g = *this;
        g.arc_colors_ = std::move(colors);
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int u, int v) const {
        return (adj_bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_vertex_colors() const { return vertex_colors_.has_value(); }
    int vertex_color(int v) const { return vertex_colors_ ? (*vertex_colors_)[v] : 0; }
    const std::optional<std::vector<int>>& vertex_colors() const { return vertex_colors_; }

    bool has_arc_colors() const { return arc_colors_.has_value(); }
    int arc_color(int u, int v) const { return arc_colors_->at(pack_arc(u, v)); }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_ &&
               vertex_colors_ == other.vertex_colors_ && arc_colors_ == other.arc_colors_;
    }
    bool operator!=(const Graph& other) const { return !(*this == other); }

private:
    static void validate_initial_segment(const std::vector<int>& colors) {
        if (colors.empty()) return;
        int max = 0;
        for (int c : colors) {
            if (c < 0) throw Error(ErrorCode::kInvalidArgument, "negative color id");
            max = std::max(max, c);
        }
        std::vector<bool> seen(static_cast<std::size_t>(max) + 1, false);
        for (int c : colors) seen[c] = true;
        for (bool b : seen)
            if (!b)
                throw Error(ErrorCode::kInvalidArgument,
                            "color ids must form a 0-based initial segment");
    }

    void build_adjacency(const std::vector<std::pair<int, int>>& edges) {
        edges_ = edges;
        adj_.assign(n_, {});
        words_ = static_cast<std::size_t>((n_ + 63) / 64);
        adj_bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
            adj_bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ull << (v & 63);
            adj_bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ull << (u & 63);
        }
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::uint64_t> adj_bits_;
    std::size_t words_ = 0;
    std::optional<std::vector<int>> vertex_colors_;
    std::optional<std::unordered_map<std::uint64_t, int>> arc_colors_;
};

/// BFS-exact all-pairs shortest paths; kInfiniteDistance across components.
class DistanceMatrix {
public:
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kInfiniteDistance) {}

    int at(int u, int v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
    void set(int u, int v, int value) { d_[static_cast<std::size_t>(u) * n_ + v] = value; }
    int order() const { return n_; }

private:
    int n_;
    std::vector<int> d_;
};

/// Multiset of distances from one vertex to all vertices (self included).
/// Canonical form: finite distances ascending, then kInfiniteDistance entries.
struct DistanceMultiset {
    int vertex = 0;
    std::vector<int> distances;

    bool operator==(const DistanceMultiset& o) const { return distances == o.distances; }
    bool operator!=(const DistanceMultiset& o) const { return !(*this == o); }
};

inline DistanceMatrix all_pairs_distances(const Graph& g) {
    int n = g.vertex_count();
    DistanceMatrix dm(n);
    std::vector<int> queue(n);
    for (int s = 0; s < n; ++s) {
        dm.set(s, s, 0);
        int head = 0, tail = 0;
        queue[tail++] = s;
        while (head < tail) {
            int u = queue[head++];
            int du = dm.at(s, u);
            for (int w : g.neighbors(u)) {
                if (dm.at(s, w) == kInfiniteDistance) {
                    dm.set(s, w, du + 1);
                    queue[tail++] = w;
                }
            }
        }
    }
    return dm;
}

inline DistanceMultiset distance_multiset(const Graph& g, int v) {
    int n = g.vertex_count();
    if (v < 0 || v >= n) throw Error(ErrorCode::kVertexOutOfRange, "vertex out of range");
    // single-source BFS
    std::vector<int> dist(n, kInfiniteDistance);
    std::vector<int> queue(n);
    int head = 0, tail = 0;
    dist[v] = 0;
    queue[tail++] = v;
    while (head < tail) {
        int u = queue[head++];
        for (int w : g.neighbors(u)) {
            if (dist[w] == kInfiniteDistance) {
                dist[w] = dist[u] + 1;
                queue[tail++] = w;
            }
        }
    }
    DistanceMultiset m;
    m.vertex = v;
    m.distances = dist;
    std::sort(m.distances.begin(), m.distances.end(), [](int a, int b) {
        if ((a == kInfiniteDistance) != (b == kInfiniteDistance)) return b == kInfiniteDistance;
        return a < b;
    });
    return m;
}

/// Partition into maximal connected vertex sets, each sorted, ordered by
/// smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> result;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(result.size());
        result.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            result[id].push_back(u);
            for (int w : g.neighbors(u)) {
                if (comp[w] == -1) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(result[id].begin(), result[id].end());
    }
    return result;
}

inline int component_count(const Graph& g) {
    return static_cast<int>(connected_components(g).size());
}

inline bool is_connected(const Graph& g) {
    return g.vertex_count() == 0 || component_count(g) == 1;
}

struct VertexRemoval {
    Graph graph;
    std::vector<int> old_of_new;  // new id -> old id
    std::vector<int> new_of_old;  // old id -> new id, -1 when removed
};

/// Induced subgraph on the complement of `removed`; colors are restricted
/// and re-densified. Re-indexing maps are explicit.
inline VertexRemoval remove_vertices(const Graph& g, const std::vector<int>& removed) {
    int n = g.vertex_count();
    std::vector<bool> gone(n, false);
    for (int v : removed) {
        if (v < 0 || v >= n) throw Error(ErrorCode::kVertexOutOfRange, "removed vertex out of range");
        gone[v] = true;
    }
    VertexRemoval r;
    r.new_of_old.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        if (!gone[v]) {
            r.new_of_old[v] = static_cast<int>(r.old_of_new.size());
            r.old_of_new.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (!gone[u] && !gone[v]) edges.emplace_back(r.new_of_old[u], r.new_of_old[v]);
    r.graph = Graph::from_edges(static_cast<int>(r.old_of_new.size()), std::move(edges));
    if (g.has_vertex_colors()) {
        std::vector<int> colors;
        colors.reserve(r.old_of_new.size());
        for (int old : r.old_of_new) colors.push_back(g.vertex_color(old));
        // re-densify to an initial segment, ranked by value order
        std::vector<int> sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int& c : colors)
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        r.graph = r.graph.with_vertex_colors(std::move(colors));
    }
    return r;
}

struct DisjointUnion {
    Graph graph;
    int offset;  // h's vertex v appears as v + offset
};

/// Disjoint union; h's vertices are shifted by g's order. Vertex colors are
/// kept only when both inputs carry them (ids are shared, not offset).
inline DisjointUnion disjoint_union(const Graph& g, const Graph& h) {
    int ng = g.vertex_count();
    std::vector<std::pair<int, int>> edges = g.edges();
    for (auto [u, v] : h.edges()) edges.emplace_back(u + ng, v + ng);
    DisjointUnion result{Graph::from_edges(ng + h.vertex_count(), std::move(edges)), ng};
    if (g.has_vertex_colors() && h.has_vertex_colors()) {
        std::vector<int> colors;
        colors.reserve(static_cast<std::size_t>(ng) + h.vertex_count());
        for (int v = 0; v < ng; ++v) colors.push_back(g.vertex_color(v));
        for (int v = 0; v < h.vertex_count(); ++v) colors.push_back(h.vertex_color(v));
        std::vector<int> sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int& c : colors)
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        result.graph = result.graph.with_vertex_colors(std::move(colors));
    }
    return result;
}

}  // namespace wlkit
