#pragma once

#include <array>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "wlkit/graph.hpp"
#include "wlkit/wl.hpp"

namespace wlkit {

namespace detail {

/// Component count after deleting a vertex set, without materializing the
/// subgraph. `removed` flags must be pre-set; they are restored by caller.
inline int component_count_without(const Graph& g, const std::vector<char>& removed) {
    int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    int components = 0;
    for (int s = 0; s < n; ++s) {
        if (removed[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)]) continue;
        ++components;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(u)) {
                if (!removed[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

inline bool set_is_separator(const Graph& g, const std::vector<int>& vertices, int base_components) {
    std::vector<char> removed(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : vertices) removed[static_cast<std::size_t>(v)] = 1;
    return component_count_without(g, removed) > base_components;
}

}  // namespace detail

/// Cut vertices by explicit recount: v is a cut vertex iff G - v has more
/// components than G.
inline std::vector<int> cut_vertices(const Graph& g) {
    int base = component_count(g);
    std::vector<int> cuts;
    std::vector<char> removed(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        removed[static_cast<std::size_t>(v)] = 1;
        if (detail::component_count_without(g, removed) > base) cuts.push_back(v);
        removed[static_cast<std::size_t>(v)] = 0;
    }
    return cuts;
}

/// k-connected: connected with no separator of size <= k-1.
inline bool is_k_connected(const Graph& g, int k) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
    if (!is_connected(g)) return false;
    int n = g.vertex_count();
    int base = 1;
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<int> subset;
    std::function<bool(int, int)> any_separator = [&](int start, int size) -> bool {
        if (static_cast<int>(subset.size()) == size)
            return detail::component_count_without(g, removed) > base;
        for (int v = start; v < n; ++v) {
            removed[static_cast<std::size_t>(v)] = 1;
            subset.push_back(v);
            bool found = any_separator(v + 1, size);
            subset.pop_back();
            removed[static_cast<std::size_t>(v)] = 0;
            if (found) return true;
        }
        return false;
    };
    for (int size = 1; size <= k - 1; ++size)
        if (any_separator(0, size)) return false;
    return true;
}

inline bool is_biconnected(const Graph& g) { return is_k_connected(g, 2); }
inline bool is_triconnected(const Graph& g) { return is_k_connected(g, 3); }

struct SeparatorReport {
    int k = 0;
    std::vector<std::vector<int>> separators;  // sorted k-subsets, lexicographic
};

/// All k-subsets S with more components in G - S than in G, each verified
/// by explicit recount.
inline SeparatorReport enumerate_separators(const Graph& g, int k) {
    if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
    int n = g.vertex_count();
    if (n > 64 || k > 3)
        throw Error(ErrorCode::kResourceGuard, "separator enumeration guarded to n <= 64, k <= 3");
    SeparatorReport report;
    report.k = k;
    int base = component_count(g);
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<int> subset;
    std::function<void(int)> recurse = [&](int start) {
        if (static_cast<int>(subset.size()) == k) {
            if (detail::component_count_without(g, removed) > base) report.separators.push_back(subset);
            return;
        }
        for (int v = start; v < n; ++v) {
            removed[static_cast<std::size_t>(v)] = 1;
            subset.push_back(v);
            recurse(v + 1);
            subset.pop_back();
            removed[static_cast<std::size_t>(v)] = 0;
        }
    };
    recurse(0);
    return report;
}

/// s_G: size of the component of `anchor` in G - removed; 0 when the anchor
/// is itself removed.
inline int component_size_after_removal(const Graph& g, const std::vector<int>& removed, int anchor) {
    int n = g.vertex_count();
    if (anchor < 0 || anchor >= n) throw Error(ErrorCode::kVertexOutOfRange, "anchor out of range");
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    for (int v : removed) {
        if (v < 0 || v >= n) throw Error(ErrorCode::kVertexOutOfRange, "removed vertex out of range");
        gone[static_cast<std::size_t>(v)] = 1;
    }
    if (gone[static_cast<std::size_t>(anchor)]) return 0;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{anchor};
    seen[static_cast<std::size_t>(anchor)] = 1;
    int size = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++size;
        for (int w : g.neighbors(u)) {
            if (!gone[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return size;
}

struct AvoidGraphResult {
    Graph graph;
    std::vector<int> old_of_new;  // vertex re-indexing map into the source graph
};

/// G[[S]]: vertices are those whose stable diagonal color lies in S; an
/// edge uv exists iff some path from u to v has all interior vertices
/// colored outside S (endpoints are unrestricted, so plain edges qualify).
inline AvoidGraphResult avoid_graph(const Graph& g, const TupleColoring& stable2,
                                    const std::set<Color>& s) {
    if (stable2.k < 2 || stable2.n != g.vertex_count())
        throw Error(ErrorCode::kInvalidArgument, "need a stable 2-WL coloring of g");
    int n = g.vertex_count();
    std::set<Color> present;
    for (int v = 0; v < n; ++v) present.insert(diagonal_color(stable2, v));
    for (Color c : s)
        if (!present.count(c))
            throw Error(ErrorCode::kColorNotDiagonal, "color is not a diagonal color of g");

    AvoidGraphResult result;
    std::vector<int> new_of_old(static_cast<std::size_t>(n), -1);
    std::vector<char> in_s(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (s.count(diagonal_color(stable2, v))) {
            in_s[static_cast<std::size_t>(v)] = 1;
            new_of_old[static_cast<std::size_t>(v)] = static_cast<int>(result.old_of_new.size());
            result.old_of_new.push_back(v);
        }
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (int u : result.old_of_new) {
        // Search expands only through avoidable interiors; S-colored
        // vertices are absorbing endpoints and are never pushed.
        std::fill(seen.begin(), seen.end(), 0);
        seen[static_cast<std::size_t>(u)] = 1;
        stack.assign(1, u);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(x)) {
                if (seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = 1;
                if (in_s[static_cast<std::size_t>(w)]) {
                    if (w > u) edges.emplace_back(new_of_old[static_cast<std::size_t>(u)],
                                                  new_of_old[static_cast<std::size_t>(w)]);
                } else {
                    stack.push_back(w);
                }
            }
        }
    }
    result.graph = Graph::from_edges(static_cast<int>(result.old_of_new.size()), std::move(edges));
    return result;
}

/// Within-graph form of separator-color soundness: no stable color class
/// may contain both a separator tuple and a non-separator tuple. The k = 2
/// form uses pair colors; k = 3 uses triple colors of stable 3-WL.
inline bool separator_color_soundness(const Graph& g, int k = 2) {
    if (!is_connected(g)) throw Error(ErrorCode::kInvalidArgument, "graph must be connected");
    if (k != 2 && k != 3) throw Error(ErrorCode::kInvalidArgument, "k must be 2 or 3");
    int n = g.vertex_count();
    if (k == 3 && n > 24) throw Error(ErrorCode::kResourceGuard, "k=3 soundness guarded to n <= 24");
    if (n > 64) throw Error(ErrorCode::kResourceGuard, "guarded to n <= 64");
    SharedColorTable table;
    TupleColoring stable = stable_coloring(g, k, table);
    int base = component_count(g);
    std::map<Color, std::pair<bool, bool>> status;  // color -> (has separator, has non-separator)
    std::vector<int> tuple(static_cast<std::size_t>(k));
    std::size_t count = stable.tuple_count();
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t rest = t;
        for (int i = k - 1; i >= 0; --i) {
            tuple[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        bool sep = detail::set_is_separator(g, tuple, base);
        auto& entry = status[stable.colors[t]];
        (sep ? entry.first : entry.second) = true;
    }
    for (auto& [color, flags] : status)
        if (flags.first && flags.second) return false;
    return true;
}

/// Within-graph form of the component-size theorem: triples whose pairwise
/// stable pair colors agree (diagonals included) must have equal s_G.
inline bool component_size_color_soundness(const Graph& g) {
    if (!is_k_connected(g, 2)) throw Error(ErrorCode::kInvalidArgument, "graph must be 2-connected");
    int n = g.vertex_count();
    if (n > 32) throw Error(ErrorCode::kResourceGuard, "guarded to n <= 32");
    SharedColorTable table;
    TupleColoring stable = stable_coloring(g, 2, table);
    auto pair_color = [&](int u, int v) {
        return stable.colors[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                             static_cast<std::size_t>(v)];
    };
    std::map<std::array<Color, 9>, int> seen;
    for (int v1 = 0; v1 < n; ++v1)
        for (int v2 = 0; v2 < n; ++v2)
            for (int v3 = 0; v3 < n; ++v3) {
                std::array<Color, 9> key{pair_color(v1, v1), pair_color(v1, v2), pair_color(v1, v3),
                                         pair_color(v2, v1), pair_color(v2, v2), pair_color(v2, v3),
                                         pair_color(v3, v1), pair_color(v3, v2), pair_color(v3, v3)};
                int s = component_size_after_removal(g, {v1, v2}, v3);
                auto [it, fresh] = seen.try_emplace(key, s);
                if (!fresh && it->second != s) return false;
            }
    return true;
}

}  // namespace wlkit
