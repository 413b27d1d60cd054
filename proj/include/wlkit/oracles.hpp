#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wlkit/connectivity.hpp"
#include "wlkit/graph.hpp"
#include "wlkit/graph_io.hpp"
#include "wlkit/wl.hpp"

namespace wlkit {

/// Renumbers an arbitrary labelling into class ids by first occurrence, so
/// partitions from different sources can be compared directly.
template <typename T>
std::vector<int> canonical_class_ids(const std::vector<T>& labels) {
    std::map<T, int> ids;
    std::vector<int> out;
    out.reserve(labels.size());
    for (const T& x : labels) {
        auto [it, fresh] = ids.try_emplace(x, static_cast<int>(ids.size()));
        out.push_back(it->second);
    }
    return out;
}

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> witness;  // image of each g-vertex when isomorphic
};

namespace detail {

/// Plain 1-WL stable vertex classes, independent of the engine. Used for
/// corpus invariants and candidate pruning.
inline std::vector<int> wl1_classes(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> color(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = g.vertex_color(v);
    color = canonical_class_ids(color);
    std::size_t classes = 0;
    for (int c : color) classes = std::max(classes, static_cast<std::size_t>(c) + 1);
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> sig{color[static_cast<std::size_t>(v)]};
            for (int w : g.neighbors(v)) sig.push_back(color[static_cast<std::size_t>(w)]);
            std::sort(sig.begin() + 1, sig.end());
            auto [it, fresh] = ids.try_emplace(sig, static_cast<int>(ids.size()));
            next[static_cast<std::size_t>(v)] = it->second;
        }
        if (ids.size() == classes) return color;
        classes = ids.size();
        color = std::move(next);
    }
}

inline bool verify_isomorphism(const Graph& g, const Graph& h, const std::vector<int>& phi) {
    int n = g.vertex_count();
    std::vector<char> hit(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        int w = phi[static_cast<std::size_t>(v)];
        if (w < 0 || w >= n || hit[static_cast<std::size_t>(w)]) return false;
        hit[static_cast<std::size_t>(w)] = 1;
        if (g.vertex_color(v) != h.vertex_color(w)) return false;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v) != h.has_edge(phi[static_cast<std::size_t>(u)],
                                               phi[static_cast<std::size_t>(v)]))
                return false;
    return true;
}

}  // namespace detail

/// Exact colored-graph isomorphism by backtracking. WL-partition pruning is
/// an optimization only: with `wl_pruning` off, candidates are filtered by
/// the given vertex colors alone, and verdicts must not change. A found
/// witness is re-verified by direct edge and color recheck before returning.
inline IsoResult brute_isomorphic(const Graph& g, const Graph& h, bool wl_pruning = true) {
    if (g.vertex_count() != h.vertex_count()) return {};
    int n = g.vertex_count();
    if (n == 0) return {true, {}};
    {
        std::map<int, int> balance;
        for (int v = 0; v < n; ++v) {
            ++balance[g.vertex_color(v)];
            --balance[h.vertex_color(v)];
        }
        for (auto& [c, b] : balance)
            if (b != 0) return {};
        std::size_t largest = 0;
        std::map<int, std::size_t> sizes;
        for (int v = 0; v < n; ++v) largest = std::max(largest, ++sizes[g.vertex_color(v)]);
        if (n > 20 && (n > 64 || largest > 8))
            throw Error(ErrorCode::kResourceGuard,
                        "isomorphism search guarded: n <= 20, or n <= 64 with color classes <= 8");
    }
    if (g.edge_count() != h.edge_count()) return {};

    std::vector<std::vector<char>> candidate(static_cast<std::size_t>(n),
                                             std::vector<char>(static_cast<std::size_t>(n), 0));
    if (wl_pruning) {
        auto [cg, ch] = joint_stable_coloring(g, h, 1);
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                candidate[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
                    cg.colors[static_cast<std::size_t>(v)] == ch.colors[static_cast<std::size_t>(w)];
    } else {
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                candidate[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
                    g.vertex_color(v) == h.vertex_color(w);
    }
    for (int v = 0; v < n; ++v) {
        bool any = false;
        for (int w = 0; w < n && !any; ++w)
            any = candidate[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
        if (!any) return {};
    }

    // placement order: most-constrained first, then grow along adjacency
    std::vector<int> order;
    {
        std::vector<char> placed(static_cast<std::size_t>(n), 0);
        auto cand_count = [&](int v) {
            int c = 0;
            for (int w = 0; w < n; ++w)
                c += candidate[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
            return c;
        };
        for (int step = 0; step < n; ++step) {
            int best = -1, best_adj = -1, best_cand = 0;
            for (int v = 0; v < n; ++v) {
                if (placed[static_cast<std::size_t>(v)]) continue;
                int adj = 0;
                for (int w : g.neighbors(v)) adj += placed[static_cast<std::size_t>(w)];
                int cc = cand_count(v);
                if (best == -1 || adj > best_adj || (adj == best_adj && cc < best_cand)) {
                    best = v;
                    best_adj = adj;
                    best_cand = cc;
                }
            }
            order.push_back(best);
            placed[static_cast<std::size_t>(best)] = 1;
        }
    }

    std::vector<int> phi(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
        if (depth == order.size()) return true;
        int v = order[depth];
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] ||
                !candidate[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)])
                continue;
            bool ok = true;
            for (std::size_t d = 0; d < depth && ok; ++d) {
                int u = order[d];
                ok = g.has_edge(u, v) == h.has_edge(phi[static_cast<std::size_t>(u)], w);
            }
            if (!ok) continue;
            phi[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            if (place(depth + 1)) return true;
            used[static_cast<std::size_t>(w)] = 0;
            phi[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };
    if (!place(0)) return {};
    if (!detail::verify_isomorphism(g, h, phi))
        throw Error(ErrorCode::kTheoremViolation, "witness failed direct recheck");
    return {true, phi};
}

/// Naive 2-WL reference: repeated full-signature comparison over ordered
/// pairs, no shared table or canonical-id machinery. Returns class ids per
/// pair rank, numbered by first occurrence.
inline std::vector<int> naive_wl2(const Graph& g) {
    int n = g.vertex_count();
    if (n > 12) throw Error(ErrorCode::kResourceGuard, "naive_wl2 guarded to n <= 12");
    std::size_t count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    std::vector<std::vector<int>> sig(count);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            auto& s = sig[static_cast<std::size_t>(u) * n + v];
            s = {g.vertex_color(u), g.vertex_color(v), u == v ? 1 : 0, g.has_edge(u, v) ? 1 : 0};
            if (g.has_arc_colors()) {
                s.push_back(u == v ? g.arc_color(u, u) : (g.has_edge(u, v) ? 1 + g.arc_color(u, v) : 0));
                s.push_back(u == v ? g.arc_color(v, v) : (g.has_edge(v, u) ? 1 + g.arc_color(v, u) : 0));
            }
        }
    std::vector<int> color;
    {
        std::map<std::vector<int>, int> ids;
        color.resize(count);
        for (std::size_t t = 0; t < count; ++t) {
            auto [it, fresh] = ids.try_emplace(sig[t], static_cast<int>(ids.size()));
            color[t] = it->second;
        }
    }
    std::size_t classes = 0;
    for (int c : color) classes = std::max(classes, static_cast<std::size_t>(c) + 1);
    for (;;) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(count);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                std::vector<int> s{color[static_cast<std::size_t>(u) * n + v]};
                std::vector<std::pair<int, int>> ms;
                ms.reserve(static_cast<std::size_t>(n));
                for (int w = 0; w < n; ++w)
                    ms.emplace_back(color[static_cast<std::size_t>(w) * n + v],
                                    color[static_cast<std::size_t>(u) * n + w]);
                std::sort(ms.begin(), ms.end());
                for (auto [a, b] : ms) {
                    s.push_back(a);
                    s.push_back(b);
                }
                auto [it, fresh] = ids.try_emplace(s, static_cast<int>(ids.size()));
                next[static_cast<std::size_t>(u) * n + v] = it->second;
            }
        if (ids.size() == classes) return canonical_class_ids(color);
        classes = ids.size();
        color = std::move(next);
    }
}

enum class CorpusFilter { kAll, kConnected, kBiconnected };

struct CorpusSpec {
    int max_n = 0;
    CorpusFilter filter = CorpusFilter::kAll;
    std::string graph6_path;  // non-empty selects file streaming
};

namespace detail {

inline std::vector<long long> corpus_invariant(const Graph& g) {
    std::vector<long long> key{g.vertex_count(), g.edge_count()};
    std::vector<int> degrees;
    for (int v = 0; v < g.vertex_count(); ++v) degrees.push_back(g.degree(v));
    std::sort(degrees.begin(), degrees.end());
    for (int d : degrees) key.push_back(d);
    std::vector<int> classes = wl1_classes(g);
    std::map<int, int> sizes;
    for (int c : classes) ++sizes[c];
    std::vector<int> hist;
    for (auto& [c, s] : sizes) hist.push_back(s);
    std::sort(hist.begin(), hist.end());
    for (int s : hist) key.push_back(s);
    return key;
}

/// All isomorphism classes of graphs on exactly n vertices, built by vertex
/// extension from the classes one order below and deduplicated with
/// brute_isomorphic. Cached per order; the output sequence is deterministic.
inline const std::vector<Graph>& all_graphs_exactly(int n) {
    static std::vector<std::vector<Graph>> cache;  // cache[n]
    static const int kMaxBuiltin = 8;
    if (n < 1 || n > kMaxBuiltin)
        throw Error(ErrorCode::kResourceGuard, "builtin enumeration guarded to 1 <= n <= 8");
    if (static_cast<int>(cache.size()) > n && !cache[static_cast<std::size_t>(n)].empty())
        return cache[static_cast<std::size_t>(n)];
    if (cache.size() < static_cast<std::size_t>(kMaxBuiltin) + 1)
        cache.resize(static_cast<std::size_t>(kMaxBuiltin) + 1);
    if (n == 1) {
        cache[1] = {Graph(1)};
        return cache[1];
    }
    const std::vector<Graph>& parents = all_graphs_exactly(n - 1);
    std::map<std::vector<long long>, std::vector<std::size_t>> buckets;
    std::vector<Graph> reps;
    for (const Graph& parent : parents) {
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<std::pair<int, int>> edges = parent.edges();
            for (int w = 0; w < n - 1; ++w)
                if (mask & (1u << w)) edges.emplace_back(w, n - 1);
            Graph candidate = Graph::from_edges(n, std::move(edges));
            std::vector<long long> key = corpus_invariant(candidate);
            auto& bucket = buckets[key];
            bool dup = false;
            for (std::size_t idx : bucket) {
                if (brute_isomorphic(reps[idx], candidate).isomorphic) {
                    dup = true;
                    break;
                }
            }
            if (!dup) {
                bucket.push_back(reps.size());
                reps.push_back(std::move(candidate));
            }
        }
    }
    cache[static_cast<std::size_t>(n)] = std::move(reps);
    return cache[static_cast<std::size_t>(n)];
}

inline bool passes_filter(const Graph& g, CorpusFilter f) {
    switch (f) {
        case CorpusFilter::kAll: return true;
        case CorpusFilter::kConnected: return is_connected(g);
        case CorpusFilter::kBiconnected: return is_k_connected(g, 2);
    }
    return false;
}

}  // namespace detail

/// Builtin corpus: isomorphism-class representatives on exactly n vertices.
inline std::vector<Graph> corpus_exactly(int n, CorpusFilter filter) {
    std::vector<Graph> out;
    for (const Graph& g : detail::all_graphs_exactly(n))
        if (detail::passes_filter(g, filter)) out.push_back(g);
    return out;
}

/// Pull-based stream over a corpus: builtin enumeration at max_n, or
/// line-by-line graph6 parsing when a path is given.
class CorpusStream {
public:
    explicit CorpusStream(const CorpusSpec& spec) : spec_(spec) {
        if (spec.graph6_path.empty()) {
            builtin_ = corpus_exactly(spec.max_n, spec.filter);
        } else {
            file_.open(spec.graph6_path);
            if (!file_) throw Error(ErrorCode::kInvalidArgument, "cannot open corpus file");
        }
    }

    std::optional<Graph> next() {
        if (spec_.graph6_path.empty()) {
            if (cursor_ >= builtin_.size()) return std::nullopt;
            ++produced_;
            return builtin_[cursor_++];
        }
        std::string line;
        while (std::getline(file_, line)) {
            if (line.empty()) continue;
            Graph g = parse_graph6(line);
            if (!detail::passes_filter(g, spec_.filter)) continue;
            ++produced_;
            return g;
        }
        return std::nullopt;
    }

    long produced() const { return produced_; }

private:
    CorpusSpec spec_;
    std::vector<Graph> builtin_;
    std::size_t cursor_ = 0;
    std::ifstream file_;
    long produced_ = 0;
};

}  // namespace wlkit
