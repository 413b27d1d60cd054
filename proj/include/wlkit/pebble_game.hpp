#pragma once

#include <cstdint>
#include <vector>

#include "wlkit/graph.hpp"
#include "wlkit/wl.hpp"

namespace wlkit {

enum class Winner { kSpoiler, kDuplicator };

struct GamePosition {
    std::vector<int> left;   // pebbled vertices of G
    std::vector<int> right;  // pebbled vertices of H, same length
};

struct GameVerdict {
    Winner winner;
    GamePosition from;
};

/// Spoiler wins immediately at a position whose induced ordered colored
/// subgraphs mismatch: a vertex color differs, or an equality or adjacency
/// pattern differs.
inline bool position_is_losing_now(const Graph& g, const Graph& h, const GamePosition& p) {
    std::size_t l = p.left.size();
    if (p.right.size() != l)
        throw Error(ErrorCode::kInvalidArgument, "position tuples must have equal length");
    for (std::size_t i = 0; i < l; ++i)
        if (g.vertex_color(p.left[i]) != h.vertex_color(p.right[i])) return true;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j) {
            if ((p.left[i] == p.left[j]) != (p.right[i] == p.right[j])) return true;
            if (g.has_edge(p.left[i], p.left[j]) != h.has_edge(p.right[i], p.right[j])) return true;
        }
    return false;
}

/// Exhaustive solver for the bijective k-pebble game on tiny graphs.
/// Duplicator wins from a position iff her winning set survives the
/// greatest fixpoint: the position is not immediately losing, every pebble
/// removal stays winning, and some bijection keeps all placements winning.
/// The bijection step is decided via a perfect matching over the safe-pair
/// bipartite graph; an exhaustive bijection mode exists for cross-checks.
class PebbleGameSolver {
public:
    PebbleGameSolver(const Graph& g, const Graph& h, int pebbles, bool exhaustive_bijections = false)
        : g_(g), h_(h), k_(pebbles), exhaustive_(exhaustive_bijections) {
        if (g.vertex_count() != h.vertex_count())
            throw Error(ErrorCode::kOrderMismatch, "graphs must have the same order");
        if (pebbles < 1 || pebbles > 3) throw Error(ErrorCode::kResourceGuard, "pebbles must be in 1..3");
        if (g.vertex_count() > 7) throw Error(ErrorCode::kResourceGuard, "game solver handles n <= 7");
        n_ = g.vertex_count();
        offsets_.resize(static_cast<std::size_t>(k_) + 2);
        offsets_[0] = 0;
        std::size_t pw = 1;
        for (int l = 0; l <= k_; ++l) {
            offsets_[static_cast<std::size_t>(l) + 1] = offsets_[static_cast<std::size_t>(l)] + pw * pw;
            pw *= static_cast<std::size_t>(n_);
        }
        solve();
    }

    Winner winner_from(const GamePosition& p) const {
        int l = static_cast<int>(p.left.size());
        if (l > k_ || p.right.size() != p.left.size())
            throw Error(ErrorCode::kInvalidArgument, "bad start position");
        for (int v : p.left)
            if (v < 0 || v >= n_) throw Error(ErrorCode::kVertexOutOfRange, "position vertex");
        for (int v : p.right)
            if (v < 0 || v >= n_) throw Error(ErrorCode::kVertexOutOfRange, "position vertex");
        std::size_t gr = 0, hr = 0;
        for (int i = 0; i < l; ++i) {
            gr = gr * static_cast<std::size_t>(n_) + static_cast<std::size_t>(p.left[i]);
            hr = hr * static_cast<std::size_t>(n_) + static_cast<std::size_t>(p.right[i]);
        }
        return win_[index(l, gr, hr)] ? Winner::kDuplicator : Winner::kSpoiler;
    }

private:
    std::size_t index(int l, std::size_t g_rank, std::size_t h_rank) const {
        std::size_t pw = 1;
        for (int i = 0; i < l; ++i) pw *= static_cast<std::size_t>(n_);
        return offsets_[static_cast<std::size_t>(l)] + g_rank * pw + h_rank;
    }

    void decode(std::size_t rank, int l, int* out) const {
        for (int i = l - 1; i >= 0; --i) {
            out[i] = static_cast<int>(rank % static_cast<std::size_t>(n_));
            rank /= static_cast<std::size_t>(n_);
        }
    }

    bool immediate_loss(int l, const int* lv, const int* rv) const {
        for (int i = 0; i < l; ++i)
            if (g_.vertex_color(lv[i]) != h_.vertex_color(rv[i])) return true;
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) {
                if ((lv[i] == lv[j]) != (rv[i] == rv[j])) return true;
                if (g_.has_edge(lv[i], lv[j]) != h_.has_edge(rv[i], rv[j])) return true;
            }
        return false;
    }

    // Perfect matching on the safe-pair graph decides whether some bijection
    // f keeps every Spoiler placement inside the winning set.
    bool has_safe_bijection(const std::vector<std::vector<char>>& safe) const {
        std::vector<int> match_of_w(static_cast<std::size_t>(n_), -1);
        std::vector<char> visited(static_cast<std::size_t>(n_));
        std::function<bool(int)> augment = [&](int v) -> bool {
            for (int w = 0; w < n_; ++w) {
                if (!safe[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] ||
                    visited[static_cast<std::size_t>(w)])
                    continue;
                visited[static_cast<std::size_t>(w)] = 1;
                if (match_of_w[static_cast<std::size_t>(w)] == -1 ||
                    augment(match_of_w[static_cast<std::size_t>(w)])) {
                    match_of_w[static_cast<std::size_t>(w)] = v;
                    return true;
                }
            }
            return false;
        };
        for (int v = 0; v < n_; ++v) {
            std::fill(visited.begin(), visited.end(), 0);
            if (!augment(v)) return false;
        }
        return true;
    }

    bool exhaustive_safe_bijection(const std::vector<std::vector<char>>& safe) const {
        std::vector<int> perm(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) perm[static_cast<std::size_t>(i)] = i;
        do {
            bool ok = true;
            for (int v = 0; v < n_ && ok; ++v)
                ok = safe[static_cast<std::size_t>(v)][static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])];
            if (ok) return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

    void solve() {
        std::size_t total = offsets_.back();
        win_.assign(total, 1);
        // seed: immediate losses
        int lv[3], rv[3];
        for (int l = 0; l <= k_; ++l) {
            std::size_t pw = 1;
            for (int i = 0; i < l; ++i) pw *= static_cast<std::size_t>(n_);
            for (std::size_t gr = 0; gr < pw; ++gr) {
                decode(gr, l, lv);
                for (std::size_t hr = 0; hr < pw; ++hr) {
                    decode(hr, l, rv);
                    if (immediate_loss(l, lv, rv)) win_[index(l, gr, hr)] = 0;
                }
            }
        }
        // greatest fixpoint
        std::vector<std::vector<char>> safe(static_cast<std::size_t>(n_),
                                            std::vector<char>(static_cast<std::size_t>(n_)));
        bool changed = true;
        while (changed) {
            changed = false;
            for (int l = 0; l <= k_; ++l) {
                std::size_t pw = 1;
                for (int i = 0; i < l; ++i) pw *= static_cast<std::size_t>(n_);
                std::size_t pw_next = pw * static_cast<std::size_t>(n_);
                for (std::size_t gr = 0; gr < pw; ++gr) {
                    decode(gr, l, lv);
                    for (std::size_t hr = 0; hr < pw; ++hr) {
                        std::size_t idx = index(l, gr, hr);
                        if (!win_[idx]) continue;
                        decode(hr, l, rv);
                        bool ok = true;
                        // Spoiler removes a pair of pebbles
                        for (int i = 0; ok && i < l; ++i) {
                            std::size_t gr2 = 0, hr2 = 0;
                            for (int j = 0; j < l; ++j) {
                                if (j == i) continue;
                                gr2 = gr2 * static_cast<std::size_t>(n_) + static_cast<std::size_t>(lv[j]);
                                hr2 = hr2 * static_cast<std::size_t>(n_) + static_cast<std::size_t>(rv[j]);
                            }
                            if (!win_[index(l - 1, gr2, hr2)]) ok = false;
                        }
                        // Spoiler plays a new pair of pebbles
                        if (ok && l < k_) {
                            std::size_t child_base = offsets_[static_cast<std::size_t>(l) + 1] +
                                                     gr * static_cast<std::size_t>(n_) * pw_next +
                                                     hr * static_cast<std::size_t>(n_);
                            for (int v = 0; v < n_; ++v)
                                for (int w = 0; w < n_; ++w)
                                    safe[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
                                        win_[child_base + static_cast<std::size_t>(v) * pw_next +
                                             static_cast<std::size_t>(w)];
                            ok = exhaustive_ ? exhaustive_safe_bijection(safe) : has_safe_bijection(safe);
                        }
                        if (!ok) {
                            win_[idx] = 0;
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    const Graph& g_;
    const Graph& h_;
    int k_;
    int n_ = 0;
    bool exhaustive_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint8_t> win_;
};

/// Winner of BP_k(G,H) under optimal play from `start` (empty by default).
/// Unequal orders leave Duplicator without a bijection, so Spoiler wins.
inline GameVerdict solve_game(const Graph& g, const Graph& h, int pebbles,
                              const GamePosition& start = {}, bool exhaustive_bijections = false) {
    if (g.vertex_count() != h.vertex_count()) return {Winner::kSpoiler, start};
    PebbleGameSolver solver(g, h, pebbles, exhaustive_bijections);
    return {solver.winner_from(start), start};
}

/// G ~=_k H iff Duplicator wins BP_{k+1}(G,H).
inline bool verify_game_wl_correspondence(const Graph& g, const Graph& h, int k) {
    bool wl_equivalent = equivalent_k(g, h, k);
    bool duplicator = solve_game(g, h, k + 1).winner == Winner::kDuplicator;
    return wl_equivalent == duplicator;
}

}  // namespace wlkit
