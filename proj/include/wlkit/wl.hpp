#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <thread>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "wlkit/graph.hpp"

namespace wlkit {

using Color = std::uint32_t;

/// Assigns dense color ids to canonical signatures. One table can serve
/// several graphs at once, which is what makes stable colors comparable
/// across graphs. Ids are handed out in ascending lexicographic order of
/// the new signatures of each round, so runs are reproducible regardless
/// of thread schedule.
class SharedColorTable {
public:
    SharedColorTable() : epoch_(next_epoch()) {}

    std::uint64_t epoch() const { return epoch_; }
    Color color_count() const { return next_id_; }
    std::uint32_t rounds_committed() const { return round_; }

    struct LogEntry {
        std::uint32_t round;
        std::uint64_t hash;
        std::uint32_t length;
        bool operator==(const LogEntry& o) const {
            return round == o.round && hash == o.hash && length == o.length;
        }
    };
    /// One entry per assigned id, in id order. Used by determinism audits.
    const std::vector<LogEntry>& insertion_log() const { return log_; }

    // Engine side: assign ids for one round's new signatures (already in
    // final id order). Returns the first id of the block.
    Color commit_round(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& sigs) {
        Color first = next_id_;
        for (auto [hash, len] : sigs) log_.push_back({round_, hash, len});
        next_id_ += static_cast<Color>(sigs.size());
        ++round_;
        return first;
    }

private:
    static std::uint64_t next_epoch() {
        static std::atomic<std::uint64_t> counter{0};
        return ++counter;
    }

    std::uint64_t epoch_;
    Color next_id_ = 0;
    std::uint32_t round_ = 0;
    std::vector<LogEntry> log_;
};

/// Coloring of all vertex k-tuples of one graph (all of V for k = 1).
/// Tuples are indexed by mixed-radix rank over [n]^k, most significant
/// digit first; colors live in a flat array.
struct TupleColoring {
    int k = 0;
    int n = 0;
    std::uint64_t table_epoch = 0;
    int rounds = 0;  // refinement rounds applied on top of the initial coloring
    std::vector<Color> colors;
    std::size_t class_count = 0;

    std::size_t tuple_count() const { return colors.size(); }
};

namespace detail {

inline constexpr Color kInitTag = 0xFFFFFFFFu;

inline std::uint64_t hash_colors(const Color* p, std::size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return h;
}

/// Per-round signature interner. Signatures from different rounds can never
/// collide byte-for-byte (refinement signatures start with an old color id,
/// and id ranges of distinct rounds are disjoint), so a fresh pool per round
/// keeps the table injective while bounding memory by one round's classes.
class RoundPool {
public:
    std::uint32_t intern(const Color* p, std::uint32_t len) {
        std::uint64_t h = hash_colors(p, len);
        auto [it, fresh] = buckets_.try_emplace(h, 0);
        if (!fresh) {
            for (std::uint32_t idx = it->second; idx != kNone; idx = chain_[idx]) {
                const Entry& e = entries_[idx];
                if (e.len == len && std::equal(p, p + len, arena_.data() + e.off)) return idx;
            }
        }
        std::uint32_t idx = static_cast<std::uint32_t>(entries_.size());
        entries_.push_back({h, arena_.size(), len});
        arena_.insert(arena_.end(), p, p + len);
        chain_.push_back(fresh ? kNone : it->second);
        it->second = idx;
        return idx;
    }

    std::size_t size() const { return entries_.size(); }

    /// Final id order: lexicographic over signature contents.
    std::vector<std::uint32_t> sorted_order() const {
        std::vector<std::uint32_t> order(entries_.size());
        for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            const Entry& ea = entries_[a];
            const Entry& eb = entries_[b];
            return std::lexicographical_compare(arena_.data() + ea.off, arena_.data() + ea.off + ea.len,
                                                arena_.data() + eb.off, arena_.data() + eb.off + eb.len);
        });
        return order;
    }

    std::pair<std::uint64_t, std::uint32_t> hash_and_length(std::uint32_t idx) const {
        return {entries_[idx].hash, entries_[idx].len};
    }

private:
    static constexpr std::uint32_t kNone = 0xFFFFFFFFu;
    struct Entry {
        std::uint64_t hash;
        std::size_t off;
        std::uint32_t len;
    };
    std::vector<Color> arena_;
    std::vector<Entry> entries_;
    std::vector<std::uint32_t> chain_;
    std::unordered_map<std::uint64_t, std::uint32_t> buckets_;
};

inline std::size_t checked_tuple_count(int n, int k) {
    std::size_t count = 1;
    for (int i = 0; i < k; ++i) {
        if (n > 0 && count > (std::size_t{1} << 26) / static_cast<std::size_t>(n))
            throw Error(ErrorCode::kResourceGuard, "n^k tuple space too large");
        count *= static_cast<std::size_t>(n);
    }
    return count;
}

inline void parallel_chunks(std::size_t begin, std::size_t end, int threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    std::size_t total = end - begin;
    if (threads <= 1 || total < 4096) {
        fn(begin, end);
        return;
    }
    std::size_t per = (total + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = begin + per * static_cast<std::size_t>(t);
        std::size_t hi = std::min(end, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([=, &fn] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

/// Fills the initial signature of every tuple of `g` into `sig` (fixed
/// stride). Layout is graph-independent so that signatures are comparable
/// across graphs sharing a table.
inline void build_initial_signatures(const Graph& g, int k, std::vector<Color>& buf,
                                     std::size_t& stride, int threads) {
    int n = g.vertex_count();
    std::size_t count = checked_tuple_count(n, k);
    bool arc = g.has_arc_colors();
    if (k == 1) {
        stride = arc ? 3 : 2;
        buf.assign(count * stride, 0);
        for (int v = 0; v < n; ++v) {
            Color* s = buf.data() + static_cast<std::size_t>(v) * stride;
            s[0] = kInitTag;
            s[1] = static_cast<Color>(g.vertex_color(v));
            if (arc) s[2] = static_cast<Color>(g.arc_color(v, v));
        }
        return;
    }
    std::size_t pairs = static_cast<std::size_t>(k) * (k - 1) / 2;
    stride = 1 + static_cast<std::size_t>(k) + 2 * pairs + (arc ? static_cast<std::size_t>(k) + 2 * pairs : 0);
    buf.assign(count * stride, 0);
    parallel_chunks(0, count, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<int> digits(static_cast<std::size_t>(k));
        std::size_t rest = lo;
        for (int i = k - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        for (std::size_t t = lo; t < hi; ++t) {
            Color* s = buf.data() + t * stride;
            std::size_t w = 0;
            s[w++] = kInitTag;
            for (int i = 0; i < k; ++i) s[w++] = static_cast<Color>(g.vertex_color(digits[i]));
            if (arc)
                for (int i = 0; i < k; ++i)
                    s[w++] = static_cast<Color>(g.arc_color(digits[i], digits[i]));
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j) s[w++] = digits[i] == digits[j] ? 1 : 0;
            // adjacency stored inverted so that edge classes sort first
            for (int i = 0; i < k; ++i)
                for (int j = i + 1; j < k; ++j)
                    s[w++] = g.has_edge(digits[i], digits[j]) ? 0 : 1;
            if (arc) {
                auto code = [&](int u, int v) -> Color {
                    if (u == v) return static_cast<Color>(1 + g.arc_color(u, u));
                    if (g.has_edge(u, v)) return static_cast<Color>(1 + g.arc_color(u, v));
                    return 0;
                };
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j) {
                        s[w++] = code(digits[i], digits[j]);
                        s[w++] = code(digits[j], digits[i]);
                    }
            }
            // odometer step
            for (int i = k - 1; i >= 0; --i) {
                if (++digits[static_cast<std::size_t>(i)] < n) break;
                digits[static_cast<std::size_t>(i)] = 0;
            }
        }
    });
}

/// One refinement round worth of signatures for k >= 2: per tuple, the old
/// color followed by the lexicographically sorted multiset of substitution
/// color vectors over all w in V.
inline void build_refinement_signatures(const Graph& g, const TupleColoring& c,
                                        std::vector<Color>& buf, std::size_t& stride,
                                        int threads) {
    int n = g.vertex_count();
    int k = c.k;
    std::size_t count = c.tuple_count();
    stride = 1 + static_cast<std::size_t>(n) * static_cast<std::size_t>(k);
    buf.assign(count * stride, 0);
    std::vector<std::size_t> pow(static_cast<std::size_t>(k));
    pow[static_cast<std::size_t>(k - 1)] = 1;
    for (int i = k - 2; i >= 0; --i)
        pow[static_cast<std::size_t>(i)] = pow[static_cast<std::size_t>(i + 1)] * static_cast<std::size_t>(n);
    const Color* col = c.colors.data();

    parallel_chunks(0, count, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<int> digits(static_cast<std::size_t>(k));
        std::size_t rest = lo;
        for (int i = k - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(n));
            rest /= static_cast<std::size_t>(n);
        }
        std::vector<std::uint64_t> packed2(static_cast<std::size_t>(n));
        std::vector<unsigned __int128> packed3(static_cast<std::size_t>(n));
        std::vector<Color> generic(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
        std::vector<int> order(static_cast<std::size_t>(n));
        for (std::size_t t = lo; t < hi; ++t) {
            Color* s = buf.data() + t * stride;
            s[0] = col[t];
            if (k == 2) {
                std::size_t base1 = t - static_cast<std::size_t>(digits[0]) * pow[0];
                std::size_t base2 = t - static_cast<std::size_t>(digits[1]);
                for (int w = 0; w < n; ++w)
                    packed2[static_cast<std::size_t>(w)] =
                        (static_cast<std::uint64_t>(col[base1 + static_cast<std::size_t>(w) * pow[0]]) << 32) |
                        col[base2 + static_cast<std::size_t>(w)];
                std::sort(packed2.begin(), packed2.end());
                for (int w = 0; w < n; ++w) {
                    s[1 + 2 * w] = static_cast<Color>(packed2[static_cast<std::size_t>(w)] >> 32);
                    s[2 + 2 * w] = static_cast<Color>(packed2[static_cast<std::size_t>(w)]);
                }
            } else if (k == 3) {
                std::size_t base1 = t - static_cast<std::size_t>(digits[0]) * pow[0];
                std::size_t base2 = t - static_cast<std::size_t>(digits[1]) * pow[1];
                std::size_t base3 = t - static_cast<std::size_t>(digits[2]);
                for (int w = 0; w < n; ++w) {
                    unsigned __int128 p = col[base1 + static_cast<std::size_t>(w) * pow[0]];
                    p = (p << 32) | col[base2 + static_cast<std::size_t>(w) * pow[1]];
                    p = (p << 32) | col[base3 + static_cast<std::size_t>(w)];
                    packed3[static_cast<std::size_t>(w)] = p;
                }
                std::sort(packed3.begin(), packed3.end());
                for (int w = 0; w < n; ++w) {
                    unsigned __int128 p = packed3[static_cast<std::size_t>(w)];
                    s[1 + 3 * w] = static_cast<Color>(p >> 64);
                    s[2 + 3 * w] = static_cast<Color>(p >> 32);
                    s[3 + 3 * w] = static_cast<Color>(p);
                }
            } else {
                for (int w = 0; w < n; ++w)
                    for (int i = 0; i < k; ++i)
                        generic[static_cast<std::size_t>(w) * k + i] =
                            col[t + (static_cast<std::size_t>(w) - static_cast<std::size_t>(digits[i])) * pow[static_cast<std::size_t>(i)]];
                for (int w = 0; w < n; ++w) order[static_cast<std::size_t>(w)] = w;
                std::sort(order.begin(), order.end(), [&](int a, int b) {
                    const Color* pa = generic.data() + static_cast<std::size_t>(a) * k;
                    const Color* pb = generic.data() + static_cast<std::size_t>(b) * k;
                    return std::lexicographical_compare(pa, pa + k, pb, pb + k);
                });
                for (int w = 0; w < n; ++w) {
                    const Color* src = generic.data() + static_cast<std::size_t>(order[w]) * k;
                    std::copy(src, src + k, s + 1 + static_cast<std::size_t>(w) * k);
                }
            }
            for (int i = k - 1; i >= 0; --i) {
                if (++digits[static_cast<std::size_t>(i)] < n) break;
                digits[static_cast<std::size_t>(i)] = 0;
            }
        }
    });
}

struct RoundOutcome {
    std::vector<TupleColoring> colorings;
    bool any_refined = false;
};

/// Runs one lockstep round (or the initial round) over several graphs
/// against one table. Every tuple of every graph is re-colored; new ids are
/// assigned per sorted signature order across all graphs at once.
inline RoundOutcome run_round(const std::vector<const Graph*>& graphs,
                              const std::vector<TupleColoring>* previous, int k,
                              SharedColorTable& table, int threads) {
    RoundPool pool;
    std::vector<std::vector<std::uint32_t>> pending(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = *graphs[gi];
        std::vector<Color> buf;
        std::size_t stride = 0;
        if (previous == nullptr) {
            build_initial_signatures(g, k, buf, stride, threads);
            std::size_t count = checked_tuple_count(g.vertex_count(), k);
            pending[gi].resize(count);
            for (std::size_t t = 0; t < count; ++t)
                pending[gi][t] = pool.intern(buf.data() + t * stride, static_cast<std::uint32_t>(stride));
        } else if (k == 1) {
            const TupleColoring& c = (*previous)[gi];
            int n = g.vertex_count();
            pending[gi].resize(static_cast<std::size_t>(n));
            std::vector<Color> sig;
            for (int v = 0; v < n; ++v) {
                sig.clear();
                sig.push_back(c.colors[static_cast<std::size_t>(v)]);
                for (int w : g.neighbors(v)) sig.push_back(c.colors[static_cast<std::size_t>(w)]);
                std::sort(sig.begin() + 1, sig.end());
                pending[gi][v] = pool.intern(sig.data(), static_cast<std::uint32_t>(sig.size()));
            }
        } else {
            const TupleColoring& c = (*previous)[gi];
            std::vector<Color> buf2;
            std::size_t stride2 = 0;
            build_refinement_signatures(g, c, buf2, stride2, threads);
            std::size_t count = c.tuple_count();
            pending[gi].resize(count);
            for (std::size_t t = 0; t < count; ++t)
                pending[gi][t] = pool.intern(buf2.data() + t * stride2, static_cast<std::uint32_t>(stride2));
        }
    }

    std::vector<std::uint32_t> order = pool.sorted_order();
    std::vector<Color> id_of_pending(pool.size());
    std::vector<std::pair<std::uint64_t, std::uint32_t>> log;
    log.reserve(order.size());
    for (std::uint32_t rank = 0; rank < order.size(); ++rank) log.push_back(pool.hash_and_length(order[rank]));
    Color first = table.commit_round(log);
    for (std::uint32_t rank = 0; rank < order.size(); ++rank)
        id_of_pending[order[rank]] = first + rank;

    RoundOutcome out;
    out.colorings.resize(graphs.size());
    std::vector<char> used(pool.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        TupleColoring& c = out.colorings[gi];
        c.k = k;
        c.n = graphs[gi]->vertex_count();
        c.table_epoch = table.epoch();
        c.rounds = previous ? (*previous)[gi].rounds + 1 : 0;
        c.colors.resize(pending[gi].size());
        std::fill(used.begin(), used.end(), 0);
        std::size_t classes = 0;
        for (std::size_t t = 0; t < pending[gi].size(); ++t) {
            std::uint32_t p = pending[gi][t];
            c.colors[t] = id_of_pending[p];
            if (!used[p]) {
                used[p] = 1;
                ++classes;
            }
        }
        c.class_count = classes;
        if (previous && classes > (*previous)[gi].class_count) out.any_refined = true;
    }
    return out;
}

}  // namespace detail

inline TupleColoring initial_coloring(const Graph& g, int k, SharedColorTable& table) {
    if (k < 1) throw Error(ErrorCode::kKZero, "k must be >= 1");
    auto out = detail::run_round({&g}, nullptr, k, table, 1);
    return std::move(out.colorings[0]);
}

inline TupleColoring refine_round(const Graph& g, const TupleColoring& c, SharedColorTable& table,
                                  int threads = 1) {
    if (c.table_epoch != table.epoch())
        throw Error(ErrorCode::kTableMismatch, "coloring belongs to a different table epoch");
    if (c.n != g.vertex_count())
        throw Error(ErrorCode::kTableMismatch, "coloring does not belong to this graph");
    std::vector<TupleColoring> prev{c};
    auto out = detail::run_round({&g}, &prev, c.k, table, threads);
    return std::move(out.colorings[0]);
}

/// Fixed point of refine_round. Reports the number of effective rounds; the
/// partition can strictly refine at most n^k - 1 times.
inline TupleColoring stable_coloring(const Graph& g, int k, SharedColorTable& table,
                                     int threads = 1) {
    TupleColoring current = initial_coloring(g, k, table);
    for (;;) {
        TupleColoring next = refine_round(g, current, table, threads);
        if (next.class_count <= current.class_count) return current;
        current = std::move(next);
    }
}

/// Lockstep refinement of two graphs against one shared table; stops when
/// neither partition refines. The returned colorings share a table epoch,
/// so color ids are comparable across the two graphs.
inline std::pair<TupleColoring, TupleColoring> joint_stable_coloring(const Graph& g, const Graph& h,
                                                                     int k, SharedColorTable& table,
                                                                     int threads = 1) {
    if (k < 1) throw Error(ErrorCode::kKZero, "k must be >= 1");
    std::vector<const Graph*> graphs{&g, &h};
    auto current = detail::run_round(graphs, nullptr, k, table, threads);
    for (;;) {
        auto next = detail::run_round(graphs, &current.colorings, k, table, threads);
        if (!next.any_refined)
            return {std::move(current.colorings[0]), std::move(current.colorings[1])};
        current = std::move(next);
    }
}

inline std::pair<TupleColoring, TupleColoring> joint_stable_coloring(const Graph& g, const Graph& h,
                                                                     int k, int threads = 1) {
    SharedColorTable table;
    return joint_stable_coloring(g, h, k, table, threads);
}

inline std::unordered_map<Color, std::size_t> color_histogram(const TupleColoring& c) {
    std::unordered_map<Color, std::size_t> hist;
    for (Color x : c.colors) ++hist[x];
    return hist;
}

/// G ~=_k H: every stable color class has the same cardinality in both
/// graphs. Graphs of different orders always compare as distinguished.
inline bool equivalent_k(const Graph& g, const Graph& h, int k, int threads = 1) {
    auto [cg, ch] = joint_stable_coloring(g, h, k, threads);
    return color_histogram(cg) == color_histogram(ch);
}

/// Partition of V by the color of the diagonal tuple (v,...,v).
inline std::vector<std::vector<int>> vertex_color_classes(const TupleColoring& c) {
    if (c.k < 2) throw Error(ErrorCode::kKTooSmall, "diagonal classes need k >= 2");
    std::size_t diag_step = 0;
    std::size_t pw = 1;
    for (int i = 0; i < c.k; ++i) {
        diag_step += pw;
        pw *= static_cast<std::size_t>(c.n);
    }
    std::unordered_map<Color, std::vector<int>> by_color;
    for (int v = 0; v < c.n; ++v)
        by_color[c.colors[static_cast<std::size_t>(v) * diag_step]].push_back(v);
    std::vector<std::vector<int>> classes;
    classes.reserve(by_color.size());
    for (auto& [color, members] : by_color) classes.push_back(members);
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

/// Diagonal color of vertex v under a k >= 2 coloring.
inline Color diagonal_color(const TupleColoring& c, int v) {
    std::size_t diag_step = 0;
    std::size_t pw = 1;
    for (int i = 0; i < c.k; ++i) {
        diag_step += pw;
        pw *= static_cast<std::size_t>(c.n);
    }
    return c.colors[static_cast<std::size_t>(v) * diag_step];
}

/// JSON listing, per color id: class size and one representative tuple.
inline std::string coloring_dump(const TupleColoring& c) {
    std::map<Color, std::pair<std::size_t, std::size_t>> classes;  // color -> (size, min rank)
    for (std::size_t t = 0; t < c.colors.size(); ++t) {
        auto [it, fresh] = classes.try_emplace(c.colors[t], std::make_pair(std::size_t{0}, t));
        ++it->second.first;
    }
    nlohmann::json out;
    out["k"] = c.k;
    out["n"] = c.n;
    out["rounds"] = c.rounds;
    out["class_count"] = c.class_count;
    out["classes"] = nlohmann::json::array();
    for (auto& [color, info] : classes) {
        nlohmann::json cls;
        cls["color"] = color;
        cls["size"] = info.first;
        std::vector<int> tuple(static_cast<std::size_t>(c.k));
        std::size_t rest = info.second;
        for (int i = c.k - 1; i >= 0; --i) {
            tuple[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::size_t>(c.n));
            rest /= static_cast<std::size_t>(c.n);
        }
        cls["representative"] = tuple;
        out["classes"].push_back(cls);
    }
    return out.dump(2);
}

}  // namespace wlkit
