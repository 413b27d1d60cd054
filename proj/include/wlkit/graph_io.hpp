#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "wlkit/graph.hpp"

namespace wlkit {

// Edge-list text format:
//   n m
//   u v          (m edge lines)
//   c v color    (optional vertex color lines)

inline Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw Error(ErrorCode::kMalformedLine, "empty input");

    long n = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
            throw Error(ErrorCode::kMalformedLine, "expected header line \"n m\"");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
        if (!next_line()) throw Error(ErrorCode::kMalformedLine, "missing edge line");
        std::istringstream es(line);
        long u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw Error(ErrorCode::kMalformedLine, "expected edge line \"u v\": " + line);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw Error(ErrorCode::kVertexOutOfRange, "edge endpoint out of range: " + line);
        if (u == v) throw Error(ErrorCode::kSelfLoop, "self loop: " + line);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    bool any_color = false;
    std::vector<int> colors(static_cast<std::size_t>(n), 0);
    while (next_line()) {
        std::istringstream cs(line);
        std::string tag, extra;
        long v = 0, color = 0;
        if (!(cs >> tag >> v >> color) || tag != "c" || (cs >> extra))
            throw Error(ErrorCode::kMalformedLine, "expected color line \"c v color\": " + line);
        if (v < 0 || v >= n)
            throw Error(ErrorCode::kVertexOutOfRange, "colored vertex out of range: " + line);
        if (color < 0) throw Error(ErrorCode::kMalformedLine, "negative color: " + line);
        colors[static_cast<std::size_t>(v)] = static_cast<int>(color);
        any_color = true;
    }
    Graph g = Graph::from_edges(static_cast<int>(n), std::move(edges));
    if (any_color) {
        // densify to a 0-based initial segment, ranked by value
        std::vector<int> sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int& c : colors)
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        g = g.with_vertex_colors(std::move(colors));
    }
    return g;
}

inline std::string emit_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (g.has_vertex_colors())
        for (int v = 0; v < g.vertex_count(); ++v) out << "c " << v << ' ' << g.vertex_color(v) << '\n';
    return out.str();
}

// graph6 format. Short form covers n <= 62; the 3-byte long form covers
// n <= 258047 (needed for CFI instances over grids). The 8-byte form is
// rejected: nothing at desk scale requires it.

inline Graph parse_graph6(const std::string& line) {
    std::string s = line;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    if (s.empty()) throw Error(ErrorCode::kInvalidGraph6, "empty line");
    for (char c : s)
        if (c < 63 || c > 126) throw Error(ErrorCode::kInvalidGraph6, "character out of range");

    std::size_t pos = 0;
    long n = 0;
    if (s[0] != '~') {
        n = s[0] - 63;
        pos = 1;
    } else {
        if (s.size() >= 2 && s[1] == '~')
            throw Error(ErrorCode::kInvalidGraph6, "8-byte order form not supported");
        if (s.size() < 4) throw Error(ErrorCode::kInvalidGraph6, "truncated order header");
        n = ((static_cast<long>(s[1] - 63)) << 12) | ((static_cast<long>(s[2] - 63)) << 6) |
            static_cast<long>(s[3] - 63);
        if (n < 63) throw Error(ErrorCode::kInvalidGraph6, "long form used for small order");
        pos = 4;
    }
    long bits = n * (n - 1) / 2;
    std::size_t expected = static_cast<std::size_t>((bits + 5) / 6);
    if (s.size() - pos != expected) throw Error(ErrorCode::kInvalidGraph6, "bad body length");

    std::vector<std::pair<int, int>> edges;
    long b = 0;
    for (int v = 1; v < n; ++v) {
        for (int u = 0; u < v; ++u, ++b) {
            int ch = s[pos + static_cast<std::size_t>(b / 6)] - 63;
            if ((ch >> (5 - (b % 6))) & 1) edges.emplace_back(u, v);
        }
    }
    // padding bits must be zero
    for (long p = bits; p < static_cast<long>(expected) * 6; ++p) {
        int ch = s[pos + static_cast<std::size_t>(p / 6)] - 63;
        if ((ch >> (5 - (p % 6))) & 1) throw Error(ErrorCode::kInvalidGraph6, "nonzero padding");
    }
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

inline std::string emit_graph6(const Graph& g) {
    long n = g.vertex_count();
    if (n > 258047) throw Error(ErrorCode::kResourceGuard, "graph too large for supported graph6 forms");
    std::string s;
    if (n <= 62) {
        s.push_back(static_cast<char>(n + 63));
    } else {
        s.push_back('~');
        s.push_back(static_cast<char>(((n >> 12) & 63) + 63));
        s.push_back(static_cast<char>(((n >> 6) & 63) + 63));
        s.push_back(static_cast<char>((n & 63) + 63));
    }
    long bits = n * (n - 1) / 2;
    std::vector<int> groups(static_cast<std::size_t>((bits + 5) / 6), 0);
    for (auto [u, v] : g.edges()) {
        long b = static_cast<long>(v) * (v - 1) / 2 + u;
        groups[static_cast<std::size_t>(b / 6)] |= 1 << (5 - (b % 6));
    }
    for (int grp : groups) s.push_back(static_cast<char>(grp + 63));
    return s;
}

}  // namespace wlkit
