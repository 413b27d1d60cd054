#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wlkit/graph.hpp"
#include "wlkit/graph_io.hpp"
#include "wlkit/oracles.hpp"
#include "support/builders.hpp"

using namespace wlkit;
using namespace wlkit::testing;

namespace {

// Independent graph6 encoder used to cross-check emit_graph6: builds the
// bit string explicitly instead of packing groups in place.
std::string reference_graph6(const Graph& g) {
    int n = g.vertex_count();
    REQUIRE(n <= 62);
    std::string bits;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) bits.push_back(g.has_edge(u, v) ? '1' : '0');
    while (bits.size() % 6 != 0) bits.push_back('0');
    std::string out(1, static_cast<char>(n + 63));
    for (std::size_t i = 0; i < bits.size(); i += 6) {
        int value = 0;
        for (int b = 0; b < 6; ++b) value = value * 2 + (bits[i + static_cast<std::size_t>(b)] - '0');
        out.push_back(static_cast<char>(value + 63));
    }
    return out;
}

}  // namespace

TEST_CASE("parse_edge_list basic graphs") {
    Graph k3 = parse_edge_list("3 3\n0 1\n1 2\n0 2");
    CHECK(k3.vertex_count() == 3);
    CHECK(k3.edge_count() == 3);
    CHECK(k3.has_edge(0, 2));

    Graph e2 = parse_edge_list("2 0");
    CHECK(e2.vertex_count() == 2);
    CHECK(e2.edge_count() == 0);

    Graph dup = parse_edge_list("3 2\n0 1\n1 0");
    CHECK(dup.edge_count() == 1);
}

TEST_CASE("parse_edge_list errors") {
    auto code = [](const std::string& text) {
        try {
            parse_edge_list(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::kInvalidArgument;
    };
    CHECK(code("2 1\n0 2") == ErrorCode::kVertexOutOfRange);
    CHECK(code("2 1\n1 1") == ErrorCode::kSelfLoop);
    CHECK(code("2 1\nx y") == ErrorCode::kMalformedLine);
    CHECK(code("") == ErrorCode::kMalformedLine);
    CHECK(code("3 1\n0 1\nc 5 0") == ErrorCode::kVertexOutOfRange);
}

TEST_CASE("parse_edge_list vertex colors densify") {
    Graph g = parse_edge_list("3 1\n0 1\nc 0 7\nc 2 3");
    REQUIRE(g.has_vertex_colors());
    CHECK(g.vertex_color(0) == 2);  // values 0,3,7 rank to 0,1,2
    CHECK(g.vertex_color(1) == 0);
    CHECK(g.vertex_color(2) == 1);
}

TEST_CASE("edge list round trip") {
    for (const Graph& g : {cycle(6), star(3), petersen(), Graph(1)}) {
        Graph back = parse_edge_list(emit_edge_list(g));
        CHECK(back == g);
    }
}

TEST_CASE("graph6 known values") {
    Graph star4 = parse_graph6("D?{");
    CHECK(star4.vertex_count() == 5);
    CHECK(star4.edge_count() == 4);
    CHECK(emit_graph6(star4) == "D?{");

    // K3 encoded with the independent reference encoder
    Graph k3 = complete(3);
    std::string ref = reference_graph6(k3);
    Graph decoded = parse_graph6(ref);
    CHECK(decoded.vertex_count() == 3);
    CHECK(decoded.edge_count() == 3);
    CHECK(emit_graph6(k3) == ref);
}

TEST_CASE("graph6 rejects bad input") {
    auto code = [](const std::string& s) {
        try {
            parse_graph6(s);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::kInvalidArgument;
    };
    CHECK(code("~~") == ErrorCode::kInvalidGraph6);
    CHECK(code("") == ErrorCode::kInvalidGraph6);
    CHECK(code("D?") == ErrorCode::kInvalidGraph6);   // truncated body
    CHECK(code("D?{{") == ErrorCode::kInvalidGraph6); // oversized body
    CHECK(code("C~") == ErrorCode::kInvalidGraph6);   // nonzero padding for n=4
}

TEST_CASE("graph6 round trip matches reference encoder on corpus") {
    for (int n = 1; n <= 6; ++n) {
        for (const Graph& g : corpus_exactly(n, CorpusFilter::kAll)) {
            std::string mine = emit_graph6(g);
            CHECK(mine == reference_graph6(g));
            CHECK(parse_graph6(mine) == g);
        }
    }
}

TEST_CASE("graph6 long form round trips above 62 vertices") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < 80; ++i) edges.emplace_back(i, i + 1);
    Graph p80 = Graph::from_edges(80, std::move(edges));
    std::string s = emit_graph6(p80);
    CHECK(s[0] == '~');
    CHECK(parse_graph6(s) == p80);
}

TEST_CASE("all pairs distances") {
    DistanceMatrix d6 = all_pairs_distances(cycle(6));
    CHECK(d6.at(0, 3) == 3);
    CHECK(d6.at(0, 1) == 1);

    Graph disjoint = Graph::from_edges(4, {{0, 1}, {2, 3}});
    DistanceMatrix dd = all_pairs_distances(disjoint);
    CHECK(dd.at(0, 2) == kInfiniteDistance);

    DistanceMatrix dp = all_pairs_distances(path(4));
    CHECK(dp.at(0, 3) == 3);
}

TEST_CASE("distance multisets") {
    DistanceMultiset c6 = distance_multiset(cycle(6), 0);
    CHECK(c6.distances == std::vector<int>{0, 1, 1, 2, 2, 3});

    DistanceMultiset k4 = distance_multiset(complete(4), 2);
    CHECK(k4.distances == std::vector<int>{0, 1, 1, 1});

    Graph s = star(3);
    CHECK(distance_multiset(s, 0).distances == std::vector<int>{0, 1, 1, 1});
    CHECK(distance_multiset(s, 1).distances == std::vector<int>{0, 1, 2, 2});

    CHECK_THROWS_AS(distance_multiset(s, 4), Error);
}

TEST_CASE("distance multiset has exactly one zero; transitive graphs agree") {
    for (const Graph& g : {cycle(5), cycle(8), complete(4), complete(6)}) {
        DistanceMultiset first = distance_multiset(g, 0);
        long zeros = std::count(first.distances.begin(), first.distances.end(), 0);
        CHECK(zeros == 1);
        for (int v = 1; v < g.vertex_count(); ++v) CHECK(distance_multiset(g, v) == first);
    }
}

TEST_CASE("connected components") {
    auto classes = connected_components(two_triangles());
    REQUIRE(classes.size() == 2);
    CHECK(classes[0].size() == 3);
    CHECK(classes[1].size() == 3);

    CHECK(connected_components(Graph(1)).size() == 1);
    CHECK(connected_components(path(5)).size() == 1);
}

TEST_CASE("remove vertices") {
    VertexRemoval r = remove_vertices(cycle(4), {0});
    CHECK(r.graph.vertex_count() == 3);
    CHECK(r.graph.edge_count() == 2);  // P3
    CHECK(r.old_of_new == std::vector<int>{1, 2, 3});

    VertexRemoval antipodal = remove_vertices(cycle(4), {0, 2});
    CHECK(antipodal.graph.vertex_count() == 2);
    CHECK(antipodal.graph.edge_count() == 0);

    VertexRemoval nothing = remove_vertices(petersen(), {});
    CHECK(nothing.graph == petersen());
}

TEST_CASE("remove vertices composes") {
    Graph g = petersen();
    VertexRemoval all_at_once = remove_vertices(g, {1, 4, 7});
    VertexRemoval first = remove_vertices(g, {1, 4});
    // vertex 7 in the intermediate graph:
    int mid = first.new_of_old[7];
    VertexRemoval second = remove_vertices(first.graph, {mid});
    CHECK(second.graph == all_at_once.graph);
}

TEST_CASE("disjoint union") {
    DisjointUnion u = disjoint_union(Graph(1), Graph(1));
    CHECK(u.graph.vertex_count() == 2);
    CHECK(u.graph.edge_count() == 0);

    DisjointUnion tt = disjoint_union(complete(3), complete(3));
    CHECK(tt.graph.vertex_count() == 6);
    CHECK(tt.graph.edge_count() == 6);
    CHECK(tt.graph == two_triangles());
    CHECK(tt.offset == 3);

    DisjointUnion same = disjoint_union(petersen(), Graph(0));
    CHECK(same.graph == petersen());
}

TEST_CASE("handshake identity over corpus") {
    for (int n = 1; n <= 6; ++n) {
        for (const Graph& g : corpus_exactly(n, CorpusFilter::kAll)) {
            long degree_sum = 0;
            for (int v = 0; v < g.vertex_count(); ++v) degree_sum += g.degree(v);
            CHECK(degree_sum == 2 * g.edge_count());
        }
    }
}

TEST_CASE("vertex color validation") {
    CHECK_THROWS_AS(Graph(2).with_vertex_colors({0, 2}), Error);  // gap
    CHECK_THROWS_AS(Graph(2).with_vertex_colors({1, 1}), Error);  // missing 0
    Graph g = Graph(2).with_vertex_colors({1, 0});
    CHECK(g.vertex_color(0) == 1);
}
