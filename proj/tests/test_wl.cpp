#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wlkit/graph.hpp"
#include "wlkit/oracles.hpp"
#include "wlkit/wl.hpp"
#include "support/builders.hpp"

using namespace wlkit;
using namespace wlkit::testing;

namespace {

std::vector<int> engine_partition(const Graph& g, int k) {
    SharedColorTable table;
    TupleColoring c = stable_coloring(g, k, table);
    return canonical_class_ids(c.colors);
}

}  // namespace

TEST_CASE("initial coloring classes") {
    SharedColorTable table;
    TupleColoring k3 = initial_coloring(complete(3), 2, table);
    CHECK(k3.class_count == 2);  // diagonal, edge

    SharedColorTable t2;
    TupleColoring c4 = initial_coloring(cycle(4), 2, t2);
    CHECK(c4.class_count == 3);  // diagonal, adjacent, non-adjacent

    SharedColorTable t3;
    TupleColoring p3 = initial_coloring(path(3), 1, t3);
    CHECK(p3.class_count == 1);  // k=1 initial coloring ignores degree

    SharedColorTable t4;
    CHECK_THROWS_AS(initial_coloring(path(3), 0, t4), Error);
}

TEST_CASE("single refinement rounds") {
    SharedColorTable table;
    TupleColoring c5 = initial_coloring(cycle(5), 2, table);
    TupleColoring once = refine_round(cycle(5), c5, table);
    CHECK(once.class_count == 3);  // stable already at one round
    TupleColoring twice = refine_round(cycle(5), once, table);
    CHECK(twice.class_count == 3);

    SharedColorTable t2;
    TupleColoring kn = initial_coloring(complete(5), 1, t2);
    CHECK(kn.class_count == 1);
    CHECK(refine_round(complete(5), kn, t2).class_count == 1);

    SharedColorTable t3;
    TupleColoring s = initial_coloring(star(3), 1, t3);
    CHECK(refine_round(star(3), s, t3).class_count == 2);  // degree split
}

TEST_CASE("refine_round rejects foreign tables") {
    SharedColorTable a, b;
    TupleColoring c = initial_coloring(cycle(4), 2, a);
    CHECK_THROWS_AS(refine_round(cycle(4), c, b), Error);
}

TEST_CASE("stable colorings of known graphs") {
    SharedColorTable table;
    TupleColoring c6 = stable_coloring(cycle(6), 2, table);
    CHECK(c6.class_count == 4);  // diagonal + distances 1,2,3

    SharedColorTable t2;
    TupleColoring pet = stable_coloring(petersen(), 2, t2);
    CHECK(pet.class_count == 3);  // strongly regular: stable at the initial pair partition
    CHECK(pet.rounds == 0);

    SharedColorTable t3;
    TupleColoring one = stable_coloring(Graph(1), 3, t3);
    CHECK(one.class_count == 1);
}

TEST_CASE("stable partition equals naive oracle on small graphs") {
    for (const Graph& g : {cycle(5), cycle(6), path(4), star(3), complete(4), two_triangles(),
                           bowtie(), petersen()}) {
        CHECK(engine_partition(g, 2) == naive_wl2(g));
    }
}

TEST_CASE("refinement monotonicity") {
    for (const Graph& g : {cycle(6), star(4), bowtie(), petersen()}) {
        SharedColorTable table;
        TupleColoring c = initial_coloring(g, 2, table);
        for (int round = 0; round < 4; ++round) {
            TupleColoring next = refine_round(g, c, table);
            // every new class refines an old one
            std::map<Color, Color> image;
            for (std::size_t t = 0; t < c.colors.size(); ++t) {
                auto [it, fresh] = image.try_emplace(next.colors[t], c.colors[t]);
                CHECK(it->second == c.colors[t]);
            }
            CHECK(next.class_count >= c.class_count);
            c = std::move(next);
        }
    }
}

TEST_CASE("joint refinement and equivalence") {
    Graph c6 = cycle(6);
    Graph tt = two_triangles();
    CHECK(equivalent_k(c6, tt, 1));
    CHECK_FALSE(equivalent_k(c6, tt, 2));
    CHECK(equivalent_k(petersen(), petersen(), 2));

    auto [a, b] = joint_stable_coloring(complete(3), complete(3), 2);
    CHECK(color_histogram(a) == color_histogram(b));
    CHECK(a.table_epoch == b.table_epoch);
}

TEST_CASE("equivalence across different orders is false") {
    CHECK_FALSE(equivalent_k(cycle(6), cycle(5), 2));
    CHECK_FALSE(equivalent_k(cycle(6), cycle(5), 1));
}

TEST_CASE("vertex color classes from diagonal") {
    SharedColorTable table;
    TupleColoring pet = stable_coloring(petersen(), 2, table);
    CHECK(vertex_color_classes(pet).size() == 1);

    SharedColorTable t2;
    TupleColoring s = stable_coloring(star(3), 2, t2);
    CHECK(vertex_color_classes(s).size() == 2);

    SharedColorTable t3;
    TupleColoring p3 = stable_coloring(path(3), 2, t3);
    auto classes = vertex_color_classes(p3);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<int>{0, 2});
    CHECK(classes[1] == std::vector<int>{1});

    SharedColorTable t4;
    TupleColoring one = stable_coloring(path(3), 1, t4);
    CHECK_THROWS_AS(vertex_color_classes(one), Error);
}

TEST_CASE("determinism: identical runs and thread counts agree byte for byte") {
    Graph g = petersen();
    SharedColorTable t1, t2, t4;
    TupleColoring a = stable_coloring(g, 2, t1, 1);
    TupleColoring b = stable_coloring(g, 2, t2, 1);
    TupleColoring c = stable_coloring(g, 2, t4, 4);
    CHECK(a.colors == b.colors);
    CHECK(a.colors == c.colors);
    CHECK(t1.insertion_log() == t2.insertion_log());
    CHECK(t1.insertion_log() == t4.insertion_log());
    CHECK(coloring_dump(a) == coloring_dump(c));
}

TEST_CASE("isomorphism invariance of joint histograms") {
    std::mt19937 rng(20240817);
    for (const Graph& g : {cycle(6), star(4), bowtie(), two_triangles()}) {
        std::vector<int> perm(static_cast<std::size_t>(g.vertex_count()));
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        for (int trial = 0; trial < 3; ++trial) {
            std::shuffle(perm.begin(), perm.end(), rng);
            Graph pg = relabel(g, perm);
            for (int k = 1; k <= 3; ++k) CHECK(equivalent_k(g, pg, k));
        }
    }
}

TEST_CASE("distance awareness of stable pair colors") {
    for (const Graph& g : {cycle(7), path(5), petersen(), two_triangles()}) {
        SharedColorTable table;
        TupleColoring c = stable_coloring(g, 2, table);
        DistanceMatrix d = all_pairs_distances(g);
        int n = g.vertex_count();
        std::map<Color, int> dist_of_color;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) {
                Color col = c.colors[static_cast<std::size_t>(u) * n + v];
                int dist = d.at(u, v);
                auto [it, fresh] = dist_of_color.try_emplace(col, dist);
                CHECK(it->second == dist);
            }
    }
}

TEST_CASE("coloring dump is valid json with classes") {
    SharedColorTable table;
    TupleColoring
        c6 = stable_coloring(cycle(6), 2, table);
    auto parsed = nlohmann::json::parse(coloring_dump(c6));
    CHECK(parsed["class_count"] == 4);
    CHECK(parsed["classes"].size() == 4);
    std::size_t total = 0;
    for (auto& cls : parsed["classes"]) total += cls["size"].get<std::size_t>();
    CHECK(total == 36);
}

TEST_CASE("arc colors fold into initial coloring") {
    // path a-b-c with distinguished arc colors on one edge direction
    Graph p = path(3);
    std::unordered_map<std::uint64_t, int> arcs;
    for (int v = 0; v < 3; ++v) arcs[pack_arc(v, v)] = 0;
    arcs[pack_arc(0, 1)] = 1;
    arcs[pack_arc(1, 0)] = 2;
    arcs[pack_arc(1, 2)] = 1;
    arcs[pack_arc(2, 1)] = 2;
    Graph colored = p.with_arc_colors(std::move(arcs));
    SharedColorTable t1, t2;
    TupleColoring plain = initial_coloring(p, 2, t1);
    TupleColoring tinted = initial_coloring(colored, 2, t2);
    CHECK(tinted.class_count > plain.class_count);
}
