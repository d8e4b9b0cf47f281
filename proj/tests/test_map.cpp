#include "doctest.h"

#include <numeric>
#include <random>

#include "birkhoff/map.hpp"

using namespace birkhoff;

TEST_CASE("t1: one vertex, two loops on the torus") {
    MultiCurveMap m = make_t1_map();
    CHECK(m.num_vertices() == 1);
    CHECK(m.num_edges() == 2);
    CHECK(m.num_faces() == 1);
    CHECK(m.genus() == 1);
    CHECK(m.faces()[0].size() == 4);
    CHECK(m.strands().size() == 2);
    for (const auto& s : m.strands()) CHECK(s.size() == 1);
}

TEST_CASE("t6: the 2x3 grid map") {
    MultiCurveMap m = make_grid_map(2, 3);
    CHECK(m.num_vertices() == 6);
    CHECK(m.num_edges() == 12);
    CHECK(m.num_faces() == 6);
    CHECK(m.genus() == 1);
    for (const auto& f : m.faces()) CHECK(f.size() == 4);
    CHECK(m.strands().size() == 5);
}

TEST_CASE("face boundary lengths sum to twice the edge count") {
    for (auto [p, q] : {std::pair{1, 1}, {1, 3}, {2, 2}, {2, 3}}) {
        MultiCurveMap m = make_grid_map(p, q);
        size_t total = 0;
        for (const auto& f : m.faces()) total += f.size();
        CHECK(total == 2 * static_cast<size_t>(m.num_edges()));
    }
}

TEST_CASE("face tracing is a permutation decomposition") {
    MultiCurveMap m = make_grid_map(2, 3);
    std::vector<int> count(m.num_darts(), 0);
    for (const auto& f : m.faces())
        for (Dart d : f) ++count[d];
    for (int c : count) CHECK(c == 1);
    // face_next stays within the face.
    for (Dart d = 0; d < m.num_darts(); ++d) CHECK(m.face_left(m.face_next(d)) == m.face_left(d));
}

TEST_CASE("derived data is invariant under dart relabeling") {
    MultiCurveMap m = make_grid_map(2, 3);
    std::mt19937_64 rng(7);
    std::vector<int> relabel(m.num_darts());
    std::iota(relabel.begin(), relabel.end(), 0);
    for (int round = 0; round < 5; ++round) {
        std::shuffle(relabel.begin(), relabel.end(), rng);
        std::vector<std::array<Dart, 4>> rot(m.num_vertices());
        for (VertexId v = 0; v < m.num_vertices(); ++v)
            for (int s = 0; s < 4; ++s) rot[v][s] = relabel[m.rotations()[v][s]];
        std::vector<std::array<Dart, 2>> pairs;
        for (EdgeId e = 0; e < m.num_edges(); ++e)
            pairs.push_back({relabel[m.first_dart(e)], relabel[m.second_dart(e)]});
        MultiCurveMap m2(std::move(rot), std::move(pairs));
        CHECK(m2.genus() == m.genus());
        CHECK(m2.num_faces() == m.num_faces());
        CHECK(m2.strands().size() == m.strands().size());
    }
}

TEST_CASE("dual graph bookkeeping") {
    MultiCurveMap m = make_grid_map(2, 3);
    CHECK(m.dual_edges().size() == static_cast<size_t>(m.num_edges()));
    std::vector<int> incid(m.num_faces(), 0);
    for (const auto& de : m.dual_edges()) {
        ++incid[de.left];
        if (de.right != de.left) ++incid[de.right];
    }
    for (FaceId f = 0; f < m.num_faces(); ++f)
        CHECK(incid[f] == static_cast<int>(m.face_edges()[f].size()));
}

TEST_CASE("t1 has dual loops") {
    MultiCurveMap m = make_t1_map();
    for (const auto& de : m.dual_edges()) CHECK(de.left == de.right);
}

TEST_CASE("invalid maps are rejected") {
    // A dart appearing in two rotations (vertex with a repeat).
    CHECK_THROWS_WITH_AS(MultiCurveMap({{0, 1, 2, 0}}, {{0, 2}, {1, 3}}), doctest::Contains("dart"),
                         domain_error);
    // Self-paired dart.
    CHECK_THROWS_AS(MultiCurveMap({{0, 1, 2, 3}}, {{0, 0}, {1, 3}}), domain_error);
    // Unpaired dart.
    CHECK_THROWS_AS(MultiCurveMap({{0, 1, 2, 3}}, {{0, 2}}), domain_error);
    try {
        MultiCurveMap({{0, 1, 2, 3}}, {{0, 2}});
    } catch (const domain_error& e) {
        CHECK(e.code() == "BadInvolution");
    }
}

TEST_CASE("map json round trip") {
    MultiCurveMap m = make_grid_map(2, 3);
    std::string text = map_to_json(m);
    MultiCurveMap m2 = parse_map_json(text);
    CHECK(m2.num_vertices() == m.num_vertices());
    CHECK(m2.num_edges() == m.num_edges());
    CHECK(m2.genus() == m.genus());
    CHECK(map_to_json(m2) == text);
}

TEST_CASE("non-quadrivalent json is rejected") {
    std::string bad = R"({"vertices":[{"id":0,"darts":[0,1,2]}],"edges":[[0,2],[1,3]]})";
    CHECK_THROWS_AS(parse_map_json(bad), domain_error);
}

TEST_CASE("sparse dart ids are compressed order-preservingly") {
    // Same map as t1, with dart ids 10, 21, 32, 43.
    std::string text = R"({"vertices":[{"id":0,"darts":[10,21,32,43]}],
                           "edges":[[10,32],[21,43]]})";
    MultiCurveMap m = parse_map_json(text);
    CHECK(m.num_vertices() == 1);
    CHECK(m.num_edges() == 2);
    CHECK(m.genus() == 1);
    MultiCurveMap t1 = make_t1_map();
    CHECK(m.rotations() == t1.rotations());
    CHECK(m.first_dart(0) == t1.first_dart(0));
    CHECK(m.second_dart(0) == t1.second_dart(0));
    CHECK(m.first_dart(1) == t1.first_dart(1));
}

TEST_CASE("empty and disconnected maps are rejected") {
    CHECK_THROWS_AS(MultiCurveMap({}, {}), std::invalid_argument);
    // Two disjoint copies of the one-crossing map.
    CHECK_THROWS_AS(MultiCurveMap({{0, 1, 2, 3}, {4, 5, 6, 7}}, {{0, 2}, {1, 3}, {4, 6}, {5, 7}}),
                    domain_error);
}
