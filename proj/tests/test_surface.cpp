#include "doctest.h"

#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "birkhoff/surface.hpp"

using namespace birkhoff;

namespace {

MultiCurveMap load_map(const std::string& name) {
    std::ifstream in(std::string(DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_map_json(ss.str());
}

void check_surface_invariants(const MultiCurveMap& m) {
    int expected_chi = -2 * m.num_vertices();
    int expected_b = 2 * static_cast<int>(m.strands().size());
    int genus_seen = -1;
    for (const auto& eta : enumerate_eulerian(m)) {
        SurfaceModel model(m, eta);
        CHECK(model.skeleton().orientable());
        CHECK(model.euler_characteristic() == expected_chi);
        CHECK(model.num_boundary_components() == expected_b);
        int g = model.genus();
        CHECK(g >= 0);
        if (genus_seen < 0) genus_seen = g;
        CHECK(g == genus_seen); // independent of the coorientation
        CHECK(model.h1_rank() == 1 - expected_chi);

        // Boundary classes sum to zero and lie in the radical of the pairing.
        auto bclasses = model.boundary_classes();
        IntVec total(model.h1_rank(), 0);
        for (const auto& b : bclasses)
            for (int i = 0; i < model.h1_rank(); ++i) total[i] += b[i];
        for (i64 x : total) CHECK(x == 0);
        for (const auto& b : bclasses)
            for (const auto& row : model.pairing()) {
                i64 s = 0;
                for (size_t i = 0; i < row.size(); ++i) s += row[i] * b[i];
                CHECK(s == 0);
            }

        // The pairing descends to a non-degenerate form on the closed part.
        CHECK(mat_rank(model.pairing()) == 2 * g);
    }
}

} // namespace

TEST_CASE("t1 surface: four-holed sphere") {
    MultiCurveMap m = make_t1_map();
    for (const auto& eta : enumerate_eulerian(m)) {
        SurfaceModel model(m, eta);
        CHECK(model.euler_characteristic() == -2);
        CHECK(model.num_boundary_components() == 4);
        CHECK(model.genus() == 0);
        CHECK(model.h1_rank() == 3);
        CHECK(model.skeleton().num_vertices() == 4);
        CHECK(model.skeleton().num_edges() == 6);
    }
}

TEST_CASE("t6 surface: genus two with ten boundary circles") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    SurfaceModel model(m, etas[0]);
    CHECK(model.euler_characteristic() == -12);
    CHECK(model.num_boundary_components() == 10);
    CHECK(model.genus() == 2);
    CHECK(model.h1_rank() == 13);
}

TEST_CASE("surface invariants over all Eulerian coorientations") {
    SUBCASE("t1") { check_surface_invariants(make_t1_map()); }
    SUBCASE("grid 1x2") { check_surface_invariants(make_grid_map(1, 2)); }
    SUBCASE("grid 2x2") { check_surface_invariants(make_grid_map(2, 2)); }
    SUBCASE("t6") { check_surface_invariants(make_grid_map(2, 3)); }
    SUBCASE("genus2") { check_surface_invariants(load_map("genus2.json")); }
}

TEST_CASE("vertex curves: simple, disjoint, primitive") {
    MultiCurveMap m = make_grid_map(2, 3);
    for (const auto& eta : enumerate_eulerian(m)) {
        SurfaceModel model(m, eta);
        std::vector<Curve> vc;
        for (VertexId v = 0; v < m.num_vertices(); ++v) vc.push_back(model.gamma_v(v));
        for (const auto& c : vc) {
            CHECK(c.simple);
            // Primitive class: coordinates have gcd 1.
            i64 g = 0;
            for (i64 x : c.h1) g = std::gcd(g, x < 0 ? -x : x);
            CHECK(g == 1);
        }
        // Pairwise disjoint: no shared skeleton vertices.
        const RibbonGraph& sk = model.skeleton();
        for (size_t i = 0; i < vc.size(); ++i) {
            std::set<int> vi;
            for (const auto& s : vc[i].walk) {
                vi.insert(sk.end_vertex(2 * s.edge));
                vi.insert(sk.end_vertex(2 * s.edge + 1));
            }
            for (size_t j = i + 1; j < vc.size(); ++j)
                for (const auto& s : vc[j].walk) {
                    CHECK(vi.count(sk.end_vertex(2 * s.edge)) == 0);
                    CHECK(vi.count(sk.end_vertex(2 * s.edge + 1)) == 0);
                }
        }
        // Zero pairing between vertex curves.
        for (size_t i = 0; i < vc.size(); ++i)
            for (size_t j = 0; j < vc.size(); ++j) CHECK(model.pair(vc[i].h1, vc[j].h1) == 0);
        break; // invariants identical across coorientations; one suffices here
    }
}

TEST_CASE("face curves: simple closed walks on every acyclic coorientation") {
    for (auto [p, q] : {std::pair{2, 2}, {2, 3}}) {
        MultiCurveMap m = make_grid_map(p, q);
        for (const auto& eta : enumerate_eulerian(m)) {
            if (!is_acyclic(m, eta)) continue;
            SurfaceModel model(m, eta);
            for (FaceId f = 0; f < m.num_faces(); ++f) {
                Curve c = model.gamma_f(f);
                CHECK(c.simple);
                CHECK(c.walk.size() == 2 * m.faces()[f].size());
            }
        }
    }
}

TEST_CASE("gamma_f requires acyclicity") {
    MultiCurveMap m = make_t1_map();
    auto etas = enumerate_eulerian(m);
    SurfaceModel model(m, etas[0]);
    CHECK_THROWS_AS(model.gamma_f(0), domain_error);
}

TEST_CASE("vertex/face curve pairing is +-1 at corners, 0 away") {
    MultiCurveMap m = make_grid_map(2, 3);
    for (const auto& eta : enumerate_eulerian(m)) {
        if (!is_acyclic(m, eta)) continue;
        SurfaceModel model(m, eta);
        for (FaceId f = 0; f < m.num_faces(); ++f) {
            Curve cf = model.gamma_f(f);
            // Corner count per vertex along the face boundary.
            std::vector<int> corner_count(m.num_vertices(), 0);
            for (Dart d : m.faces()[f]) ++corner_count[m.dart_vertex(m.paired(d))];
            for (VertexId v = 0; v < m.num_vertices(); ++v) {
                i64 pr = model.pair(model.gamma_v(v).h1, cf.h1);
                if (corner_count[v] == 0) CHECK(pr == 0);
                if (corner_count[v] == 1) CHECK((pr == 1 || pr == -1));
            }
        }
    }
}

TEST_CASE("pairing is skew") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    SurfaceModel model(m, etas[0]);
    const IntMat& j = model.pairing();
    for (size_t a = 0; a < j.size(); ++a) {
        CHECK(j[a][a] == 0);
        for (size_t b = 0; b < j.size(); ++b) CHECK(j[a][b] == -j[b][a]);
    }
}
