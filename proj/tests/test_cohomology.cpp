#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "birkhoff/cohomology.hpp"

using namespace birkhoff;

TEST_CASE("class_of evaluates like cohomology_eval") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& eta = etas[rng() % etas.size()];
        Cochain c = class_of(m, eta);
        CHECK(is_cocycle(m, c));
        for (VertexId v = 0; v < m.num_vertices(); ++v) {
            DualWalk link = vertex_link_walk(m, v);
            CHECK(cochain_eval(m, c, link) == cohomology_eval(m, eta, link));
        }
    }
}

TEST_CASE("flip changes the class by a coboundary") {
    MultiCurveMap m = make_grid_map(2, 3);
    for (const auto& eta : enumerate_eulerian(m)) {
        auto sinks = sink_faces(m, eta);
        for (FaceId f : sinks) {
            Coorientation nu = flip(m, eta, f);
            CHECK(cochain_equivalent(m, class_of(m, eta), class_of(m, nu)));
        }
        if (!sinks.empty()) break;
    }
}

TEST_CASE("cochain equivalence basics") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    Cochain c = class_of(m, etas[0]);

    SUBCASE("adding the coboundary of one face keeps the class") {
        Cochain d = c;
        FaceId f = 2;
        for (EdgeId e = 0; e < m.num_edges(); ++e) {
            const auto& de = m.dual_edges()[e];
            if (de.left == f) d.weights[e] += 1;
            if (de.right == f) d.weights[e] -= 1;
        }
        CHECK(cochain_equivalent(m, c, d));
        CHECK(cochain_equivalent(m, d, c));
    }

    SUBCASE("scaling changes the class") {
        Cochain d = c;
        for (auto& w : d.weights) w *= 3;
        CHECK_FALSE(cochain_equivalent(m, c, d));
    }
}

TEST_CASE("construct_coorientation round trip over the enumeration") {
    for (auto [p, q] : {std::pair{1, 1}, {2, 3}}) {
        MultiCurveMap m = make_grid_map(p, q);
        for (const auto& eta : enumerate_eulerian(m)) {
            Cochain w = class_of(m, eta);
            auto res = construct_coorientation(m, w);
            REQUIRE(std::holds_alternative<Coorientation>(res));
            const auto& built = std::get<Coorientation>(res);
            CHECK(is_eulerian(m, built));
            CHECK(cochain_equivalent(m, class_of(m, built), w));
        }
    }
}

TEST_CASE("infeasible classes produce short-cycle certificates") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    int found = 0;
    for (size_t i = 0; i < etas.size() && found < 20; ++i) {
        Cochain w = class_of(m, etas[i]);
        for (auto& x : w.weights) x *= 5; // still a cocycle, parity preserved
        auto res = construct_coorientation(m, w);
        if (std::holds_alternative<InfeasibilityCertificate>(res)) {
            const auto& cert = std::get<InfeasibilityCertificate>(res);
            CHECK(cert.length < cert.omega);
            CHECK(cert.length == static_cast<long long>(cert.cycle.size()));
            CHECK(cochain_eval(m, w, cert.cycle) == cert.omega);
            ++found;
        }
    }
    CHECK(found >= 1);
}

TEST_CASE("parity mismatch is detected") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    // Doubling a class makes every cycle evaluation even; odd-length cycles
    // then violate parity.
    Cochain w = class_of(m, etas[0]);
    for (auto& x : w.weights) x *= 2;
    CHECK_THROWS_AS(construct_coorientation(m, w), domain_error);
    try {
        construct_coorientation(m, w);
    } catch (const domain_error& e) {
        CHECK(e.code() == "ParityMismatch");
    }
}

TEST_CASE("heights: maximality and unit gradients") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    Cochain w = class_of(m, etas[0]);
    auto res = height_of(m, w, 0);
    REQUIRE(std::holds_alternative<HeightResult>(res));
    const auto& h = std::get<HeightResult>(res);
    CHECK(h.height[0] == 0);

    // Unit gradient with the parity-corrected weights.
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
        const auto& de = m.dual_edges()[e];
        long long jump = h.height[de.left] - h.height[de.right] + h.odd_weights[e];
        CHECK((jump == 1 || jump == -1));
    }

    // Maximal: raising any single face breaks a constraint.
    for (FaceId f = 1; f < m.num_faces(); ++f) {
        auto bumped = h.height;
        bumped[f] += 2; // parity-preserving bump
        bool violated = false;
        for (EdgeId e = 0; e < m.num_edges(); ++e) {
            const auto& de = m.dual_edges()[e];
            long long jump = bumped[de.left] - bumped[de.right] + h.odd_weights[e];
            if (jump != 1 && jump != -1) violated = true;
        }
        CHECK(violated);
    }

    // The gradient reproduces an Eulerian coorientation.
    Coorientation eta = coorientation_from_height(m, h);
    CHECK(is_eulerian(m, eta));
}

TEST_CASE("non-cocycle weight vectors are rejected") {
    MultiCurveMap m = make_grid_map(2, 3);
    Cochain w;
    w.weights.assign(m.num_edges(), 1);
    if (!is_cocycle(m, w)) CHECK_THROWS_AS(construct_coorientation(m, w), std::invalid_argument);
}

TEST_CASE("evaluation is invariant on genuinely homologous dual cycles") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    std::mt19937_64 rng(17);
    int tested = 0;
    for (int trial = 0; trial < 60; ++trial) {
        // Random closed dual walk.
        FaceId start = rng() % m.num_faces();
        DualWalk w;
        FaceId cur = start;
        for (int steps = 0; steps < 60; ++steps) {
            EdgeId e = rng() % m.num_edges();
            const auto& de = m.dual_edges()[e];
            if (de.left == cur) {
                w.push_back({e, false});
                cur = de.right;
            } else if (de.right == cur) {
                w.push_back({e, true});
                cur = de.left;
            }
            if (cur == start && !w.empty() && steps > 5) break;
        }
        if (cur != start || w.empty()) continue;

        // Perturb 1: insert an immediate backtrack.
        DualWalk w1 = w;
        FaceId at = dual_step_target(m, w1[0]);
        for (EdgeId e = 0; e < m.num_edges(); ++e) {
            const auto& de = m.dual_edges()[e];
            if (de.left == at) {
                // Leave via the backward crossing, come right back.
                w1.insert(w1.begin() + 1, {e, true});
                w1.insert(w1.begin() + 1, {e, false});
                break;
            }
            if (de.right == at) {
                w1.insert(w1.begin() + 1, {e, false});
                w1.insert(w1.begin() + 1, {e, true});
                break;
            }
        }

        // Perturb 2: splice a vertex link at a face the link passes.
        DualWalk w2 = w;
        for (VertexId v = 0; v < m.num_vertices() && w2.size() == w.size(); ++v) {
            DualWalk link = vertex_link_walk(m, v);
            for (size_t rot = 0; rot < link.size(); ++rot)
                if (dual_step_source(m, link[rot]) == at) {
                    DualWalk shifted(link.begin() + rot, link.end());
                    shifted.insert(shifted.end(), link.begin(), link.begin() + rot);
                    w2.insert(w2.begin() + 1, shifted.begin(), shifted.end());
                    break;
                }
        }

        check_closed_walk(m, w1);
        check_closed_walk(m, w2);
        const auto& eta = etas[rng() % etas.size()];
        int base = cohomology_eval(m, eta, w);
        CHECK(cohomology_eval(m, eta, w1) == base);
        CHECK(cohomology_eval(m, eta, w2) == base);
        ++tested;
    }
    CHECK(tested >= 20);
}

TEST_CASE("grid basis cycles evaluate to the expected crossing counts") {
    MultiCurveMap m = make_grid_map(2, 3);
    // All horizontal circles cooriented up, verticals right.
    Coorientation c;
    c.bits.resize(m.num_edges());
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
        int dir = m.first_dart(e) % 4;
        c.bits[e] = (e % 2 == 0) ? (dir == 0 ? 1 : 0) : (dir == 1 ? 0 : 1);
    }
    REQUIRE(is_eulerian(m, c));
    auto orient_chain = [&](std::vector<EdgeId> edges) {
        int n = static_cast<int>(edges.size());
        for (int mask = 0; mask < (1 << n); ++mask) {
            DualWalk t;
            for (int i = 0; i < n; ++i) t.push_back({edges[i], ((mask >> i) & 1) != 0});
            try {
                check_closed_walk(m, t);
                return t;
            } catch (const domain_error&) {
            }
        }
        throw std::logic_error("could not orient the chain");
    };
    DualWalk horiz = orient_chain({1, 3, 5}); // crosses the three vertical edges
    DualWalk vert = orient_chain({0, 6});     // crosses two horizontal edges
    CHECK(std::abs(cohomology_eval(m, c, horiz)) == 3);
    CHECK(std::abs(cohomology_eval(m, c, vert)) == 2);
}

TEST_CASE("the shipped infeasible class certifies with a 3 < 5 cycle") {
    std::ifstream map_in(std::string(DATA_DIR) + "/t6.json");
    std::ifstream w_in(std::string(DATA_DIR) + "/t6-class-infeasible.json");
    REQUIRE(map_in.good());
    REQUIRE(w_in.good());
    std::stringstream ms, ws;
    ms << map_in.rdbuf();
    ws << w_in.rdbuf();
    MultiCurveMap m = parse_map_json(ms.str());
    Cochain w = parse_cochain_json(m, ws.str());
    auto res = construct_coorientation(m, w);
    REQUIRE(std::holds_alternative<InfeasibilityCertificate>(res));
    const auto& cert = std::get<InfeasibilityCertificate>(res);
    CHECK(cert.length == 3);
    CHECK(cert.omega == 5);
}
