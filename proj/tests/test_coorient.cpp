#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>

#include "birkhoff/coorient.hpp"

using namespace birkhoff;

namespace {

// Independent oracle: exhaustive filter over all bit assignments, emitted in
// lexicographic bit-vector order (edge 0 most significant).
std::vector<Coorientation> brute_force_eulerian(const MultiCurveMap& m) {
    std::vector<Coorientation> out;
    int E = m.num_edges();
    for (uint64_t mask = 0; mask < (uint64_t(1) << E); ++mask) {
        Coorientation c;
        c.bits.resize(E);
        for (int e = 0; e < E; ++e) c.bits[e] = (mask >> (E - 1 - e)) & 1;
        if (is_eulerian(m, c)) out.push_back(c);
    }
    return out;
}

Coorientation all_up_right(const MultiCurveMap& m) {
    // Grid maps: horizontal edges cooriented north, vertical edges east.
    // North = left of an east dart; east = right of a north dart.
    Coorientation c;
    c.bits.resize(m.num_edges());
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
        int dir = m.first_dart(e) % 4;
        if (e % 2 == 0) // horizontal edge: first dart is E (0) or W (2)
            c.bits[e] = dir == 0 ? 1 : 0;
        else // vertical: first dart N (1) or S (3); east = right of north
            c.bits[e] = dir == 1 ? 0 : 1;
    }
    return c;
}

} // namespace

TEST_CASE("t1: all four coorientations are Eulerian") {
    MultiCurveMap m = make_t1_map();
    auto oracle = brute_force_eulerian(m);
    auto fast = enumerate_eulerian(m);
    CHECK(oracle.size() == 4);
    CHECK(fast.size() == oracle.size());
    for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == oracle[i]);
    // Loop edges force opposite senses at the shared vertex: every vertex is
    // non-alternating here.
    for (const auto& c : fast) CHECK(vertex_type(m, c, 0) == VertexType::non_alternating);
}

TEST_CASE("t6: enumeration matches the exhaustive filter") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto oracle = brute_force_eulerian(m);
    auto fast = enumerate_eulerian(m);
    REQUIRE(fast.size() == oracle.size());
    for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == oracle[i]);
    CHECK(fast.size() > 0);
}

TEST_CASE("t6 all-up/all-right is Eulerian and cyclic") {
    MultiCurveMap m = make_grid_map(2, 3);
    Coorientation c = all_up_right(m);
    CHECK(is_eulerian(m, c));
    auto res = check_acyclic(m, c);
    CHECK_FALSE(res.acyclic);
    CHECK(res.cycle_faces.size() >= 2);
    // Every grid vertex sees a consistently cooriented pair of strands.
    for (VertexId v = 0; v < m.num_vertices(); ++v)
        CHECK(vertex_type(m, c, v) == VertexType::non_alternating);
}

TEST_CASE("flipping one bit of an Eulerian coorientation breaks it (loop-free map)") {
    MultiCurveMap m = make_grid_map(2, 3);
    for (const auto& c : enumerate_eulerian(m)) {
        Coorientation d = c;
        d.bits[3] ^= 1;
        CHECK_FALSE(is_eulerian(m, d));
    }
}

TEST_CASE("checkerboard coorientation on the 2x2 grid is alternating") {
    MultiCurveMap m = make_grid_map(2, 2);
    bool found_alternating = false;
    for (const auto& c : enumerate_eulerian(m)) {
        bool all_alt = true;
        for (VertexId v = 0; v < m.num_vertices(); ++v)
            all_alt &= vertex_type(m, c, v) == VertexType::alternating;
        found_alternating |= all_alt;
    }
    CHECK(found_alternating);
}

TEST_CASE("vertex_type rejects non-Eulerian input") {
    MultiCurveMap m = make_grid_map(2, 3);
    Coorientation c;
    c.bits.assign(m.num_edges(), 1);
    if (!is_eulerian(m, c)) CHECK_THROWS_AS(vertex_type(m, c, 0), domain_error);
}

TEST_CASE("cohomology evaluation") {
    MultiCurveMap m = make_grid_map(2, 3);
    Coorientation c = all_up_right(m);

    SUBCASE("empty walk evaluates to zero") { CHECK(cohomology_eval(m, c, {}) == 0); }

    SUBCASE("horizontal dual cycle crossing the three vertical edges") {
        // Faces of row 0: cells (0,0),(0,1),(0,2); cross the vertical edges
        // between them: edges 2*(0*3+j)+1 are vertical at x_j.
        DualWalk walk;
        for (int j = 0; j < 3; ++j) {
            EdgeId e = 2 * j + 1;
            // Orient each step so the walk chains; try both and pick.
            DualStep s{e, true};
            walk.push_back(s);
        }
        // Fix step orientations to chain: brute force over 2^3.
        bool ok = false;
        for (int mask = 0; mask < 8 && !ok; ++mask) {
            DualWalk w = walk;
            for (int j = 0; j < 3; ++j) w[j].forward = (mask >> j) & 1;
            try {
                check_closed_walk(m, w);
                ok = true;
                int val = cohomology_eval(m, c, w);
                CHECK((val == 3 || val == -3));
            } catch (const domain_error&) {
            }
        }
        CHECK(ok);
    }

    SUBCASE("vertex links evaluate to zero for Eulerian coorientations") {
        for (const auto& eta : enumerate_eulerian(m))
            for (VertexId v = 0; v < m.num_vertices(); ++v)
                CHECK(cohomology_eval(m, eta, vertex_link_walk(m, v)) == 0);
    }

    SUBCASE("parity: evaluation matches walk length mod 2") {
        std::mt19937_64 rng(11);
        auto etas = enumerate_eulerian(m);
        for (int trial = 0; trial < 50; ++trial) {
            // Random closed walk: random walk in the dual until it returns.
            FaceId start = rng() % m.num_faces();
            DualWalk w;
            FaceId cur = start;
            for (int steps = 0; steps < 200; ++steps) {
                EdgeId e = rng() % m.num_edges();
                const auto& de = m.dual_edges()[e];
                if (de.left == cur) {
                    w.push_back({e, false});
                    cur = de.right;
                } else if (de.right == cur) {
                    w.push_back({e, true});
                    cur = de.left;
                } else {
                    continue;
                }
                if (cur == start && !w.empty()) break;
            }
            if (cur != start) continue;
            const auto& eta = etas[rng() % etas.size()];
            int val = cohomology_eval(m, eta, w);
            CHECK(((val % 2) + 2) % 2 == static_cast<int>(w.size() % 2));
        }
    }
}

TEST_CASE("homologous dual cycles evaluate equally") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    std::mt19937_64 rng(13);
    // Perturb a cycle by a vertex-link boundary: splice the link of a vertex
    // on the cycle's path.  Homologous by construction.
    for (int trial = 0; trial < 30; ++trial) {
        const auto& eta = etas[rng() % etas.size()];
        for (VertexId v = 0; v < m.num_vertices(); ++v) {
            DualWalk link = vertex_link_walk(m, v);
            // The link itself is null-homotopic: evaluation must be 0, which
            // is the homologous-cycles property against the empty cycle.
            CHECK(cohomology_eval(m, eta, link) == 0);
        }
    }
}

TEST_CASE("t1: every Eulerian coorientation is cyclic (dual loops)") {
    MultiCurveMap m = make_t1_map();
    for (const auto& c : enumerate_eulerian(m)) {
        auto res = check_acyclic(m, c);
        CHECK_FALSE(res.acyclic);
        CHECK(res.cycle_faces.size() >= 1);
    }
}

TEST_CASE("t6 acyclic stratum: class evaluates to (+-1, 0)") {
    MultiCurveMap m = make_grid_map(2, 3);
    // Dual basis cycles: horizontal (crossing verticals of row 0) and
    // vertical (crossing horizontals of column 0).
    auto chain = [&](std::vector<EdgeId> edges) {
        DualWalk w;
        for (EdgeId e : edges) w.push_back({e, true});
        // Orient steps to chain.
        int n = static_cast<int>(edges.size());
        for (int mask = 0; mask < (1 << n); ++mask) {
            DualWalk t = w;
            for (int i = 0; i < n; ++i) t[i].forward = (mask >> i) & 1;
            try {
                check_closed_walk(m, t);
                return t;
            } catch (const domain_error&) {
            }
        }
        throw std::logic_error("could not orient the chain");
    };
    DualWalk horiz = chain({1, 3, 5});   // vertical edges of row 0
    DualWalk vert = chain({0, 6});       // horizontal edges of column 0

    int acyclic_count = 0;
    for (const auto& c : enumerate_eulerian(m)) {
        bool acy = is_acyclic(m, c);
        int a = cohomology_eval(m, c, horiz);
        int b = cohomology_eval(m, c, vert);
        if (acy) {
            ++acyclic_count;
            CHECK(std::abs(a) == 1);
            CHECK(b == 0);
        }
    }
    CHECK(acyclic_count > 0);
}

TEST_CASE("sinks, flips, cohomology preservation") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    // Dual cycle basis via spanning tree (for cohomology comparison).
    for (const auto& c : etas) {
        auto sinks = sink_faces(m, c);
        if (is_acyclic(m, c)) CHECK(!sinks.empty());
        for (FaceId f : sinks) {
            Coorientation d = flip(m, c, f);
            CHECK(is_eulerian(m, d));
            // Differs exactly on the boundary of f.
            for (EdgeId e = 0; e < m.num_edges(); ++e) {
                const auto& de = m.dual_edges()[e];
                bool on_boundary = de.left == f || de.right == f;
                CHECK((c.bits[e] != d.bits[e]) == on_boundary);
            }
            // The flipped face is now a source: every incident arc leaves it.
            for (const auto& a : oriented_dual(m, d))
                if (m.dual_edges()[a.edge].left == f || m.dual_edges()[a.edge].right == f)
                    CHECK(a.from == f);
        }
        // Flipping a non-sink face fails.
        for (FaceId f = 0; f < m.num_faces(); ++f)
            if (std::find(sinks.begin(), sinks.end(), f) == sinks.end())
                CHECK_THROWS_AS(flip(m, c, f), domain_error);
    }
}

TEST_CASE("flip algorithm cycles with period exactly n") {
    MultiCurveMap m = make_grid_map(2, 3);
    int n = m.num_faces();
    for (const auto& c : enumerate_eulerian(m)) {
        if (!is_acyclic(m, c)) continue;
        for (const auto& order : partial_representations(m, c, 10)) {
            auto seq = flip_algorithm(m, c, order);
            REQUIRE(static_cast<int>(seq.size()) == n + 1);
            CHECK(seq.front() == c);
            CHECK(seq.back() == c);
            for (int k = 1; k < n; ++k) CHECK_FALSE(seq[k] == c);
            // Straddle condition at every step.
            std::vector<int> pos(n);
            for (int i = 0; i < n; ++i) pos[order[i]] = i + 1; // 1-based
            for (int k = 1; k <= n; ++k)
                for (EdgeId e = 0; e < m.num_edges(); ++e) {
                    const auto& de = m.dual_edges()[e];
                    bool same = seq[k].bits[e] == c.bits[e];
                    bool both_greater = pos[de.left] > k && pos[de.right] > k;
                    bool both_leq = pos[de.left] <= k && pos[de.right] <= k;
                    CHECK(same == (both_greater || both_leq));
                }
            // Intermediate coorientations stay Eulerian, acyclic, cohomologous.
            for (int k = 0; k <= n; ++k) {
                CHECK(is_eulerian(m, seq[k]));
                CHECK(is_acyclic(m, seq[k]));
            }
        }
    }
}

TEST_CASE("coherent order and representations") {
    MultiCurveMap m = make_grid_map(2, 3);
    for (const auto& c : enumerate_eulerian(m)) {
        if (!is_acyclic(m, c)) continue;
        CoherentOrder ord = coherent_order(m, c);
        auto reps = representations(m, c, 50);
        CHECK(!reps.empty());
        for (const auto& r : reps) CHECK(extends_order(ord, r));
        // Determinism of the first representation.
        auto again = representations(m, c, 1);
        CHECK(again[0] == reps[0]);

        // Linear extension count against a naive counter on small instances.
        auto all = representations(m, c, 100000);
        // Naive: recursively count.
        std::vector<std::vector<int>> less = ord.less;
        std::vector<int> indeg(ord.size(), 0);
        for (int a = 0; a < ord.size(); ++a)
            for (int b : less[a]) ++indeg[b];
        std::function<long long(std::vector<int>&, std::vector<char>&)> cnt =
            [&](std::vector<int>& deg, std::vector<char>& used) -> long long {
            long long total = 0;
            bool any = false;
            for (int x = 0; x < ord.size(); ++x) {
                if (used[x] || deg[x] != 0) continue;
                any = true;
                used[x] = 1;
                for (int b : less[x]) --deg[b];
                total += cnt(deg, used);
                for (int b : less[x]) ++deg[b];
                used[x] = 0;
            }
            if (!any) {
                bool all_used = true;
                for (char u : used) all_used &= u != 0;
                return all_used ? 1 : 0;
            }
            return total;
        };
        std::vector<char> used(ord.size(), 0);
        long long expected = cnt(indeg, used);
        if (expected <= 100000) CHECK(static_cast<long long>(all.size()) == expected);
        break; // one instance suffices for the counting oracle
    }
}

TEST_CASE("coorientation json round trip") {
    MultiCurveMap m = make_grid_map(2, 3);
    auto etas = enumerate_eulerian(m);
    std::string text = coorientation_to_json(m, etas[0]);
    Coorientation back = parse_coorientation_json(m, text);
    CHECK(back == etas[0]);
}
