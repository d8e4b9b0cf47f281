#include "birkhoff/coorient.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace birkhoff {

FaceId dual_step_source(const MultiCurveMap& map, const DualStep& s) {
    const auto& de = map.dual_edges()[s.edge];
    return s.forward ? de.right : de.left;
}

FaceId dual_step_target(const MultiCurveMap& map, const DualStep& s) {
    const auto& de = map.dual_edges()[s.edge];
    return s.forward ? de.left : de.right;
}

void check_closed_walk(const MultiCurveMap& map, const DualWalk& walk) {
    for (size_t i = 0; i < walk.size(); ++i) {
        if (walk[i].edge < 0 || walk[i].edge >= map.num_edges())
            fail("NotAClosedWalk", "walk references an unknown edge");
        const DualStep& next = walk[(i + 1) % walk.size()];
        if (dual_step_target(map, walk[i]) != dual_step_source(map, next))
            fail("NotAClosedWalk", "walk steps do not chain at position " + std::to_string(i));
    }
}

DualWalk vertex_link_walk(const MultiCurveMap& map, VertexId v) {
    DualWalk walk;
    for (int s = 0; s < 4; ++s) {
        Dart d = map.rotation_at(v, s);
        walk.push_back({map.dart_edge(d), map.is_first_dart(d)});
    }
    check_closed_walk(map, walk);
    return walk;
}

Sense dart_sense(const MultiCurveMap& map, const Coorientation& c, Dart d) {
    bool left_of_first = c.bits[map.dart_edge(d)] != 0;
    bool left_of_d = map.is_first_dart(d) ? left_of_first : !left_of_first;
    return left_of_d ? Sense::ccw : Sense::cw;
}

bool is_eulerian(const MultiCurveMap& map, const Coorientation& c) {
    if (static_cast<int>(c.bits.size()) != map.num_edges()) return false;
    for (VertexId v = 0; v < map.num_vertices(); ++v) {
        int ccw = 0;
        for (int s = 0; s < 4; ++s)
            if (dart_sense(map, c, map.rotation_at(v, s)) == Sense::ccw) ++ccw;
        if (ccw != 2) return false;
    }
    return true;
}

static void require_eulerian(const MultiCurveMap& map, const Coorientation& c) {
    if (!is_eulerian(map, c)) fail("NotEulerian", "coorientation is not Eulerian");
}

VertexType vertex_type(const MultiCurveMap& map, const Coorientation& c, VertexId v) {
    require_eulerian(map, c);
    Sense s0 = dart_sense(map, c, map.rotation_at(v, 0));
    Sense s2 = dart_sense(map, c, map.rotation_at(v, 2));
    // Eulerian and strictly alternating iff opposite darts agree.
    return s0 == s2 ? VertexType::alternating : VertexType::non_alternating;
}

std::vector<Coorientation> enumerate_eulerian(const MultiCurveMap& map) {
    int E = map.num_edges();
    int V = map.num_vertices();
    std::vector<Coorientation> out;
    std::vector<uint8_t> bits(E, 0);
    // Per vertex: number of darts with decided sense, and how many are ccw.
    std::vector<int> decided(V, 0), ccw(V, 0);

    auto apply = [&](EdgeId e, int delta) {
        for (Dart d : {map.first_dart(e), map.second_dart(e)}) {
            VertexId v = map.dart_vertex(d);
            decided[v] += delta;
            if (dart_sense(map, {bits}, d) == Sense::ccw) ccw[v] += delta;
        }
    };
    auto feasible = [&](EdgeId e) {
        for (Dart d : {map.first_dart(e), map.second_dart(e)}) {
            VertexId v = map.dart_vertex(d);
            if (ccw[v] > 2 || decided[v] - ccw[v] > 2) return false;
            if (decided[v] == 4 && ccw[v] != 2) return false;
        }
        return true;
    };

    std::function<void(EdgeId)> rec = [&](EdgeId e) {
        if (e == E) {
            out.push_back({bits});
            return;
        }
        for (uint8_t b : {0, 1}) {
            bits[e] = b;
            apply(e, +1);
            if (feasible(e)) rec(e + 1);
            apply(e, -1);
        }
        bits[e] = 0;
    };
    rec(0);
    return out;
}

int cohomology_eval(const MultiCurveMap& map, const Coorientation& c, const DualWalk& walk) {
    check_closed_walk(map, walk);
    int sum = 0;
    for (const DualStep& s : walk)
        sum += (s.forward == (c.bits[s.edge] != 0)) ? 1 : -1;
    return sum;
}

std::vector<OrientedDualArc> oriented_dual(const MultiCurveMap& map, const Coorientation& c) {
    std::vector<OrientedDualArc> arcs;
    arcs.reserve(map.num_edges());
    for (EdgeId e = 0; e < map.num_edges(); ++e) {
        const auto& de = map.dual_edges()[e];
        if (c.bits[e])
            arcs.push_back({e, de.right, de.left});
        else
            arcs.push_back({e, de.left, de.right});
    }
    return arcs;
}

AcyclicityResult check_acyclic(const MultiCurveMap& map, const Coorientation& c) {
    require_eulerian(map, c);
    int F = map.num_faces();
    std::vector<std::vector<std::pair<FaceId, EdgeId>>> adj(F);
    for (const auto& a : oriented_dual(map, c)) adj[a.from].push_back({a.to, a.edge});

    // Iterative DFS with cycle extraction from the active path.
    std::vector<int> color(F, 0); // 0 white, 1 on path, 2 done
    std::vector<FaceId> path;
    std::vector<EdgeId> path_edges;
    AcyclicityResult res;

    std::function<bool(FaceId)> dfs = [&](FaceId f) -> bool {
        color[f] = 1;
        path.push_back(f);
        for (auto [g, e] : adj[f]) {
            if (color[g] == 1) {
                auto it = std::find(path.begin(), path.end(), g);
                res.cycle_faces.assign(it, path.end());
                res.cycle_edges.assign(path_edges.begin() + (it - path.begin()), path_edges.end());
                res.cycle_edges.push_back(e);
                return false;
            }
            if (color[g] == 0) {
                path_edges.push_back(e);
                if (!dfs(g)) return false;
                path_edges.pop_back();
            }
        }
        color[f] = 2;
        path.pop_back();
        return true;
    };

    for (FaceId f = 0; f < F; ++f)
        if (color[f] == 0 && !dfs(f)) {
            res.acyclic = false;
            return res;
        }
    res.acyclic = true;
    return res;
}

bool is_acyclic(const MultiCurveMap& map, const Coorientation& c) {
    return check_acyclic(map, c).acyclic;
}

std::vector<FaceId> sink_faces(const MultiCurveMap& map, const Coorientation& c) {
    require_eulerian(map, c);
    std::vector<char> has_out(map.num_faces(), 0);
    for (const auto& a : oriented_dual(map, c)) has_out[a.from] = 1;
    std::vector<FaceId> sinks;
    for (FaceId f = 0; f < map.num_faces(); ++f)
        if (!has_out[f]) sinks.push_back(f);
    return sinks;
}

Coorientation flip(const MultiCurveMap& map, const Coorientation& c, FaceId f) {
    require_eulerian(map, c);
    auto sinks = sink_faces(map, c);
    if (std::find(sinks.begin(), sinks.end(), f) == sinks.end())
        fail("NotASink", "face " + std::to_string(f) + " is not a sink");
    Coorientation out = c;
    for (EdgeId e : map.face_edges()[f]) out.bits[e] ^= 1;
    return out;
}

std::vector<Coorientation> flip_algorithm(const MultiCurveMap& map, const Coorientation& c,
                                          const FaceOrder& order) {
    auto acy = check_acyclic(map, c);
    if (!acy.acyclic) fail("NotAcyclic", "flip algorithm requires an acyclic coorientation");
    int F = map.num_faces();
    if (static_cast<int>(order.size()) != F)
        fail("OrderInconsistent", "face order must list every face exactly once");
    std::vector<int> pos(F, -1);
    for (int i = 0; i < F; ++i) {
        if (order[i] < 0 || order[i] >= F || pos[order[i]] != -1)
            fail("OrderInconsistent", "face order must list every face exactly once");
        pos[order[i]] = i;
    }
    for (const auto& a : oriented_dual(map, c))
        if (!(pos[a.to] < pos[a.from]))
            fail("OrderInconsistent", "face order does not extend the coorientation");

    std::vector<Coorientation> seq{c};
    for (FaceId f : order) {
        auto sinks = sink_faces(map, seq.back());
        if (std::find(sinks.begin(), sinks.end(), f) == sinks.end())
            fail("OrderInconsistent", "face " + std::to_string(f) + " is not minimal at its turn");
        seq.push_back(flip(map, seq.back(), f));
    }
    return seq;
}

CoherentOrder coherent_order(const MultiCurveMap& map, const Coorientation& c) {
    auto acy = check_acyclic(map, c);
    if (!acy.acyclic) fail("NotAcyclic", "coherent order requires an acyclic coorientation");

    CoherentOrder ord;
    ord.num_faces = map.num_faces();
    ord.num_vertices = map.num_vertices();
    ord.less.assign(ord.size(), {});
    auto add = [&](int a, int b) { ord.less[a].push_back(b); };

    for (const auto& a : oriented_dual(map, c)) add(ord.face_element(a.to), ord.face_element(a.from));

    for (VertexId v = 0; v < map.num_vertices(); ++v) {
        // Quadrant q_i sits between the darts at slots i and i+1; the
        // coorientation enters it from edge i when that dart is ccw, and
        // from edge i+1 when that dart is cw.
        std::array<Sense, 4> sense;
        for (int s = 0; s < 4; ++s) sense[s] = dart_sense(map, c, map.rotation_at(v, s));
        std::array<FaceId, 4> quad;
        for (int s = 0; s < 4; ++s) quad[s] = map.quadrant_face(v, s);

        // A face on two adjacent quadrants would make edge i+1 a dual loop,
        // contradicting acyclicity; opposite quadrants may share a face.
        for (int i = 0; i < 4; ++i)
            if (quad[i] == quad[(i + 1) % 4])
                throw std::logic_error("face covers adjacent quadrants under an acyclic coorientation");

        auto quad_kind = [&](int i) {
            Sense a = sense[i], b = sense[(i + 1) % 4];
            if (a == Sense::ccw && b == Sense::cw) return +1; // local sink
            if (a == Sense::cw && b == Sense::ccw) return -1; // local source
            return 0;                                         // flow-through
        };

        int vx = ord.vertex_element(v);
        if (vertex_type(map, c, v) == VertexType::alternating) {
            for (int i = 0; i < 4; ++i) {
                int k = quad_kind(i);
                if (k > 0) add(ord.face_element(quad[i]), vx);
                else add(vx, ord.face_element(quad[i]));
            }
        } else {
            int src = -1, snk = -1;
            for (int i = 0; i < 4; ++i) {
                if (quad_kind(i) < 0) src = i;
                if (quad_kind(i) > 0) snk = i;
            }
            if (src < 0 || snk < 0)
                throw std::logic_error("non-alternating vertex without source/sink quadrant");
            if (quad[src] == quad[snk])
                throw std::logic_error("face is both source and sink quadrant at a non-alternating vertex");
            for (int i = 0; i < 4; ++i) {
                if (i == src) add(vx, ord.face_element(quad[i]));
                else add(ord.face_element(quad[i]), vx);
            }
        }
    }

    for (auto& v : ord.less) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return ord;
}

static std::vector<std::vector<int>> linear_extensions(int n,
                                                       const std::vector<std::vector<int>>& less,
                                                       size_t limit) {
    std::vector<int> indeg(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b : less[a]) ++indeg[b];

    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<char> used(n, 0);

    std::function<void()> rec = [&]() {
        if (out.size() >= limit) return;
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int x = 0; x < n && out.size() < limit; ++x) {
            if (used[x] || indeg[x] != 0) continue;
            used[x] = 1;
            for (int b : less[x]) --indeg[b];
            cur.push_back(x);
            rec();
            cur.pop_back();
            for (int b : less[x]) ++indeg[b];
            used[x] = 0;
        }
    };
    rec();
    return out;
}

std::vector<std::vector<int>> representations(const MultiCurveMap& map, const Coorientation& c,
                                              size_t limit) {
    CoherentOrder ord = coherent_order(map, c);
    return linear_extensions(ord.size(), ord.less, limit);
}

std::vector<FaceOrder> partial_representations(const MultiCurveMap& map, const Coorientation& c,
                                               size_t limit) {
    auto acy = check_acyclic(map, c);
    if (!acy.acyclic) fail("NotAcyclic", "partial representations require an acyclic coorientation");
    std::vector<std::vector<int>> less(map.num_faces());
    for (const auto& a : oriented_dual(map, c)) less[a.to].push_back(a.from);
    return linear_extensions(map.num_faces(), less, limit);
}

bool extends_order(const CoherentOrder& ord, const std::vector<int>& total) {
    std::vector<int> pos(ord.size(), -1);
    if (static_cast<int>(total.size()) != ord.size()) return false;
    for (size_t i = 0; i < total.size(); ++i) {
        if (total[i] < 0 || total[i] >= ord.size() || pos[total[i]] != -1) return false;
        pos[total[i]] = static_cast<int>(i);
    }
    for (int a = 0; a < ord.size(); ++a)
        for (int b : ord.less[a])
            if (!(pos[a] < pos[b])) return false;
    return true;
}

Coorientation parse_coorientation_json(const MultiCurveMap& map, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("coorientation file is not valid JSON: ") + e.what());
    }
    if (!j.contains("bits")) throw std::invalid_argument("coorientation file must contain \"bits\"");
    Coorientation c;
    for (const auto& b : j.at("bits")) {
        int v = b.get<int>();
        if (v != 0 && v != 1) throw std::invalid_argument("coorientation bits must be 0 or 1");
        c.bits.push_back(static_cast<uint8_t>(v));
    }
    if (static_cast<int>(c.bits.size()) != map.num_edges())
        throw std::invalid_argument("coorientation has " + std::to_string(c.bits.size()) +
                                    " bits but the map has " + std::to_string(map.num_edges()) + " edges");
    return c;
}

std::string coorientation_to_json(const MultiCurveMap& map, const Coorientation& c) {
    nlohmann::json j;
    j["map"] = map.name();
    j["bits"] = nlohmann::json::array();
    for (uint8_t b : c.bits) j["bits"].push_back(static_cast<int>(b));
    return j.dump(2);
}

} // namespace birkhoff
