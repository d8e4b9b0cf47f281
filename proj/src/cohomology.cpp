#include "birkhoff/cohomology.hpp"

#include <algorithm>
#include <limits>

#include "json.hpp"

namespace birkhoff {

long long cochain_eval(const MultiCurveMap& map, const Cochain& c, const DualWalk& walk) {
    check_closed_walk(map, walk);
    long long sum = 0;
    for (const DualStep& s : walk) sum += s.forward ? c.weights[s.edge] : -c.weights[s.edge];
    return sum;
}

bool is_cocycle(const MultiCurveMap& map, const Cochain& c) {
    if (static_cast<int>(c.weights.size()) != map.num_edges()) return false;
    for (VertexId v = 0; v < map.num_vertices(); ++v)
        if (cochain_eval(map, c, vertex_link_walk(map, v)) != 0) return false;
    return true;
}

Cochain class_of(const MultiCurveMap& map, const Coorientation& eta) {
    if (!is_eulerian(map, eta)) fail("NotEulerian", "class_of requires an Eulerian coorientation");
    Cochain c;
    c.weights.resize(map.num_edges());
    for (EdgeId e = 0; e < map.num_edges(); ++e) c.weights[e] = eta.bits[e] ? 1 : -1;
    return c;
}

bool cochain_equivalent(const MultiCurveMap& map, const Cochain& c1, const Cochain& c2) {
    int F = map.num_faces();
    std::vector<long long> h(F, 0);
    std::vector<char> set(F, 0);
    set[0] = 1;
    // Propagate potentials over a spanning structure, then check every edge.
    std::vector<FaceId> stack{0};
    std::vector<std::vector<std::pair<EdgeId, FaceId>>> adj(F);
    for (EdgeId e = 0; e < map.num_edges(); ++e) {
        const auto& de = map.dual_edges()[e];
        adj[de.left].push_back({e, de.right});
        adj[de.right].push_back({e, de.left});
    }
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (auto [e, g] : adj[f]) {
            if (set[g]) continue;
            const auto& de = map.dual_edges()[e];
            long long diff = c1.weights[e] - c2.weights[e]; // h[left] - h[right]
            h[g] = (g == de.left) ? h[de.right] + diff : h[de.left] - diff;
            set[g] = 1;
            stack.push_back(g);
        }
    }
    for (EdgeId e = 0; e < map.num_edges(); ++e) {
        const auto& de = map.dual_edges()[e];
        if (h[de.left] - h[de.right] != c1.weights[e] - c2.weights[e]) return false;
    }
    return true;
}

namespace {

// Arc of the constraint graph: crossing edge e toward `to`, with length
// 1 -/+ weight depending on the crossing direction.
struct Arc {
    FaceId from, to;
    EdgeId edge;
    bool forward; // crossing in the reference direction
    long long len;
};

struct Solved {
    std::vector<long long> dist;
    std::vector<long long> odd; // parity-normalized weights
};

std::variant<Solved, InfeasibilityCertificate> solve_heights(const MultiCurveMap& map,
                                                             const Cochain& omega, FaceId base) {
    int F = map.num_faces();
    int E = map.num_edges();

    // Parity normalization: find a mod-2 face potential p with
    // weight + p[left] - p[right] odd on every edge.
    std::vector<int> p(F, -1);
    p[base] = 0;
    std::vector<std::vector<std::pair<EdgeId, FaceId>>> adj(F);
    for (EdgeId e = 0; e < E; ++e) {
        const auto& de = map.dual_edges()[e];
        adj[de.left].push_back({e, de.right});
        adj[de.right].push_back({e, de.left});
    }
    std::vector<FaceId> stack{base};
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (auto [e, g] : adj[f]) {
            int need = static_cast<int>(((omega.weights[e] % 2) + 2) % 2) ^ 1; // p[left]^p[right]
            int want = p[f] ^ need;
            if (g == f) {
                if (need != 0)
                    fail("ParityMismatch", "even weight on a dual loop (odd-length cycle)");
                continue;
            }
            if (p[g] == -1) {
                p[g] = want;
                stack.push_back(g);
            } else if (p[g] != want) {
                fail("ParityMismatch", "class parity differs from the multi-curve's");
            }
        }
    }
    std::vector<long long> odd(E);
    for (EdgeId e = 0; e < E; ++e) {
        const auto& de = map.dual_edges()[e];
        odd[e] = omega.weights[e] + p[de.left] - p[de.right];
        if (((odd[e] % 2) + 2) % 2 != 1) throw std::logic_error("parity normalization failed");
    }

    // Difference constraints h[to] <= h[from] + len; Bellman-Ford from base.
    std::vector<Arc> arcs;
    arcs.reserve(2 * E);
    for (EdgeId e = 0; e < E; ++e) {
        const auto& de = map.dual_edges()[e];
        arcs.push_back({de.right, de.left, e, true, 1 - odd[e]});
        arcs.push_back({de.left, de.right, e, false, 1 + odd[e]});
    }
    std::vector<long long> dist(F, std::numeric_limits<long long>::max() / 4);
    std::vector<int> pred(F, -1); // index into arcs
    dist[base] = 0;
    int last_relaxed = -1;
    for (int round = 0; round < F; ++round) {
        last_relaxed = -1;
        for (size_t i = 0; i < arcs.size(); ++i) {
            const Arc& a = arcs[i];
            if (dist[a.from] + a.len < dist[a.to]) {
                dist[a.to] = dist[a.from] + a.len;
                pred[a.to] = static_cast<int>(i);
                last_relaxed = a.to;
            }
        }
        if (last_relaxed < 0) break;
    }
    if (last_relaxed >= 0) {
        // Negative cycle: walk predecessors F times to land on it, collect it.
        int x = last_relaxed;
        for (int i = 0; i < F; ++i) x = arcs[pred[x]].from;
        DualWalk cycle;
        int cur = x;
        do {
            const Arc& a = arcs[pred[cur]];
            cycle.push_back({a.edge, a.forward});
            cur = a.from;
        } while (cur != x);
        std::reverse(cycle.begin(), cycle.end());
        InfeasibilityCertificate cert;
        cert.cycle = cycle;
        cert.length = static_cast<long long>(cycle.size());
        cert.omega = cochain_eval(map, omega, cycle);
        if (!(cert.length < cert.omega))
            throw std::logic_error("negative cycle did not certify infeasibility");
        return cert;
    }
    return Solved{dist, odd};
}

} // namespace

std::variant<HeightResult, InfeasibilityCertificate> height_of(const MultiCurveMap& map,
                                                               const Cochain& omega, FaceId base) {
    if (!is_cocycle(map, omega))
        throw std::invalid_argument("weight vector is not a cocycle (vertex-link sums nonzero)");
    auto res = solve_heights(map, omega, base);
    if (std::holds_alternative<InfeasibilityCertificate>(res))
        return std::get<InfeasibilityCertificate>(res);
    auto& s = std::get<Solved>(res);
    HeightResult h;
    h.base = base;
    h.height = s.dist;
    h.odd_weights = s.odd;
    return h;
}

Coorientation coorientation_from_height(const MultiCurveMap& map, const HeightResult& h) {
    Coorientation eta;
    eta.bits.resize(map.num_edges());
    for (EdgeId e = 0; e < map.num_edges(); ++e) {
        const auto& de = map.dual_edges()[e];
        long long jump = h.height[de.left] - h.height[de.right] + h.odd_weights[e];
        if (jump != 1 && jump != -1) throw std::logic_error("height gradient is not a unit jump");
        eta.bits[e] = jump > 0 ? 1 : 0;
    }
    return eta;
}

ConstructResult construct_coorientation(const MultiCurveMap& map, const Cochain& omega) {
    auto res = height_of(map, omega, 0);
    if (std::holds_alternative<InfeasibilityCertificate>(res))
        return std::get<InfeasibilityCertificate>(res);
    Coorientation eta = coorientation_from_height(map, std::get<HeightResult>(res));
    if (!is_eulerian(map, eta)) throw std::logic_error("height gradient is not Eulerian");
    return eta;
}

Cochain parse_cochain_json(const MultiCurveMap& map, const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cochain file is not valid JSON: ") + e.what());
    }
    if (!j.contains("weights")) throw std::invalid_argument("cochain file must contain \"weights\"");
    Cochain c;
    for (const auto& w : j.at("weights")) c.weights.push_back(w.get<long long>());
    if (static_cast<int>(c.weights.size()) != map.num_edges())
        throw std::invalid_argument("cochain has " + std::to_string(c.weights.size()) +
                                    " weights but the map has " + std::to_string(map.num_edges()) +
                                    " edges");
    if (!is_cocycle(map, c))
        throw std::invalid_argument("cochain is not a cocycle: vertex-link sums must vanish");
    return c;
}

std::string cochain_to_json(const MultiCurveMap& map, const Cochain& c) {
    (void)map;
    nlohmann::json j;
    j["weights"] = c.weights;
    return j.dump(2);
}

} // namespace birkhoff
