#include "birkhoff/map.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

namespace birkhoff {

MultiCurveMap::MultiCurveMap(std::vector<std::array<Dart, 4>> rotations,
                             std::vector<std::array<Dart, 2>> edge_pairs,
                             std::string name)
    : name_(std::move(name)), rotations_(std::move(rotations)) {
    if (rotations_.empty())
        throw std::invalid_argument("a filling multi-curve has at least one crossing");
    num_darts_ = 4 * static_cast<int>(rotations_.size());

    dart_vertex_.assign(num_darts_, -1);
    dart_slot_.assign(num_darts_, -1);
    for (VertexId v = 0; v < num_vertices(); ++v) {
        for (int s = 0; s < 4; ++s) {
            Dart d = rotations_[v][s];
            if (d < 0 || d >= num_darts_)
                fail("DanglingDart", "dart id " + std::to_string(d) + " out of range");
            if (dart_vertex_[d] != -1)
                fail("NonQuadrivalent", "dart " + std::to_string(d) + " appears in two rotations");
            dart_vertex_[d] = v;
            dart_slot_[d] = s;
        }
    }
    for (Dart d = 0; d < num_darts_; ++d)
        if (dart_vertex_[d] == -1)
            fail("DanglingDart", "dart " + std::to_string(d) + " missing from vertex rotations");

    edge_pair_.assign(num_darts_, -1);
    dart_edge_.assign(num_darts_, -1);
    for (const auto& pr : edge_pairs) {
        Dart a = pr[0], b = pr[1];
        if (a < 0 || a >= num_darts_ || b < 0 || b >= num_darts_)
            fail("DanglingDart", "edge references dart out of range");
        if (a == b)
            fail("BadInvolution", "dart " + std::to_string(a) + " paired with itself");
        if (edge_pair_[a] != -1 || edge_pair_[b] != -1)
            fail("BadInvolution", "dart paired twice");
        edge_pair_[a] = b;
        edge_pair_[b] = a;
        EdgeId e = static_cast<EdgeId>(edges_.size());
        edges_.push_back({std::min(a, b), std::max(a, b)});
        dart_edge_[a] = dart_edge_[b] = e;
    }
    for (Dart d = 0; d < num_darts_; ++d)
        if (edge_pair_[d] == -1)
            fail("BadInvolution", "dart " + std::to_string(d) + " is unpaired");

    derive();
}

void MultiCurveMap::derive() {
    // Face tracing: orbits of d -> rot_prev(paired(d)); the face stays on the
    // left of every dart in its cycle.
    dart_face_.assign(num_darts_, -1);
    for (Dart d0 = 0; d0 < num_darts_; ++d0) {
        if (dart_face_[d0] != -1) continue;
        FaceId f = static_cast<FaceId>(faces_.size());
        faces_.emplace_back();
        Dart d = d0;
        do {
            dart_face_[d] = f;
            faces_[f].push_back(d);
            d = face_next(d);
        } while (d != d0);
    }

    // Strand orbits pair up (one per traversal direction).
    std::vector<char> seen(num_darts_, 0);
    std::vector<char> edge_used(num_edges(), 0);
    for (Dart d0 = 0; d0 < num_darts_; ++d0) {
        if (seen[d0]) continue;
        std::vector<EdgeId> strand;
        Dart d = d0;
        do {
            seen[d] = 1;
            seen[edge_pair_[d]] = 1;
            if (!edge_used[dart_edge_[d]]) {
                edge_used[dart_edge_[d]] = 1;
                strand.push_back(dart_edge_[d]);
            }
            d = opposite(edge_pair_[d]);
        } while (d != d0);
        strands_.push_back(std::move(strand));
    }

    dual_edges_.resize(num_edges());
    face_edges_.assign(num_faces(), {});
    for (EdgeId e = 0; e < num_edges(); ++e) {
        dual_edges_[e] = {face_left(edges_[e][0]), face_left(edges_[e][1])};
        face_edges_[dual_edges_[e].left].push_back(e);
        if (dual_edges_[e].right != dual_edges_[e].left)
            face_edges_[dual_edges_[e].right].push_back(e);
    }

    int chi = num_vertices() - num_edges() + num_faces();
    if ((2 - chi) % 2 != 0 || chi > 2)
        fail("BadInvolution", "Euler characteristic " + std::to_string(chi) + " is not that of a closed surface");
    genus_ = (2 - chi) / 2;

    // Connectivity over darts under rotation + pairing.
    std::vector<char> comp(num_darts_, 0);
    std::vector<Dart> stack{0};
    comp[0] = 1;
    while (!stack.empty()) {
        Dart d = stack.back();
        stack.pop_back();
        for (Dart n : {rot_next(d), edge_pair_[d]}) {
            if (!comp[n]) {
                comp[n] = 1;
                stack.push_back(n);
            }
        }
    }
    connected_ = std::all_of(comp.begin(), comp.end(), [](char c) { return c != 0; });
    if (!connected_)
        fail("DisconnectedMap", "the multi-curve map must be connected");
}

std::vector<Dart> MultiCurveMap::strand_orbit(Dart d0) const {
    std::vector<Dart> orbit;
    Dart d = d0;
    do {
        orbit.push_back(d);
        d = opposite(edge_pair_[d]);
    } while (d != d0);
    return orbit;
}

MultiCurveMap parse_map_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("map file is not valid JSON: ") + e.what());
    }
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("map file must contain \"vertices\" and \"edges\"");

    std::vector<std::pair<int, std::array<Dart, 4>>> rows;
    for (const auto& v : j.at("vertices")) {
        auto darts = v.at("darts");
        if (!darts.is_array() || darts.size() != 4)
            fail("NonQuadrivalent", "vertex " + v.at("id").dump() + " does not have exactly 4 darts");
        rows.push_back({v.at("id").get<int>(),
                        {darts[0].get<int>(), darts[1].get<int>(), darts[2].get<int>(), darts[3].get<int>()}});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::array<Dart, 4>> rotations;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != static_cast<int>(i))
            throw std::invalid_argument("vertex ids must be 0..V-1 without gaps");
        rotations.push_back(rows[i].second);
    }

    std::vector<std::array<Dart, 2>> pairs;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("each edge must be a pair of dart ids");
        pairs.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    std::string name = j.value("name", std::string{});

    // Dart ids may be arbitrary nonnegative integers; compress them to a
    // dense order-preserving range.
    std::vector<Dart> ids;
    for (const auto& r : rotations)
        for (Dart d : r) {
            if (d < 0) fail("DanglingDart", "negative dart id");
            ids.push_back(d);
        }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        fail("NonQuadrivalent", "a dart id appears in two rotation slots");
    auto rank = [&](Dart d) {
        auto it = std::lower_bound(ids.begin(), ids.end(), d);
        if (it == ids.end() || *it != d)
            fail("DanglingDart", "edge references dart " + std::to_string(d) +
                                     " missing from the rotations");
        return static_cast<Dart>(it - ids.begin());
    };
    for (auto& r : rotations)
        for (Dart& d : r) d = rank(d);
    for (auto& pr : pairs) {
        pr[0] = rank(pr[0]);
        pr[1] = rank(pr[1]);
    }
    return MultiCurveMap(std::move(rotations), std::move(pairs), std::move(name));
}

std::string map_to_json(const MultiCurveMap& map) {
    nlohmann::json j;
    if (!map.name().empty()) j["name"] = map.name();
    j["vertices"] = nlohmann::json::array();
    for (VertexId v = 0; v < map.num_vertices(); ++v) {
        const auto& r = map.rotations()[v];
        j["vertices"].push_back({{"id", v}, {"darts", {r[0], r[1], r[2], r[3]}}});
    }
    j["edges"] = nlohmann::json::array();
    for (EdgeId e = 0; e < map.num_edges(); ++e)
        j["edges"].push_back({map.first_dart(e), map.second_dart(e)});
    return j.dump(2);
}

MultiCurveMap make_grid_map(int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("grid dimensions must be positive");
    auto vid = [&](int i, int j) { return ((i % p) + p) % p * q + ((j % q) + q) % q; };
    auto dart = [&](int i, int j, int dir) { return 4 * vid(i, j) + dir; };
    constexpr int E = 0, N = 1, W = 2, S = 3;

    std::vector<std::array<Dart, 4>> rot(static_cast<size_t>(p) * q);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j)
            rot[vid(i, j)] = {dart(i, j, E), dart(i, j, N), dart(i, j, W), dart(i, j, S)};

    std::vector<std::array<Dart, 2>> pairs;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            pairs.push_back({dart(i, j, E), dart(i, j + 1, W)});
            pairs.push_back({dart(i, j, N), dart(i + 1, j, S)});
        }
    return MultiCurveMap(std::move(rot), std::move(pairs),
                         "grid-" + std::to_string(p) + "x" + std::to_string(q));
}

MultiCurveMap make_t1_map() {
    return MultiCurveMap({{0, 1, 2, 3}}, {{0, 2}, {1, 3}}, "t1");
}

} // namespace birkhoff
