#include "birkhoff/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace birkhoff {

namespace {

constexpr int FREE_GERM = -1;

enum CornerType { START = 0, SPLIT = 1, END = 2 };

struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int x, int y) { parent[find(x)] = find(y); }
};

} // namespace

namespace detail {
// Frozen conventions, calibrated once against two independent oracles and
// pinned by regression tests: on flat-torus grids every monodromy must be
// quasi-unipotent (zero-entropy flow), and characteristic polynomials must
// agree across cohomologous acyclic coorientations.
//
// Corner routing at 4-sheet fiber arcs where the arriving and leaving
// branches lie on different resolved sheets: counterclockwise corners follow
// the arriving branch's sheet, clockwise corners the leaving branch's.
constexpr int corner_rule_ccw_cw = 1;
constexpr int corner_rule_cw_ccw = 0;
// Global surface orientation: (first-dart, fiber) frames are positive when
// the first dart's sense is counterclockwise.
constexpr int orientation_sign = 1;
} // namespace detail

SurfaceModel::SurfaceModel(const MultiCurveMap& map, const Coorientation& eta)
    : map_(&map), eta_(eta) {
    if (!is_eulerian(map, eta)) fail("NotEulerian", "surface model requires an Eulerian coorientation");
    build_skeleton();
    build_homology();
    build_pairing();
}

// Claim roles: the rectangle end at dart d occupies a half circle of fiber
// directions split in two arcs; LO is the arc at the interval start (the
// clockwise end), HI at the interval end.
static int claim_slot(const MultiCurveMap& m, const Coorientation& eta, Dart d, int role) {
    int s = m.dart_slot(d);
    bool ccw = dart_sense(m, eta, d) == Sense::ccw;
    int off = ccw ? (role == 0 ? 0 : 1) : (role == 0 ? 2 : 3);
    return (s + off) % 4;
}

static int corner_dir(const MultiCurveMap& m, const Coorientation& eta, Dart d, int type) {
    int s = m.dart_slot(d);
    bool ccw = dart_sense(m, eta, d) == Sense::ccw;
    int off = 0;
    switch (type) {
        case START: off = ccw ? 0 : 2; break;
        case SPLIT: off = ccw ? 1 : 3; break;
        case END: off = ccw ? 2 : 0; break;
    }
    return (s + off) % 4;
}

void SurfaceModel::build_skeleton() {
    const MultiCurveMap& m = *map_;
    int nd = m.num_darts();

    // Junctions: claims grouped by (vertex, slot); 4-sheet slots split by the
    // sense of the claiming dart (the flow-transverse resolution).
    std::vector<std::vector<int>> slot_claims(4 * m.num_vertices());
    for (Dart d = 0; d < nd; ++d)
        for (int role : {0, 1}) {
            int slot = claim_slot(m, eta_, d, role);
            slot_claims[4 * m.dart_vertex(d) + slot].push_back(2 * d + role);
        }

    claim_junction_.assign(2 * nd, -1);
    std::vector<std::array<int, 2>> junction_claims;
    for (auto& claims : slot_claims) {
        if (claims.empty()) continue;
        if (claims.size() == 2) {
            claim_junction_[claims[0]] = claim_junction_[claims[1]] =
                static_cast<int>(junction_claims.size());
            junction_claims.push_back({claims[0], claims[1]});
        } else if (claims.size() == 4) {
            // Flow-transverse resolution: each sheet continues into the sheet
            // of the adjacent branch (never straight across into its own
            // strand's opposite branch), which pairs opposite dart senses.
            std::array<std::vector<int>, 2> by_sense;
            for (int c : claims)
                by_sense[dart_sense(m, eta_, c / 2) == Sense::ccw ? 0 : 1].push_back(c);
            if (by_sense[0].size() != 2 || by_sense[1].size() != 2)
                throw std::logic_error("4-sheet fiber arc without a 2+2 sense split");
            for (int c : by_sense[0]) {
                Dart ccw_dart = c / 2;
                int partner = -1;
                for (int w : by_sense[1])
                    if (w / 2 != m.opposite(ccw_dart)) partner = w;
                if (partner < 0) throw std::logic_error("no adjacent opposite-sense sheet at 4-arc");
                claim_junction_[c] = claim_junction_[partner] =
                    static_cast<int>(junction_claims.size());
                junction_claims.push_back({c, partner});
            }
        } else {
            throw std::logic_error("fiber arc covered an odd number of times");
        }
    }
    num_arcs_ = static_cast<int>(junction_claims.size());

    auto claim_low_corner = [&](int claim) {
        Dart d = claim / 2;
        return 3 * d + (claim % 2 == 0 ? START : SPLIT);
    };
    auto claim_high_corner = [&](int claim) {
        Dart d = claim / 2;
        return 3 * d + (claim % 2 == 0 ? SPLIT : END);
    };

    DSU corner_dsu(3 * nd);
    for (auto& jc : junction_claims) {
        corner_dsu.unite(claim_low_corner(jc[0]), claim_low_corner(jc[1]));
        corner_dsu.unite(claim_high_corner(jc[0]), claim_high_corner(jc[1]));
    }
    corner_class_.assign(3 * nd, -1);
    int num_classes = 0;
    for (int c = 0; c < 3 * nd; ++c)
        if (corner_dsu.find(c) == c) corner_class_[c] = num_classes++;
    for (int c = 0; c < 3 * nd; ++c) corner_class_[c] = corner_class_[corner_dsu.find(c)];

    // Corner classes stay within one (vertex, direction) pair.
    for (int c = 0; c < 3 * nd; ++c) {
        int r = corner_dsu.find(c);
        if (m.dart_vertex(c / 3) != m.dart_vertex(r / 3) ||
            corner_dir(m, eta_, c / 3, c % 3) != corner_dir(m, eta_, r / 3, r % 3))
            throw std::logic_error("corner identification across distinct fiber points");
    }

    junction_low_class_.resize(num_arcs_);
    junction_high_class_.resize(num_arcs_);
    for (int j = 0; j < num_arcs_; ++j) {
        junction_low_class_[j] = corner_class_[claim_low_corner(junction_claims[j][0])];
        junction_high_class_[j] = corner_class_[claim_high_corner(junction_claims[j][0])];
        if (junction_low_class_[j] != corner_class_[claim_low_corner(junction_claims[j][1])] ||
            junction_high_class_[j] != corner_class_[claim_high_corner(junction_claims[j][1])])
            throw std::logic_error("junction endpoint classes disagree");
    }

    // Orient the rectangles by the flow co-orientation: the (first-dart,
    // fiber) frame is negatively oriented exactly when the first dart's
    // sense is counterclockwise.  Junction gluings must then be compatible;
    // with opposite-sense sheets at every junction they always are.
    std::vector<int> flip(m.num_edges());
    for (EdgeId e = 0; e < m.num_edges(); ++e)
        flip[e] = (dart_sense(m, eta_, m.first_dart(e)) == Sense::ccw ? 1 : 0) ^
                  detail::orientation_sign;
    for (auto& jc : junction_claims) {
        EdgeId e1 = m.dart_edge(jc[0] / 2), e2 = m.dart_edge(jc[1] / 2);
        int t1 = m.is_first_dart(jc[0] / 2) ? 0 : 1;
        int t2 = m.is_first_dart(jc[1] / 2) ? 0 : 1;
        if ((flip[e1] ^ flip[e2]) != (t1 == t2 ? 1 : 0))
            throw std::logic_error("flow-anchored orientation inconsistent at a junction");
    }

    // Skeleton edges: arcs then legs; edge k has end germs 2k (low side) and
    // 2k+1 (high side).
    int num_edges = num_arcs_ + m.num_edges();
    std::vector<std::array<int, 2>> edge_classes(num_edges);
    for (int j = 0; j < num_arcs_; ++j)
        edge_classes[j] = {junction_low_class_[j], junction_high_class_[j]};
    for (EdgeId e = 0; e < m.num_edges(); ++e)
        edge_classes[num_arcs_ + e] = {corner_class_[3 * m.first_dart(e) + SPLIT],
                                       corner_class_[3 * m.second_dart(e) + SPLIT]};

    // Wedges: the angular sectors of each rectangle corner, as ccw lists of
    // incident skeleton-edge germs (FREE_GERM marks the surface boundary).
    auto arc_low_germ = [&](int claim) { return 2 * claim_junction_[claim]; };
    auto arc_high_germ = [&](int claim) { return 2 * claim_junction_[claim] + 1; };
    auto leg_germ = [&](Dart d) {
        return 2 * (num_arcs_ + m.dart_edge(d)) + (m.is_first_dart(d) ? 0 : 1);
    };

    std::vector<std::vector<std::vector<int>>> wedges_at(num_classes);
    for (Dart d = 0; d < nd; ++d) {
        bool t0 = m.is_first_dart(d);
        int lo = 2 * d, hi = 2 * d + 1;
        std::vector<int> w_start, w_split, w_end;
        if (t0) {
            w_start = {FREE_GERM, arc_low_germ(lo)};
            w_split = {arc_high_germ(lo), leg_germ(d), arc_low_germ(hi)};
            w_end = {arc_high_germ(hi), FREE_GERM};
        } else {
            w_start = {arc_low_germ(lo), FREE_GERM};
            w_split = {arc_low_germ(hi), leg_germ(d), arc_high_germ(lo)};
            w_end = {FREE_GERM, arc_high_germ(hi)};
        }
        if (flip[m.dart_edge(d)]) {
            std::reverse(w_start.begin(), w_start.end());
            std::reverse(w_split.begin(), w_split.end());
            std::reverse(w_end.begin(), w_end.end());
        }
        wedges_at[corner_class_[3 * d + START]].push_back(std::move(w_start));
        wedges_at[corner_class_[3 * d + SPLIT]].push_back(std::move(w_split));
        wedges_at[corner_class_[3 * d + END]].push_back(std::move(w_end));
    }

    // Stitch the sectors around each class into a single chain (boundary
    // point) or cycle (interior point); the germ order is the rotation.
    std::vector<std::vector<int>> rotations(num_classes);
    for (int cls = 0; cls < num_classes; ++cls) {
        auto& ws = wedges_at[cls];
        int k = static_cast<int>(ws.size());
        std::map<int, std::vector<int>> first_of;
        for (int i = 0; i < k; ++i)
            if (ws[i].front() != FREE_GERM) first_of[ws[i].front()].push_back(i);
        int start = -1;
        for (int i = 0; i < k; ++i)
            if (ws[i].front() == FREE_GERM) start = i;
        bool cyclic = start < 0;
        if (cyclic) start = 0;

        std::vector<char> used(k, 0);
        std::vector<int> germs;
        int cur = start;
        while (true) {
            if (used[cur]) throw std::logic_error("wedge stitching revisited a sector");
            used[cur] = 1;
            for (size_t t = germs.empty() || ws[cur].front() == FREE_GERM ? 0 : 1;
                 t < ws[cur].size(); ++t)
                if (ws[cur][t] != FREE_GERM) germs.push_back(ws[cur][t]);
            int tail = ws[cur].back();
            if (tail == FREE_GERM) break; // chain end
            auto it = first_of.find(tail);
            if (it == first_of.end()) throw std::logic_error("wedge stitching: open arc germ");
            int nxt = -1;
            for (int cand : it->second)
                if (cand != cur) nxt = cand;
            if (nxt < 0 || (cyclic && nxt == start)) {
                if (cyclic && nxt == start) {
                    germs.pop_back(); // start germ repeated at the seam
                    break;
                }
                throw std::logic_error("wedge stitching: no successor sector");
            }
            cur = nxt;
        }
        if (static_cast<int>(std::count(used.begin(), used.end(), 1)) != k)
            throw std::logic_error("wedge stitching left sectors unused");
        rotations[cls] = std::move(germs);
    }

    skeleton_.emplace(num_classes, std::move(edge_classes), std::move(rotations),
                      std::vector<uint8_t>(num_edges, 0));
}

void SurfaceModel::build_homology() {
    const RibbonGraph& g = *skeleton_;
    int V = g.num_vertices(), E = g.num_edges();
    std::vector<std::vector<std::pair<int, int>>> adj(V); // (edge, neighbor)
    for (int e = 0; e < E; ++e) {
        adj[g.end_vertex(2 * e)].push_back({e, g.end_vertex(2 * e + 1)});
        adj[g.end_vertex(2 * e + 1)].push_back({e, g.end_vertex(2 * e)});
    }

    std::vector<char> in_tree(E, 0), seen(V, 0);
    std::vector<int> order{0};
    seen[0] = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (auto [e, w] : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                in_tree[e] = 1;
                order.push_back(w);
            }
    }
    if (static_cast<int>(order.size()) != V)
        throw std::logic_error("section surface skeleton is disconnected");

    chords_.assign(E, -1);
    chord_edges_.clear();
    for (int e = 0; e < E; ++e)
        if (!in_tree[e]) {
            chords_[e] = static_cast<int>(chord_edges_.size());
            chord_edges_.push_back(e);
        }
}

IntVec SurfaceModel::curve_class(const Walk& walk) const {
    IntVec v(chord_edges_.size(), 0);
    for (const auto& s : walk)
        if (chords_[s.edge] >= 0) v[chords_[s.edge]] += s.forward ? 1 : -1;
    return v;
}

bool SurfaceModel::walk_is_simple(const Walk& walk) const {
    std::vector<int> edges;
    std::vector<int> verts;
    const RibbonGraph& g = *skeleton_;
    for (const auto& s : walk) {
        edges.push_back(s.edge);
        verts.push_back(g.end_vertex(2 * s.edge + (s.forward ? 0 : 1)));
    }
    std::sort(edges.begin(), edges.end());
    std::sort(verts.begin(), verts.end());
    return std::adjacent_find(edges.begin(), edges.end()) == edges.end() &&
           std::adjacent_find(verts.begin(), verts.end()) == verts.end();
}

Walk SurfaceModel::vertex_loop(VertexId v) const {
    const MultiCurveMap& m = *map_;
    // Collect junctions per slot at v.
    std::array<std::vector<int>, 4> per_slot;
    std::vector<char> taken(num_arcs_, 0);
    for (int s = 0; s < 4; ++s) {
        Dart d = m.rotation_at(v, s);
        for (int role : {0, 1}) {
            int j = claim_junction_[2 * d + role];
            if (!taken[j]) {
                taken[j] = 1;
                per_slot[claim_slot(m, eta_, d, role)].push_back(j);
            }
        }
    }
    if (vertex_type(m, eta_, v) == VertexType::alternating) {
        Walk w;
        for (int s = 0; s < 4; ++s) {
            if (per_slot[s].size() != 1)
                throw std::logic_error("alternating vertex without plain fiber circle");
            w.push_back({per_slot[s][0], true});
        }
        return w;
    }
    for (int s = 0; s < 4; ++s)
        if (per_slot[s].size() == 2)
            return {{per_slot[s][0], true}, {per_slot[s][1], false}};
    throw std::logic_error("non-alternating vertex without a doubled fiber arc");
}

Curve SurfaceModel::gamma_v(VertexId v) const {
    Curve c;
    c.walk = vertex_loop(v);
    c.h1 = curve_class(c.walk);
    c.simple = walk_is_simple(c.walk);
    return c;
}

WalkStep SurfaceModel::corner_step(Dart d) const {
    const MultiCurveMap& m = *map_;
    Dart c = m.paired(d);
    Dart nxt = m.face_next(d); // == rot_prev(c)
    int in_class = corner_class_[3 * c + SPLIT];
    int out_class = corner_class_[3 * nxt + SPLIT];

    auto fits = [&](int j, WalkStep& step) {
        if (junction_low_class_[j] == in_class && junction_high_class_[j] == out_class) {
            step = {j, true};
            return true;
        }
        if (junction_high_class_[j] == in_class && junction_low_class_[j] == out_class) {
            step = {j, false};
            return true;
        }
        return false;
    };

    WalkStep via_arriving{-1, true}, via_leaving{-1, true};
    bool have_arr = false, have_dep = false;
    for (int role : {0, 1}) {
        WalkStep s{-1, true};
        if (!have_arr && fits(claim_junction_[2 * c + role], s)) {
            via_arriving = s;
            have_arr = true;
        }
        if (!have_dep && fits(claim_junction_[2 * nxt + role], s)) {
            via_leaving = s;
            have_dep = true;
        }
    }
    if (!have_arr && !have_dep)
        fail("UnsupportedCorner", "no fiber arc turns the corner at dart " + std::to_string(d));
    if (!have_arr) return via_leaving;
    if (!have_dep) return via_arriving;
    if (via_arriving.edge == via_leaving.edge) return via_arriving;
    bool c_ccw = dart_sense(m, eta_, c) == Sense::ccw;
    int rule = c_ccw ? detail::corner_rule_ccw_cw : detail::corner_rule_cw_ccw;
    return rule ? via_arriving : via_leaving;
}

Curve SurfaceModel::gamma_f(FaceId f) const {
    const MultiCurveMap& m = *map_;
    if (!is_acyclic(m, eta_)) fail("NotAcyclic", "face curves require an acyclic coorientation");
    Curve c;
    for (Dart d : m.faces()[f]) {
        c.walk.push_back({leg_edge(m.dart_edge(d)), m.is_first_dart(d)});
        c.walk.push_back(corner_step(d));
    }
    // Sanity: consecutive steps must chain.
    const RibbonGraph& g = *skeleton_;
    for (size_t i = 0; i < c.walk.size(); ++i) {
        const auto& a = c.walk[i];
        const auto& b = c.walk[(i + 1) % c.walk.size()];
        int head = g.end_vertex(2 * a.edge + (a.forward ? 1 : 0));
        int tail = g.end_vertex(2 * b.edge + (b.forward ? 0 : 1));
        if (head != tail) throw std::logic_error("face curve does not chain");
    }
    c.h1 = curve_class(c.walk);
    c.simple = walk_is_simple(c.walk);
    return c;
}

namespace {

struct Passage {
    // Positions around the class: (rotation index, sub-slot) pairs.
    std::pair<int, int> in, out;
};

} // namespace

void SurfaceModel::build_pairing() {
    const RibbonGraph& g = *skeleton_;
    int E = g.num_edges();
    int r = h1_rank();

    // Basis cycle walks: chord + tree path back.
    std::vector<std::vector<std::pair<int, int>>> adj(g.num_vertices());
    std::vector<char> in_tree(E, 1);
    for (int e : chord_edges_) in_tree[e] = 0;
    for (int e = 0; e < E; ++e)
        if (in_tree[e]) {
            adj[g.end_vertex(2 * e)].push_back({e, g.end_vertex(2 * e + 1)});
            adj[g.end_vertex(2 * e + 1)].push_back({e, g.end_vertex(2 * e)});
        }
    std::vector<int> parent_edge(g.num_vertices(), -1), parent(g.num_vertices(), -1),
        depth(g.num_vertices(), 0);
    std::vector<int> order{0};
    std::vector<char> seen(g.num_vertices(), 0);
    seen[0] = 1;
    for (size_t i = 0; i < order.size(); ++i)
        for (auto [e, w] : adj[order[i]])
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = order[i];
                parent_edge[w] = e;
                depth[w] = depth[order[i]] + 1;
                order.push_back(w);
            }

    // Steps a -> parent go "forward" when a sits at the edge's low end; the
    // down half is collected toward the root and reversed into parent -> b.
    auto tree_path = [&](int from, int to) {
        Walk up, down;
        int a = from, b = to;
        auto step_up = [&](int node) {
            int e = parent_edge[node];
            up.push_back({e, g.end_vertex(2 * e) == node});
            return parent[node];
        };
        auto step_down = [&](int node) {
            int e = parent_edge[node];
            down.push_back({e, g.end_vertex(2 * e + 1) == node});
            return parent[node];
        };
        while (depth[a] > depth[b]) a = step_up(a);
        while (depth[b] > depth[a]) b = step_down(b);
        while (a != b) {
            a = step_up(a);
            b = step_down(b);
        }
        std::reverse(down.begin(), down.end());
        up.insert(up.end(), down.begin(), down.end());
        return up;
    };

    std::vector<Walk> basis(r);
    for (int i = 0; i < r; ++i) {
        int e = chord_edges_[i];
        basis[i].push_back({e, true});
        int head = g.end_vertex(2 * e + 1), tail = g.end_vertex(2 * e);
        if (head != tail) {
            Walk back = tree_path(head, tail);
            basis[i].insert(basis[i].end(), back.begin(), back.end());
        }
    }

    // Rotation position of each end germ.
    std::vector<int> rot_pos(2 * E, -1), germ_class(2 * E, -1);
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& rot = g.rotations()[v];
        for (size_t i = 0; i < rot.size(); ++i) {
            rot_pos[rot[i]] = static_cast<int>(i);
            germ_class[rot[i]] = v;
        }
    }

    pairing_.assign(r, IntVec(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            const Walk& A = basis[i];
            const Walk& B = basis[j];
            // Lanes: all A uses first, then B uses, in walk order.
            std::vector<int> lane_count(E, 0);
            auto assign_lanes = [&](const Walk& w) {
                std::vector<int> lanes;
                for (const auto& s : w) lanes.push_back(lane_count[s.edge]++);
                return lanes;
            };
            std::vector<int> laneA = assign_lanes(A), laneB = assign_lanes(B);

            auto passages = [&](const Walk& w, const std::vector<int>& lane) {
                std::vector<std::pair<int, Passage>> out; // (class, passage)
                size_t n = w.size();
                for (size_t k = 0; k < n; ++k) {
                    const auto& sin = w[k];
                    const auto& sout = w[(k + 1) % n];
                    int gin = 2 * sin.edge + (sin.forward ? 1 : 0);
                    int gout = 2 * sout.edge + (sout.forward ? 0 : 1);
                    auto sub = [&](int germ, int l) {
                        int m = lane_count[germ / 2];
                        return germ % 2 == 0 ? l : m - 1 - l;
                    };
                    Passage p;
                    p.in = {rot_pos[gin], sub(gin, lane[k])};
                    p.out = {rot_pos[gout], sub(gout, lane[(k + 1) % n])};
                    out.push_back({germ_class[gin], p});
                }
                return out;
            };
            auto PA = passages(A, laneA), PB = passages(B, laneB);

            i64 total = 0;
            for (const auto& [ca, pa] : PA)
                for (const auto& [cb, pb] : PB) {
                    if (ca != cb) continue;
                    // Circular order of the four endpoints.
                    std::array<std::pair<std::pair<int, int>, int>, 4> pts{
                        {{pa.in, 0}, {pa.out, 1}, {pb.in, 2}, {pb.out, 3}}};
                    std::sort(pts.begin(), pts.end());
                    int pos[4];
                    for (int t = 0; t < 4; ++t) pos[pts[t].second] = t;
                    auto between = [&](int x, int lo, int hi) {
                        // x strictly inside the ccw interval (lo, hi)
                        if (lo < hi) return lo < x && x < hi;
                        return x > lo || x < hi;
                    };
                    bool qin_in = between(pos[2], pos[0], pos[1]);
                    bool qout_in = between(pos[3], pos[0], pos[1]);
                    if (qin_in == qout_in) continue;
                    total += qin_in ? 1 : -1;
                }
            pairing_[i][j] = total;
        }

    // The form must come out skew; fail loudly if the stitching betrayed us.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (pairing_[i][j] != -pairing_[j][i])
                throw std::logic_error("intersection form is not skew-symmetric");
}

i64 SurfaceModel::pair(const IntVec& x, const IntVec& y) const {
    i128 s = 0;
    int r = h1_rank();
    for (int i = 0; i < r; ++i) {
        if (x[i] == 0) continue;
        i128 row = 0;
        for (int j = 0; j < r; ++j) row += i128(pairing_[i][j]) * y[j];
        s += i128(x[i]) * row;
    }
    return checked_cast(s);
}

std::vector<IntVec> SurfaceModel::boundary_classes() const {
    std::vector<IntVec> out;
    for (const auto& comp : skeleton_->boundary_components()) {
        Walk w;
        for (const auto& st : comp) w.push_back({st.end / 2, st.end % 2 == 0});
        out.push_back(curve_class(w));
    }
    return out;
}

} // namespace birkhoff
