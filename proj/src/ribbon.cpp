#include "birkhoff/ribbon.hpp"

#include <algorithm>

namespace birkhoff {

RibbonGraph::RibbonGraph(int num_vertices, std::vector<std::array<int, 2>> edge_ends_at,
                         std::vector<std::vector<int>> rotations, std::vector<uint8_t> twists)
    : num_vertices_(num_vertices), rotations_(std::move(rotations)), twists_(std::move(twists)) {
    int E = static_cast<int>(edge_ends_at.size());
    if (static_cast<int>(twists_.size()) != E)
        throw std::logic_error("ribbon graph: one twist bit per edge required");
    end_vertex_.assign(2 * E, -1);
    for (int e = 0; e < E; ++e) {
        end_vertex_[2 * e] = edge_ends_at[e][0];
        end_vertex_[2 * e + 1] = edge_ends_at[e][1];
    }
    rot_pos_.assign(2 * E, -1);
    for (int v = 0; v < num_vertices_; ++v)
        for (size_t i = 0; i < rotations_[v].size(); ++i) {
            int end = rotations_[v][i];
            if (end < 0 || end >= 2 * E || rot_pos_[end] != -1)
                throw std::logic_error("ribbon graph: bad rotation entry");
            if (end_vertex_[end] != v)
                throw std::logic_error("ribbon graph: rotation lists an end of another vertex");
            rot_pos_[end] = static_cast<int>(i);
        }
    for (int end = 0; end < 2 * E; ++end)
        if (rot_pos_[end] == -1) throw std::logic_error("ribbon graph: end missing from rotations");

    check_orientable();
    trace_boundary();
}

int RibbonGraph::rot_next(int end) const {
    int v = end_vertex_[end];
    const auto& r = rotations_[v];
    return r[(rot_pos_[end] + 1) % r.size()];
}

int RibbonGraph::rot_prev(int end) const {
    int v = end_vertex_[end];
    const auto& r = rotations_[v];
    return r[(rot_pos_[end] + r.size() - 1) % r.size()];
}

void RibbonGraph::check_orientable() {
    // Orientable iff some set of vertex flips clears every twist; a twisted
    // loop can never be cleared.
    std::vector<int> color(num_vertices_, -1);
    orientable_ = true;
    for (int v0 = 0; v0 < num_vertices_ && orientable_; ++v0) {
        if (color[v0] != -1) continue;
        color[v0] = 0;
        std::vector<int> stack{v0};
        while (!stack.empty() && orientable_) {
            int v = stack.back();
            stack.pop_back();
            for (int end : rotations_[v]) {
                int w = end_vertex_[other_end(end)];
                int want = color[v] ^ (twisted(edge_of_end(end)) ? 1 : 0);
                if (v == w) {
                    if (twisted(edge_of_end(end))) orientable_ = false;
                    continue;
                }
                if (color[w] == -1) {
                    color[w] = want;
                    stack.push_back(w);
                } else if (color[w] != want) {
                    orientable_ = false;
                }
            }
        }
    }
}

void RibbonGraph::trace_boundary() {
    // State (end, side): walking the band of edge_of_end(end) away from
    // end_vertex(end), along the given side.
    int n = 2 * num_ends();
    auto id = [&](int end, int side) { return 2 * end + side; };
    auto next = [&](int end, int side, int& nend, int& nside) {
        int b = other_end(end);
        if (!twisted(edge_of_end(end))) {
            nend = side == 0 ? rot_prev(b) : rot_next(b);
            nside = side;
        } else {
            nend = side == 0 ? rot_next(b) : rot_prev(b);
            nside = 1 - side;
        }
    };
    // The same geometric arc, traversed the opposite way.
    auto rev = [&](int end, int side, int& rend, int& rside) {
        rend = other_end(end);
        rside = twisted(edge_of_end(end)) ? side : 1 - side;
    };

    std::vector<char> visited(n, 0);
    boundary_.clear();
    // Right-side states first: on a twist-free graph every component is then
    // recorded with the same boundary orientation, so component classes sum
    // to zero in homology.
    for (int side : {1, 0})
        for (int end = 0; end < num_ends(); ++end) {
            if (visited[id(end, side)]) continue;
            std::vector<BoundaryState> walk;
            int e = end, s = side;
            do {
                walk.push_back({e, s});
                visited[id(e, s)] = 1;
                int re, rs;
                rev(e, s, re, rs);
                visited[id(re, rs)] = 1;
                int ne, ns;
                next(e, s, ne, ns);
                e = ne;
                s = ns;
            } while (!(e == end && s == side));
            boundary_.push_back(std::move(walk));
        }
}

int RibbonGraph::genus() const {
    if (!orientable_) throw std::logic_error("genus requested for a non-orientable ribbon surface");
    int chi = euler_characteristic();
    int b = num_boundary_components();
    int twice_g = 2 - b - chi;
    if (twice_g < 0 || twice_g % 2 != 0)
        throw std::logic_error("inconsistent genus computation");
    return twice_g / 2;
}

} // namespace birkhoff
