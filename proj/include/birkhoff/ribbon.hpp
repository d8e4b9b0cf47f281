#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

// Generic ribbon graph: arbitrary-valence vertex rotations, an edge
// involution on half-edge ends, and an optional half-twist bit per edge.
// Edge k owns the two ends 2k and 2k+1.  Boundary components are traced on
// (end, side) states; the induced surface has chi = V - E and, when
// orientable, 2 - 2g - b = chi.
class RibbonGraph {
public:
    RibbonGraph(int num_vertices, std::vector<std::array<int, 2>> edge_ends_at,
                std::vector<std::vector<int>> rotations, std::vector<uint8_t> twists);

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return static_cast<int>(end_vertex_.size() / 2); }
    int num_ends() const { return static_cast<int>(end_vertex_.size()); }

    int end_vertex(int end) const { return end_vertex_[end]; }
    int other_end(int end) const { return end ^ 1; }
    int edge_of_end(int end) const { return end / 2; }
    bool twisted(int edge) const { return twists_[edge] != 0; }

    const std::vector<std::vector<int>>& rotations() const { return rotations_; }
    int rot_next(int end) const;
    int rot_prev(int end) const;
    int degree(int v) const { return static_cast<int>(rotations_[v].size()); }

    int euler_characteristic() const { return num_vertices() - num_edges(); }

    // Boundary components as cyclic sequences of (end, side) states; each
    // component appears once (the opposite-direction traversal is dropped).
    struct BoundaryState {
        int end;   // walking along edge_of_end(end), away from end_vertex(end)
        int side;  // 0 = left of the walk, 1 = right
    };
    const std::vector<std::vector<BoundaryState>>& boundary_components() const {
        return boundary_;
    }
    int num_boundary_components() const { return static_cast<int>(boundary_.size()); }

    bool orientable() const { return orientable_; }
    // Genus of the induced surface; requires orientability.
    int genus() const;

private:
    void trace_boundary();
    void check_orientable();

    int num_vertices_ = 0;
    std::vector<int> end_vertex_;
    std::vector<std::vector<int>> rotations_;
    std::vector<uint8_t> twists_;
    std::vector<int> rot_pos_;  // position of each end in its vertex rotation
    std::vector<std::vector<BoundaryState>> boundary_;
    bool orientable_ = true;
};

} // namespace birkhoff
