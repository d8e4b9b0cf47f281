#pragma once

#include <array>
#include <string>
#include <vector>

#include "birkhoff/errors.hpp"

namespace birkhoff {

using Dart = int;
using VertexId = int;
using EdgeId = int;
using FaceId = int;

// A filling multi-curve on a closed oriented surface, encoded as a 4-valent
// combinatorial map: counterclockwise dart rotations at every vertex and a
// fixed-point-free pairing of darts into edges.  All derived data (faces,
// dual graph, strands, genus) is computed once at build time; instances are
// immutable afterwards and safe to share across threads.
class MultiCurveMap {
public:
    struct DualEdge {
        FaceId left;   // face left of the edge's first dart
        FaceId right;  // face left of the paired dart
    };

    // Throws NonQuadrivalent / BadInvolution / DanglingDart on invalid input.
    MultiCurveMap(std::vector<std::array<Dart, 4>> rotations,
                  std::vector<std::array<Dart, 2>> edge_pairs,
                  std::string name = {});

    const std::string& name() const { return name_; }

    int num_vertices() const { return static_cast<int>(rotations_.size()); }
    int num_darts() const { return num_darts_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    int genus() const { return genus_; }

    const std::vector<std::array<Dart, 4>>& rotations() const { return rotations_; }

    VertexId dart_vertex(Dart d) const { return dart_vertex_[d]; }
    int dart_slot(Dart d) const { return dart_slot_[d]; }
    Dart rotation_at(VertexId v, int slot) const { return rotations_[v][((slot % 4) + 4) % 4]; }

    Dart rot_next(Dart d) const { return rotation_at(dart_vertex_[d], dart_slot_[d] + 1); }
    Dart rot_prev(Dart d) const { return rotation_at(dart_vertex_[d], dart_slot_[d] + 3); }
    // Other branch of the same strand through the vertex.
    Dart opposite(Dart d) const { return rotation_at(dart_vertex_[d], dart_slot_[d] + 2); }
    Dart paired(Dart d) const { return edge_pair_[d]; }

    EdgeId dart_edge(Dart d) const { return dart_edge_[d]; }
    // Lowest dart id of an edge; anchors all per-edge orientation conventions.
    Dart first_dart(EdgeId e) const { return edges_[e][0]; }
    Dart second_dart(EdgeId e) const { return edges_[e][1]; }
    bool is_first_dart(Dart d) const { return edges_[dart_edge_[d]][0] == d; }

    // Faces traced with the face kept on the left of each dart.
    const std::vector<std::vector<Dart>>& faces() const { return faces_; }
    FaceId face_left(Dart d) const { return dart_face_[d]; }
    FaceId face_right(Dart d) const { return dart_face_[edge_pair_[d]]; }
    // Successor of d along the boundary of face_left(d).
    Dart face_next(Dart d) const { return rot_prev(edge_pair_[d]); }

    // Face occupying the corner between rotation slots i and i+1 at v.
    FaceId quadrant_face(VertexId v, int slot) const {
        return dart_face_[rotation_at(v, slot)];
    }

    // Strands: edge sets of the closed curves composing the multi-curve.
    const std::vector<std::vector<EdgeId>>& strands() const { return strands_; }
    // Orbit of dart d under "cross the edge, take the opposite branch".
    std::vector<Dart> strand_orbit(Dart d) const;

    const std::vector<DualEdge>& dual_edges() const { return dual_edges_; }
    // Dual edges incident to a face (loops listed once, flagged by both sides equal).
    const std::vector<std::vector<EdgeId>>& face_edges() const { return face_edges_; }

    bool connected() const { return connected_; }

private:
    void derive();

    std::string name_;
    int num_darts_ = 0;
    std::vector<std::array<Dart, 4>> rotations_;
    std::vector<std::array<Dart, 2>> edges_;
    std::vector<Dart> edge_pair_;
    std::vector<VertexId> dart_vertex_;
    std::vector<int> dart_slot_;
    std::vector<EdgeId> dart_edge_;
    std::vector<std::vector<Dart>> faces_;
    std::vector<FaceId> dart_face_;
    std::vector<std::vector<EdgeId>> strands_;
    std::vector<DualEdge> dual_edges_;
    std::vector<std::vector<EdgeId>> face_edges_;
    int genus_ = 0;
    bool connected_ = true;
};

// Map file I/O (UTF-8 JSON, see README for the schema).
MultiCurveMap parse_map_json(const std::string& text);
std::string map_to_json(const MultiCurveMap& map);

// p horizontal and q vertical circles on the torus; the standard grid map.
// Vertex (i,j) has id i*q+j and darts 4*id+{0:E,1:N,2:W,3:S}, rotation ccw.
MultiCurveMap make_grid_map(int p, int q);

// One vertex, darts [0,1,2,3], edges {0,2} and {1,3}: two circles on the
// torus meeting once.
MultiCurveMap make_t1_map();

} // namespace birkhoff
