#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "birkhoff/map.hpp"

namespace birkhoff {

// One transverse direction per edge.  bits[e] == 1 means the coorientation
// points to the left of the edge's first (lowest-id) dart.
struct Coorientation {
    std::vector<uint8_t> bits;

    bool operator==(const Coorientation&) const = default;
    bool operator<(const Coorientation& o) const { return bits < o.bits; }
};

enum class VertexType { alternating, non_alternating };

enum class Sense { ccw, cw };

// A step of a closed walk in the dual graph: crossing `edge`, in the
// reference direction (toward the left of its first dart) when `forward`.
struct DualStep {
    EdgeId edge;
    bool forward;
};
using DualWalk = std::vector<DualStep>;

FaceId dual_step_source(const MultiCurveMap& map, const DualStep& s);
FaceId dual_step_target(const MultiCurveMap& map, const DualStep& s);
// Throws NotAClosedWalk unless consecutive steps chain and the walk closes.
void check_closed_walk(const MultiCurveMap& map, const DualWalk& walk);

// Counterclockwise walk around the dual 2-cell at v (crosses the 4 incident
// edges once each).
DualWalk vertex_link_walk(const MultiCurveMap& map, VertexId v);

// Whether the coorienting normal of dart d's edge points to the left of d
// (ccw) or to the right (cw).  The two darts of an edge always disagree.
Sense dart_sense(const MultiCurveMap& map, const Coorientation& c, Dart d);

bool is_eulerian(const MultiCurveMap& map, const Coorientation& c);

// Requires Eulerian.  Alternating = the four dart senses strictly alternate
// around the vertex.
VertexType vertex_type(const MultiCurveMap& map, const Coorientation& c, VertexId v);

// All Eulerian coorientations, in lexicographic bit order.
std::vector<Coorientation> enumerate_eulerian(const MultiCurveMap& map);

// Sum of +/-1 over the steps of a closed dual walk, +1 where the traversal
// direction agrees with the coorientation.
int cohomology_eval(const MultiCurveMap& map, const Coorientation& c, const DualWalk& walk);

// Dual graph directed by the coorientation: one arc per edge, from the face
// the coorientation points away from to the face it points into.
struct OrientedDualArc {
    EdgeId edge;
    FaceId from;
    FaceId to;
};
std::vector<OrientedDualArc> oriented_dual(const MultiCurveMap& map, const Coorientation& c);

struct AcyclicityResult {
    bool acyclic = false;
    // When cyclic: faces[i] -- edges[i] --> faces[i+1 mod n] is a directed cycle.
    std::vector<FaceId> cycle_faces;
    std::vector<EdgeId> cycle_edges;
};
AcyclicityResult check_acyclic(const MultiCurveMap& map, const Coorientation& c);
bool is_acyclic(const MultiCurveMap& map, const Coorientation& c);

// Faces whose boundary coorientations all point inward.  Total on Eulerian
// coorientations; empty only when cycles are present.
std::vector<FaceId> sink_faces(const MultiCurveMap& map, const Coorientation& c);

// Reverse the coorientation on the boundary of a sink face.
Coorientation flip(const MultiCurveMap& map, const Coorientation& c, FaceId f);

// Faces listed in ascending order; a linear extension of the oriented dual
// (every arc points from a later face to an earlier one).
using FaceOrder = std::vector<FaceId>;

// Runs the flip algorithm along `order`: returns [eta_0 = c, ..., eta_n = c].
// Throws NotAcyclic / OrderInconsistent.
std::vector<Coorientation> flip_algorithm(const MultiCurveMap& map, const Coorientation& c,
                                          const FaceOrder& order);

// Elements of the coherent order: faces 0..F-1, then vertices F..F+V-1.
struct CoherentOrder {
    int num_faces = 0;
    int num_vertices = 0;
    // less[a] holds every b with a < b, deduplicated.
    std::vector<std::vector<int>> less;

    int face_element(FaceId f) const { return f; }
    int vertex_element(VertexId v) const { return num_faces + v; }
    int size() const { return num_faces + num_vertices; }
};
CoherentOrder coherent_order(const MultiCurveMap& map, const Coorientation& c);

// Linear extensions of the coherent order, ascending, lexicographically
// smallest first, at most `limit` of them.
std::vector<std::vector<int>> representations(const MultiCurveMap& map, const Coorientation& c,
                                              size_t limit);

// Linear extensions of the face order alone (partial representations).
std::vector<FaceOrder> partial_representations(const MultiCurveMap& map, const Coorientation& c,
                                               size_t limit);

bool extends_order(const CoherentOrder& ord, const std::vector<int>& total);

// Coorientation file I/O.
Coorientation parse_coorientation_json(const MultiCurveMap& map, const std::string& text);
std::string coorientation_to_json(const MultiCurveMap& map, const Coorientation& c);

} // namespace birkhoff
