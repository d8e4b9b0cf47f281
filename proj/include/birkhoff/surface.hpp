#pragma once

#include <optional>
#include <vector>

#include "birkhoff/coorient.hpp"
#include "birkhoff/intmat.hpp"
#include "birkhoff/map.hpp"
#include "birkhoff/ribbon.hpp"

namespace birkhoff {

// A step of a walk in the skeleton: edge traversed from end 2e to 2e+1 when
// forward.
struct WalkStep {
    int edge;
    bool forward;
};
using Walk = std::vector<WalkStep>;

struct Curve {
    Walk walk;
    IntVec h1;    // class in the chord basis
    bool simple;  // visits no skeleton edge or vertex twice
};

// Combinatorial model of the section surface attached to (map, eta): the
// rectangle over each edge of the multi-curve, glued along fiber arcs over
// the vertices, with 4-sheeted arcs at non-alternating vertices split into
// the two flow-transverse sheets.  The skeleton has one node per tangent
// direction at each vertex (4 per vertex), the glued fiber arcs as edges
// (4 per vertex) and one connecting edge through each rectangle.
class SurfaceModel {
public:
    SurfaceModel(const MultiCurveMap& map, const Coorientation& eta);

    const MultiCurveMap& map() const { return *map_; }
    const Coorientation& eta() const { return eta_; }
    const RibbonGraph& skeleton() const { return *skeleton_; }

    int euler_characteristic() const { return skeleton_->euler_characteristic(); }
    int num_boundary_components() const { return skeleton_->num_boundary_components(); }
    int genus() const { return skeleton_->genus(); }
    int h1_rank() const { return static_cast<int>(chord_edges_.size()); }

    // Fiber-direction loop at a vertex (core of the vertex annulus).
    Curve gamma_v(VertexId v) const;
    // Loop around a face, one connecting edge per boundary dart plus one
    // fiber arc per corner.  Requires an acyclic coorientation.
    Curve gamma_f(FaceId f) const;

    IntVec curve_class(const Walk& walk) const;
    bool walk_is_simple(const Walk& walk) const;

    // Skew intersection form on the chord basis.
    const IntMat& pairing() const { return pairing_; }
    i64 pair(const IntVec& x, const IntVec& y) const;

    // Classes of the boundary components.
    std::vector<IntVec> boundary_classes() const;

    // Skeleton edge ids: fiber arcs come first, then one leg per map edge.
    int num_arc_edges() const { return num_arcs_; }
    int leg_edge(EdgeId e) const { return num_arcs_ + e; }

private:
    void build_skeleton();
    void build_homology();
    void build_pairing();
    Walk vertex_loop(VertexId v) const;
    // Fiber arc crossed when the face-walk turns the corner at the head of
    // dart d (arriving branch c = paired(d), leaving branch the face-trace
    // successor); throws UnsupportedCorner if no arc fits.
    WalkStep corner_step(Dart d) const;

    const MultiCurveMap* map_;
    Coorientation eta_;
    std::optional<RibbonGraph> skeleton_;

    // Construction tables.
    int num_arcs_ = 0;
    std::vector<int> claim_junction_;    // per claim (2*dart + {0:LO,1:HI})
    std::vector<int> corner_class_;      // per corner (3*dart + {0:START,1:SPLIT,2:END})
    std::vector<int> junction_low_class_, junction_high_class_;

    // Homology.
    std::vector<int> chords_;          // skeleton edge -> chord index or -1
    std::vector<int> chord_edges_;     // chord index -> skeleton edge
    IntMat pairing_;
};

} // namespace birkhoff
