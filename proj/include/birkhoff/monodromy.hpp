#pragma once

#include <optional>
#include <vector>

#include "birkhoff/cohomology.hpp"
#include "birkhoff/intmat.hpp"
#include "birkhoff/surface.hpp"

namespace birkhoff {

struct TwistEntry {
    bool is_vertex = false;
    int index = 0; // vertex or face id
    IntVec curve;  // class on the model's chord basis
    Walk walk;     // supporting walk (for disjointness tests)
};

// Ordered left to right from highest to lowest; all twists are negative.
struct TwistWord {
    std::vector<TwistEntry> entries;
};

// Curves and order data for one acyclic coorientation.
class TwistSystem {
public:
    TwistSystem(const MultiCurveMap& map, const Coorientation& eta); // NotAcyclic

    const SurfaceModel& model() const { return model_; }
    const CoherentOrder& order() const { return order_; }
    const Curve& vertex_curve(VertexId v) const { return vertex_curves_[v]; }
    const Curve& face_curve(FaceId f) const { return face_curves_[f]; }

    // representation: ascending element ids (faces then vertices), a linear
    // extension of the coherent order.  Throws BadRepresentation.
    TwistWord word(const std::vector<int>& representation) const;
    IntMat word_matrix(const TwistWord& word) const;
    IntMat monodromy(const std::vector<int>& representation) const;

    // Negative twist: x -> x - <x,c>c; sign +1 gives the inverse.
    IntMat twist_matrix(const IntVec& curve_class, int sign) const;
    IntVec apply_twist(const IntVec& curve_class, int sign, const IntVec& x) const;

    // Lexicographically least word reachable by swapping adjacent entries
    // whose supporting walks are disjoint (no shared skeleton vertex).
    TwistWord normalize(const TwistWord& word) const;
    bool entries_commute(const TwistEntry& a, const TwistEntry& b) const;

private:
    SurfaceModel model_;
    CoherentOrder order_;
    std::vector<Curve> vertex_curves_, face_curves_;
};

// Sequence of sink flips turning eta into nu (both acyclic, cohomologous).
std::vector<FaceId> flip_path(const MultiCurveMap& map, const Coorientation& eta,
                              const Coorientation& nu);

struct HurwitzReport {
    std::vector<FaceId> path;
    int moves = 0;
    bool products_preserved = false; // matrix product equal after every swap
    std::vector<i64> charpoly_eta, charpoly_nu;
    bool charpoly_equal = false;
    bool identity_witness = false; // the two monodromies are literally equal
};

// Throws NotAcyclic / NotCohomologous.
HurwitzReport hurwitz_compare(const MultiCurveMap& map, const Coorientation& eta,
                              const Coorientation& nu);

struct FlipConnectivityReport {
    std::vector<Coorientation> members; // the class, in enumeration order
    std::vector<char> acyclic;
    std::vector<int> component;                     // flip-graph component per member
    int num_components = 0;
    std::vector<int> acyclic_components;            // distinct components of acyclic members
    std::vector<char> cycle_union_connected;        // per member; true for acyclic ones
    std::optional<std::pair<int, int>> obstruction; // members in distinct cyclic components
};

// Throws ClassEmpty.
FlipConnectivityReport flip_connectivity(const MultiCurveMap& map, const Cochain& omega);

struct CommonWordReport {
    std::vector<int> final_order;  // element ids, ascending
    std::vector<int> sigma;        // permutation: position in nu-word of each ref-word entry
    TwistWord word;                // over the reference coorientation's curves
    std::vector<i64> charpoly_word, charpoly_nu;
    bool charpoly_equal = false;
    std::vector<FaceId> path;
};

// Common-model comparison: express the return map of nu as a product of
// the reference curves in a permuted order, validated at homology level.
CommonWordReport common_model_word(const MultiCurveMap& map, const Coorientation& eta_ref,
                                   const Coorientation& nu);

} // namespace birkhoff
