#pragma once

#include <variant>
#include <vector>

#include "birkhoff/coorient.hpp"
#include "birkhoff/map.hpp"

namespace birkhoff {

// Integer weights on dual edges, one per map edge, measured against the
// reference crossing direction (toward the left of the edge's first dart).
// Weight vectors must vanish on every vertex-link cycle (cocycle condition)
// to represent a cohomology class.
struct Cochain {
    std::vector<long long> weights;
};

long long cochain_eval(const MultiCurveMap& map, const Cochain& c, const DualWalk& walk);
bool is_cocycle(const MultiCurveMap& map, const Cochain& c);

// The +/-1 cochain of an Eulerian coorientation.  Throws NotEulerian.
Cochain class_of(const MultiCurveMap& map, const Coorientation& eta);

// True iff c1 - c2 is the coboundary of a face potential.
bool cochain_equivalent(const MultiCurveMap& map, const Cochain& c1, const Cochain& c2);

// Certificate that no coorientation exists in the class: a closed dual walk
// shorter than its evaluation.
struct InfeasibilityCertificate {
    DualWalk cycle;
    long long length = 0;
    long long omega = 0;
};

using ConstructResult = std::variant<Coorientation, InfeasibilityCertificate>;

// Height-function construction: parity-normalize the weights with a mod-2
// face potential (ParityMismatch if impossible), then solve the unit-jump
// difference constraints by shortest paths; a negative cycle is returned as
// the infeasibility certificate.
ConstructResult construct_coorientation(const MultiCurveMap& map, const Cochain& omega);

struct HeightResult {
    FaceId base = 0;
    std::vector<long long> height;        // maximal potentials, height[base] == 0
    std::vector<long long> odd_weights;   // parity-normalized weights used
};

// The maximal height function with the given base face; requires a feasible
// class (same errors/certificates as construct_coorientation).
std::variant<HeightResult, InfeasibilityCertificate> height_of(const MultiCurveMap& map,
                                                               const Cochain& omega,
                                                               FaceId base);

// Coorientation read off a feasible height function.
Coorientation coorientation_from_height(const MultiCurveMap& map, const HeightResult& h);

Cochain parse_cochain_json(const MultiCurveMap& map, const std::string& text);
std::string cochain_to_json(const MultiCurveMap& map, const Cochain& c);

} // namespace birkhoff
