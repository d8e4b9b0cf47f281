#pragma once

#include <array>
#include <optional>
#include <vector>

#include "birkhoff/coorient.hpp"
#include "birkhoff/intmat.hpp"
#include "birkhoff/map.hpp"

namespace birkhoff {

// Exact rational with 64-bit numerator/denominator, 128-bit intermediates.
struct Rat {
    i64 num = 0;
    i64 den = 1;

    Rat() = default;
    Rat(i64 n) : num(n), den(1) {}
    Rat(i64 n, i64 d);

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat operator*(const Rat& o) const;
    Rat operator/(const Rat& o) const;
    Rat operator-() const { return {-num, den}; }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }

    int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
    // Representative in [0,1).
    Rat mod1() const;
    double to_double() const { return double(num) / double(den); }
};

i64 floor_div(i64 a, i64 b);

// p horizontal circles at the given heights and q vertical circles at the
// given abscissas on R^2/Z^2, with the induced grid map.  The map's edges
// are indexed 2*(i*q+j) for the horizontal edge leaving vertex (i,j) east
// and 2*(i*q+j)+1 for the vertical edge leaving it north.
class FlatMultiCurve {
public:
    FlatMultiCurve(int p, int q, std::vector<Rat> heights, std::vector<Rat> abscissas);

    int p() const { return p_; }
    int q() const { return q_; }
    const MultiCurveMap& map() const { return map_; }
    const std::vector<Rat>& heights() const { return heights_; }
    const std::vector<Rat>& abscissas() const { return abscissas_; }

    bool horizontal_edge(EdgeId e) const { return e % 2 == 0; }
    // Crossing sign: +1 when the velocity agrees with the coorienting normal.
    int side_sign(const Coorientation& eta, EdgeId e, const Rat& vx, const Rat& vy) const;

    // Squared diameter of the largest face.
    Rat max_face_diameter_sq() const;
    // The face id of the open cell to the north-east of vertex (i,j).
    FaceId cell_face(int i, int j) const;

private:
    int p_, q_;
    std::vector<Rat> heights_, abscissas_;
    MultiCurveMap map_;
};

FlatMultiCurve embed_grid(int p, int q); // equally spaced
FlatMultiCurve embed_grid(int p, int q, std::vector<Rat> heights, std::vector<Rat> abscissas);

struct TrajectoryEvent {
    Rat t;
    EdgeId edge;
    int side; // sign of velocity . coorienting normal (never 0)
};

// Walks the straight line start + t*velocity, reporting each crossing of the
// multi-curve in time order until length exceeds the horizon.  Returns false
// (degenerate) if the line meets a crossing point of the curve.
class GeodesicWalker {
public:
    GeodesicWalker(const FlatMultiCurve& model, Rat x, Rat y, Rat vx, Rat vy);

    // Next crossing strictly after the current time; nullopt if none exists
    // (velocity parallel to all remaining line families).
    std::optional<TrajectoryEvent> next(const Coorientation& eta);
    bool degenerate() const { return degenerate_; }

    // Squared trajectory length at time t.
    Rat length_sq(const Rat& t) const;

private:
    const FlatMultiCurve* model_;
    Rat x_, y_, vx_, vy_;
    Rat t_ = Rat(0);
    bool degenerate_ = false;
};

struct ReturnResult {
    std::optional<Rat> time; // empty: no return within the horizon
    bool degenerate = false; // trajectory met a vertex; sample is not generic
};

// Smallest t > 0 whose crossing happens on the coorientation side.  Throws
// StartOnGamma when the start point lies on the multi-curve.
ReturnResult first_return_time(const FlatMultiCurve& model, const Coorientation& eta, Rat x, Rat y,
                               Rat vx, Rat vy, i64 horizon);

struct BirkhoffVerdict {
    bool acyclic = false;
    bool agrees = false;      // sampled dynamics match the combinatorics
    int samples_used = 0;
    Rat max_length_sq;        // over returning samples
    bool bound_satisfied = false; // max return length <= |faces| * max diameter
    std::optional<std::pair<Rat, Rat>> escape_direction; // witness for cyclic
    // Return lengths bucketed in tenths of the n*d bound: histogram[k] counts
    // returns with length in [k/10, (k+1)/10) of the bound.
    std::array<int, 12> histogram{};
};

BirkhoffVerdict verify_birkhoff(const FlatMultiCurve& model, const Coorientation& eta, int samples,
                                i64 horizon, uint64_t seed);

struct FactorizationVerdict {
    int samples_used = 0;
    int degenerate_skipped = 0;
    bool monotone = true;      // s_1 <= ... <= s_n for every sample
    bool matches_return = true; // s_n equals the direct first-return time
};

FactorizationVerdict verify_factorization(const FlatMultiCurve& model, const Coorientation& eta,
                                          const FaceOrder& order, int samples, i64 horizon,
                                          uint64_t seed);

} // namespace birkhoff
