#include "birkhoff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace birkhoff {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

Rat::Rat(i64 n, i64 d) {
    if (d == 0) throw std::logic_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

static Rat make_rat128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 a = n < 0 ? -n : n, b = d;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    return Rat(checked_cast(n), checked_cast(d));
}

Rat Rat::operator+(const Rat& o) const { return make_rat128(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den); }
Rat Rat::operator-(const Rat& o) const { return make_rat128(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den); }
Rat Rat::operator*(const Rat& o) const { return make_rat128(i128(num) * o.num, i128(den) * o.den); }
Rat Rat::operator/(const Rat& o) const {
    if (o.num == 0) throw std::logic_error("rational division by zero");
    return make_rat128(i128(num) * o.den, i128(den) * o.num);
}
bool Rat::operator<(const Rat& o) const { return i128(num) * o.den < i128(o.num) * den; }

Rat Rat::mod1() const {
    i64 f = floor_div(num, den);
    return Rat(num - f * den, den);
}

FlatMultiCurve::FlatMultiCurve(int p, int q, std::vector<Rat> heights, std::vector<Rat> abscissas)
    : p_(p), q_(q), heights_(std::move(heights)), abscissas_(std::move(abscissas)),
      map_(make_grid_map(p, q)) {
    if (static_cast<int>(heights_.size()) != p || static_cast<int>(abscissas_.size()) != q)
        throw std::invalid_argument("grid coordinate counts do not match p, q");
    for (auto* v : {&heights_, &abscissas_}) {
        for (auto& r : *v) r = r.mod1();
        std::sort(v->begin(), v->end());
        for (size_t i = 1; i < v->size(); ++i)
            if ((*v)[i] == (*v)[i - 1])
                fail("DuplicateCoordinate", "grid circles must have distinct coordinates");
    }
}

FlatMultiCurve embed_grid(int p, int q, std::vector<Rat> heights, std::vector<Rat> abscissas) {
    return FlatMultiCurve(p, q, std::move(heights), std::move(abscissas));
}

FlatMultiCurve embed_grid(int p, int q) {
    std::vector<Rat> hs, xs;
    for (int i = 0; i < p; ++i) hs.push_back(Rat(i, p));
    for (int j = 0; j < q; ++j) xs.push_back(Rat(j, q));
    return FlatMultiCurve(p, q, std::move(hs), std::move(xs));
}

int FlatMultiCurve::side_sign(const Coorientation& eta, EdgeId e, const Rat& vx,
                              const Rat& vy) const {
    Dart first = map_.first_dart(e);
    // Left normals by dart direction: E->(0,1), N->(-1,0), W->(0,-1), S->(1,0).
    static const int nx[4] = {0, -1, 0, 1};
    static const int ny[4] = {1, 0, -1, 0};
    int dir = first % 4;
    i128 dot = i128(vx.num) * vy.den * nx[dir] + i128(vy.num) * vx.den * ny[dir];
    int s = dot > 0 ? 1 : dot < 0 ? -1 : 0;
    return eta.bits[e] ? s : -s;
}

Rat FlatMultiCurve::max_face_diameter_sq() const {
    auto span = [](const std::vector<Rat>& v, size_t i) {
        Rat d = v[(i + 1) % v.size()] - v[i];
        return d.mod1() == Rat(0) ? Rat(1) : d.mod1();
    };
    Rat best(0);
    for (int i = 0; i < p_; ++i)
        for (int j = 0; j < q_; ++j) {
            Rat h = span(heights_, i), w = span(abscissas_, j);
            Rat d2 = h * h + w * w;
            if (best < d2) best = d2;
        }
    return best;
}

FaceId FlatMultiCurve::cell_face(int i, int j) const {
    Dart east = 4 * (i * q_ + j); // east dart of vertex (i,j); cell above it
    return map_.face_left(east);
}

GeodesicWalker::GeodesicWalker(const FlatMultiCurve& model, Rat x, Rat y, Rat vx, Rat vy)
    : model_(&model), x_(x.mod1()), y_(y.mod1()), vx_(vx), vy_(vy) {
    if (vx.num == 0 && vy.num == 0) throw std::invalid_argument("zero velocity");
}

Rat GeodesicWalker::length_sq(const Rat& t) const { return t * t * (vx_ * vx_ + vy_ * vy_); }

std::optional<TrajectoryEvent> GeodesicWalker::next(const Coorientation& eta) {
    // Smallest crossing time strictly after t_ for one line family.
    auto family_next = [&](const std::vector<Rat>& lines, const Rat& pos0, const Rat& vel,
                           std::optional<Rat>& best, int& index) {
        if (vel.num == 0) return;
        Rat period = Rat(1) / vel;
        if (period.sign() < 0) period = -period;
        for (size_t i = 0; i < lines.size(); ++i) {
            Rat base = (lines[i] - pos0) / vel;
            Rat steps = (t_ - base) / period;
            i64 k = floor_div(steps.num, steps.den) + 1;
            Rat cand = base + Rat(k) * period;
            if (!best || cand < *best) {
                best = cand;
                index = static_cast<int>(i);
            }
        }
    };

    std::optional<Rat> th, tv;
    int ih = -1, jv = -1;
    family_next(model_->heights(), y_, vy_, th, ih);
    family_next(model_->abscissas(), x_, vx_, tv, jv);

    if (!th && !tv) return std::nullopt;
    bool horizontal;
    if (th && tv && *th == *tv) {
        degenerate_ = true; // hits a crossing point of the multi-curve
        return std::nullopt;
    }
    horizontal = th && (!tv || *th < *tv);

    Rat t = horizontal ? *th : *tv;
    t_ = t;
    const auto& xs = model_->abscissas();
    const auto& hs = model_->heights();
    TrajectoryEvent ev;
    ev.t = t;
    if (horizontal) {
        Rat xi = (x_ + t * vx_).mod1();
        // Locate the interval x_j < xi < x_{j+1} (cyclically).
        int j = static_cast<int>(std::upper_bound(xs.begin(), xs.end(), xi) - xs.begin()) - 1;
        if (j < 0) j = model_->q() - 1;
        if (xi == xs[(j + model_->q()) % model_->q()]) {
            degenerate_ = true;
            return std::nullopt;
        }
        ev.edge = 2 * (ih * model_->q() + j);
    } else {
        Rat yi = (y_ + t * vy_).mod1();
        int i = static_cast<int>(std::upper_bound(hs.begin(), hs.end(), yi) - hs.begin()) - 1;
        if (i < 0) i = model_->p() - 1;
        if (yi == hs[(i + model_->p()) % model_->p()]) {
            degenerate_ = true;
            return std::nullopt;
        }
        ev.edge = 2 * (i * model_->q() + jv) + 1;
    }
    ev.side = model_->side_sign(eta, ev.edge, vx_, vy_);
    if (ev.side == 0) throw std::logic_error("tangential crossing in the grid model");
    return ev;
}

ReturnResult first_return_time(const FlatMultiCurve& model, const Coorientation& eta, Rat x, Rat y,
                               Rat vx, Rat vy, i64 horizon) {
    x = x.mod1();
    y = y.mod1();
    for (const Rat& h : model.heights())
        if (h == y) fail("StartOnGamma", "start point lies on a horizontal circle");
    for (const Rat& a : model.abscissas())
        if (a == x) fail("StartOnGamma", "start point lies on a vertical circle");

    GeodesicWalker w(model, x, y, vx, vy);
    Rat horizon_sq(horizon);
    horizon_sq = horizon_sq * horizon_sq;
    while (true) {
        auto ev = w.next(eta);
        if (!ev) return {std::nullopt, w.degenerate()};
        if (horizon_sq < w.length_sq(ev->t)) return {std::nullopt, false};
        if (ev->side > 0) return {ev->t, false};
    }
}

namespace {

Rat random_rat(std::mt19937_64& rng, i64 den, i64 lo_num, i64 hi_num) {
    i64 span = hi_num - lo_num + 1;
    return Rat(lo_num + static_cast<i64>(rng() % static_cast<uint64_t>(span)), den);
}

std::pair<Rat, Rat> random_direction(std::mt19937_64& rng) {
    while (true) {
        i64 a = static_cast<i64>(rng() % 61) - 30;
        i64 b = static_cast<i64>(rng() % 61) - 30;
        if (a != 0 || b != 0) return {Rat(a), Rat(b)};
    }
}

std::pair<Rat, Rat> random_point_off_curve(const FlatMultiCurve& model, std::mt19937_64& rng) {
    const i64 den = 1013;
    while (true) {
        Rat x = random_rat(rng, den, 0, den - 1);
        Rat y = random_rat(rng, den, 0, den - 1);
        bool on = false;
        for (const Rat& h : model.heights()) on |= h == y;
        for (const Rat& a : model.abscissas()) on |= a == x;
        if (!on) return {x, y};
    }
}

} // namespace

BirkhoffVerdict verify_birkhoff(const FlatMultiCurve& model, const Coorientation& eta, int samples,
                                i64 horizon, uint64_t seed) {
    BirkhoffVerdict out;
    auto acy = check_acyclic(model.map(), eta);
    out.acyclic = acy.acyclic;
    std::mt19937_64 rng(seed);
    Rat bound_sq = model.max_face_diameter_sq() * Rat(model.map().num_faces()) *
                   Rat(model.map().num_faces());

    if (out.acyclic) {
        out.agrees = true;
        out.bound_satisfied = true;
        int done = 0, attempts = 0;
        while (done < samples && attempts < 200 * samples) {
            ++attempts;
            auto [x, y] = random_point_off_curve(model, rng);
            auto [vx, vy] = random_direction(rng);
            auto res = first_return_time(model, eta, x, y, vx, vy, horizon);
            if (res.degenerate) continue;
            if (!res.time) {
                out.agrees = false;
                break;
            }
            GeodesicWalker w(model, x, y, vx, vy);
            Rat len = w.length_sq(*res.time);
            if (out.max_length_sq < len) out.max_length_sq = len;
            if (bound_sq < len) out.bound_satisfied = false;
            // Bucket by length relative to the n*d bound, in tenths.
            double frac = std::sqrt(len.to_double() / bound_sq.to_double());
            int bucket = std::min(11, static_cast<int>(frac * 10));
            ++out.histogram[bucket];
            ++done;
        }
        out.samples_used = done;
        return out;
    }

    // Cyclic: follow the reversed direction of the witness cycle's homology.
    i64 di = 0, dj = 0;
    for (size_t k = 0; k < acy.cycle_edges.size(); ++k) {
        EdgeId e = acy.cycle_edges[k];
        bool forward = eta.bits[e] != 0; // arc direction = reference iff bit set
        Dart first = model.map().first_dart(e);
        int dir = first % 4;
        int delta = forward ? 1 : -1;
        if (model.horizontal_edge(e))
            di += (dir == 0 ? 1 : -1) * delta; // left of east = north
        else
            dj += (dir == 1 ? -1 : 1) * delta; // left of north = west
    }
    if (di % model.p() != 0 || dj % model.q() != 0)
        throw std::logic_error("witness cycle wrap is fractional");
    i64 wrap_y = di / model.p(), wrap_x = dj / model.q();
    if (wrap_x == 0 && wrap_y == 0)
        throw std::logic_error("oriented dual cycle with trivial wrap");
    Rat vx(-wrap_x), vy(-wrap_y);
    out.escape_direction = {{vx, vy}};

    int attempts = 0;
    while (attempts < 200) {
        ++attempts;
        auto [x, y] = random_point_off_curve(model, rng);
        auto res = first_return_time(model, eta, x, y, vx, vy, horizon);
        if (res.degenerate) continue;
        out.samples_used = attempts;
        out.agrees = !res.time.has_value(); // escape = no return within horizon
        return out;
    }
    out.agrees = false;
    return out;
}

FactorizationVerdict verify_factorization(const FlatMultiCurve& model, const Coorientation& eta,
                                          const FaceOrder& order, int samples, i64 horizon,
                                          uint64_t seed) {
    FactorizationVerdict out;
    auto etas = flip_algorithm(model.map(), eta, order); // eta_0 .. eta_n
    int n = static_cast<int>(order.size());
    std::mt19937_64 rng(seed);
    Rat horizon_sq(horizon);
    horizon_sq = horizon_sq * horizon_sq;

    int done = 0, attempts = 0;
    while (done < samples && attempts < 200 * samples) {
        ++attempts;
        // Start on the section: a point of the multi-curve with velocity on
        // the coorientation side.
        EdgeId e0 = static_cast<EdgeId>(rng() % static_cast<uint64_t>(model.map().num_edges()));
        Rat lambda = random_rat(rng, 1013, 1, 1012);
        Rat x, y;
        int q = model.q();
        if (model.horizontal_edge(e0)) {
            int cell = static_cast<int>(e0 / 2);
            int i = cell / q, j = cell % q;
            Rat x1 = model.abscissas()[j];
            Rat width = (model.abscissas()[(j + 1) % q] - x1).mod1();
            if (width == Rat(0)) width = Rat(1);
            x = (x1 + lambda * width).mod1();
            y = model.heights()[i];
        } else {
            int cell = static_cast<int>(e0 / 2);
            int i = cell / q, j = cell % q;
            Rat y1 = model.heights()[i];
            Rat height = (model.heights()[(i + 1) % model.p()] - y1).mod1();
            if (height == Rat(0)) height = Rat(1);
            x = model.abscissas()[j];
            y = (y1 + lambda * height).mod1();
        }
        auto [vx, vy] = random_direction(rng);
        int s0 = model.side_sign(eta, e0, vx, vy);
        if (s0 == 0) continue;
        if (s0 < 0) {
            vx = -vx;
            vy = -vy;
        }
        // Forbid velocities parallel to the start edge (they stay on it).
        if (model.horizontal_edge(e0) ? vy.num == 0 : vx.num == 0) continue;

        // Crossing events, on demand; event 0 is the start itself.
        GeodesicWalker w(model, x, y, vx, vy);
        std::vector<TrajectoryEvent> events{{Rat(0), e0, +1}};
        bool degenerate = false, overflow = false;
        auto ensure_event = [&](size_t idx) {
            while (events.size() <= idx) {
                auto ev = w.next(eta);
                if (!ev) {
                    degenerate = w.degenerate();
                    overflow = !w.degenerate();
                    return false;
                }
                if (horizon_sq < w.length_sq(ev->t)) {
                    overflow = true;
                    return false;
                }
                events.push_back(*ev);
            }
            return true;
        };

        size_t idx = 0;
        std::vector<Rat> s{Rat(0)};
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i) {
            const Coorientation& etai = etas[i];
            size_t k = idx;
            while (true) {
                if (!ensure_event(k)) {
                    ok = false;
                    break;
                }
                if (model.side_sign(etai, events[k].edge, vx, vy) > 0) {
                    idx = k;
                    s.push_back(events[k].t);
                    break;
                }
                ++k;
            }
        }
        if (degenerate) {
            ++out.degenerate_skipped;
            continue;
        }
        if (!ok) {
            out.matches_return = false;
            ++done;
            continue;
        }

        for (int i = 1; i <= n; ++i)
            if (s[i] < s[i - 1]) out.monotone = false;

        // Direct first return: smallest t > 0 on the coorientation side.
        std::optional<Rat> direct;
        for (size_t k = 1;; ++k) {
            if (!ensure_event(k)) break;
            if (model.side_sign(eta, events[k].edge, vx, vy) > 0) {
                direct = events[k].t;
                break;
            }
        }
        if (degenerate) {
            ++out.degenerate_skipped;
            continue;
        }
        if (!direct || !(s[n] == *direct)) out.matches_return = false;
        ++done;
    }
    out.samples_used = done;
    return out;
}

} // namespace birkhoff
