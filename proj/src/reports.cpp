#include "birkhoff/reports.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace birkhoff {

using nlohmann::json;

static json walk_to_json(const Walk& w) {
    json a = json::array();
    for (const auto& s : w) a.push_back({{"edge", s.edge}, {"forward", s.forward}});
    return a;
}

std::string validate_report(const MultiCurveMap& m) {
    json j;
    j["name"] = m.name();
    j["vertices"] = m.num_vertices();
    j["edges"] = m.num_edges();
    j["faces"] = m.num_faces();
    j["genus"] = m.genus();
    j["strands"] = m.strands().size();
    json faces = json::array();
    for (const auto& f : m.faces()) faces.push_back(f);
    j["face_boundaries"] = faces;
    return j.dump(2);
}

std::string coorientation_report(const MultiCurveMap& m, const Coorientation& c) {
    json j;
    j["eulerian"] = is_eulerian(m, c);
    if (!is_eulerian(m, c)) return j.dump(2);
    json types = json::array();
    for (VertexId v = 0; v < m.num_vertices(); ++v)
        types.push_back(vertex_type(m, c, v) == VertexType::alternating ? "alternating"
                                                                        : "non-alternating");
    j["vertex_types"] = types;
    j["sink_faces"] = sink_faces(m, c);
    auto acy = check_acyclic(m, c);
    j["acyclic"] = acy.acyclic;
    if (!acy.acyclic) {
        j["witness_cycle_faces"] = acy.cycle_faces;
        j["witness_cycle_edges"] = acy.cycle_edges;
    }
    return j.dump(2);
}

std::string surface_report(const SurfaceModel& model) {
    json j;
    j["chi"] = model.euler_characteristic();
    j["boundary_components"] = model.num_boundary_components();
    j["genus"] = model.genus();
    j["h1_rank"] = model.h1_rank();
    j["skeleton_vertices"] = model.skeleton().num_vertices();
    j["skeleton_edges"] = model.skeleton().num_edges();
    json curves = json::array();
    const MultiCurveMap& m = model.map();
    for (VertexId v = 0; v < m.num_vertices(); ++v) {
        Curve c = model.gamma_v(v);
        curves.push_back({{"kind", "gamma_v"}, {"index", v}, {"walk", walk_to_json(c.walk)},
                          {"class", c.h1}, {"simple", c.simple}});
    }
    if (is_acyclic(m, model.eta()))
        for (FaceId f = 0; f < m.num_faces(); ++f) {
            Curve c = model.gamma_f(f);
            curves.push_back({{"kind", "gamma_f"}, {"index", f}, {"walk", walk_to_json(c.walk)},
                              {"class", c.h1}, {"simple", c.simple}});
        }
    j["curves"] = curves;
    j["pairing"] = model.pairing();
    return j.dump(2);
}

std::string word_report(const TwistSystem& sys, const TwistWord& word, bool human) {
    if (human) {
        std::string out;
        int k = 1;
        for (const auto& e : word.entries) {
            out += std::to_string(k++) + ": T^-1[" + (e.is_vertex ? "gamma_v(vertex " : "gamma_f(face ") +
                   std::to_string(e.index) + ")]\n";
        }
        return out;
    }
    json j = json::array();
    for (const auto& e : word.entries)
        j.push_back({{"kind", e.is_vertex ? "gamma_v" : "gamma_f"},
                     {"index", e.index},
                     {"sign", -1},
                     {"class", e.curve}});
    (void)sys;
    return j.dump(2);
}

std::string matrix_report(const TwistSystem& sys, const IntMat& m) {
    json j;
    j["matrix"] = m;
    j["det"] = det(m);
    j["charpoly"] = charpoly(m);
    double rho = spectral_radius(m);
    j["spectral_radius"] = rho;
    j["dilatation_note"] = "lower bound for the pseudo-Anosov dilatation";
    (void)sys;
    return j.dump(2);
}

std::string flip_run_report(const MultiCurveMap& m, const std::vector<Coorientation>& seq,
                            const FaceOrder& order) {
    json j;
    j["steps"] = seq.size() - 1;
    j["order"] = order;
    json states = json::array();
    for (const auto& c : seq) {
        json bits = json::array();
        for (uint8_t b : c.bits) bits.push_back(static_cast<int>(b));
        states.push_back(bits);
    }
    j["coorientations"] = states;
    j["returns_to_start"] = seq.front() == seq.back();
    (void)m;
    return j.dump(2);
}

std::string hurwitz_report_json(const HurwitzReport& r) {
    json j;
    j["flip_path"] = r.path;
    j["moves"] = r.moves;
    j["products_preserved"] = r.products_preserved;
    j["charpoly_eta"] = r.charpoly_eta;
    j["charpoly_nu"] = r.charpoly_nu;
    j["charpoly_equal"] = r.charpoly_equal;
    j["identity_witness"] = r.identity_witness;
    return j.dump(2);
}

std::string connectivity_report_json(const FlipConnectivityReport& r) {
    json j;
    j["class_size"] = r.members.size();
    int acyclic = 0;
    for (char a : r.acyclic) acyclic += a != 0;
    j["acyclic_members"] = acyclic;
    j["num_components"] = r.num_components;
    j["acyclic_component_count"] = r.acyclic_components.size();
    j["component"] = r.component;
    json cu = json::array();
    for (char c : r.cycle_union_connected) cu.push_back(c != 0);
    j["cycle_union_connected"] = cu;
    if (r.obstruction) {
        json bits0 = json::array(), bits1 = json::array();
        for (uint8_t b : r.members[r.obstruction->first].bits) bits0.push_back(int(b));
        for (uint8_t b : r.members[r.obstruction->second].bits) bits1.push_back(int(b));
        j["obstruction_pair"] = {{"first", bits0}, {"second", bits1}};
    }
    return j.dump(2);
}

std::string oracle_report_json(const BirkhoffVerdict& v) {
    json j;
    j["acyclic"] = v.acyclic;
    j["agrees"] = v.agrees;
    j["samples"] = v.samples_used;
    if (v.acyclic) {
        j["verdict"] = v.agrees ? "bounded" : "escape within samples";
        j["max_return_length"] = std::sqrt(v.max_length_sq.to_double());
        j["bound_satisfied"] = v.bound_satisfied;
        // Return lengths in tenths of the n*d bound.
        j["return_length_histogram"] = v.histogram;
    } else {
        j["verdict"] = "no return within horizon";
        if (v.escape_direction)
            j["witness_direction"] = {v.escape_direction->first.to_double(),
                                      v.escape_direction->second.to_double()};
    }
    return j.dump(2);
}

std::string factorization_report_json(const FactorizationVerdict& v) {
    json j;
    j["samples"] = v.samples_used;
    j["degenerate_skipped"] = v.degenerate_skipped;
    j["monotone"] = v.monotone;
    j["matches_first_return"] = v.matches_return;
    return j.dump(2);
}

std::string common_word_report_json(const CommonWordReport& r) {
    json j;
    j["final_order"] = r.final_order;
    j["sigma"] = r.sigma;
    j["flip_path"] = r.path;
    json entries = json::array();
    for (const auto& e : r.word.entries)
        entries.push_back({{"kind", e.is_vertex ? "gamma_v" : "gamma_f"}, {"index", e.index}});
    j["word"] = entries;
    j["charpoly_word"] = r.charpoly_word;
    j["charpoly_nu"] = r.charpoly_nu;
    j["charpoly_equal"] = r.charpoly_equal;
    return j.dump(2);
}

} // namespace birkhoff
