#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "birkhoff/reports.hpp"

using namespace birkhoff;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("shipped data files parse and match the builders") {
    MultiCurveMap t1 = parse_map_json(slurp("t1.json"));
    CHECK(t1.num_vertices() == 1);
    MultiCurveMap t6 = parse_map_json(slurp("t6.json"));
    MultiCurveMap t6b = make_grid_map(2, 3);
    CHECK(map_to_json(t6) == map_to_json(t6b));
    MultiCurveMap g2 = parse_map_json(slurp("genus2.json"));
    CHECK(g2.genus() == 2);
    CHECK(g2.num_vertices() == 6);
    CHECK(g2.connected());
}

TEST_CASE("reports are stable across runs and reparse") {
    MultiCurveMap m = make_grid_map(2, 3);
    CHECK(validate_report(m) == validate_report(m));

    auto etas = enumerate_eulerian(m);
    Coorientation acyclic_eta;
    for (const auto& c : etas)
        if (is_acyclic(m, c)) {
            acyclic_eta = c;
            break;
        }
    CHECK(coorientation_report(m, acyclic_eta) == coorientation_report(m, acyclic_eta));

    SurfaceModel model(m, acyclic_eta);
    std::string s1 = surface_report(model);
    SurfaceModel model2(m, acyclic_eta);
    CHECK(s1 == surface_report(model2));

    TwistSystem sys(m, acyclic_eta);
    auto rep = representations(m, acyclic_eta, 1).at(0);
    TwistWord w = sys.word(rep);
    std::string human = word_report(sys, w, true);
    CHECK(human.find("T^-1[gamma_") != std::string::npos);
    CHECK(static_cast<size_t>(std::count(human.begin(), human.end(), '\n')) == w.entries.size());
    std::string mj = matrix_report(sys, sys.word_matrix(w));
    CHECK(mj == matrix_report(sys, sys.word_matrix(w)));
}

TEST_CASE("twelve-entry words on t6 mention each vertex and face once") {
    MultiCurveMap m = make_grid_map(2, 3);
    for (const auto& c : enumerate_eulerian(m)) {
        if (!is_acyclic(m, c)) continue;
        TwistSystem sys(m, c);
        auto rep = representations(m, c, 1).at(0);
        CHECK(sys.word(rep).entries.size() == 12);
        break;
    }
}
