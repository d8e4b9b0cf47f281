// Command-line front end: validate maps, enumerate and analyze Eulerian
// coorientations, construct coorientations from cohomology data, build the
// section surface and its twist factorization, and run the flat-torus
// geodesic oracle.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "birkhoff/reports.hpp"

using namespace birkhoff;
using nlohmann::json;

namespace {

int log_level() {
    const char* env = std::getenv("BIRKHOFF_LOG");
    if (!env) return 1;
    std::string s = env;
    if (s == "quiet") return 0;
    if (s == "debug") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[birkhoff] " << msg << "\n";
}

void debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[birkhoff:debug] " << msg << "\n";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out.good()) throw std::invalid_argument("cannot write file: " + out_path);
        out << text << "\n";
        info("wrote " + out_path);
    }
}

MultiCurveMap load_map(const std::string& path) {
    MultiCurveMap m = parse_map_json(slurp(path));
    debug("loaded map " + path + ": V=" + std::to_string(m.num_vertices()) +
          " E=" + std::to_string(m.num_edges()) + " F=" + std::to_string(m.num_faces()));
    return m;
}

Coorientation load_coor(const MultiCurveMap& m, const std::string& path) {
    return parse_coorientation_json(m, slurp(path));
}

std::vector<int> pick_representation(const MultiCurveMap& m, const Coorientation& eta,
                                     const std::string& which) {
    if (which == "first") return representations(m, eta, 1).at(0);
    size_t idx = std::stoul(which);
    auto reps = representations(m, eta, idx + 1);
    if (reps.size() <= idx)
        throw std::invalid_argument("coorientation has only " + std::to_string(reps.size()) +
                                    " representations");
    return reps[idx];
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birkhoff sections of the geodesic flow from filling multi-curves"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    std::string format = "human";
    app.add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
    std::string out_path;
    app.add_option("-o,--output", out_path, "write the report to a file");

    std::string map_path, eta_path, nu_path, class_path, representation = "first";
    int limit = 100000;
    std::vector<int> grid;
    int samples = 1000;
    long long horizon = 100;
    uint64_t seed = 1;
    int jobs = 1;

    auto* validate = app.add_subcommand("validate", "check a map file and print its invariants");
    validate->add_option("map", map_path)->required();
    validate->add_option("eta", eta_path, "optional coorientation to analyze");

    auto* enumerate = app.add_subcommand("enumerate", "list Eulerian coorientations");
    enumerate->add_option("map", map_path)->required();
    enumerate->add_option("--limit", limit, "cap on the number of coorientations listed");
    enumerate->add_option("--jobs", jobs, "parallel analysis workers");

    auto* construct = app.add_subcommand("construct", "build a coorientation in a given class");
    construct->add_option("map", map_path)->required();
    construct->add_option("--class", class_path, "cochain file")->required();

    auto* flip_run = app.add_subcommand("flip-run", "run the flip algorithm once around");
    flip_run->add_option("map", map_path)->required();
    flip_run->add_option("eta", eta_path)->required();

    auto* surface = app.add_subcommand("surface", "section surface invariants and curves");
    surface->add_option("map", map_path)->required();
    surface->add_option("eta", eta_path)->required();

    auto* word = app.add_subcommand("word", "twist word of the first-return map");
    word->add_option("map", map_path)->required();
    word->add_option("eta", eta_path)->required();
    word->add_option("--representation", representation, "\"first\" or an index");

    auto* matrix = app.add_subcommand("matrix", "homology action of the first-return map");
    matrix->add_option("map", map_path)->required();
    matrix->add_option("eta", eta_path)->required();
    matrix->add_option("--representation", representation, "\"first\" or an index");

    auto* compare = app.add_subcommand("compare", "flip path and Hurwitz comparison");
    compare->add_option("map", map_path)->required();
    compare->add_option("eta", eta_path)->required();
    compare->add_option("nu", nu_path)->required();

    auto* connectivity = app.add_subcommand("connectivity", "flip graph of a cohomology class");
    connectivity->add_option("map", map_path)->required();
    connectivity->add_option("--class", class_path, "cochain file")->required();

    auto* oracle = app.add_subcommand("oracle", "flat-torus geodesic flow verification");
    oracle->add_option("--grid", grid, "p q: horizontal and vertical circle counts")
        ->expected(2)
        ->required();
    oracle->add_option("--coorientation", eta_path, "coorientation file")->required();
    oracle->add_option("--samples", samples);
    oracle->add_option("--horizon", horizon);
    oracle->add_option("--seed", seed);
    oracle->add_option("--jobs", jobs, "parallel sampling workers");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            MultiCurveMap m = load_map(map_path);
            if (!eta_path.empty()) {
                Coorientation eta = load_coor(m, eta_path);
                if (format == "human") {
                    std::ostringstream os;
                    auto acy = check_acyclic(m, eta);
                    os << "vertex types:";
                    for (VertexId v = 0; v < m.num_vertices(); ++v)
                        os << ' '
                           << (vertex_type(m, eta, v) == VertexType::alternating ? "alternating"
                                                                                 : "non-alternating");
                    os << "\nsink faces:";
                    for (FaceId f : sink_faces(m, eta)) os << ' ' << f;
                    os << "\nacyclic: " << (acy.acyclic ? "yes" : "no");
                    if (!acy.acyclic) {
                        os << "\nwitness cycle faces:";
                        for (FaceId f : acy.cycle_faces) os << ' ' << f;
                    }
                    emit(os.str(), out_path);
                } else {
                    emit(coorientation_report(m, eta), out_path);
                }
            } else if (format == "human") {
                std::ostringstream os;
                os << "map " << (m.name().empty() ? "(unnamed)" : m.name())
                   << ": V=" << m.num_vertices() << " E=" << m.num_edges()
                   << " F=" << m.num_faces() << " genus=" << m.genus()
                   << " strands=" << m.strands().size();
                emit(os.str(), out_path);
            } else {
                emit(validate_report(m), out_path);
            }
        } else if (enumerate->parsed()) {
            MultiCurveMap m = load_map(map_path);
            auto etas = enumerate_eulerian(m);
            size_t shown = std::min(etas.size(), static_cast<size_t>(limit));
            std::vector<char> acyclic(shown, 0);
            int workers = std::max(1, jobs);
            std::vector<std::thread> pool;
            for (int k = 0; k < workers; ++k)
                pool.emplace_back([&, k] {
                    for (size_t i = k; i < shown; i += workers)
                        acyclic[i] = is_acyclic(m, etas[i]);
                });
            for (auto& t : pool) t.join();
            json j;
            j["count"] = etas.size();
            json list = json::array();
            for (size_t i = 0; i < shown; ++i) {
                json bits = json::array();
                for (uint8_t b : etas[i].bits) bits.push_back(int(b));
                list.push_back({{"bits", bits}, {"acyclic", acyclic[i] != 0}});
            }
            j["coorientations"] = list;
            emit(format == "human" ? "eulerian coorientations: " + std::to_string(etas.size())
                                   : j.dump(2),
                 out_path);
        } else if (construct->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Cochain w = parse_cochain_json(m, slurp(class_path));
            auto res = construct_coorientation(m, w);
            if (std::holds_alternative<Coorientation>(res)) {
                emit(coorientation_to_json(m, std::get<Coorientation>(res)), out_path);
            } else {
                const auto& cert = std::get<InfeasibilityCertificate>(res);
                json j;
                json cycle = json::array();
                for (const auto& s : cert.cycle) cycle.push_back(dual_step_target(m, s));
                j["cycle"] = cycle;
                j["length"] = cert.length;
                j["omega"] = cert.omega;
                j["exists"] = false;
                emit(j.dump(2), out_path);
            }
        } else if (flip_run->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Coorientation eta = load_coor(m, eta_path);
            auto order = partial_representations(m, eta, 1).at(0);
            auto seq = flip_algorithm(m, eta, order);
            emit(flip_run_report(m, seq, order), out_path);
        } else if (surface->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Coorientation eta = load_coor(m, eta_path);
            SurfaceModel model(m, eta);
            if (format == "human") {
                std::ostringstream os;
                os << "chi=" << model.euler_characteristic()
                   << " boundary=" << model.num_boundary_components()
                   << " genus=" << model.genus() << " h1_rank=" << model.h1_rank();
                emit(os.str(), out_path);
            } else {
                emit(surface_report(model), out_path);
            }
        } else if (word->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Coorientation eta = load_coor(m, eta_path);
            TwistSystem sys(m, eta);
            auto rep = pick_representation(m, eta, representation);
            emit(word_report(sys, sys.word(rep), format == "human"), out_path);
        } else if (matrix->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Coorientation eta = load_coor(m, eta_path);
            TwistSystem sys(m, eta);
            auto rep = pick_representation(m, eta, representation);
            emit(matrix_report(sys, sys.monodromy(rep)), out_path);
        } else if (compare->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Coorientation eta = load_coor(m, eta_path);
            Coorientation nu = load_coor(m, nu_path);
            auto hur = hurwitz_compare(m, eta, nu);
            auto common = common_model_word(m, eta, nu);
            json j = json::parse(hurwitz_report_json(hur));
            j["common_model"] = json::parse(common_word_report_json(common));
            emit(j.dump(2), out_path);
        } else if (connectivity->parsed()) {
            MultiCurveMap m = load_map(map_path);
            Cochain w = parse_cochain_json(m, slurp(class_path));
            emit(connectivity_report_json(flip_connectivity(m, w)), out_path);
        } else if (oracle->parsed()) {
            FlatMultiCurve model = embed_grid(grid[0], grid[1]);
            Coorientation eta = load_coor(model.map(), eta_path);
            int workers = std::max(1, jobs);
            std::vector<BirkhoffVerdict> verdicts(workers);
            std::vector<std::thread> pool;
            int chunk = (samples + workers - 1) / workers;
            for (int k = 0; k < workers; ++k)
                pool.emplace_back([&, k] {
                    verdicts[k] = verify_birkhoff(model, eta, chunk, horizon, seed + k);
                });
            for (auto& t : pool) t.join();
            BirkhoffVerdict total = verdicts[0];
            for (int k = 1; k < workers; ++k) {
                total.agrees = total.agrees && verdicts[k].agrees;
                total.bound_satisfied = total.bound_satisfied && verdicts[k].bound_satisfied;
                total.samples_used += verdicts[k].samples_used;
                if (total.max_length_sq < verdicts[k].max_length_sq)
                    total.max_length_sq = verdicts[k].max_length_sq;
                for (size_t b = 0; b < total.histogram.size(); ++b)
                    total.histogram[b] += verdicts[k].histogram[b];
            }
            json j = json::parse(oracle_report_json(total));
            if (is_acyclic(model.map(), eta)) {
                auto order = partial_representations(model.map(), eta, 1).at(0);
                auto fact = verify_factorization(model, eta, order, samples, horizon, seed);
                j["factorization"] = json::parse(factorization_report_json(fact));
            }
            emit(j.dump(2), out_path);
        }
        return 0;
    } catch (const domain_error& e) {
        json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "InvalidInput";
        err["message"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 2;
    }
}
