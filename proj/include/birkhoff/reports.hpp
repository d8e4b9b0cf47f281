#pragma once

#include <string>

#include "birkhoff/monodromy.hpp"
#include "birkhoff/oracle.hpp"
#include "birkhoff/surface.hpp"

namespace birkhoff {

// JSON report builders shared by the CLI and the tests.
std::string validate_report(const MultiCurveMap& m);
std::string coorientation_report(const MultiCurveMap& m, const Coorientation& c);
std::string surface_report(const SurfaceModel& model);
std::string word_report(const TwistSystem& sys, const TwistWord& word, bool human);
std::string matrix_report(const TwistSystem& sys, const IntMat& m);
std::string flip_run_report(const MultiCurveMap& m, const std::vector<Coorientation>& seq,
                            const FaceOrder& order);
std::string hurwitz_report_json(const HurwitzReport& r);
std::string connectivity_report_json(const FlipConnectivityReport& r);
std::string oracle_report_json(const BirkhoffVerdict& v);
std::string factorization_report_json(const FactorizationVerdict& v);
std::string common_word_report_json(const CommonWordReport& r);

} // namespace birkhoff
