#pragma once

// JSON files for forms and Hodge systems.
//
// FormFile:
//   {"n": 2, "q": 1, "backend": "fourier", "scalar": "rational",
//    "terms": [{"k": [1, 0], "I": [2], "re": "1/2", "im": "0/1"}]}
//   {"n": 2, "q": 0, "backend": "poly", "scalar": "rational",
//    "terms": [{"alpha": [2, 1], "I": [], "coeff": "-3/4"}]}
//
// Rationals are always strings "p/q"; float scalars are JSON numbers.
//
// SystemFile: {"n": 2, "q": 0, "m": 1, "f": FormFile, "g": FormFile}
// (f or g may be omitted for the zero form).

#include "analysis.hpp"
#include "hodge_solver.hpp"
#include "poly_backend.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace oddext::io {

using Json = nlohmann::json;

Json to_json(const PolyForm& form);
Json to_json(const FourierForm<GaussRational>& form);
Json to_json(const FourierForm<Complex>& form);

using AnyForm = std::variant<PolyForm, FourierForm<GaussRational>, FourierForm<Complex>>;

/// Throws ParseError on any schema violation.
AnyForm form_from_json(const Json& j);
PolyForm poly_form_from_json(const Json& j);
FourierForm<GaussRational> exact_form_from_json(const Json& j);
FourierForm<Complex> float_form_from_json(const Json& j);

using AnySystem = std::variant<HodgeSystem<GaussRational>, HodgeSystem<Complex>>;

/// Throws ParseError on schema or degree problems and IncompatibleData
/// unless df = 0 and d*g = 0.
AnySystem system_from_json(const Json& j);
template <class S>
Json to_json(const HodgeSystem<S>& sys) {
  return Json{{"n", sys.n()}, {"q", sys.q()}, {"m", sys.m()}, {"f", to_json(sys.f())}, {"g", to_json(sys.g())}};
}

Json to_json(const SolveReport& report);

/// Reads and parses a JSON file; ParseError on I/O or syntax errors.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

} // namespace oddext::io
