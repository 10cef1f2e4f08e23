#include "oddext/form_io.hpp"

#include <fstream>
#include <sstream>

namespace oddext::io {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

std::string rational_field(const Json& j, const char* key) {
  const Json& v = j.contains(key) ? j.at(key) : Json();
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a rational string \"p/q\"");
  return v.get<std::string>();
}

double number_field(const Json& j, const char* key) {
  const Json& v = j.contains(key) ? j.at(key) : Json();
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

struct Header {
  int n = 0;
  int q = 0;
  std::string backend;
  std::string scalar;
};

Header read_header(const Json& j) {
  Header h;
  h.n = field<int>(j, "n");
  h.q = field<int>(j, "q");
  h.backend = field<std::string>(j, "backend");
  h.scalar = field<std::string>(j, "scalar");
  if (h.n < 0) throw ParseError("n must be nonnegative");
  if (h.q < -1 || h.q > h.n + 1) throw ParseError("q outside [-1, n+1]");
  if (h.backend != "poly" && h.backend != "fourier") throw ParseError("backend must be 'poly' or 'fourier'");
  if (h.scalar != "rational" && h.scalar != "float") throw ParseError("scalar must be 'rational' or 'float'");
  if (!j.contains("terms") || !j.at("terms").is_array()) throw ParseError("missing array 'terms'");
  return h;
}

IndexSet read_index(const Json& term, const Header& h) {
  auto indices = field<std::vector<int>>(term, "I");
  if (static_cast<int>(indices.size()) != h.q) throw ParseError("term index set has wrong degree");
  try {
    return IndexSet(h.n, std::move(indices));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

Mode read_mode(const Json& term, const Header& h) {
  auto k = field<std::vector<int>>(term, "k");
  if (static_cast<int>(k.size()) != h.n) throw ParseError("mode length differs from n");
  return Mode(std::move(k));
}

Json index_json(const IndexSet& index) { return Json(std::vector<int>(index.indices().begin(), index.indices().end())); }

template <class S>
Json fourier_header(const FourierForm<S>& form, const char* scalar) {
  return Json{{"n", form.n()}, {"q", form.degree()}, {"backend", "fourier"}, {"scalar", scalar}, {"terms", Json::array()}};
}

} // namespace

Json to_json(const PolyForm& form) {
  Json j{{"n", form.n()}, {"q", form.degree()}, {"backend", "poly"}, {"scalar", "rational"}, {"terms", Json::array()}};
  for (const auto& [index, poly] : form.terms()) {
    for (const auto& [alpha, c] : poly.terms()) {
      std::vector<int> full(static_cast<std::size_t>(form.n()), 0);
      std::copy(alpha.begin(), alpha.end(), full.begin());
      j["terms"].push_back(Json{{"alpha", full}, {"I", index_json(index)}, {"coeff", format_rational(c)}});
    }
  }
  return j;
}

Json to_json(const FourierForm<GaussRational>& form) {
  Json j = fourier_header(form, "rational");
  for (const auto& [k, coeffs] : form.spectrum())
    for (const auto& [index, c] : coeffs.terms())
      j["terms"].push_back(
          Json{{"k", k.k}, {"I", index_json(index)}, {"re", format_rational(c.re)}, {"im", format_rational(c.im)}});
  return j;
}

Json to_json(const FourierForm<Complex>& form) {
  Json j = fourier_header(form, "float");
  for (const auto& [k, coeffs] : form.spectrum())
    for (const auto& [index, c] : coeffs.terms())
      j["terms"].push_back(Json{{"k", k.k}, {"I", index_json(index)}, {"re", c.real()}, {"im", c.imag()}});
  return j;
}

PolyForm poly_form_from_json(const Json& j) {
  const Header h = read_header(j);
  if (h.backend != "poly") throw ParseError("expected a poly form");
  if (h.scalar != "rational") throw ParseError("poly forms carry rational scalars only");
  PolyForm out(h.n, h.q);
  for (const auto& term : j.at("terms")) {
    const IndexSet index = read_index(term, h);
    auto alpha = field<std::vector<int>>(term, "alpha");
    if (static_cast<int>(alpha.size()) != h.n) throw ParseError("exponent length differs from n");
    for (int e : alpha)
      if (e < 0) throw ParseError("negative exponent");
    out.add_term(index, Polynomial::monomial(std::move(alpha), parse_rational(rational_field(term, "coeff"))));
  }
  return out;
}

FourierForm<GaussRational> exact_form_from_json(const Json& j) {
  const Header h = read_header(j);
  if (h.backend != "fourier" || h.scalar != "rational") throw ParseError("expected an exact fourier form");
  FourierForm<GaussRational> out(h.n, h.q);
  for (const auto& term : j.at("terms")) {
    const IndexSet index = read_index(term, h);
    const Mode k = read_mode(term, h);
    out.add(k, index, GaussRational(parse_rational(rational_field(term, "re")), parse_rational(rational_field(term, "im"))));
  }
  return out;
}

FourierForm<Complex> float_form_from_json(const Json& j) {
  const Header h = read_header(j);
  if (h.backend != "fourier" || h.scalar != "float") throw ParseError("expected a float fourier form");
  FourierForm<Complex> out(h.n, h.q);
  for (const auto& term : j.at("terms")) {
    const IndexSet index = read_index(term, h);
    const Mode k = read_mode(term, h);
    out.add(k, index, Complex(number_field(term, "re"), number_field(term, "im")));
  }
  return out;
}

AnyForm form_from_json(const Json& j) {
  const Header h = read_header(j);
  if (h.backend == "poly") return poly_form_from_json(j);
  if (h.scalar == "rational") return exact_form_from_json(j);
  return float_form_from_json(j);
}

namespace {

template <class S>
FourierForm<S> optional_form(const Json& j, const char* key, int n, int degree, FourierForm<S> (*parse)(const Json&)) {
  if (!j.contains(key) || j.at(key).is_null()) return FourierForm<S>(n, degree);
  FourierForm<S> form = parse(j.at(key));
  if (form.n() != n) throw ParseError(std::string("system field '") + key + "' has the wrong ambient dimension");
  if (form.degree() != degree)
    throw ParseError(std::string("system field '") + key + "' must have degree " + std::to_string(degree));
  return form;
}

template <class S>
HodgeSystem<S> build_system(const Json& j, int n, int q, int m, FourierForm<S> (*parse)(const Json&)) {
  auto f = optional_form<S>(j, "f", n, q + 1, parse);
  auto g = optional_form<S>(j, "g", n, q - 1, parse);
  return HodgeSystem<S>(q, m, std::move(f), std::move(g));
}

std::string scalar_of(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  return field<std::string>(j.at(key), "scalar");
}

} // namespace

AnySystem system_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  const int q = field<int>(j, "q");
  const int m = field<int>(j, "m");
  if (n < 1) throw ParseError("system: n must be >= 1");
  if (q < 0 || q > n) throw ParseError("system: q outside [0, n]");
  if (m < 0) throw ParseError("system: m must be >= 0");
  const std::string sf = scalar_of(j, "f");
  const std::string sg = scalar_of(j, "g");
  if (!sf.empty() && !sg.empty() && sf != sg) throw ParseError("system: f and g use different scalar kinds");
  const std::string scalar = !sf.empty() ? sf : (!sg.empty() ? sg : "rational");
  if (scalar == "float") return build_system<Complex>(j, n, q, m, &float_form_from_json);
  return build_system<GaussRational>(j, n, q, m, &exact_form_from_json);
}

Json to_json(const SolveReport& report) {
  return Json{{"backend", backend_name(report.backend)},
              {"residual_primal", report.residual_primal},
              {"residual_dual", report.residual_dual},
              {"flag_q1", report.flag_q1},
              {"flag_qn1", report.flag_qn1},
              {"failed", report.failed},
              {"sobolev_convention", "sum over |beta| <= 2m of L^r norms, normalized torus measure"}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

} // namespace oddext::io
