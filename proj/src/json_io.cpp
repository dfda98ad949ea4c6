#include "rz/json_io.hpp"

#include <cmath>

namespace rz {

Json to_json(const Rational& v) { return to_string(v); }

Json to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return Json{{"size", m.rows()}, {"rows", rows}};
}

namespace {

Json rows_of(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd double_rows(const Json& j) {
  const RationalMatrix m = matrix_from_json(j);
  return to_eigen(m);
}

}  // namespace

Json to_json(const Eigen::MatrixXd& m) { return Json{{"size", m.rows()}, {"rows", rows_of(m)}}; }

Json to_json(const HermitianMatrix& h) { return Json{{"re", rows_of(h.re)}, {"im", rows_of(h.im)}}; }

Json to_json(const DetRep& r) {
  Json a = Json::array();
  for (const HermitianMatrix& h : r.coeffs) a.push_back(to_json(h));
  return Json{{"size", r.size}, {"A", a}};
}

Json to_json(const Pencil& p) {
  Json a = Json::array();
  for (const RationalMatrix& m : p.coeffs) a.push_back(to_json(m));
  return Json{{"n_vars", p.n_vars}, {"size", p.size}, {"A", a}};
}

Json to_json(const RealHomogeneousPencil& p) {
  Json a = Json::array();
  for (const auto& m : p.coeffs) a.push_back(to_json(to_eigen(m)));
  return Json{{"n_vars", p.n_vars}, {"size", p.size}, {"homogeneous", true}, {"A", a}};
}

Json to_json(const HomogeneousPencil& p) {
  Json a = Json::array();
  for (const RationalMatrix& m : p.coeffs) a.push_back(to_json(m));
  return Json{{"n_vars", p.n_vars}, {"size", p.size}, {"homogeneous", true}, {"A", a}};
}

Json to_json(const MomentTable& t) {
  Json values = Json::array();
  values.push_back(Json{{"monomial", "1"}, {"value", to_json(Rational(t.virtual_degree))}});
  for (const auto& [e, v] : t.values) values.push_back(Json{{"monomial", monomial_string(e)}, {"value", to_json(v)}});
  return Json{{"n_vars", t.n_vars}, {"virtual_degree", t.virtual_degree}, {"cutoff", t.cutoff}, {"moments", values}};
}

Json to_json(const RayGaugeResult& g) {
  return Json{{"direction", to_json(g.direction)},
              {"gauge", g.unbounded() ? Json("inf") : to_json(g.gauge)},
              {"status", to_string(g.status)}};
}

Json to_json(const RZVerdict& v) {
  Json out{{"passed", v.passed},
           {"probabilistic", true},
           {"directions_tested", v.directions_tested},
           {"tolerance", v.tolerance}};
  if (!v.passed) {
    Json ce{{"direction", to_json(v.counterexample_direction)}};
    if (v.counterexample_root)
      ce["root"] = Json{{"re", to_json(v.counterexample_root->real())}, {"im", to_json(v.counterexample_root->imag())}};
    out["counterexample"] = ce;
  }
  return out;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number()) return exact_rational(j.get<double>());
  fail(ErrorCode::kParse, "expected a number or a rational string, got " + j.dump());
}

std::vector<Rational> rational_vector_from_json(const Json& j) {
  require(j.is_array(), ErrorCode::kParse, "expected an array of numbers");
  std::vector<Rational> out;
  for (const Json& x : j) out.push_back(rational_from_json(x));
  return out;
}

RationalMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("rows") : j;
  require(rows.is_array(), ErrorCode::kParse, "matrix rows must be an array");
  std::vector<std::vector<Rational>> r;
  for (const Json& row : rows) r.push_back(rational_vector_from_json(row));
  return RationalMatrix::from_rows(r);
}

DetRep detrep_from_json(const Json& j) {
  require(j.is_object() && j.contains("A"), ErrorCode::kParse, "a representation needs an \"A\" array");
  std::vector<HermitianMatrix> coeffs;
  for (const Json& a : j.at("A")) {
    HermitianMatrix h;
    if (a.is_object() && a.contains("re")) {
      h.re = double_rows(a.at("re"));
      h.im = a.contains("im") ? double_rows(a.at("im")) : Eigen::MatrixXd::Zero(h.re.rows(), h.re.cols());
    } else {
      h = HermitianMatrix::real(double_rows(a));
    }
    coeffs.push_back(h);
  }
  DetRep r;
  r.coeffs = coeffs;
  r.size = coeffs.empty() ? j.value("size", 0) : coeffs.front().size();
  check_detrep(r);
  return r;
}

}  // namespace rz
