#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include "rz/detrep.hpp"
#include "rz/geometry.hpp"
#include "rz/moments.hpp"
#include "rz/pencil.hpp"

namespace rz {

using Json = nlohmann::ordered_json;

/// Exact values are written as "p/q" strings; doubles as JSON numbers
/// (non-finite values as the strings "inf", "-inf", "nan").
Json to_json(const Rational& v);
Json to_json(double v);
Json to_json(const std::vector<Rational>& v);
Json to_json(const std::vector<double>& v);
Json to_json(const RationalMatrix& m);      // {"size", "rows"}
Json to_json(const Eigen::MatrixXd& m);     // {"size", "rows"}
Json to_json(const HermitianMatrix& h);     // {"re", "im"}
Json to_json(const DetRep& r);              // {"size", "A"}
Json to_json(const Pencil& p);
Json to_json(const RealHomogeneousPencil& p);
Json to_json(const HomogeneousPencil& p);
Json to_json(const MomentTable& t);
Json to_json(const RayGaugeResult& g);
Json to_json(const RZVerdict& v);

/// Accepts a JSON number or a rational string.
Rational rational_from_json(const Json& j);
std::vector<Rational> rational_vector_from_json(const Json& j);
RationalMatrix matrix_from_json(const Json& j);  // {"rows": [...]} or a bare array of rows
DetRep detrep_from_json(const Json& j);

}  // namespace rz
