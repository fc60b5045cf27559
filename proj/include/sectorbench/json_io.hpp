#pragma once

#include <string>
#include <vector>

#include "sectorbench/report.hpp"
#include "sectorbench/star_algebra.hpp"

namespace sectorbench {

/// {"dim": n, "data": [[re, im], ...]} with entries in row-major order.
inline Json matrix_to_json(const MatElem& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) data.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
  return Json{{"dim", m.rows()}, {"data", std::move(data)}};
}

inline double json_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

inline MatElem matrix_from_json(const Json& j, const std::string& where = "matrix") {
  if (!j.is_object() || !j.contains("dim") || !j.contains("data")) {
    throw SchemaError(where + ": expected an object with \"dim\" and \"data\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw SchemaError(where + ": \"dim\" must be a positive integer");
  }
  const auto n = static_cast<Index>(j["dim"].get<long long>());
  const Json& data = j["data"];
  if (!data.is_array()) throw SchemaError(where + ": \"data\" must be an array");
  if (static_cast<Index>(data.size()) != n * n) {
    throw DimensionMismatch(where + ": expected " + std::to_string(n * n) + " entries, found " +
                            std::to_string(data.size()));
  }
  MatElem m(n, n);
  for (Index k = 0; k < n * n; ++k) {
    const Json& e = data[static_cast<std::size_t>(k)];
    Complex z;
    if (e.is_number()) {
      z = json_number(e, where);
    } else if (e.is_array() && e.size() == 2) {
      z = Complex(json_number(e[0], where), json_number(e[1], where));
    } else {
      throw SchemaError(where + ": entries must be [re, im] pairs");
    }
    m(k / n, k % n) = z;
  }
  if (!is_finite(m)) throw SchemaError(where + ": non-finite entry");
  return m;
}

inline std::vector<MatElem> matrices_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of matrices");
  std::vector<MatElem> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(matrix_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

inline Json subspace_to_json(const Subspace& s) {
  Json basis = Json::array();
  for (const auto& b : s.basis()) basis.push_back(matrix_to_json(b));
  return Json{{"ambient", s.ambient()}, {"size", s.size()}, {"basis", std::move(basis)}};
}

inline Subspace subspace_from_json(const Json& j, const ToleranceContext& ctx) {
  if (!j.is_object() || !j.contains("ambient") || !j.contains("basis")) {
    throw SchemaError("subspace: expected \"ambient\" and \"basis\"");
  }
  const auto n = static_cast<Index>(j["ambient"].get<long long>());
  return orthonormal_span(matrices_from_json(j["basis"], "subspace.basis"), n, ctx);
}

inline Json projection_to_json(const MatElem& p) {
  Json out = matrix_to_json(p);
  out["rank"] = projection_rank(p);
  return out;
}

inline MatElem projection_from_json(const Json& j, const ToleranceContext& ctx) {
  MatElem p = matrix_from_json(j, "projection");
  if (!is_projection(p, ctx)) throw SchemaError("projection: matrix is not a self-adjoint idempotent");
  return p;
}

}  // namespace sectorbench
