#pragma once

#include <string>
#include <vector>

#include "sectorbench/json_io.hpp"
#include "sectorbench/toy_model.hpp"

namespace sectorbench {

struct Scenario {
  std::string kind;
  Json payload;
  ToleranceContext tolerances;
  std::uint64_t seed = 0;
};

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline int int_field(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<int> int_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(int_field(x, where));
  return out;
}

inline std::vector<std::vector<int>> int_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of integer rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(int_list(row, where));
  return out;
}

}  // namespace detail

inline Scenario parse_scenario(const Json& j) {
  if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
  Scenario sc;
  const Json& kind = detail::field(j, "kind", "scenario");
  if (!kind.is_string()) throw SchemaError("scenario.kind must be a string");
  sc.kind = kind.get<std::string>();
  if (sc.kind != "t-procedure" && sc.kind != "hilbert-system" && sc.kind != "constrained" && sc.kind != "toy-gauge") {
    throw SchemaError("unknown scenario kind \"" + sc.kind + "\"");
  }
  sc.payload = detail::field(j, "payload", "scenario");
  if (!sc.payload.is_object()) throw SchemaError("scenario.payload must be an object");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (!t.is_object()) throw SchemaError("scenario.tolerances must be an object");
    if (t.contains("rank_tol")) sc.tolerances.rank_tol = json_number(t["rank_tol"], "tolerances.rank_tol");
    if (t.contains("eq_tol")) sc.tolerances.eq_tol = json_number(t["eq_tol"], "tolerances.eq_tol");
    try {
      sc.tolerances.validate();
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw SchemaError("scenario.seed must be an integer");
    sc.seed = j["seed"].get<std::uint64_t>();
  }
  return sc;
}

/// {"type": "full" | "diagonal" | "generated", "dim": n, "generators": [...], "unital": bool}
inline StarAlgebra algebra_from_json(const Json& j, const ToleranceContext& ctx, const std::string& where) {
  const Json& type = detail::field(j, "type", where);
  if (!type.is_string()) throw SchemaError(where + ".type must be a string");
  const std::string t = type.get<std::string>();
  const int n = detail::int_field(detail::field(j, "dim", where), where + ".dim");
  if (n < 1 || n > 64) throw SchemaError(where + ".dim must lie in [1, 64]");
  if (t == "full") return full_algebra(n);
  if (t == "diagonal") return diagonal_algebra(n, ctx);
  if (t == "generated") {
    const auto gens = matrices_from_json(detail::field(j, "generators", where), where + ".generators");
    // every algebra entering a constraint system or crossed product is unital
    const bool unital = j.value("unital", true);
    return generate_star_algebra(gens, n, unital, ctx);
  }
  throw SchemaError(where + ".type must be full, diagonal or generated");
}

inline FiniteAbelianGroup group_from_json(const Json& j, const std::string& where) {
  const auto factors = detail::int_list(detail::field(j, "invariant_factors", where), where + ".invariant_factors");
  for (int f : factors) {
    if (f < 2 || f > 8) throw SchemaError(where + ": invariant factors must lie in [2, 8]");
  }
  return FiniteAbelianGroup(factors);
}

inline TwoCocycle cocycle_from_json(const Json& j, const FiniteAbelianGroup& g) {
  if (j.is_string()) {
    if (j.get<std::string>() != "trivial") throw SchemaError("cocycle must be \"trivial\" or an object");
    return TwoCocycle::trivial(g);
  }
  if (j.is_object() && j.contains("bilinear")) return TwoCocycle::bilinear(g, detail::int_matrix(j["bilinear"], "cocycle.bilinear"));
  const Json& table = detail::field(j, "table", "cocycle");
  const Index n = g.order();
  if (!table.is_array() || static_cast<Index>(table.size()) != n) {
    throw SchemaError("cocycle.table must have one row per group element");
  }
  MatElem t(n, n);
  for (Index a = 0; a < n; ++a) {
    const Json& row = table[static_cast<std::size_t>(a)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) throw SchemaError("cocycle.table rows have the wrong length");
    for (Index b = 0; b < n; ++b) {
      const Json& e = row[static_cast<std::size_t>(b)];
      if (e.is_number()) {
        t(a, b) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        t(a, b) = Complex(json_number(e[0], "cocycle"), json_number(e[1], "cocycle"));
      } else {
        throw SchemaError("cocycle entries must be numbers or [re, im] pairs");
      }
    }
  }
  return TwoCocycle(g, std::move(t));
}

inline std::vector<MatElem> action_from_json(const Json& j, const FiniteAbelianGroup& g, Index m) {
  if (!j.is_array() || j.size() != g.rank()) throw SchemaError("action needs one entry per invariant factor");
  std::vector<MatElem> out;
  for (const auto& entry : j) {
    if (entry.contains("permutation")) {
      const auto perm = detail::int_list(entry["permutation"], "action.permutation");
      if (static_cast<Index>(perm.size()) != m) throw DimensionMismatch("permutation length differs from base dimension");
      std::vector<Index> p(perm.begin(), perm.end());
      std::vector<bool> seen(static_cast<std::size_t>(m), false);
      for (Index x : p) {
        if (x < 0 || x >= m || seen[static_cast<std::size_t>(x)]) throw SchemaError("action.permutation is not a permutation");
        seen[static_cast<std::size_t>(x)] = true;
      }
      out.push_back(permutation_matrix(p));
    } else if (entry.contains("unitary")) {
      out.push_back(matrix_from_json(entry["unitary"], "action.unitary"));
    } else {
      throw SchemaError("action entries need \"permutation\" or \"unitary\"");
    }
  }
  return out;
}

inline CrossedProduct hilbert_from_payload(const Json& p, const ToleranceContext& ctx) {
  const StarAlgebra base = algebra_from_json(detail::field(p, "base_algebra", "payload"), ctx, "base_algebra");
  if (!base.unital) throw SchemaError("base_algebra must be unital");
  const FiniteAbelianGroup g = group_from_json(detail::field(p, "group", "payload"), "group");
  const TwoCocycle omega = cocycle_from_json(p.contains("cocycle") ? p["cocycle"] : Json("trivial"), g);
  const auto action = p.contains("action") ? action_from_json(p["action"], g, base.ambient())
                                           : std::vector<MatElem>(g.rank(), identity(base.ambient()));
  return twisted_crossed_product(base, g, action, omega, ctx);
}

/// Constraints are given in base-algebra coordinates and embedded into the crossed product.
inline ConstrainedHilbertSystem constrained_from_payload(const Json& p, const ToleranceContext& ctx) {
  const CrossedProduct cp = hilbert_from_payload(p, ctx);
  std::vector<MatElem> c;
  for (const auto& x : matrices_from_json(detail::field(p, "constraints", "payload"), "constraints")) {
    c.push_back(cp.embed(x));
  }
  return ConstrainedHilbertSystem::make(cp.hs, c, ctx);
}

inline GaugeScenario gauge_from_payload(const Json& p) {
  GaugeScenario g;
  g.modes = detail::int_field(detail::field(p, "modes", "payload"), "modes");
  g.charge_modulus = detail::int_field(detail::field(p, "charge_modulus", "payload"), "charge_modulus");
  if (g.modes < 1 || g.modes > 6) throw SchemaError("modes must lie in [1, 6]");
  if (g.charge_modulus < 1 || g.charge_modulus > 8) throw SchemaError("charge_modulus must lie in [1, 8]");
  g.weyl_group = detail::int_list(detail::field(p, "weyl_group", "payload"), "weyl_group");
  for (int f : g.weyl_group) {
    if (f < 2) throw SchemaError("weyl_group factors must be at least 2");
  }
  const Json bic = p.value("bicharacter", Json("trivial"));
  if (bic.is_string()) {
    if (bic.get<std::string>() != "trivial") throw SchemaError("bicharacter must be \"trivial\" or an object");
  } else {
    g.bicharacter = detail::int_matrix(detail::field(bic, "exponents", "bicharacter"), "bicharacter.exponents");
  }
  const std::size_t r = g.weyl_group.size();
  const Json& l = detail::field(p, "L", "payload");
  if (l.is_string() && l.get<std::string>() == "identity") {
    if (r != static_cast<std::size_t>(g.modes)) throw SchemaError("L = identity needs one Weyl factor per mode");
    g.L.assign(r, std::vector<int>(static_cast<std::size_t>(g.modes), 0));
    for (std::size_t i = 0; i < r; ++i) g.L[i][i] = 1;
  } else if (l.is_string() && l.get<std::string>() == "zero") {
    g.L.assign(r, std::vector<int>(static_cast<std::size_t>(g.modes), 0));
  } else {
    g.L = detail::int_matrix(l, "L");
  }
  g.f_set = detail::int_matrix(detail::field(p, "f_set", "payload"), "f_set");
  return g;
}

}  // namespace sectorbench
