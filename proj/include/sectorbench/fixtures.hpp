#pragma once

#include <string>
#include <vector>

#include "sectorbench/report.hpp"

namespace sectorbench {

struct FixtureInfo {
  std::string name;
  std::string description;
  std::vector<std::string> exercises;
  const char* text;

  Json scenario() const { return Json::parse(text); }
};

inline const std::vector<FixtureInfo>& fixture_list() {
  static const std::vector<FixtureInfo> list = {
      {"mat2-proj",
       "Mat_2 with the constraint E11: R is one-dimensional",
       {"t-procedure", "open-projection", "relative-multiplier", "corner-isomorphism", "e-constraint"},
       R"({
  "kind": "t-procedure",
  "seed": 1,
  "payload": {
    "algebra": {"type": "full", "dim": 2},
    "constraints": [
      {"dim": 2, "data": [[1, 0], [0, 0], [0, 0], [0, 0]]}
    ]
  }
})"},
      {"char-z2",
       "C^2 with the constraint (0, -2): D = 0 + C and O = B",
       {"t-procedure", "open-projection", "corner-isomorphism", "e-constraint"},
       R"({
  "kind": "t-procedure",
  "seed": 2,
  "payload": {
    "algebra": {"type": "diagonal", "dim": 2},
    "constraints": [
      {"dim": 2, "data": [[0, 0], [0, 0], [0, 0], [-2, 0]]}
    ]
  }
})"},
      {"z2-gauge",
       "diag_2 crossed by the coordinate swap: a Mat_2-type field algebra of dimension 4",
       {"hilbert-system-axioms", "spectral-decomposition", "parseval", "minimality-disjointness", "canonical-automorphism",
        "regularity", "e-constraint"},
       R"({
  "kind": "hilbert-system",
  "seed": 3,
  "payload": {
    "base_algebra": {"type": "diagonal", "dim": 2},
    "group": {"invariant_factors": [2]},
    "cocycle": "trivial",
    "action": [{"permutation": [1, 0]}]
  }
})"},
      {"pauli-tcp",
       "scalars twisted by the Pauli cocycle on Z_2 x Z_2: anticommuting sector unitaries",
       {"hilbert-system-axioms", "spectral-decomposition", "parseval", "permutator", "minimality-disjointness",
        "canonical-automorphism", "e-constraint"},
       R"({
  "kind": "hilbert-system",
  "seed": 4,
  "payload": {
    "base_algebra": {"type": "full", "dim": 1},
    "group": {"invariant_factors": [2, 2]},
    "cocycle": {"table": [
      [1, 1, 1, 1],
      [1, 1, -1, -1],
      [1, 1, 1, 1],
      [1, 1, -1, -1]
    ]}
  }
})"},
      {"swap-dead-sector",
       "z2-gauge constrained by E11: the swap sector dies and the kernel is the whole group",
       {"relative-consistency", "restriction", "sector-survival", "surviving-system", "e-constraint"},
       R"({
  "kind": "constrained",
  "seed": 5,
  "payload": {
    "base_algebra": {"type": "diagonal", "dim": 2},
    "group": {"invariant_factors": [2]},
    "cocycle": "trivial",
    "action": [{"permutation": [1, 0]}],
    "constraints": [
      {"dim": 2, "data": [[1, 0], [0, 0], [0, 0], [0, 0]]}
    ]
  }
})"},
      {"surviving-pipeline",
       "C^4 with a swap of two coordinate pairs and a swap-invariant constraint: every sector survives",
       {"relative-consistency", "restriction", "sector-survival", "factoring", "kernel-reconstruction",
        "product-compatibility", "arrow-inclusion", "arrow-equality", "e-constraint"},
       R"({
  "kind": "constrained",
  "seed": 6,
  "payload": {
    "base_algebra": {"type": "diagonal", "dim": 4},
    "group": {"invariant_factors": [2]},
    "cocycle": "trivial",
    "action": [{"permutation": [2, 3, 0, 1]}],
    "constraints": [
      {"dim": 4, "data": [[1, 0], [0, 0], [0, 0], [0, 0],
                          [0, 0], [0, 0], [0, 0], [0, 0],
                          [0, 0], [0, 0], [1, 0], [0, 0],
                          [0, 0], [0, 0], [0, 0], [0, 0]]}
    ]
  }
})"},
      {"toy-qed-1",
       "one fermion mode, Z_2 charge, Weyl group Z_2 with trivial bicharacter and L = id",
       {"weyl-system", "toy-first-class", "sector-disjointness", "sector-shift", "outerness",
        "constraint-invariance", "factoring", "e-constraint"},
       R"({
  "kind": "toy-gauge",
  "seed": 7,
  "payload": {
    "modes": 1,
    "charge_modulus": 2,
    "weyl_group": [2],
    "bicharacter": "trivial",
    "L": "identity",
    "f_set": [[1]]
  }
})"},
  };
  return list;
}

inline const FixtureInfo& fixture(const std::string& name) {
  for (const auto& f : fixture_list()) {
    if (f.name == name) return f;
  }
  throw SchemaError("unknown fixture \"" + name + "\"");
}

}  // namespace sectorbench
