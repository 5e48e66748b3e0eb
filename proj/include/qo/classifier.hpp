#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qo/invariants.hpp"
#include "qo/orbitdb.hpp"
#include "qo/quadmap.hpp"

namespace qo {

// Raised when zero or several table rows match: the classification theorem
// is total, so this always signals an engine or data bug, never bad input.
struct UnclassifiableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantVector {
  int dim_a = 0;
  int dim_q = 0;
  DegreeReport mu;
  CritKind crit_kind = CritKind::Empty;
  std::vector<int> crit_partition;       // Finite
  std::pair<int, int> crit_curve_deg{0, 0};  // Curve: (degree, squarefree degree)
  std::optional<std::pair<int, int>> si_deg;  // mu == 1: (degree, squarefree degree)
  int orbit_dim_reduced = 0;   // in the reduced ambient
  int orbit_dim_original = 0;  // in the input ambient
  std::optional<RealSignatures> real;  // field R only
};

struct ClassificationReport {
  OrbitLabel label;
  InvariantVector invariants;
  int topological_type = 0;
  int expected_orbit_dim = 0;  // closed form at the input ambient dimension
};

// Exact linear change of target coordinates making trailing components
// vanish, then dropping them (or zero-padding a short map), so that the
// result lives in ambient max(3, dim_a) <= 5.  The witness L satisfies
// act((L, id), F) = (reduced map, 0, ..., 0) in the original ambient.
struct AmbientReduction {
  QuadMap reduced;
  AffineMap witness_L;  // dimension = original n
};
AmbientReduction reduce_ambient(const QuadMap& F);

ClassificationReport classify(const QuadMap& F, uint64_t seed = 0);

// Topological type of a label (tables from the classification):
// 18 complex types, 22 real types.
int topological_type(const OrbitLabel& label);

int expected_orbit_dim(const OrbitLabel& label);

}  // namespace qo
