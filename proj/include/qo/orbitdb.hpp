#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qo/invariants.hpp"
#include "qo/quadmap.hpp"

namespace qo {

// The canonical class names: F1..F29 with the real splits F1',F7',F13',
// F17',F19',F25', and the four-plus-component classes G0..G4 with G3'.
enum class LabelId {
  F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14, F15, F16, F17,
  F18, F19, F20, F21, F22, F23, F24, F25, F26, F27, F28, F29,
  F1p, F7p, F13p, F17p, F19p, F25p,
  G0, G1, G2, G3, G4, G3p,
};

std::string label_name(LabelId id);                      // "F13'" style
std::optional<LabelId> label_from_name(const std::string& s);
bool label_is_primed(LabelId id);
LabelId label_unprimed(LabelId id);  // F13' -> F13, G3' -> G3, else identity

struct OrbitLabel {
  LabelId base;
  int ambient_n = 3;
  Field field = Field::C;
  std::string str() const { return label_name(base); }
  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

enum class MuClass { Finite, Infinite };

struct MuDescriptor {
  MuClass cls = MuClass::Finite;
  long value = 1;  // Finite only
  friend bool operator==(const MuDescriptor&, const MuDescriptor&) = default;
};

struct CritDescriptor {
  CritKind kind = CritKind::Empty;
  std::vector<int> partition;  // Finite: sorted multiplicities
  Poly curve;                  // Curve: divisorial part, integer-primitive
  friend bool operator==(const CritDescriptor&, const CritDescriptor&) = default;
};

struct SIDescriptor {
  enum class Kind { None, Empty, Curve, Fold } kind = Kind::None;
  Poly eliminant;  // integer-primitive; zero unless Curve/Fold
  std::vector<std::pair<Poly, int>> factors;  // Curve: refined factorization
};

// How a complex class splits over R, when it does.
struct RealSplit {
  LabelId primed;
  enum class Test { CritCount, Conic, BinaryForm, Pencil } test;
  // expected signature values: [0] unprimed, [1] primed
  int expect_count[2] = {0, 0};
  ConicType expect_conic[2] = {ConicType::Line, ConicType::Line};
  BinaryFormType expect_form[2] = {BinaryFormType::Zero, BinaryFormType::Zero};
  PencilSignature expect_pencil[2] = {PencilSignature::SharedFactor,
                                      PencilSignature::SharedFactor};
};

struct OrbitRecord {
  LabelId label;
  QuadMap normal_form;  // in the minimal ambient dimension
  int n_min = 3;
  int dim_a = 0;
  int dim_q = 0;
  MuDescriptor mu;
  CritDescriptor crit;
  SIDescriptor si;
  int orbit_dim_min = 0;  // dim O in the minimal ambient
  int stab_dim_min = 0;
  int topo_type_complex = 0;  // 0 for real-only rows
  int topo_type_real = 0;
  std::optional<RealSplit> real_split;  // on the unprimed row of a split pair
};

const std::vector<OrbitRecord>& orbit_records();
const OrbitRecord& lookup(LabelId id);
std::optional<LabelId> find_label(const std::string& name);

// dim O(i∘F) in ambient n >= 1 via the stabilizer corollary:
// orbit_dim_min + (n - n_min) * (1 + dim_a).
int expected_orbit_dim(LabelId id, int n);

// --- the orbit-closure poset (Figure-style edge list, upper > lower) ------

struct PosetEdge {
  LabelId upper, lower;
};
const std::vector<PosetEdge>& poset_edges();

// lower ∈ closure(upper)?  Reachability in the stored edge list (reflexive).
bool is_in_closure(LabelId upper, LabelId lower);

std::string poset_dot();   // DOT rendering of the stored poset
std::string poset_json();  // canonical JSON of nodes + edges

// --- one-parameter degeneration families ---------------------------------

struct DegenerationFamily {
  std::string name;  // "F2->F6" style
  LabelId upper, lower;
  std::function<QuadMap(const Rational&)> at;  // t != 0 upper, t = 0 lower
};
const std::vector<DegenerationFamily>& degeneration_families();

// --- auxiliary table: plane-pair normal forms for one- and two-component
// targets (classification of those reduces to these 17 rows) ---------------

struct PairRow {
  QuadMap pair_form;  // n = 2
  LabelId embeds_as;  // the class of (f1, f2, 0)
};
const std::vector<PairRow>& pair_table();

// Canonical serialized form of every table above (versioned, deterministic);
// shipped as data/orbitdb.json and pinned by a test.
std::string orbitdb_canonical_json();

}  // namespace qo
