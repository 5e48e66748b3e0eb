#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qo/groebner.hpp"
#include "qo/quadmap.hpp"

namespace qo {

enum class CritKind { Empty, Finite, Curve, Plane };

struct CriticalPoint {
  Rational x, y;
  int mult = 1;
};

// Structure of the critical scheme V(all 2x2 Jacobian minors).
struct CriticalReport {
  CritKind kind = CritKind::Empty;
  // Finite case: rational points carry exact coordinates; the remaining
  // points are described by the squarefree eliminants below (their minimal
  // polynomials divide these).  Conjugation forces all non-rational points
  // of one scheme here to share a multiplicity.
  std::vector<CriticalPoint> rational_points;
  int irrational_count = 0;
  int irrational_mult_each = 0;
  long total_multiplicity = 0;
  UPoly elim_x, elim_y;
  // Curve case: the divisorial part of the minor ideal (gcd of the minors),
  // with scheme multiplicity kept, e.g. x^2 for (x^2, xy, 0).
  Poly curve_poly;

  std::vector<int> multiplicity_partition() const;  // sorted ascending
};

CriticalReport critical_scheme(const QuadMap& F);

struct DegreeReport {
  bool finite = false;
  long value = 0;
  bool is_one() const { return finite && value == 1; }
  friend bool operator==(const DegreeReport&, const DegreeReport&) = default;
};

struct MuProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Generic fiber cardinality over deterministic pseudo-random base points.
// All seven samples must agree or this throws MuProtocolError: the generic
// count is attained on a Zariski-open set, so disagreement always means a
// degenerate sample and must surface, not hide.
DegreeReport topological_degree(const QuadMap& F, uint64_t seed = 0);

struct SIFactor {
  Poly factor;
  int multiplicity = 1;
  bool real_curve = false;  // has a one-dimensional real zero set
};

struct SIReport {
  bool empty = true;
  Poly eliminant;  // integer-primitive colon-ideal generator; zero when empty
  std::vector<SIFactor> factors;
};

// Self-intersection curve via the colon-ideal elimination (method B).
// Precondition: topological degree 1; throws std::domain_error otherwise.
SIReport self_intersection(const QuadMap& F, uint64_t seed = 0);

// For finite degree > 1: the curve where the generic fiber degenerates
// (residual correspondence meets the diagonal); nullopt when empty.
std::optional<Poly> fold_locus(const QuadMap& F);

// Method A: the set-level SI as the union of kernel lines through critical
// points, computed by eliminating the critical point u from
// { minors(DF)(u) , DF(u)(p - u) }.  Independent oracle for method B at
// radical level.
struct MidpointSI {
  enum class Kind { Empty, Curve, Plane } kind = Kind::Empty;
  Poly curve;  // primitive radical-level generator (Curve)
};

MidpointSI self_intersection_midpoint(const QuadMap& F);

// dim O(F): rank of the infinitesimal action
// (A, c, B, d) -> A F + c + DF (B (x,y) + d) at the identity.
int orbit_dimension(const QuadMap& F);

enum class ConicType {
  Line,             // degree-1 locus
  Ellipse,
  EmptyEllipse,     // no real points
  Hyperbola,
  Parabola,
  RealLinePair,     // two distinct real lines (crossing or parallel)
  ComplexLinePair,  // conjugate pair; real locus a point or empty
  DoubleLine,
};
ConicType classify_conic(const Poly& p);

enum class BinaryFormType { Zero, Square, RealProduct, Irreducible };
BinaryFormType binary_form_type(const Rational& a, const Rational& b,
                                const Rational& c);

enum class PencilSignature { TwoRealDegenerate, NoneRealDegenerate, SharedFactor };

struct RealSignatures {
  std::optional<int> real_critical_count;   // Finite critical scheme
  std::optional<ConicType> critical_conic;  // Curve critical scheme
  std::optional<BinaryFormType> form_type;  // dim_q == 1
  std::optional<PencilSignature> pencil;    // dim_q == 2
};

// Requires field R; everything is decided by exact sign tests on rational
// data (Sturm counts, conic discriminants, pencil discriminant forms).
RealSignatures real_signatures(const QuadMap& F);

// Fiber-product ideal <f_i(x,y) - f_i(x2,y2)> of F and the diagonal.
Ideal fiber_product_ideal(const QuadMap& F);
Ideal diagonal_ideal();

}  // namespace qo
