#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qo/classifier.hpp"
#include "qo/quadmap.hpp"

namespace qo {

using Complex = std::complex<double>;

struct UnsupportedLabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact result of the first normalization stage: an element of the slice
// Omega1 = { (x^2 + e1 y, y^2 + d2 x, xy + d3 x + e3 y) } together with the
// rational witness, act(witness, F) == map exactly.
struct ThetaResult {
  QuadMap map;
  AffinePair witness;
};

// Requires n = 3 and det(phi1) != 0; throws std::domain_error otherwise.
ThetaResult theta(const QuadMap& F);

struct Omega1Params {
  Rational e1, d2, d3, e3;
};
// Shape test for the Omega1 slice.
std::optional<Omega1Params> omega1_params(const QuadMap& F);

// Approximate affine pair over C for the cube-root stage and witnesses.
struct ComplexAffineMap {
  std::vector<std::vector<Complex>> A;
  std::vector<Complex> t;
  static ComplexAffineMap identity(int m);
  static ComplexAffineMap from_exact(const AffineMap& m);
  int dim() const { return (int)t.size(); }
  ComplexAffineMap compose(const ComplexAffineMap& inner) const;
  ComplexAffineMap inverse() const;
};

struct ComplexAffinePair {
  ComplexAffineMap L, R;
};

// Complex coefficient tuples (a,b,c,d,e,g) per component.
using ComplexMap = std::vector<std::array<Complex, 6>>;
ComplexMap to_complex(const QuadMap& F);
ComplexMap act_complex(const ComplexAffinePair& pair, const ComplexMap& F);
double coeff_distance(const ComplexMap& a, const ComplexMap& b);

// Second stage: scale an Omega1 element with e1*d2 != 0 onto the slice
// Omega2 = { (x^2+y, y^2+x, xy + a x + b y) }.  Cube roots force doubles;
// the witness is checked against the residual tolerance.
struct Theta1Result {
  Complex a, b;
  ComplexAffinePair witness;
  double residual = 0.0;
};
Theta1Result theta1(const QuadMap& F, double tol = 1e-9);

// The parameter-shuffling map of the slice: F |-> Theta(F o (x+alpha y, beta x+y))
// for alpha*beta != 1.  Escapes V(e1*d2) for every Omega1 element except
// (x^2, y^2, xy).
ThetaResult theta_shift(const QuadMap& F, const Rational& alpha, const Rational& beta);

struct WitnessReport {
  bool exact = false;
  std::optional<AffinePair> exact_pair;     // F = L o N o R, exact route
  std::optional<ComplexAffinePair> approx_pair;
  double residual = 0.0;
  std::string route;
};

// Best-effort equivalence witness from the normal form of `label` to F.
// Exact over Q whenever the construction is rational; complex doubles when
// cube roots or irrational factorizations are required.  Supported labels:
// F1..F6, F8, F9 and every class with dim_q <= 1; others raise
// UnsupportedLabelError.
WitnessReport find_witness(const QuadMap& F, const OrbitLabel& label,
                           double tol = 1e-8, uint64_t seed = 0);

}  // namespace qo
