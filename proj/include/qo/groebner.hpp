#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qo/poly.hpp"

namespace qo {

struct Ideal {
  std::vector<Poly> gens;
  MonoOrder order = MonoOrder::degrevlex({VX, VY, VX2, VY2});
};

struct NotPrincipalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reduced Groebner basis for a tiny Buchberger engine: inputs here are at
// most a handful of generators of degree <= 2, so the plain algorithm with
// the sugar strategy and both Buchberger criteria is plenty.
class GroebnerBasis {
 public:
  static GroebnerBasis compute(std::vector<Poly> gens, MonoOrder ord);

  const std::vector<Poly>& basis() const { return basis_; }
  const MonoOrder& order() const { return ord_; }

  Poly normal_form(const Poly& p) const;
  bool contains(const Poly& p) const { return normal_form(p).is_zero(); }
  bool is_zero_ideal() const { return basis_.empty(); }
  bool contains_one() const;

  // Vector-space dimension of Q[vars]/I; nullopt means infinite.  The ideal
  // must live inside Q[vars].
  std::optional<long> quotient_dimension(const std::vector<Var>& vars) const;

  // Basis elements free of the given variables.  When the order eliminates
  // those variables these generate the elimination ideal.
  std::vector<Poly> eliminate(const std::vector<Var>& drop) const;

 private:
  GroebnerBasis(std::vector<Poly> basis, MonoOrder ord)
      : basis_(std::move(basis)), ord_(std::move(ord)) {}
  std::vector<Poly> basis_;
  MonoOrder ord_;
};

// Reduced basis of I under its declared order.
Ideal groebner_basis(const Ideal& ideal);

std::optional<long> quotient_dimension(const Ideal& ideal, const std::vector<Var>& vars);

// Generator of I ∩ Q[keep] for an ideal in the plane variables {keep, drop};
// the zero polynomial when the intersection is trivial.
Poly plane_eliminant(const std::vector<Poly>& gens, Var keep, Var drop);

// Multiplicity of the rational point p as dim Q[x,y]/(I + m_p^N) for
// stabilizing N (capped at 8; total multiplicities here are Bezout-bounded
// well below that).  Errors if p is not a zero of I.
int local_multiplicity(const std::vector<Poly>& gens, const Rational& px,
                       const Rational& py);

// Number of distinct complex points of a zero-dimensional ideal in Q[x,y]
// (dimension of the quotient by the radical, Seidenberg-style).
long distinct_point_count(const std::vector<Poly>& gens);

struct ColonEliminateResult {
  enum class Kind {
    Unit,   // colon ideal is the whole ring: SI empty
    Zero,   // eliminates to the zero ideal
    Curve,  // principal generator found
  };
  Kind kind = Kind::Zero;
  Poly generator;  // integer-primitive, Curve only
};

// The scheme-theoretic self-intersection machinery: I must be the
// fiber-product ideal <f_i(x,y) - f_i(x2,y2)> and J the diagonal
// <x - x2, y - y2>.  Returns the defining polynomial of the eliminated
// colon ideal pi^{-1}(I : J) in the plane variables.
// Throws NotPrincipalError if the eliminated ideal is visibly not principal
// (an internal bug for quadratic inputs).
ColonEliminateResult colon_and_eliminate(const Ideal& fiber_ideal, const Ideal& diagonal);

// Same input; computes the locus where the residual correspondence meets the
// diagonal, i.e. eliminate((I : J) + J).  This is the degenerate-fiber curve
// of a map with finite topological degree > 1 (for (x^2,y^2,y) it is {x=0});
// nullopt when that locus is empty or not a curve.
std::optional<Poly> colon_fold_locus(const Ideal& fiber_ideal, const Ideal& diagonal);

namespace detail {
// Degree cap for the linear-algebra colon solve; exposed for the stability
// test that re-runs everything one degree higher.
ColonEliminateResult colon_and_eliminate_capped(const std::vector<Poly>& fiber_gens,
                                                int degree_cap);
}  // namespace detail

}  // namespace qo
