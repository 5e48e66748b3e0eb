#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "qo/poly.hpp"
#include "qo/rational.hpp"

namespace qo {

enum class Field { C, R };

// One component a*x^2 + b*xy + c*y^2 + d*x + e*y + g.  The tuple order
// (a,b,c,d,e,g) is fixed; so is the (a,c,b) column order of phi1 below —
// both follow the source convention exactly to avoid silent sign bugs.
struct QuadComponent {
  Rational a, b, c, d, e, g;

  Poly to_poly() const;
  static QuadComponent from_poly(const Poly& p);  // throws if degree > 2
  Rational eval(const Rational& x, const Rational& y) const;
  friend bool operator==(const QuadComponent&, const QuadComponent&) = default;
};

struct QuadMap {
  Field field = Field::C;
  int n = 0;
  std::vector<QuadComponent> comps;

  static QuadMap make(Field f, std::vector<QuadComponent> cs) {
    QuadMap m;
    m.field = f;
    m.n = (int)cs.size();
    m.comps = std::move(cs);
    return m;
  }
  // components given as polynomials in x,y
  static QuadMap from_polys(Field f, const std::vector<Poly>& ps);
  std::vector<Poly> to_polys() const;
  std::vector<Rational> eval(const Rational& x, const Rational& y) const;
  friend bool operator==(const QuadMap&, const QuadMap&) = default;
  std::string str() const;
};

// Invertible affine map of K^m: v -> A v + t, exact rational entries.
struct AffineMap {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> t;

  static AffineMap identity(int m);
  int dim() const { return (int)t.size(); }
  bool invertible() const;
  AffineMap inverse() const;                       // throws if singular
  AffineMap compose(const AffineMap& inner) const;  // this ∘ inner
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// A group element (L, R); the group law is
// (L2,R2) ∘ (L1,R1) = (L2∘L1, R1∘R2) and the action is (L,R)F = L∘F∘R.
struct AffinePair {
  AffineMap L;  // target side, dimension n
  AffineMap R;  // source side, dimension 2

  static AffinePair identity(int n) {
    return AffinePair{AffineMap::identity(n), AffineMap::identity(2)};
  }
  AffinePair compose(const AffinePair& first) const {
    return AffinePair{L.compose(first.L), first.R.compose(R)};
  }
};

// L ∘ F ∘ R, exact.  Throws on dimension mismatch or a singular linear part.
QuadMap act(const AffinePair& pair, const QuadMap& F);

// Rank of the affine span of the image: rank of the coefficient matrix of
// the nonconstant monomials (x^2, xy, y^2, x, y) across components.
int dim_affine(const QuadMap& F);

// Rank of the n x 3 matrix of quadratic parts (a,b,c).
int dim_quadratic(const QuadMap& F);

// All 2x2 minors of the Jacobian.  For n = 3 the order and signs follow the
// cyclic convention J1 = rows(2,3), J2 = rows(3,1), J3 = rows(1,2); for
// general n, minors from rows (i,j), i < j, in lexicographic row order.
std::vector<Poly> jacobian_minors(const QuadMap& F);

// The 3x3 matrix with rows (a_i, c_i, b_i); requires n = 3.
std::vector<std::vector<Rational>> phi1(const QuadMap& F);
Rational det3(const std::vector<std::vector<Rational>>& m);

// 4AC - B^2 of the quadratic part of J; zero iff that part is a square.
Rational phi2(const Poly& j);

// Verifies the cofactor transformation rule
// [J_i(L∘F)] = cof(P) [J_i(F)] for the linear part P of L (n = 3).
bool cofactor_transform_check(const std::vector<std::vector<Rational>>& P,
                              const QuadMap& F);

// Reduced-row-echelon basis of the span of the Jacobian minors inside the
// six-dimensional space of quadratics, and its dimension.
struct CriticalSpace {
  std::vector<Poly> basis;
  int dimension = 0;
};
CriticalSpace critical_space(const QuadMap& F);

// Exact rank of a rational matrix (fraction-free elimination).
int matrix_rank(std::vector<std::vector<Rational>> m);

// Solve M x = rhs exactly; nullopt if inconsistent.  M need not be square;
// when underdetermined the free variables are set to zero.
std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> m, std::vector<Rational> rhs);

}  // namespace qo
