#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qo/rational.hpp"

namespace qo {

// The polynomial kernel works over a fixed four-variable universe
// {x, y, x2, y2}.  Degrees stay tiny in this problem (nothing above a
// resultant of two quadratics ever arises), so dense exponent vectors are
// all we need.
enum Var : int { VX = 0, VY = 1, VX2 = 2, VY2 = 3 };
constexpr int kNumVars = 4;

extern const char* const kVarNames[kNumVars];

struct Mono {
  std::array<uint8_t, kNumVars> e{0, 0, 0, 0};

  static Mono one() { return Mono{}; }
  static Mono var(Var v, int k = 1) {
    Mono m;
    m.e[v] = static_cast<uint8_t>(k);
    return m;
  }

  int deg() const { return e[0] + e[1] + e[2] + e[3]; }
  int deg_in(Var v) const { return e[v]; }
  bool is_one() const { return key() == 0; }

  uint32_t key() const {
    return (uint32_t(e[0]) << 24) | (uint32_t(e[1]) << 16) |
           (uint32_t(e[2]) << 8) | uint32_t(e[3]);
  }

  bool divides(const Mono& m) const {
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  Mono operator*(const Mono& m) const {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = uint8_t(e[i] + m.e[i]);
    return r;
  }
  // Requires this | m.
  Mono quotient_into(const Mono& m) const {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = uint8_t(m.e[i] - e[i]);
    return r;
  }
  static Mono lcm(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }
  friend bool operator==(const Mono& a, const Mono& b) { return a.key() == b.key(); }
  friend bool operator<(const Mono& a, const Mono& b) { return a.key() < b.key(); }
};

// Monomial order: a sequence of blocks, each compared by
// (total degree in block, reverse-lexicographic in block).  A block with a
// single variable degenerates to comparison by exponent, so nested
// singleton blocks give lex.  Earlier blocks dominate, which is the usual
// elimination setup.
class MonoOrder {
 public:
  static MonoOrder degrevlex(std::vector<Var> vars) {
    return MonoOrder({std::move(vars)});
  }
  // Eliminates `front` (front block beats back block).
  static MonoOrder elim(std::vector<Var> front, std::vector<Var> back) {
    return MonoOrder({std::move(front), std::move(back)});
  }
  static MonoOrder lex(std::vector<Var> vars) {
    std::vector<std::vector<Var>> blocks;
    for (Var v : vars) blocks.push_back({v});
    return MonoOrder(std::move(blocks));
  }

  explicit MonoOrder(std::vector<std::vector<Var>> blocks) : blocks_(std::move(blocks)) {}

  // true if a < b in this order
  bool less(const Mono& a, const Mono& b) const;
  bool greater(const Mono& a, const Mono& b) const { return less(b, a); }

  const std::vector<std::vector<Var>>& blocks() const { return blocks_; }

 private:
  std::vector<std::vector<Var>> blocks_;
};

// Dense univariate polynomial over Q; index = degree.  Used for eliminants,
// Sturm sequences and root bookkeeping.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rational& r) { return UPoly({r}); }
  static UPoly x() { return UPoly({0, 1}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rational& lc() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < (int)c_.size()) ? c_[k] : Rational(0);
  }

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator-() const;
  UPoly scaled(const Rational& r) const;
  UPoly monic() const;
  UPoly derivative() const;
  Rational eval(const Rational& a) const;

  // Quotient/remainder over Q; divisor nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

  // Primitive integer form: returns the content c (rational, sign of lc kept
  // positive) with *this == c * primitive.
  std::pair<Rational, UPoly> primitive() const;

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

UPoly upoly_gcd(UPoly a, UPoly b);          // monic gcd over Q
UPoly upoly_squarefree(const UPoly& p);     // squarefree part, monic
// Squarefree decomposition p = c * prod f_i^{m_i}; factors monic, m_i ascending.
std::vector<std::pair<UPoly, int>> upoly_squarefree_decomposition(const UPoly& p);
// Number of distinct real roots in (lo, hi]; unbounded side = nullopt.
int upoly_sturm_count(const UPoly& p, std::optional<Rational> lo, std::optional<Rational> hi);
// All rational roots (verified exactly).  Found by modular root finding plus
// rational reconstruction; see poly.cpp for the height bound discussion.
std::vector<Rational> upoly_rational_roots(const UPoly& p);
// Distinct real roots of the squarefree part, isolated to disjoint rational
// intervals [lo_i, hi_i] (point intervals for rational roots), sorted.
std::vector<std::pair<Rational, Rational>> upoly_isolate_real_roots(const UPoly& p);

// Exact multivariate polynomial over Q in the fixed universe.  Terms are kept
// sorted by the canonical key with no zero coefficients stored.
class Poly {
 public:
  using Term = std::pair<Mono, Rational>;

  Poly() = default;
  static Poly zero() { return Poly(); }
  static Poly constant(const Rational& r);
  static Poly variable(Var v);
  static Poly term(const Mono& m, const Rational& r);
  static Poly from_terms(std::vector<Term> ts);  // merges duplicates

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
  Rational constant_value() const;  // requires is_constant()
  int total_degree() const;
  int degree_in(Var v) const;
  bool involves(Var v) const { return degree_in(v) > 0; }
  size_t num_terms() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  Rational coeff(const Mono& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(const Rational& r) const;
  Poly mul_term(const Mono& m, const Rational& r) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly derivative(Var v) const;

  // Simultaneous substitution; entries left empty keep their variable.
  Poly substitute(const std::array<std::optional<Poly>, kNumVars>& repl) const;
  Poly substitute(Var v, const Poly& p) const;
  Rational eval2(const Rational& x, const Rational& y) const;  // requires vars ⊆ {x,y}

  // Leading term under an order.
  const Term& leading_term(const MonoOrder& ord) const;

  // Coefficients as polynomials in the remaining variables:
  // p = sum coeffs[k] * v^k.
  std::vector<Poly> coeffs_in(Var v) const;
  static Poly from_coeffs_in(Var v, const std::vector<Poly>& coeffs);

  // Conversion to/from univariate form. to_upoly requires vars ⊆ {v}.
  UPoly to_upoly(Var v) const;
  static Poly from_upoly(const UPoly& u, Var v);

  // Integer-primitive normal form: *this = content * primitive_part, where
  // the primitive part has coprime integer coefficients and positive leading
  // coefficient in the canonical key order.  Content is never stripped
  // implicitly by arithmetic; callers ask for it.
  std::pair<Rational, Poly> primitive() const;
  Poly primitive_part() const { return primitive().second; }

  std::string str() const;

 private:
  explicit Poly(std::vector<Term> sorted) : t_(std::move(sorted)) {}
  std::vector<Term> t_;
};

inline Poly operator*(const Rational& r, const Poly& p) { return p.scaled(r); }
inline Poly operator*(const Poly& p, const Rational& r) { return p.scaled(r); }

// Sylvester resultant of p and q with respect to var, computed by
// fraction-free (Bareiss) elimination over the polynomial ring.
// Errors if both inputs are constant in var or either is zero.
Poly resultant(const Poly& p, const Poly& q, Var var);

// Exact division; throws if b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);

// Gcd of polynomials involving at most the two given variables
// (subresultant-style pseudo-remainder sequence in `main` over Q[other]).
Poly biv_gcd(const Poly& a, const Poly& b, Var main, Var other);

// Squarefree part of p viewed in var `v` with polynomial coefficients
// (content in the other active variable is preserved per design: the caller
// strips it explicitly if unwanted).
Poly squarefree_part(const Poly& p, Var v);
// Squarefree decomposition of p in var v: list of (factor, multiplicity).
std::vector<std::pair<Poly, int>> multiplicity_factorization(const Poly& p, Var v);

// Full squarefree decomposition of a polynomial in the two plane variables
// x,y (gcd with both partials), used for self-intersection reports.
std::vector<std::pair<Poly, int>> plane_squarefree_decomposition(const Poly& p);

// Product of the distinct factors of a plane polynomial (keeps factors that
// involve only one of the variables, unlike squarefree_part in a main
// variable, which treats those as units).
Poly plane_squarefree_part(const Poly& p);

// Exact count of distinct real roots of a univariate p (squarefree part is
// taken internally) in the interval; errors on the zero polynomial.
int sturm_count(const Poly& p, Var v, std::optional<Rational> lo = std::nullopt,
                std::optional<Rational> hi = std::nullopt);

}  // namespace qo
