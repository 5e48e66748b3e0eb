#include "qo/normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qo/invariants.hpp"

namespace qo {

// ---------------------------------------------------------------------------
// Theta: exact normalization onto (x^2 + e1 y, y^2 + d2 x, xy + d3 x + e3 y)

std::optional<Omega1Params> omega1_params(const QuadMap& F) {
  if (F.n != 3) return std::nullopt;
  const auto& c = F.comps;
  bool shape = c[0].a.is_one() && c[0].b.is_zero() && c[0].c.is_zero() &&
               c[0].d.is_zero() && c[0].g.is_zero() &&
               c[1].c.is_one() && c[1].a.is_zero() && c[1].b.is_zero() &&
               c[1].e.is_zero() && c[1].g.is_zero() &&
               c[2].b.is_one() && c[2].a.is_zero() && c[2].c.is_zero() &&
               c[2].g.is_zero();
  if (!shape) return std::nullopt;
  return Omega1Params{c[0].e, c[1].d, c[2].d, c[2].e};
}

ThetaResult theta(const QuadMap& F) {
  if (F.n != 3) throw std::domain_error("theta requires n = 3");
  auto p1 = phi1(F);
  if (det3(p1).is_zero())
    throw std::domain_error("theta requires det(phi1) != 0");
  AffineMap L1{p1, {Rational(0), Rational(0), Rational(0)}};
  L1 = L1.inverse();
  AffinePair step1{L1, AffineMap::identity(2)};
  QuadMap G = act(step1, F);
  // G = (x^2 + d1 x + e1 y + g1, y^2 + d2 x + e2 y + g2, xy + d3 x + e3 y + g3)
  Rational d1 = G.comps[0].d, e2 = G.comps[1].e;
  AffineMap R = AffineMap::identity(2);
  R.t = {-d1 / 2, -e2 / 2};
  AffinePair step2{AffineMap::identity(3), R};
  QuadMap G2 = act(step2, G);
  AffineMap L2 = AffineMap::identity(3);
  L2.t = {-G2.comps[0].g, -G2.comps[1].g, -G2.comps[2].g};
  AffinePair step3{L2, AffineMap::identity(2)};
  QuadMap out = act(step3, G2);
  AffinePair witness = step3.compose(step2.compose(step1));
  if (!(act(witness, F) == out))
    throw std::logic_error("theta: witness does not reproduce the output");
  if (!omega1_params(out))
    throw std::logic_error("theta: output is not in the Omega1 slice");
  return ThetaResult{out, witness};
}

ThetaResult theta_shift(const QuadMap& F, const Rational& alpha, const Rational& beta) {
  if (!omega1_params(F))
    throw std::domain_error("theta_shift requires an Omega1 element");
  if ((alpha * beta).is_one())
    throw std::domain_error("theta_shift requires alpha*beta != 1");
  AffineMap R;
  R.A = {{Rational(1), alpha}, {beta, Rational(1)}};
  R.t = {Rational(0), Rational(0)};
  AffinePair sub{AffineMap::identity(3), R};
  QuadMap G = act(sub, F);
  ThetaResult t = theta(G);
  return ThetaResult{t.map, t.witness.compose(sub)};
}

// ---------------------------------------------------------------------------
// Complex machinery

ComplexAffineMap ComplexAffineMap::identity(int m) {
  ComplexAffineMap out;
  out.A.assign(m, std::vector<Complex>(m, Complex(0)));
  out.t.assign(m, Complex(0));
  for (int i = 0; i < m; ++i) out.A[i][i] = 1.0;
  return out;
}

ComplexAffineMap ComplexAffineMap::from_exact(const AffineMap& m) {
  ComplexAffineMap out;
  out.A.assign(m.dim(), std::vector<Complex>(m.dim()));
  out.t.assign(m.dim(), Complex(0));
  for (int i = 0; i < m.dim(); ++i) {
    out.t[i] = m.t[i].to_double();
    for (int j = 0; j < m.dim(); ++j) out.A[i][j] = m.A[i][j].to_double();
  }
  return out;
}

ComplexAffineMap ComplexAffineMap::compose(const ComplexAffineMap& inner) const {
  const int m = dim();
  ComplexAffineMap out;
  out.A.assign(m, std::vector<Complex>(m, Complex(0)));
  out.t = t;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) out.A[i][j] += A[i][k] * inner.A[k][j];
      out.t[i] += A[i][j] * inner.t[j];
    }
  return out;
}

namespace {

std::vector<std::vector<Complex>> cinvert(std::vector<std::vector<Complex>> m) {
  const size_t n = m.size();
  std::vector<std::vector<Complex>> inv(n, std::vector<Complex>(n, Complex(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) < 1e-13)
      throw std::domain_error("complex matrix is numerically singular");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Complex d = m[c][c];
    for (size_t j = 0; j < n; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      Complex f = m[i][c];
      if (std::abs(f) == 0.0) continue;
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

ComplexAffineMap ComplexAffineMap::inverse() const {
  ComplexAffineMap out;
  out.A = cinvert(A);
  out.t.assign(dim(), Complex(0));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out.t[i] -= out.A[i][j] * t[j];
  return out;
}

ComplexMap to_complex(const QuadMap& F) {
  ComplexMap out;
  for (const auto& c : F.comps)
    out.push_back({c.a.to_double(), c.b.to_double(), c.c.to_double(),
                   c.d.to_double(), c.e.to_double(), c.g.to_double()});
  return out;
}

ComplexMap act_complex(const ComplexAffinePair& pair, const ComplexMap& F) {
  const int n = (int)F.size();
  // substitute (x,y) -> R(x,y) into a (a,b,c,d,e,g) tuple
  const auto& R = pair.R;
  Complex p = R.A[0][0], q = R.A[0][1], r = R.t[0];
  Complex s = R.A[1][0], t = R.A[1][1], u = R.t[1];
  ComplexMap inner(n);
  for (int i = 0; i < n; ++i) {
    const auto& c = F[i];
    Complex a = c[0], b = c[1], cc = c[2], d = c[3], e = c[4], g = c[5];
    // a(px+qy+r)^2 + b(px+qy+r)(sx+ty+u) + c(sx+ty+u)^2 + d(..) + e(..) + g
    inner[i][0] = a * p * p + b * p * s + cc * s * s;
    inner[i][1] = Complex(2) * a * p * q + b * (p * t + q * s) + Complex(2) * cc * s * t;
    inner[i][2] = a * q * q + b * q * t + cc * t * t;
    inner[i][3] = Complex(2) * a * p * r + b * (p * u + r * s) + Complex(2) * cc * s * u +
                  d * p + e * s;
    inner[i][4] = Complex(2) * a * q * r + b * (q * u + r * t) + Complex(2) * cc * t * u +
                  d * q + e * t;
    inner[i][5] = a * r * r + b * r * u + cc * u * u + d * r + e * u + g;
  }
  ComplexMap out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < 6; ++k) {
      out[i][k] = 0.0;
      for (int j = 0; j < n; ++j) out[i][k] += pair.L.A[i][j] * inner[j][k];
    }
    out[i][5] += pair.L.t[i];
  }
  return out;
}

double coeff_distance(const ComplexMap& a, const ComplexMap& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < 6; ++k) m = std::max(m, std::abs(a[i][k] - b[i][k]));
  return m;
}

Theta1Result theta1(const QuadMap& F, double tol) {
  auto params = omega1_params(F);
  if (!params) throw std::domain_error("theta1 requires an Omega1 element");
  if ((params->e1 * params->d2).is_zero())
    throw std::domain_error("theta1 requires e1*d2 != 0");
  Complex E1 = params->e1.to_double(), D2 = params->d2.to_double();
  Complex D3 = params->d3.to_double(), E3 = params->e3.to_double();
  const Complex omega(-0.5, std::sqrt(3.0) / 2);
  Complex p0 = std::pow(E1 * E1 * D2, 1.0 / 3.0);
  Theta1Result best;
  best.residual = 1e100;
  for (int branch = 0; branch < 3; ++branch) {
    Complex p = p0;
    for (int i = 0; i < branch; ++i) p *= omega;
    Complex q = (E1 * D2) / p;
    ComplexAffineMap R = ComplexAffineMap::identity(2);
    R.A[0][0] = p;
    R.A[1][1] = q;
    ComplexAffineMap L = ComplexAffineMap::identity(3);
    L.A[0][0] = 1.0 / (p * p);
    L.A[1][1] = 1.0 / (q * q);
    L.A[2][2] = 1.0 / (E1 * D2);
    Theta1Result cand;
    cand.a = D3 / q;
    cand.b = E3 / p;
    cand.witness = ComplexAffinePair{L, R};
    ComplexMap target(3);
    target[0] = {1, 0, 0, 0, 1, 0};
    target[1] = {0, 0, 1, 1, 0, 0};
    target[2] = {0, 1, 0, cand.a, cand.b, 0};
    cand.residual = coeff_distance(act_complex(cand.witness, to_complex(F)), target);
    if (cand.residual < best.residual) best = cand;
    if (best.residual <= tol) break;
  }
  if (best.residual > tol)
    throw std::logic_error("theta1: residual above tolerance on all branches");
  return best;
}

// ---------------------------------------------------------------------------
// Witness construction

namespace {

struct AffForm {  // u x + v y + w
  Rational u, v, w;
  Poly poly() const {
    return u * Poly::variable(VX) + v * Poly::variable(VY) + Poly::constant(w);
  }
  Rational eval(const Rational& x, const Rational& y) const {
    return u * x + v * y + w;
  }
  AffForm linear() const { return {u, v, Rational(0)}; }
  bool is_linear_zero() const { return u.is_zero() && v.is_zero(); }
};

AffForm aff_from_poly(const Poly& p) {
  QuadComponent q = QuadComponent::from_poly(p);
  if (!q.a.is_zero() || !q.b.is_zero() || !q.c.is_zero())
    throw std::logic_error("aff_from_poly: polynomial is not affine");
  return AffForm{q.d, q.e, q.g};
}

// R = (f, g) as an affine plane map
AffineMap affine_from_forms(const AffForm& f, const AffForm& g) {
  AffineMap R;
  R.A = {{f.u, f.v}, {g.u, g.v}};
  R.t = {f.w, g.w};
  return R;
}

// member = L o target componentwise; per component a 6-equation linear solve.
// Columns of L that multiply an identically-zero target component are
// unconstrained; they are filled in afterwards to make L invertible.
std::optional<AffineMap> solve_target_L(const QuadMap& member, const QuadMap& target) {
  const int n = member.n;
  AffineMap L;
  L.A.assign(n, std::vector<Rational>(n, Rational(0)));
  L.t.assign(n, Rational(0));
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j)
    if (target.comps[j].to_poly().is_zero()) free_cols.push_back(j);
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<Rational>> m(6, std::vector<Rational>(n + 1, Rational(0)));
    for (int j = 0; j < n; ++j) {
      const auto& c = target.comps[j];
      const Rational coeffs[6] = {c.a, c.b, c.c, c.d, c.e, c.g};
      for (int k = 0; k < 6; ++k) m[k][j] = coeffs[k];
    }
    m[5][n] = 1;  // translation hits the constant slot
    const auto& mc = member.comps[i];
    std::vector<Rational> rhs = {mc.a, mc.b, mc.c, mc.d, mc.e, mc.g};
    auto sol = solve_linear(m, rhs);
    if (!sol) return std::nullopt;
    for (int j = 0; j < n; ++j) L.A[i][j] = (*sol)[j];
    L.t[i] = (*sol)[n];
  }
  int rank = matrix_rank(L.A);
  for (int j : free_cols) {
    for (int i = 0; i < n; ++i) {
      L.A[i][j] = 1;
      int r = matrix_rank(L.A);
      if (r == rank + 1) {
        rank = r;
        break;
      }
      L.A[i][j] = 0;
    }
  }
  if (!L.invertible()) return std::nullopt;
  return L;
}

std::optional<AffinePair> try_candidate(const QuadMap& member, const QuadMap& nf,
                                        const AffineMap& R) {
  if (!R.invertible()) return std::nullopt;
  QuadMap nfR = act(AffinePair{AffineMap::identity(member.n), R}, nf);
  auto L = solve_target_L(member, nfR);
  if (!L) return std::nullopt;
  AffinePair pair{*L, R};
  if (!(act(pair, nf) == member)) return std::nullopt;
  return pair;
}

bool is_square(const Rational& r, Rational& root) {
  if (r.sign() < 0) return false;
  if (r.is_zero()) {
    root = 0;
    return true;
  }
  Int sn = sqrt(r.num()), sd = sqrt(r.den());
  if (sn * sn != r.num() || sd * sd != r.den()) return false;
  root = Rational(sn, sd);
  return true;
}

// q = a x^2 + b xy + c y^2 = kappa * m1 * m2 with primitive lines m1, m2
struct FormSplit {
  AffForm m1, m2;
  Rational kappa;
};

std::optional<FormSplit> split_form_rational(const Rational& a, const Rational& b,
                                             const Rational& c) {
  Rational disc = b * b - Rational(4) * a * c, root;
  if (!is_square(disc, root)) return std::nullopt;
  FormSplit s;
  if (a.is_zero()) {
    // q = y (b x + c y)
    if (b.is_zero()) {
      if (c.is_zero()) return std::nullopt;
      s.m1 = {0, 1, 0};
      s.m2 = {0, 1, 0};
      s.kappa = c;
      return s;
    }
    s.m1 = {0, 1, 0};
    s.m2 = {b, c, 0};
    s.kappa = 1;
    return s;
  }
  // a (x - r1 y)(x - r2 y) with r = (-b ± root) / (2a)
  Rational r1 = (-b + root) / (Rational(2) * a);
  Rational r2 = (-b - root) / (Rational(2) * a);
  s.m1 = {1, -r1, 0};
  s.m2 = {1, -r2, 0};
  s.kappa = a;
  return s;
}

// decompose p over the basis {m1*m2, m1, m2, 1}; nullopt if p is outside
std::optional<std::array<Rational, 4>> decompose_over(const Poly& p,
                                                      const AffForm& m1,
                                                      const AffForm& m2) {
  Poly basis[4] = {m1.poly() * m2.poly(), m1.poly(), m2.poly(),
                   Poly::constant(1)};
  std::vector<std::vector<Rational>> m(6, std::vector<Rational>(4, Rational(0)));
  for (int j = 0; j < 4; ++j) {
    QuadComponent q = QuadComponent::from_poly(basis[j]);
    const Rational coeffs[6] = {q.a, q.b, q.c, q.d, q.e, q.g};
    for (int k = 0; k < 6; ++k) m[k][j] = coeffs[k];
  }
  QuadComponent q = QuadComponent::from_poly(p);
  std::vector<Rational> rhs = {q.a, q.b, q.c, q.d, q.e, q.g};
  auto sol = solve_linear(m, rhs);
  if (!sol) return std::nullopt;
  // verify (solve_linear zeroes free vars; re-check the combination)
  Poly rebuilt;
  for (int j = 0; j < 4; ++j) rebuilt += (*sol)[j] * basis[j];
  if (!(rebuilt == p)) return std::nullopt;
  return std::array<Rational, 4>{(*sol)[0], (*sol)[1], (*sol)[2], (*sol)[3]};
}

// RREF'd nonzero component polynomials of a (reduced, n=3) member plus the
// target-side witness: member = witness_inv o (rows..., 0...).
struct RowView {
  std::vector<Poly> rows;
  AffineMap L_rref;  // act((L_rref, id), member) = (rows, 0, ...)
};

RowView row_view(const QuadMap& F) {
  auto red = reduce_ambient(F);
  RowView v;
  v.L_rref = red.witness_L;
  QuadMap flat = act(AffinePair{red.witness_L, AffineMap::identity(2)}, F);
  for (const auto& c : flat.comps) {
    Poly p = c.to_poly();
    if (!p.is_zero()) v.rows.push_back(p);
  }
  return v;
}

QuadComponent qc(const Poly& p) { return QuadComponent::from_poly(p); }

// quadratic part of a row as a form triple
std::array<Rational, 3> qpart(const Poly& p) {
  QuadComponent q = qc(p);
  return {q.a, q.b, q.c};
}

bool qpart_zero(const Poly& p) {
  auto q = qpart(p);
  return q[0].is_zero() && q[1].is_zero() && q[2].is_zero();
}

Poly form_poly(const std::array<Rational, 3>& f) {
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  return f[0] * (x * x) + f[1] * (x * y) + f[2] * (y * y);
}

// ---------------------------------------------------------------------------
// Per-label candidate R generators (exact).  Each returns affine maps R such
// that member == L o NF o R for a solvable L; the caller verifies.

std::vector<AffineMap> route_f2(const QuadMap& F, uint64_t seed) {
  auto crit = critical_scheme(F);
  if (crit.rational_points.size() != 2) return {};
  CriticalPoint ps = crit.rational_points[0], pd = crit.rational_points[1];
  if (ps.mult != 1) std::swap(ps, pd);
  if (ps.mult != 1 || pd.mult != 2) return {};
  auto si = self_intersection(F, seed);
  AffForm simple_line{0, 0, 0};
  bool found = false;
  for (const auto& f : si.factors)
    if (f.multiplicity == 1 && f.factor.total_degree() == 1) {
      simple_line = aff_from_poly(f.factor);
      found = true;
    }
  if (!found) return {};
  // R_lin (p_s - p_d) = (1,1); R_lin (simple direction) = ±(1,-1)
  Rational ux = ps.x - pd.x, uy = ps.y - pd.y;
  Rational wx = simple_line.v, wy = -simple_line.u;  // line direction
  std::vector<AffineMap> out;
  for (int sign : {1, -1}) {
    // solve [ux wx; uy wy]^T unknowns: R rows
    std::vector<std::vector<Rational>> m = {{ux, uy}, {wx, wy}};
    auto row1 = solve_linear(m, {Rational(1), Rational(sign)});
    auto row2 = solve_linear(m, {Rational(1), Rational(-sign)});
    if (!row1 || !row2) continue;
    AffineMap R;
    R.A = {{(*row1)[0], (*row1)[1]}, {(*row2)[0], (*row2)[1]}};
    R.t = {Rational(1, 2) - R.A[0][0] * ps.x - R.A[0][1] * ps.y,
           Rational(1, 2) - R.A[1][0] * ps.x - R.A[1][1] * ps.y};
    out.push_back(R);
  }
  return out;
}

std::vector<AffineMap> route_f3(const QuadMap& F, uint64_t seed) {
  auto crit = critical_scheme(F);
  if (crit.rational_points.size() != 1 || crit.rational_points[0].mult != 3)
    return {};
  CriticalPoint p = crit.rational_points[0];
  auto si = self_intersection(F, seed);
  if (si.factors.size() != 1 || si.factors[0].multiplicity != 3 ||
      si.factors[0].factor.total_degree() != 1)
    return {};
  AffForm l = aff_from_poly(si.factors[0].factor);
  // x o R0 = l (shifted to vanish at p), y o R0 = a complement through p
  AffForm lx{l.u, l.v, -(l.u * p.x + l.v * p.y)};
  AffForm m = l.u.is_zero() ? AffForm{1, 0, -p.x} : AffForm{0, 1, -p.y};
  std::vector<AffineMap> out;
  for (int sign : {1, -1}) {
    AffineMap R0 = affine_from_forms(
        AffForm{lx.u * sign, lx.v * sign, lx.w * sign}, m);
    if (!R0.invertible()) continue;
    // the critical scheme in R0 coordinates must be <x^2, xy, y^2 - c x>
    QuadMap H = act(AffinePair{AffineMap::identity(3), R0.inverse()}, F);
    std::vector<Poly> minors;
    for (auto& mm : jacobian_minors(H))
      if (!mm.is_zero()) minors.push_back(mm);
    auto gb = GroebnerBasis::compute(minors, MonoOrder::degrevlex({VX, VY}));
    Rational c;
    bool ok = false;
    for (const auto& g : gb.basis()) {
      QuadComponent q = qc(g);
      if (!q.c.is_zero() && q.a.is_zero() && q.b.is_zero() && q.e.is_zero() &&
          q.g.is_zero() && !q.d.is_zero()) {
        c = -q.d / q.c;
        ok = true;
      }
    }
    if (!ok || c.is_zero()) continue;
    AffineMap D = AffineMap::identity(2);
    D.A[0][0] = Rational(2) * c;
    out.push_back(D.compose(R0));
  }
  return out;
}

// pencil normalization shared by the dim_q = 2 routes: linear source map S
// with rows the two degenerate lines of the quadratic pencil
std::vector<AffineMap> pencil_frames(const QuadMap& F, bool shared_line) {
  std::vector<std::array<Rational, 3>> forms;
  for (const auto& c : F.comps)
    if (!(c.a.is_zero() && c.b.is_zero() && c.c.is_zero()))
      forms.push_back({c.a, c.b, c.c});
  // row reduce to a 2-element basis
  std::vector<std::vector<Rational>> m;
  for (auto& f : forms) m.push_back({f[0], f[1], f[2]});
  std::vector<std::array<Rational, 3>> basis;
  {
    size_t rank = 0;
    for (size_t col = 0; col < 3 && rank < m.size(); ++col) {
      size_t p = rank;
      while (p < m.size() && m[p][col].is_zero()) ++p;
      if (p == m.size()) continue;
      std::swap(m[p], m[rank]);
      Rational inv = m[rank][col].inverse();
      for (auto& v : m[rank]) v *= inv;
      for (size_t i = 0; i < m.size(); ++i) {
        if (i == rank || m[i][col].is_zero()) continue;
        Rational f = m[i][col];
        for (size_t j = 0; j < 3; ++j) m[i][j] -= f * m[rank][j];
      }
      ++rank;
    }
    for (size_t i = 0; i < rank; ++i) basis.push_back({m[i][0], m[i][1], m[i][2]});
  }
  if (basis.size() != 2) return {};
  auto disc = [](const std::array<Rational, 3>& q1,
                 const std::array<Rational, 3>& q2) {
    // disc(l q1 + m q2) = P2 l^2 + P1 l m + P0 m^2
    Rational P2 = q1[1] * q1[1] - Rational(4) * q1[0] * q1[2];
    Rational P1 = Rational(2) * q1[1] * q2[1] - Rational(4) * q1[0] * q2[2] -
                  Rational(4) * q2[0] * q1[2];
    Rational P0 = q2[1] * q2[1] - Rational(4) * q2[0] * q2[2];
    return std::array<Rational, 3>{P2, P1, P0};
  };
  auto D = disc(basis[0], basis[1]);
  // roots (l : m) of the discriminant form give the degenerate members
  auto member_at = [&](const Rational& l, const Rational& mm) {
    return std::array<Rational, 3>{l * basis[0][0] + mm * basis[1][0],
                                   l * basis[0][1] + mm * basis[1][1],
                                   l * basis[0][2] + mm * basis[1][2]};
  };
  auto sqrt_line = [](const std::array<Rational, 3>& q) -> std::optional<AffForm> {
    // q = s * l0^2
    if (!q[0].is_zero()) {
      // (2a x + b y)^2 / (4a)
      return AffForm{Rational(2) * q[0], q[1], 0};
    }
    if (!q[2].is_zero()) return AffForm{q[1], Rational(2) * q[2], 0};
    return std::nullopt;  // q = b xy is not a square
  };
  std::vector<AffForm> lines;
  if (shared_line) {
    // double root of the discriminant form
    Rational disc2 = D[1] * D[1] - Rational(4) * D[0] * D[2];
    if (!disc2.is_zero()) return {};
    Rational l, mm;
    if (!D[0].is_zero()) {
      l = -D[1] / (Rational(2) * D[0]);
      mm = 1;
    } else if (!D[2].is_zero()) {
      l = 1;
      mm = -D[1] / (Rational(2) * D[2]);
    } else {
      // disc form is identically zero: every member degenerate (not this shape)
      return {};
    }
    auto sq = member_at(l, mm);
    auto m0 = sqrt_line(sq);
    if (!m0) return {};
    // second direction: divide any pencil member that is not a multiple of
    // m0^2 by the shared line
    std::array<Rational, 3> other = basis[0];
    {
      auto q0 = member_at(l, mm);
      // use basis[0] unless it is proportional to the square
      Rational cross = basis[0][0] * q0[1] - basis[0][1] * q0[0];
      Rational cross2 = basis[0][1] * q0[2] - basis[0][2] * q0[1];
      Rational cross3 = basis[0][0] * q0[2] - basis[0][2] * q0[0];
      if (cross.is_zero() && cross2.is_zero() && cross3.is_zero()) other = basis[1];
    }
    Poly m2 = divide_exact(form_poly(other), m0->poly());
    std::vector<AffineMap> out;
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        AffForm a{m0->u * s1, m0->v * s1, 0};
        AffForm b = aff_from_poly(m2.scaled(Rational(s2)));
        AffineMap S = affine_from_forms(a, b.linear());
        if (S.invertible()) out.push_back(S);
      }
    return out;
  }
  // two distinct roots, both rational
  Rational disc2 = D[1] * D[1] - Rational(4) * D[0] * D[2], root;
  if (!is_square(disc2, root) || disc2.is_zero()) return {};
  std::vector<std::pair<Rational, Rational>> roots;
  if (!D[0].is_zero()) {
    roots.push_back({(-D[1] + root) / (Rational(2) * D[0]), Rational(1)});
    roots.push_back({(-D[1] - root) / (Rational(2) * D[0]), Rational(1)});
  } else {
    roots.push_back({Rational(1), Rational(0)});
    roots.push_back({-D[2] / D[1], Rational(1)});
  }
  auto m1 = sqrt_line(member_at(roots[0].first, roots[0].second));
  auto m2 = sqrt_line(member_at(roots[1].first, roots[1].second));
  if (!m1 || !m2) return {};
  std::vector<AffineMap> out;
  for (int order : {0, 1}) {
    AffForm a = order ? *m2 : *m1;
    AffForm b = order ? *m1 : *m2;
    AffineMap S = affine_from_forms(a.linear(), b.linear());
    if (S.invertible()) out.push_back(S);
  }
  return out;
}

// columns of a map whose quadratic parts live in span{x^2, xy, y^2}
struct Columns {
  std::vector<Rational> A, B, Cc, D, E;
  bool ok = false;
};

Columns columns_of(const QuadMap& G) {
  Columns c;
  for (const auto& comp : G.comps) {
    c.A.push_back(comp.a);
    c.B.push_back(comp.b);
    c.Cc.push_back(comp.c);
    c.D.push_back(comp.d);
    c.E.push_back(comp.e);
  }
  c.ok = true;
  return c;
}

std::vector<AffineMap> route_f5(const QuadMap& F) {
  std::vector<AffineMap> out;
  for (const auto& S : pencil_frames(F, /*shared_line=*/false)) {
    QuadMap G = act(AffinePair{AffineMap::identity(3), S.inverse()}, F);
    auto col = columns_of(G);
    bool mixed = false;
    for (const auto& b : col.B)
      if (!b.is_zero()) mixed = true;
    if (mixed) continue;
    // D_i X1 - A_i X2 - E_i X3 + C_i X4 = 0
    std::vector<std::vector<Rational>> m;
    for (int i = 0; i < 3; ++i)
      m.push_back({col.D[i], -col.A[i], -col.E[i], col.Cc[i]});
    // nullspace by appending parameter columns: reuse solve via Gauss on
    // homogeneous system -> collect basis
    std::vector<std::vector<Rational>> null_basis;
    {
      auto mm = m;
      std::vector<int> pivot(4, -1);
      size_t rank = 0;
      for (size_t ccol = 0; ccol < 4 && rank < mm.size(); ++ccol) {
        size_t p = rank;
        while (p < mm.size() && mm[p][ccol].is_zero()) ++p;
        if (p == mm.size()) continue;
        std::swap(mm[p], mm[rank]);
        Rational inv = mm[rank][ccol].inverse();
        for (auto& v : mm[rank]) v *= inv;
        for (size_t i = 0; i < mm.size(); ++i) {
          if (i == rank || mm[i][ccol].is_zero()) continue;
          Rational f = mm[i][ccol];
          for (size_t j = 0; j < 4; ++j) mm[i][j] -= f * mm[rank][j];
        }
        pivot[ccol] = (int)rank;
        ++rank;
      }
      for (int ccol = 0; ccol < 4; ++ccol) {
        if (pivot[ccol] >= 0) continue;
        std::vector<Rational> v(4, Rational(0));
        v[ccol] = 1;
        for (int j = 0; j < 4; ++j)
          if (pivot[j] >= 0) v[j] = -mm[pivot[j]][ccol];
        null_basis.push_back(v);
      }
    }
    // try a few combinations of the nullspace
    std::vector<std::vector<Rational>> cands = null_basis;
    if (null_basis.size() >= 2)
      for (long wgt : {1L, -1L, 2L, -2L, 3L}) {
        std::vector<Rational> v(4);
        for (int j = 0; j < 4; ++j)
          v[j] = null_basis[0][j] + Rational(wgt) * null_basis[1][j];
        cands.push_back(v);
      }
    for (const auto& X : cands) {
      if (X[0].is_zero() || X[2].is_zero()) continue;
      Rational alpha = X[0].inverse(), beta = X[2].inverse();
      Rational a = X[1] * alpha * alpha / 2, b = X[3] * beta * beta / 2;
      AffineMap Rp;
      Rp.A = {{alpha, Rational(0)}, {Rational(0), beta}};
      Rp.t = {a, b};
      out.push_back(Rp.compose(S));
    }
  }
  return out;
}

std::vector<AffineMap> route_f6(const QuadMap& F) {
  std::vector<AffineMap> out;
  for (const auto& S : pencil_frames(F, false)) {
    QuadMap G = act(AffinePair{AffineMap::identity(3), S.inverse()}, F);
    auto col = columns_of(G);
    bool mixed = false;
    for (const auto& b : col.B)
      if (!b.is_zero()) mixed = true;
    if (mixed) continue;
    // A_i P + C_i Q = E_i with P = beta/alpha^2, Q = 2b/beta
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (int i = 0; i < 3; ++i) {
      m.push_back({col.A[i], col.Cc[i]});
      rhs.push_back(col.E[i]);
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) continue;
    // verify the full system (solve_linear dropped redundant rows)
    bool consistent = true;
    for (int i = 0; i < 3; ++i)
      if (!(col.A[i] * (*sol)[0] + col.Cc[i] * (*sol)[1] == col.E[i]))
        consistent = false;
    if (!consistent || (*sol)[0].is_zero()) continue;
    Rational beta = (*sol)[0], b = (*sol)[1] * beta / 2;
    AffineMap Rp;
    Rp.A = {{Rational(1), Rational(0)}, {Rational(0), beta}};
    Rp.t = {Rational(0), b};
    out.push_back(Rp.compose(S));
  }
  return out;
}

std::vector<AffineMap> route_f9(const QuadMap& F) {
  std::vector<AffineMap> out;
  for (const auto& S : pencil_frames(F, /*shared_line=*/true)) {
    QuadMap G = act(AffinePair{AffineMap::identity(3), S.inverse()}, F);
    auto col = columns_of(G);
    bool stray = false;
    for (const auto& v : col.Cc)
      if (!v.is_zero()) stray = true;
    if (stray) continue;
    // A_i P + B_i V = E_i with P = beta/alpha^2, V = a/alpha - c/alpha^2
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (int i = 0; i < 3; ++i) {
      m.push_back({col.A[i], col.B[i]});
      rhs.push_back(col.E[i]);
    }
    auto sol = solve_linear(m, rhs);
    if (!sol) continue;
    bool consistent = true;
    for (int i = 0; i < 3; ++i)
      if (!(col.A[i] * (*sol)[0] + col.B[i] * (*sol)[1] == col.E[i]))
        consistent = false;
    if (!consistent || (*sol)[0].is_zero()) continue;
    AffineMap Rp;
    Rp.A = {{Rational(1), Rational(0)}, {Rational(0), (*sol)[0]}};
    Rp.t = {(*sol)[1], Rational(0)};
    out.push_back(Rp.compose(S));
  }
  return out;
}

std::vector<AffineMap> route_f8(const QuadMap& F) {
  std::vector<AffineMap> out;
  for (const auto& S : pencil_frames(F, true)) {
    QuadMap G = act(AffinePair{AffineMap::identity(3), S.inverse()}, F);
    auto col = columns_of(G);
    bool stray = false;
    for (const auto& v : col.Cc)
      if (!v.is_zero()) stray = true;
    if (stray) continue;
    // A_i Y1 - B_i Y2 + B_i Y3 + E_i Y4 = D_i, constraint Y2 = Y1 Y4
    std::vector<std::vector<Rational>> m;
    std::vector<Rational> rhs;
    for (int i = 0; i < 3; ++i) {
      m.push_back({col.A[i], -col.B[i], col.B[i], col.E[i]});
      rhs.push_back(col.D[i]);
    }
    // particular solution + nullspace
    auto part = solve_linear(m, rhs);
    if (!part) continue;
    std::vector<std::vector<Rational>> null_basis;
    {
      auto mm = m;
      std::vector<int> pivot(4, -1);
      size_t rank = 0;
      for (size_t ccol = 0; ccol < 4 && rank < mm.size(); ++ccol) {
        size_t p = rank;
        while (p < mm.size() && mm[p][ccol].is_zero()) ++p;
        if (p == mm.size()) continue;
        std::swap(mm[p], mm[rank]);
        Rational inv = mm[rank][ccol].inverse();
        for (auto& v : mm[rank]) v *= inv;
        for (size_t i = 0; i < mm.size(); ++i) {
          if (i == rank || mm[i][ccol].is_zero()) continue;
          Rational f = mm[i][ccol];
          for (size_t j = 0; j < 4; ++j) mm[i][j] -= f * mm[rank][j];
        }
        pivot[ccol] = (int)rank;
        ++rank;
      }
      for (int ccol = 0; ccol < 4; ++ccol) {
        if (pivot[ccol] >= 0) continue;
        std::vector<Rational> v(4, Rational(0));
        v[ccol] = 1;
        for (int j = 0; j < 4; ++j)
          if (pivot[j] >= 0) v[j] = -mm[pivot[j]][ccol];
        null_basis.push_back(v);
      }
    }
    auto push_solution = [&](const std::vector<Rational>& Y) {
      // alpha = 1, beta = 1: a = Y1/2, c = Y4, b = Y3; needs Y2 = Y1*Y4
      if (!(Y[1] == Y[0] * Y[3])) return;
      AffineMap Rp;
      Rp.A = {{Rational(1), Rational(0)}, {Y[3], Rational(1)}};
      Rp.t = {Y[0] / 2, Y[2]};
      out.push_back(Rp.compose(S));
    };
    if (null_basis.empty()) {
      push_solution(*part);
    } else if (null_basis.size() == 1) {
      // solve the quadratic constraint Y2(t) = Y1(t) Y4(t) along the line
      const auto& k = null_basis[0];
      const auto& p = *part;
      // (p2 + t k2) = (p1 + t k1)(p4 + t k4)
      Rational a2 = k[0] * k[3];
      Rational a1 = k[0] * p[3] + p[0] * k[3] - k[1];
      Rational a0 = p[0] * p[3] - p[1];
      std::vector<Rational> ts;
      if (a2.is_zero()) {
        if (!a1.is_zero()) ts.push_back(-a0 / a1);
      } else {
        Rational disc = a1 * a1 - Rational(4) * a2 * a0, root;
        if (is_square(disc, root)) {
          ts.push_back((-a1 + root) / (Rational(2) * a2));
          ts.push_back((-a1 - root) / (Rational(2) * a2));
        }
      }
      for (const auto& t : ts) {
        std::vector<Rational> Y(4);
        for (int j = 0; j < 4; ++j) Y[j] = p[j] + t * k[j];
        push_solution(Y);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// dim_q <= 1 routes

std::vector<AffineMap> route_low_q(const QuadMap& F, LabelId label) {
  RowView v = row_view(F);
  std::vector<AffineMap> out;
  Poly x = Poly::variable(VX), y = Poly::variable(VY);

  auto quad_row = [&]() -> std::optional<Poly> {
    for (const auto& r : v.rows)
      if (!qpart_zero(r)) return r;
    return std::nullopt;
  };
  auto affine_rows = [&]() {
    std::vector<Poly> rs;
    for (const auto& r : v.rows)
      if (qpart_zero(r) && !r.is_constant()) rs.push_back(r);
    return rs;
  };

  switch (label) {
    case LabelId::F24: {
      auto ars = affine_rows();
      if (ars.size() == 2)
        out.push_back(affine_from_forms(aff_from_poly(ars[0]), aff_from_poly(ars[1])));
      break;
    }
    case LabelId::F28: {
      auto ars = affine_rows();
      if (ars.size() == 1) {
        AffForm l = aff_from_poly(ars[0]);
        AffForm m = l.u.is_zero() ? AffForm{1, 0, 0} : AffForm{0, 1, 0};
        out.push_back(affine_from_forms(l, m));
      }
      break;
    }
    case LabelId::F27:
    case LabelId::F26: {
      auto qr = quad_row();
      if (!qr) break;
      auto q = qpart(*qr);
      auto sq = [&]() -> std::optional<std::pair<AffForm, Rational>> {
        // q = s l0^2
        if (!(q[1] * q[1] - Rational(4) * q[0] * q[2]).is_zero()) return std::nullopt;
        if (!q[0].is_zero())
          return std::make_pair(AffForm{Rational(2) * q[0], q[1], 0},
                                (Rational(4) * q[0]).inverse());
        if (!q[2].is_zero())
          return std::make_pair(AffForm{q[1], Rational(2) * q[2], 0},
                                (Rational(4) * q[2]).inverse());
        return std::nullopt;
      }();
      if (!sq) break;
      auto [l0, s] = *sq;
      // complete the square in the l0 direction
      QuadComponent qcr = qc(*qr);
      // decompose the linear part over {l0, transverse}
      Rational det = l0.u * l0.u + l0.v * l0.v;  // use l0 and its rotate
      AffForm tr{-l0.v, l0.u, 0};
      // solve d,e = al*l0 + at*tr
      std::vector<std::vector<Rational>> m = {{l0.u, tr.u}, {l0.v, tr.v}};
      auto sol = solve_linear(m, {qcr.d, qcr.e});
      if (!sol || det.is_zero()) break;
      Rational al = (*sol)[0];
      AffForm l_shift{l0.u, l0.v, al / (Rational(2) * s)};
      if (label == LabelId::F27) {
        AffForm m2 = l0.u.is_zero() ? AffForm{1, 0, 0} : AffForm{0, 1, 0};
        out.push_back(affine_from_forms(l_shift, m2));
      } else {
        // F26: y o R = (row - s*l_shift^2)/s
        Poly rest = (*qr - s * (l_shift.poly() * l_shift.poly())).scaled(s.inverse());
        AffForm m2 = aff_from_poly(rest);
        if (!m2.is_linear_zero())
          out.push_back(affine_from_forms(l_shift, m2));
      }
      break;
    }
    case LabelId::F25: {
      auto qr = quad_row();
      if (!qr) break;
      QuadComponent q = qc(*qr);
      // center: solve grad = 0
      std::vector<std::vector<Rational>> m = {{Rational(2) * q.a, q.b},
                                              {q.b, Rational(2) * q.c}};
      auto cen = solve_linear(m, {-q.d, -q.e});
      if (!cen) break;
      auto split = split_form_rational(q.a, q.b, q.c);
      if (!split) break;  // irrational pair: complex fallback elsewhere
      AffForm m1{split->m1.u, split->m1.v,
                 -(split->m1.u * (*cen)[0] + split->m1.v * (*cen)[1])};
      AffForm m2{split->m2.u, split->m2.v,
                 -(split->m2.u * (*cen)[0] + split->m2.v * (*cen)[1])};
      out.push_back(affine_from_forms(m1, m2));
      break;
    }
    case LabelId::F23:
    case LabelId::F21:
    case LabelId::F22: {
      auto qr = quad_row();
      auto ars = affine_rows();
      if (!qr || ars.size() != 1) break;
      auto q = qpart(*qr);
      if (!(q[1] * q[1] - Rational(4) * q[0] * q[2]).is_zero()) break;
      AffForm l0 = !q[0].is_zero() ? AffForm{Rational(2) * q[0], q[1], 0}
                                   : AffForm{q[1], Rational(2) * q[2], 0};
      Rational s = !q[0].is_zero() ? (Rational(4) * q[0]).inverse()
                                   : (Rational(4) * q[2]).inverse();
      AffForm r2 = aff_from_poly(ars[0]);
      Rational parallel = l0.u * r2.v - l0.v * r2.u;
      if (label == LabelId::F23) {
        if (!parallel.is_zero()) break;
        AffForm m2 = l0.u.is_zero() ? AffForm{1, 0, 0} : AffForm{0, 1, 0};
        out.push_back(affine_from_forms(AffForm{l0.u, l0.v, 0}, m2));
      } else if (label == LabelId::F21) {
        if (parallel.is_zero()) break;
        // remove the r2 component from the quad row's affine part, then
        // complete the square
        QuadComponent qcr = qc(*qr);
        std::vector<std::vector<Rational>> m = {{l0.u, r2.u}, {l0.v, r2.v}};
        auto sol = solve_linear(m, {qcr.d, qcr.e});
        if (!sol) break;
        AffForm l_shift{l0.u, l0.v, (*sol)[0] / (Rational(2) * s)};
        out.push_back(affine_from_forms(l_shift, r2));
      } else {  // F22: structure (x^2 + y, x)
        if (!parallel.is_zero()) break;
        // scale r2 so its linear part matches l0, keep its constant
        Rational scale = !l0.u.is_zero() ? l0.u / r2.u : l0.v / r2.v;
        AffForm r1{l0.u, l0.v, r2.w * scale};
        // kappa from the quadratic parts: q = kappa * r1lin^2
        Rational kappa = s.inverse();  // q = l0^2/(4a)-normalized; recompute:
        kappa = !q[0].is_zero() ? q[0] / (r1.u * r1.u) : q[2] / (r1.v * r1.v);
        Poly rest = (*qr - kappa * (r1.poly() * r1.poly())).scaled(kappa.inverse());
        AffForm r2b = aff_from_poly(rest);
        Rational indep = r1.u * r2b.v - r1.v * r2b.u;
        if (!indep.is_zero()) out.push_back(affine_from_forms(r1, r2b));
      }
      break;
    }
    case LabelId::F20:
    case LabelId::F19: {
      auto qr = quad_row();
      auto ars = affine_rows();
      if (!qr || ars.size() != 1) break;
      auto q = qpart(*qr);
      auto split = split_form_rational(q[0], q[1], q[2]);
      if (!split) break;
      AffForm r2 = aff_from_poly(ars[0]);
      if (label == LabelId::F20) {
        // the affine row is parallel to one factor; normal form (x, xy, 0)
        for (int order : {0, 1}) {
          AffForm ma = order ? split->m2 : split->m1;
          AffForm mb = order ? split->m1 : split->m2;
          if (!(ma.u * r2.v - ma.v * r2.u).is_zero()) continue;
          // r1 = kappa (ma + c)(mb + e) + ...: c = coeff of mb / kappa
          auto d = decompose_over(*qr, ma, mb);
          if (!d || (*d)[0].is_zero()) continue;
          AffForm r1{ma.u, ma.v, (*d)[2] / (*d)[0]};
          out.push_back(affine_from_forms(r1, mb));
        }
      } else {  // F19: normal form (xy, x+y, 0)
        for (int order : {0, 1}) {
          AffForm ma = order ? split->m2 : split->m1;
          AffForm mb = order ? split->m1 : split->m2;
          auto d = decompose_over(*qr, ma, mb);
          if (!d || (*d)[0].is_zero()) continue;
          // with R1 = ma (shift freedom zeroes c1, scale freedom its factor),
          // the relative scale of R2 = s mb + c is read off the affine row,
          // whose linear part is proportional to R1 + R2
          std::vector<std::vector<Rational>> lm = {{ma.u, mb.u}, {ma.v, mb.v}};
          auto lw = solve_linear(lm, {r2.u, r2.v});
          if (!lw || (*lw)[0].is_zero()) continue;
          Rational s = (*lw)[1] / (*lw)[0];
          if (s.is_zero()) continue;
          // row coefficients over {ma*mb, ma, mb, 1}:
          // kappa = A s, ma-coeff = A c + B, mb-coeff = B s
          Rational kappa = (*d)[0];
          Rational c = ((*d)[1] * s - (*d)[2]) / kappa;
          AffForm r1 = ma;
          AffForm r2b{s * mb.u, s * mb.v, s * mb.w + c};
          out.push_back(affine_from_forms(r1, r2b));
        }
      }
      break;
    }
    case LabelId::F17:
    case LabelId::F18: {
      auto qr = quad_row();
      auto ars = affine_rows();
      if (!qr || ars.size() != 2) break;
      auto q = qpart(*qr);
      AffForm a1 = aff_from_poly(ars[0]), a2 = aff_from_poly(ars[1]);
      auto in_span = [&](const Rational& du, const Rational& dv)
          -> std::optional<AffForm> {
        // combination lam a1 + mu a2 with linear part (du, dv)
        std::vector<std::vector<Rational>> m = {{a1.u, a2.u}, {a1.v, a2.v}};
        auto sol = solve_linear(m, {du, dv});
        if (!sol) return std::nullopt;
        if (!((*sol)[0] * a1.u + (*sol)[1] * a2.u == du) ||
            !((*sol)[0] * a1.v + (*sol)[1] * a2.v == dv))
          return std::nullopt;
        return AffForm{du, dv, (*sol)[0] * a1.w + (*sol)[1] * a2.w};
      };
      if (label == LabelId::F17) {
        auto split = split_form_rational(q[0], q[1], q[2]);
        if (!split) break;
        for (int order : {0, 1}) {
          AffForm ma = order ? split->m2 : split->m1;
          AffForm mb = order ? split->m1 : split->m2;
          auto r1 = in_span(ma.u, ma.v);
          auto r2 = in_span(mb.u, mb.v);
          if (r1 && r2) out.push_back(affine_from_forms(*r1, *r2));
        }
      } else {  // F18: q is a square
        if (!(q[1] * q[1] - Rational(4) * q[0] * q[2]).is_zero()) break;
        AffForm l0 = !q[0].is_zero() ? AffForm{Rational(2) * q[0], q[1], 0}
                                     : AffForm{q[1], Rational(2) * q[2], 0};
        auto r1 = in_span(l0.u, l0.v);
        if (!r1) break;
        for (const AffForm& cand : {a1, a2}) {
          if ((r1->u * cand.v - r1->v * cand.u).is_zero()) continue;
          out.push_back(affine_from_forms(*r1, cand));
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// numeric routes (complex doubles)

struct CPoint {
  Complex x, y;
};

std::vector<Complex> croots(const UPoly& p) {
  // Durand-Kerner with Newton polish; degrees here are at most 4
  int d = p.degree();
  std::vector<Complex> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = p.coeff(i).to_double();
  for (int i = 0; i <= d; ++i) c[i] /= c[d];
  std::vector<Complex> r(d);
  Complex seedc(0.4, 0.9);
  Complex acc = 1.0;
  for (int i = 0; i < d; ++i) {
    acc *= seedc;
    r[i] = acc;
  }
  auto eval = [&](Complex z) {
    Complex v = 0;
    for (int i = d; i >= 0; --i) v = v * z + c[i];
    return v;
  };
  for (int it = 0; it < 300; ++it) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      Complex denom = 1.0;
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= (r[i] - r[j]);
      Complex delta = eval(r[i]) / denom;
      r[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-15) break;
  }
  return r;
}

int crank(std::vector<std::vector<Complex>> m) {
  const size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  for (size_t c = 0; c < cols && (size_t)rank < rows; ++c) {
    size_t p = rank;
    for (size_t r = rank; r < rows; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) < 1e-9) continue;
    std::swap(m[p], m[rank]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == (size_t)rank) continue;
      Complex f = m[r][c] / m[rank][c];
      for (size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// complex per-row solve of member = L o target
std::optional<ComplexAffineMap> solve_target_L_c(const ComplexMap& member,
                                                 const ComplexMap& target) {
  const int n = (int)member.size();
  ComplexAffineMap L = ComplexAffineMap::identity(n);
  std::vector<int> free_cols;
  for (int j = 0; j < n; ++j) {
    double mag = 0;
    for (int k = 0; k < 6; ++k) mag = std::max(mag, std::abs(target[j][k]));
    if (mag < 1e-12) free_cols.push_back(j);
  }
  for (int i = 0; i < n; ++i) {
    // least-squares-free exact solve on a well-conditioned square subsystem:
    // use all 6 equations via normal equations would lose accuracy; instead
    // Gaussian elimination on the 6x(n+1) system picking pivots
    std::vector<std::vector<Complex>> m(6, std::vector<Complex>(n + 2));
    for (int k = 0; k < 6; ++k) {
      for (int j = 0; j < n; ++j) m[k][j] = target[j][k];
      m[k][n] = (k == 5) ? Complex(1) : Complex(0);
      m[k][n + 1] = member[i][k];
    }
    // eliminate
    int rank = 0;
    std::vector<int> pivot_col;
    for (int ccol = 0; ccol <= n && rank < 6; ++ccol) {
      int p = -1;
      double best = 1e-11;
      for (int rrow = rank; rrow < 6; ++rrow)
        if (std::abs(m[rrow][ccol]) > best) {
          best = std::abs(m[rrow][ccol]);
          p = rrow;
        }
      if (p < 0) continue;
      std::swap(m[p], m[rank]);
      Complex inv = 1.0 / m[rank][ccol];
      for (int j = ccol; j <= n + 1; ++j) m[rank][j] *= inv;
      for (int rrow = 0; rrow < 6; ++rrow) {
        if (rrow == rank) continue;
        Complex f = m[rrow][ccol];
        if (std::abs(f) == 0.0) continue;
        for (int j = ccol; j <= n + 1; ++j) m[rrow][j] -= f * m[rank][j];
      }
      pivot_col.push_back(ccol);
      ++rank;
    }
    for (int rrow = rank; rrow < 6; ++rrow)
      if (std::abs(m[rrow][n + 1]) > 1e-7) return std::nullopt;
    std::vector<Complex> sol(n + 1, Complex(0));
    for (int rrow = 0; rrow < rank; ++rrow) sol[pivot_col[rrow]] = m[rrow][n + 1];
    for (int j = 0; j < n; ++j) L.A[i][j] = sol[j];
    L.t[i] = sol[n];
  }
  int rank = crank(L.A);
  for (int j : free_cols) {
    for (int i = 0; i < n; ++i) {
      L.A[i][j] = 1;
      int r = crank(L.A);
      if (r == rank + 1) {
        rank = r;
        break;
      }
      L.A[i][j] = 0;
    }
  }
  return L;
}

std::optional<ComplexAffinePair> try_candidate_c(const ComplexMap& member,
                                                 const ComplexMap& nf,
                                                 const ComplexAffineMap& R,
                                                 double tol, double* residual) {
  ComplexAffinePair idR{ComplexAffineMap::identity((int)member.size()), R};
  ComplexMap nfR = act_complex(idR, nf);
  auto L = solve_target_L_c(member, nfR);
  if (!L) return std::nullopt;
  ComplexAffinePair pair{*L, R};
  double res = coeff_distance(act_complex(pair, nf), member);
  if (res > tol) return std::nullopt;
  if (residual) *residual = res;
  return pair;
}

// critical points of a reduced member, numerically: roots of the x-eliminant,
// then common y-roots of the minors on each fiber (several points may share
// an x-coordinate)
std::vector<CPoint> critical_points_numeric(const QuadMap& F) {
  std::vector<Poly> minors;
  for (auto& m : jacobian_minors(F))
    if (!m.is_zero()) minors.push_back(m);
  Poly gx = plane_eliminant(minors, VX, VY);
  UPoly sf = upoly_squarefree(gx.to_upoly(VX));

  auto eval_at_x = [](const Poly& p, Complex rx) {
    // coefficients in y after substituting x = rx
    std::vector<Complex> out(p.degree_in(VY) + 1, Complex(0));
    for (const auto& [m, co] : p.terms()) {
      Complex t = co.to_double();
      for (int k = 0; k < m.e[VX]; ++k) t *= rx;
      out[m.e[VY]] += t;
    }
    while (out.size() > 1 && std::abs(out.back()) < 1e-9) out.pop_back();
    return out;
  };
  auto vanish = [&](Complex rx, Complex ry) {
    for (const auto& m : minors) {
      Complex v = 0;
      for (const auto& [mo, co] : m.terms()) {
        Complex t = co.to_double();
        for (int k = 0; k < mo.e[VX]; ++k) t *= rx;
        for (int k = 0; k < mo.e[VY]; ++k) t *= ry;
        v += t;
      }
      if (std::abs(v) > 1e-6) return false;
    }
    return true;
  };
  std::vector<CPoint> pts;
  for (Complex rx : croots(sf)) {
    std::vector<Complex> cands;
    for (const auto& m : minors) {
      auto cs = eval_at_x(m, rx);
      if (cs.size() == 2) {
        cands.push_back(-cs[0] / cs[1]);
      } else if (cs.size() == 3) {
        Complex disc = std::sqrt(cs[1] * cs[1] - Complex(4) * cs[2] * cs[0]);
        cands.push_back((-cs[1] + disc) / (Complex(2) * cs[2]));
        cands.push_back((-cs[1] - disc) / (Complex(2) * cs[2]));
      }
    }
    for (Complex ry : cands) {
      if (!vanish(rx, ry)) continue;
      bool dup = false;
      for (const auto& p : pts)
        if (std::abs(p.x - rx) + std::abs(p.y - ry) < 1e-8) dup = true;
      if (!dup) pts.push_back({rx, ry});
    }
  }
  return pts;
}

std::optional<ComplexAffinePair> route_f1_numeric(const QuadMap& F, double tol,
                                                  double* residual) {
  auto pts = critical_points_numeric(F);
  if (pts.size() != 3) return std::nullopt;
  // targets: (e/2, e^2/2), e^3 = 1
  const Complex omega(-0.5, std::sqrt(3.0) / 2);
  CPoint targets[3] = {{Complex(0.5), Complex(0.5)},
                       {omega * 0.5, omega * omega * 0.5},
                       {omega * omega * 0.5, omega * 0.5}};
  ComplexMap nf = to_complex(lookup(LabelId::F1).normal_form);
  ComplexMap member = to_complex(F);
  int perm[3] = {0, 1, 2};
  std::sort(perm, perm + 3);
  do {
    // R maps member point k to target perm[k]: solve 2x3 affine
    std::vector<std::vector<Complex>> m(2, std::vector<Complex>(2));
    // use differences to get the linear part
    Complex u1 = pts[1].x - pts[0].x, v1 = pts[1].y - pts[0].y;
    Complex u2 = pts[2].x - pts[0].x, v2 = pts[2].y - pts[0].y;
    Complex w1x = targets[perm[1]].x - targets[perm[0]].x;
    Complex w1y = targets[perm[1]].y - targets[perm[0]].y;
    Complex w2x = targets[perm[2]].x - targets[perm[0]].x;
    Complex w2y = targets[perm[2]].y - targets[perm[0]].y;
    Complex det = u1 * v2 - u2 * v1;
    if (std::abs(det) < 1e-12) continue;
    ComplexAffineMap R = ComplexAffineMap::identity(2);
    R.A[0][0] = (w1x * v2 - w2x * v1) / det;
    R.A[0][1] = (w2x * u1 - w1x * u2) / det;
    R.A[1][0] = (w1y * v2 - w2y * v1) / det;
    R.A[1][1] = (w2y * u1 - w1y * u2) / det;
    R.t[0] = targets[perm[0]].x - R.A[0][0] * pts[0].x - R.A[0][1] * pts[0].y;
    R.t[1] = targets[perm[0]].y - R.A[1][0] * pts[0].x - R.A[1][1] * pts[0].y;
    auto pair = try_candidate_c(member, nf, R, tol, residual);
    if (pair) return pair;
  } while (std::next_permutation(perm, perm + 3));
  return std::nullopt;
}

// complex fallback for the nondegenerate-form routes (F17, F19, F25 with an
// irrational or definite quadratic part)
std::optional<ComplexAffinePair> route_form_numeric(const QuadMap& F, LabelId label,
                                                    double tol, double* residual) {
  RowView v = row_view(F);
  std::optional<Poly> qr;
  std::vector<Poly> ars;
  for (const auto& r : v.rows) {
    if (!qpart_zero(r)) qr = r;
    else if (!r.is_constant()) ars.push_back(r);
  }
  if (!qr) return std::nullopt;
  auto q = qpart(*qr);
  // q = a (x - r1 y)(x - r2 y) over C (a != 0 after a shear if needed)
  Complex a = q[0].to_double(), b = q[1].to_double(), c = q[2].to_double();
  std::vector<std::pair<Complex, Complex>> lines;  // (u, v) for u x + v y
  if (std::abs(a) > 1e-12) {
    // a (x - r1 y)(x - r2 y) with r = (-b ± sqrt(disc)) / (2a)
    Complex disc = std::sqrt(b * b - Complex(4) * a * c);
    lines.push_back({Complex(1), -(-b + disc) / (Complex(2) * a)});
    lines.push_back({Complex(1), -(-b - disc) / (Complex(2) * a)});
  } else {
    // q = y (b x + c y)
    lines.push_back({Complex(0), Complex(1)});
    lines.push_back({b, c});
  }
  ComplexMap member = to_complex(F);
  ComplexMap nf = to_complex(lookup(label).normal_form);
  QuadComponent qrc = qc(*qr);
  for (int order = 0; order < 2; ++order) {
    auto m1 = lines[order], m2 = lines[1 - order];
    ComplexAffineMap R = ComplexAffineMap::identity(2);
    if (label == LabelId::F25) {
      // center the conic
      Complex det = Complex(4) * a * c - b * b;
      if (std::abs(det) < 1e-12) return std::nullopt;
      Complex dx = qrc.d.to_double(), ey = qrc.e.to_double();
      Complex cx = (-Complex(2) * c * dx + b * ey) / det;
      Complex cy = (-Complex(2) * a * ey + b * dx) / det;
      R.A = {{m1.first, m1.second}, {m2.first, m2.second}};
      R.t = {-(m1.first * cx + m1.second * cy), -(m2.first * cx + m2.second * cy)};
    } else {
      R.A = {{m1.first, m1.second}, {m2.first, m2.second}};
      R.t = {Complex(0), Complex(0)};
    }
    auto pair = try_candidate_c(member, nf, R, tol, residual);
    if (pair) return pair;
  }
  return std::nullopt;
}

}  // namespace

WitnessReport find_witness(const QuadMap& F, const OrbitLabel& label, double tol,
                           uint64_t seed) {
  const LabelId id = label.base;
  if (label_is_primed(id))
    throw UnsupportedLabelError("witness routes exist for complex labels only: " +
                                label_name(id));
  const OrbitRecord& rec = lookup(id);
  static const std::set<LabelId> supported = {
      LabelId::F1,  LabelId::F2,  LabelId::F3,  LabelId::F4,  LabelId::F5,
      LabelId::F6,  LabelId::F8,  LabelId::F9,  LabelId::F17, LabelId::F18,
      LabelId::F19, LabelId::F20, LabelId::F21, LabelId::F22, LabelId::F23,
      LabelId::F24, LabelId::F25, LabelId::F26, LabelId::F27, LabelId::F28,
      LabelId::F29};
  if (!supported.count(id))
    throw UnsupportedLabelError("no witness route for label " + label_name(id) +
                                " (constructions for it are out of scope)");
  if (F.n != rec.n_min)
    throw UnsupportedLabelError(
        "witness construction expects the map in the minimal ambient dimension");

  WitnessReport rep;
  const QuadMap& nf = rec.normal_form;

  // trivial exact hit
  if (F.comps == nf.comps) {
    rep.exact = true;
    rep.exact_pair = AffinePair::identity(F.n);
    rep.route = "identity";
    rep.residual = 0.0;
    return rep;
  }

  if (id == LabelId::F29) {
    AffineMap L = AffineMap::identity(3);
    for (int i = 0; i < 3; ++i) L.t[i] = F.comps[i].g;
    AffinePair pair{L, AffineMap::identity(2)};
    if (act(pair, nf) == F) {
      rep.exact = true;
      rep.exact_pair = pair;
      rep.route = "constant";
      return rep;
    }
    throw std::logic_error("find_witness: constant route failed");
  }

  if (id == LabelId::F4) {
    ThetaResult t = theta(F);
    if (t.map == nf) {
      AffinePair pair{t.witness.L.inverse(), t.witness.R.inverse()};
      if (act(pair, nf) == F) {
        rep.exact = true;
        rep.exact_pair = pair;
        rep.route = "theta";
        return rep;
      }
    }
    throw std::logic_error("find_witness: theta route failed for F4");
  }

  // exact structured routes
  std::vector<AffineMap> candidates;
  std::string route;
  switch (id) {
    case LabelId::F2: candidates = route_f2(F, seed); route = "critical-matching"; break;
    case LabelId::F3: candidates = route_f3(F, seed); route = "scheme-normalization"; break;
    case LabelId::F5: candidates = route_f5(F); route = "pencil"; break;
    case LabelId::F6: candidates = route_f6(F); route = "pencil"; break;
    case LabelId::F8: candidates = route_f8(F); route = "pencil"; break;
    case LabelId::F9: candidates = route_f9(F); route = "pencil"; break;
    case LabelId::F1: break;
    default: candidates = route_low_q(F, id); route = "linear-algebra"; break;
  }
  for (const auto& R : candidates) {
    auto pair = try_candidate(F, nf, R);
    if (pair) {
      rep.exact = true;
      rep.exact_pair = *pair;
      rep.route = route;
      return rep;
    }
  }

  // numeric routes
  double residual = 0;
  if (id == LabelId::F1) {
    auto pair = route_f1_numeric(F, tol, &residual);
    if (pair) {
      rep.exact = false;
      rep.approx_pair = *pair;
      rep.residual = residual;
      rep.route = "triangle-numeric";
      return rep;
    }
  }
  if (id == LabelId::F17 || id == LabelId::F19 || id == LabelId::F25) {
    auto pair = route_form_numeric(F, id, tol, &residual);
    if (pair) {
      rep.exact = false;
      rep.approx_pair = *pair;
      rep.residual = residual;
      rep.route = "form-split-numeric";
      return rep;
    }
  }
  throw std::logic_error("find_witness: no route produced a verified witness for " +
                         label_name(id));
}

}  // namespace qo
