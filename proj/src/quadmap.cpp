#include "qo/quadmap.hpp"

#include <sstream>

namespace qo {

Poly QuadComponent::to_poly() const {
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  return a * (x * x) + b * (x * y) + c * (y * y) + d * x + e * y +
         Poly::constant(g);
}

QuadComponent QuadComponent::from_poly(const Poly& p) {
  QuadComponent q;
  for (const auto& [m, co] : p.terms()) {
    if (m.e[VX2] || m.e[VY2])
      throw std::domain_error("quad component: auxiliary variables present");
    int dx = m.e[VX], dy = m.e[VY];
    if (dx == 2 && dy == 0) q.a = co;
    else if (dx == 1 && dy == 1) q.b = co;
    else if (dx == 0 && dy == 2) q.c = co;
    else if (dx == 1 && dy == 0) q.d = co;
    else if (dx == 0 && dy == 1) q.e = co;
    else if (dx == 0 && dy == 0) q.g = co;
    else throw std::domain_error("quad component: degree above 2");
  }
  return q;
}

Rational QuadComponent::eval(const Rational& x, const Rational& y) const {
  return a * x * x + b * x * y + c * y * y + d * x + e * y + g;
}

QuadMap QuadMap::from_polys(Field f, const std::vector<Poly>& ps) {
  std::vector<QuadComponent> cs;
  cs.reserve(ps.size());
  for (const auto& p : ps) cs.push_back(QuadComponent::from_poly(p));
  return make(f, std::move(cs));
}

std::vector<Poly> QuadMap::to_polys() const {
  std::vector<Poly> out;
  out.reserve(comps.size());
  for (const auto& c : comps) out.push_back(c.to_poly());
  return out;
}

std::vector<Rational> QuadMap::eval(const Rational& x, const Rational& y) const {
  std::vector<Rational> out;
  out.reserve(comps.size());
  for (const auto& c : comps) out.push_back(c.eval(x, y));
  return out;
}

std::string QuadMap::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < n; ++i) {
    if (i) os << ", ";
    os << comps[i].to_poly().str();
  }
  os << ")";
  return os.str();
}

AffineMap AffineMap::identity(int m) {
  AffineMap out;
  out.A.assign(m, std::vector<Rational>(m, Rational(0)));
  out.t.assign(m, Rational(0));
  for (int i = 0; i < m; ++i) out.A[i][i] = 1;
  return out;
}

namespace {

// Gauss-Jordan inverse; nullopt when singular.
std::optional<std::vector<std::vector<Rational>>> invert(
    std::vector<std::vector<Rational>> m) {
  const size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational d = m[c][c].inverse();
    for (size_t j = 0; j < n; ++j) {
      m[c][j] *= d;
      inv[c][j] *= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace

bool AffineMap::invertible() const { return invert(A).has_value(); }

AffineMap AffineMap::inverse() const {
  auto inv = invert(A);
  if (!inv) throw std::domain_error("AffineMap: singular linear part");
  AffineMap out;
  out.A = *inv;
  out.t.assign(dim(), Rational(0));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out.t[i] -= out.A[i][j] * t[j];
  return out;
}

AffineMap AffineMap::compose(const AffineMap& inner) const {
  const int m = dim();
  AffineMap out;
  out.A.assign(m, std::vector<Rational>(m, Rational(0)));
  out.t = t;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) out.A[i][j] += A[i][k] * inner.A[k][j];
      out.t[i] += A[i][j] * inner.t[j];
    }
  return out;
}

std::vector<Rational> AffineMap::apply(const std::vector<Rational>& v) const {
  std::vector<Rational> out = t;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out[i] += A[i][j] * v[j];
  return out;
}

QuadMap act(const AffinePair& pair, const QuadMap& F) {
  if (pair.L.dim() != F.n || pair.R.dim() != 2)
    throw std::domain_error("act: dimension mismatch");
  if (!pair.L.invertible() || !pair.R.invertible())
    throw std::domain_error("act: singular linear part");
  Poly rx = Poly::constant(pair.R.t[0]) + pair.R.A[0][0] * Poly::variable(VX) +
            pair.R.A[0][1] * Poly::variable(VY);
  Poly ry = Poly::constant(pair.R.t[1]) + pair.R.A[1][0] * Poly::variable(VX) +
            pair.R.A[1][1] * Poly::variable(VY);
  std::array<std::optional<Poly>, kNumVars> repl;
  repl[VX] = rx;
  repl[VY] = ry;
  std::vector<Poly> inner;
  inner.reserve(F.n);
  for (const auto& c : F.comps) inner.push_back(c.to_poly().substitute(repl));
  std::vector<Poly> out(F.n);
  for (int i = 0; i < F.n; ++i) {
    out[i] = Poly::constant(pair.L.t[i]);
    for (int j = 0; j < F.n; ++j) out[i] += pair.L.A[i][j] * inner[j];
  }
  return QuadMap::from_polys(F.field, out);
}

int matrix_rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    Rational inv = m[rank][c].inverse();
    for (size_t j = c; j < cols; ++j) m[rank][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return (int)rank;
}

std::optional<std::vector<Rational>> solve_linear(
    std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<int> pivot_of_col(cols, -1);
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t p = rank;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    std::swap(rhs[p], rhs[rank]);
    Rational inv = m[rank][c].inverse();
    for (size_t j = c; j < cols; ++j) m[rank][j] *= inv;
    rhs[rank] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
      rhs[i] -= f * rhs[rank];
    }
    pivot_of_col[c] = (int)rank;
    ++rank;
  }
  for (size_t i = rank; i < rows; ++i)
    if (!rhs[i].is_zero()) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (size_t c = 0; c < cols; ++c)
    if (pivot_of_col[c] >= 0) x[c] = rhs[pivot_of_col[c]];
  return x;
}

int dim_affine(const QuadMap& F) {
  std::vector<std::vector<Rational>> m;
  for (const auto& c : F.comps) m.push_back({c.a, c.b, c.c, c.d, c.e});
  return matrix_rank(std::move(m));
}

int dim_quadratic(const QuadMap& F) {
  std::vector<std::vector<Rational>> m;
  for (const auto& c : F.comps) m.push_back({c.a, c.b, c.c});
  return matrix_rank(std::move(m));
}

std::vector<Poly> jacobian_minors(const QuadMap& F) {
  auto polys = F.to_polys();
  std::vector<std::pair<Poly, Poly>> grads;
  grads.reserve(F.n);
  for (const auto& p : polys) grads.emplace_back(p.derivative(VX), p.derivative(VY));
  auto minor = [&](int i, int j) {
    return grads[i].first * grads[j].second - grads[j].first * grads[i].second;
  };
  std::vector<Poly> out;
  if (F.n == 3) {
    out.push_back(minor(1, 2));  // J1
    out.push_back(minor(2, 0));  // J2
    out.push_back(minor(0, 1));  // J3
  } else if (F.n == 1) {
    // no 2x2 minors: rank never exceeds 1, handled by callers
  } else {
    for (int i = 0; i < F.n; ++i)
      for (int j = i + 1; j < F.n; ++j) out.push_back(minor(i, j));
  }
  return out;
}

std::vector<std::vector<Rational>> phi1(const QuadMap& F) {
  if (F.n != 3) throw std::domain_error("phi1 requires a three-component map");
  std::vector<std::vector<Rational>> m(3);
  for (int i = 0; i < 3; ++i) m[i] = {F.comps[i].a, F.comps[i].c, F.comps[i].b};
  return m;
}

Rational det3(const std::vector<std::vector<Rational>>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rational phi2(const Poly& j) {
  QuadComponent q = QuadComponent::from_poly(j);
  return Rational(4) * q.a * q.c - q.b * q.b;
}

bool cofactor_transform_check(const std::vector<std::vector<Rational>>& P,
                              const QuadMap& F) {
  if (F.n != 3) throw std::domain_error("cofactor check requires n = 3");
  auto inv = invert(P);
  if (!inv) throw std::domain_error("cofactor check: singular matrix");
  Rational det = det3(P);
  // cofactor matrix C = (det(P) P^{-1})^T
  std::vector<std::vector<Rational>> cof(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) cof[i][j] = det * (*inv)[j][i];
  AffinePair pair{AffineMap{P, {Rational(0), Rational(0), Rational(0)}},
                  AffineMap::identity(2)};
  auto lhs = jacobian_minors(act(pair, F));
  auto rhs_src = jacobian_minors(F);
  for (int i = 0; i < 3; ++i) {
    Poly rhs;
    for (int j = 0; j < 3; ++j) rhs += cof[i][j] * rhs_src[j];
    if (!(lhs[i] == rhs)) return false;
  }
  return true;
}

namespace {

std::vector<Rational> quad_coeff_vector(const Poly& p) {
  QuadComponent q = QuadComponent::from_poly(p);
  return {q.a, q.b, q.c, q.d, q.e, q.g};
}

}  // namespace

CriticalSpace critical_space(const QuadMap& F) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& m : jacobian_minors(F)) {
    if (m.is_zero()) continue;
    rows.push_back(quad_coeff_vector(m));
  }
  const size_t cols = 6;
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
    size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    Rational inv = rows[rank][c].inverse();
    for (size_t j = 0; j < cols; ++j) rows[rank][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c].is_zero()) continue;
      Rational f = rows[i][c];
      for (size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  CriticalSpace out;
  out.dimension = (int)rank;
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  for (size_t i = 0; i < rank; ++i) {
    const auto& r = rows[i];
    out.basis.push_back(r[0] * (x * x) + r[1] * (x * y) + r[2] * (y * y) +
                        r[3] * x + r[4] * y + Poly::constant(r[5]));
  }
  return out;
}

}  // namespace qo
