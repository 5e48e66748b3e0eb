#include "qo/invariants.hpp"

#include <algorithm>
#include <sstream>

namespace qo {

namespace {

const MonoOrder kPlaneOrder = MonoOrder::degrevlex({VX, VY});
const MonoOrder kFullOrder = MonoOrder::degrevlex({VX, VY, VX2, VY2});

std::vector<Poly> nonzero_minors(const QuadMap& F) {
  std::vector<Poly> out;
  for (auto& m : jacobian_minors(F))
    if (!m.is_zero()) out.push_back(std::move(m));
  return out;
}

Poly plane_gcd_all(const std::vector<Poly>& polys) {
  Poly g;
  for (const auto& p : polys) {
    g = g.is_zero() ? p : biv_gcd(g, p, VX, VY);
    if (g.is_constant()) break;
  }
  return g;
}

}  // namespace

Ideal fiber_product_ideal(const QuadMap& F) {
  std::array<std::optional<Poly>, kNumVars> swap_in;
  swap_in[VX] = Poly::variable(VX2);
  swap_in[VY] = Poly::variable(VY2);
  std::vector<Poly> gens;
  for (const auto& c : F.comps) {
    Poly f = c.to_poly();
    Poly g = f - f.substitute(swap_in);
    if (!g.is_zero()) gens.push_back(g);
  }
  return Ideal{std::move(gens), kFullOrder};
}

Ideal diagonal_ideal() {
  return Ideal{{Poly::variable(VX) - Poly::variable(VX2),
                Poly::variable(VY) - Poly::variable(VY2)},
               kFullOrder};
}

std::vector<int> CriticalReport::multiplicity_partition() const {
  std::vector<int> out;
  for (const auto& p : rational_points) out.push_back(p.mult);
  for (int i = 0; i < irrational_count; ++i) out.push_back(irrational_mult_each);
  std::sort(out.begin(), out.end());
  return out;
}

CriticalReport critical_scheme(const QuadMap& F) {
  CriticalReport rep;
  auto minors = nonzero_minors(F);
  if (F.n == 1) {
    // a single component has no 2x2 minors: every point is critical
    rep.kind = CritKind::Plane;
    return rep;
  }
  if (minors.empty()) {
    rep.kind = CritKind::Plane;
    return rep;
  }
  auto gb = GroebnerBasis::compute(minors, kPlaneOrder);
  if (gb.contains_one()) {
    rep.kind = CritKind::Empty;
    return rep;
  }
  auto dim = gb.quotient_dimension({VX, VY});
  if (!dim) {
    rep.kind = CritKind::Curve;
    rep.curve_poly = plane_gcd_all(minors).primitive_part();
    return rep;
  }
  rep.kind = CritKind::Finite;
  rep.total_multiplicity = *dim;
  Poly gx = plane_eliminant(minors, VX, VY);
  Poly gy = plane_eliminant(minors, VY, VX);
  rep.elim_x = upoly_squarefree(gx.to_upoly(VX));
  rep.elim_y = upoly_squarefree(gy.to_upoly(VY));
  long distinct = distinct_point_count(minors);

  // rational points: rational x-roots, then rational y above them
  for (const Rational& ax : upoly_rational_roots(gx.to_upoly(VX))) {
    std::vector<Poly> at_x;
    Poly sub = Poly::variable(VX) - Poly::constant(ax);
    for (const auto& m : minors) at_x.push_back(m.substitute(VX, Poly::constant(ax)));
    // univariate content in y of the substituted system
    UPoly gy_at;
    bool inconsistent_constant = false;
    for (const auto& p : at_x) {
      if (p.is_zero()) continue;
      if (p.is_constant()) {
        inconsistent_constant = true;
        break;
      }
      gy_at = upoly_gcd(gy_at, p.to_upoly(VY));
    }
    if (inconsistent_constant || gy_at.is_zero()) continue;
    for (const Rational& by : upoly_rational_roots(gy_at)) {
      bool on_scheme = true;
      for (const auto& m : minors)
        if (!m.eval2(ax, by).is_zero()) on_scheme = false;
      if (!on_scheme) continue;
      CriticalPoint pt;
      pt.x = ax;
      pt.y = by;
      pt.mult = local_multiplicity(minors, ax, by);
      rep.rational_points.push_back(pt);
    }
  }
  long rational_mult = 0;
  for (const auto& p : rep.rational_points) rational_mult += p.mult;
  rep.irrational_count = (int)(distinct - (long)rep.rational_points.size());
  long rest = rep.total_multiplicity - rational_mult;
  if (rep.irrational_count > 0) {
    // conjugate points share a multiplicity; with total <= 4 two orbits of
    // unequal multiplicity cannot fit, so equal split is forced
    if (rest % rep.irrational_count != 0 || rest <= 0)
      throw std::logic_error("critical_scheme: inconsistent multiplicity split");
    rep.irrational_mult_each = (int)(rest / rep.irrational_count);
  } else if (rest != 0) {
    throw std::logic_error("critical_scheme: multiplicities do not add up");
  }
  std::sort(rep.rational_points.begin(), rep.rational_points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              return a.x != b.x ? a.x < b.x : a.y < b.y;
            });
  return rep;
}

// ---------------------------------------------------------------------------
// Topological degree

namespace {

// Base-point sampler: numerators from a seeded splitmix stream, denominators
// from a fixed list of primes around 100.  Points of low height sit on many
// low-height curves; prime denominators of this size keep accidental
// incidences with the loci of F out of reach while coefficients stay small.
struct BaseSampler {
  uint64_t state;
  int index = 0;
  explicit BaseSampler(uint64_t seed) : state(seed ^ 0x5bf03635d09c5bf0ull) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::pair<Rational, Rational> draw() {
    static const long primes[] = {101, 103, 107, 109, 113, 127, 131, 137,
                                  139, 149, 151, 157, 163, 167, 173, 179};
    long p = primes[(2 * index) % 16], q = primes[(2 * index + 1) % 16];
    ++index;
    long nx = (long)(next() % 199) - 99, ny = (long)(next() % 199) - 99;
    if (nx == 0) nx = 7;
    if (ny == 0) ny = 11;
    return {Rational(nx, p), Rational(ny, q)};
  }
};

}  // namespace

DegreeReport topological_degree(const QuadMap& F, uint64_t seed) {
  auto comps = F.to_polys();
  auto minors = nonzero_minors(F);
  bool whole_plane_critical = minors.empty() || F.n == 1;
  BaseSampler sampler(seed);

  std::optional<DegreeReport> agreed;
  for (int s = 0; s < 7; ++s) {
    // reject critical base points: they are never generic
    Rational x0, y0;
    int tries = 0;
    while (true) {
      auto [cx, cy] = sampler.draw();
      x0 = cx;
      y0 = cy;
      if (whole_plane_critical) break;
      bool critical = true;
      for (const auto& m : minors)
        if (!m.eval2(x0, y0).is_zero()) critical = false;
      if (!critical) break;
      if (++tries > 64)
        throw MuProtocolError("topological_degree: cannot find noncritical base point");
    }
    std::vector<Poly> fiber;
    for (const auto& f : comps) {
      Poly g = f - Poly::constant(f.eval2(x0, y0));
      if (!g.is_zero()) fiber.push_back(g);
    }
    DegreeReport sample;
    if (fiber.empty()) {
      sample.finite = false;  // constant map: the fiber is the plane
    } else {
      auto gb = GroebnerBasis::compute(fiber, kPlaneOrder);
      auto dim = gb.quotient_dimension({VX, VY});
      if (!dim) {
        sample.finite = false;
      } else {
        sample.finite = true;
        sample.value = distinct_point_count(fiber);
      }
    }
    if (!agreed) {
      agreed = sample;
    } else if (!(*agreed == sample)) {
      std::ostringstream os;
      os << "topological_degree: sample disagreement on " << F.str()
         << " at base point (" << x0.str() << ", " << y0.str() << "): ";
      os << (agreed->finite ? std::to_string(agreed->value) : "infinite") << " vs "
         << (sample.finite ? std::to_string(sample.value) : "infinite");
      throw MuProtocolError(os.str());
    }
  }
  return *agreed;
}

// ---------------------------------------------------------------------------
// Self-intersection

namespace {

// candidate rational lines through the critical scheme, used to refine the
// squarefree factors of the SI eliminant
std::vector<Poly> candidate_lines(const QuadMap& F, const CriticalReport& crit) {
  std::vector<Poly> out;
  if (crit.kind != CritKind::Finite) return out;
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  auto comps = F.to_polys();
  for (const auto& pt : crit.rational_points) {
    // kernel line of DF at the point
    std::optional<std::pair<Rational, Rational>> row;
    for (const auto& f : comps) {
      Rational rx = f.derivative(VX).eval2(pt.x, pt.y);
      Rational ry = f.derivative(VY).eval2(pt.x, pt.y);
      if (!rx.is_zero() || !ry.is_zero()) {
        row = {rx, ry};
        break;
      }
    }
    if (row) {
      // direction (r2, -r1); implicit line r1 (x-a) + r2 (y-b) = 0
      out.push_back(row->first * (x - Poly::constant(pt.x)) +
                    row->second * (y - Poly::constant(pt.y)));
    }
    out.push_back(x - Poly::constant(pt.x));
    out.push_back(y - Poly::constant(pt.y));
  }
  // join line of a conjugate pair: y reduces to a linear function of x
  // modulo the critical ideal plus its quadratic eliminant factor
  auto rational_roots_x = upoly_rational_roots(crit.elim_x);
  UPoly h = crit.elim_x;
  for (const auto& r : rational_roots_x) {
    UPoly lin({-r, Rational(1)});
    h = h.divmod(lin).first;
  }
  if (h.degree() == 2) {
    auto minors = nonzero_minors(F);
    std::vector<Poly> aug = minors;
    aug.push_back(Poly::from_upoly(h, VX));
    auto gb = GroebnerBasis::compute(aug, MonoOrder::lex({VY, VX}));
    Poly nf = gb.normal_form(y);
    if (!nf.is_zero() && nf.degree_in(VY) == 0 && nf.degree_in(VX) <= 1)
      out.push_back(y - nf);
  }
  return out;
}

bool factor_has_real_curve(const Poly& f) {
  int d = f.total_degree();
  if (d == 1) return true;
  if (d == 2) {
    switch (classify_conic(f)) {
      case ConicType::Ellipse:
      case ConicType::Hyperbola:
      case ConicType::Parabola:
      case ConicType::RealLinePair:
      case ConicType::DoubleLine:
        return true;
      default:
        return false;
    }
  }
  return d % 2 == 1;  // odd degree always carries a real branch
}

}  // namespace

SIReport self_intersection(const QuadMap& F, uint64_t seed) {
  auto mu = topological_degree(F, seed);
  if (!mu.is_one())
    throw std::domain_error("self_intersection requires topological degree 1");
  SIReport rep;
  auto res = colon_and_eliminate(fiber_product_ideal(F), diagonal_ideal());
  if (res.kind == ColonEliminateResult::Kind::Unit) {
    rep.empty = true;
    return rep;
  }
  if (res.kind == ColonEliminateResult::Kind::Zero)
    throw std::logic_error("self_intersection: colon eliminated to zero at degree 1");
  rep.empty = false;
  rep.eliminant = res.generator;
  auto crit = critical_scheme(F);
  auto candidates = candidate_lines(F, crit);
  for (auto& [sq, mult] : plane_squarefree_decomposition(res.generator)) {
    Poly rest = sq;
    for (const auto& line : candidates) {
      while (rest.total_degree() > line.total_degree()) {
        bool divides = true;
        Poly quot;
        try {
          quot = divide_exact(rest, line);
        } catch (const std::domain_error&) {
          divides = false;
        }
        if (!divides) break;
        rep.factors.push_back({line.primitive_part(), mult,
                               factor_has_real_curve(line)});
        rest = quot;
      }
    }
    if (rest.total_degree() > 0)
      rep.factors.push_back({rest.primitive_part(), mult, factor_has_real_curve(rest)});
  }
  std::sort(rep.factors.begin(), rep.factors.end(),
            [](const SIFactor& a, const SIFactor& b) {
              if (a.multiplicity != b.multiplicity)
                return a.multiplicity < b.multiplicity;
              return a.factor.str() < b.factor.str();
            });
  return rep;
}

std::optional<Poly> fold_locus(const QuadMap& F) {
  return colon_fold_locus(fiber_product_ideal(F), diagonal_ideal());
}

MidpointSI self_intersection_midpoint(const QuadMap& F) {
  MidpointSI rep;
  auto minors = nonzero_minors(F);
  if (minors.empty() || F.n == 1) {
    rep.kind = MidpointSI::Kind::Plane;
    return rep;
  }
  std::array<std::optional<Poly>, kNumVars> at_u;
  at_u[VX] = Poly::variable(VX2);
  at_u[VY] = Poly::variable(VY2);
  std::vector<Poly> gens;
  for (const auto& m : minors) gens.push_back(m.substitute(at_u));
  Poly dx = Poly::variable(VX) - Poly::variable(VX2);
  Poly dy = Poly::variable(VY) - Poly::variable(VY2);
  for (const auto& f : F.to_polys()) {
    Poly row = f.derivative(VX).substitute(at_u) * dx +
               f.derivative(VY).substitute(at_u) * dy;
    if (!row.is_zero()) gens.push_back(row);
  }
  auto gb = GroebnerBasis::compute(gens, MonoOrder::elim({VX2, VY2}, {VX, VY}));
  if (gb.contains_one()) {
    rep.kind = MidpointSI::Kind::Empty;
    return rep;
  }
  auto eliminated = gb.eliminate({VX2, VY2});
  if (eliminated.empty()) {
    rep.kind = MidpointSI::Kind::Plane;
    return rep;
  }
  Poly g = plane_gcd_all(eliminated);
  if (g.is_constant()) {
    rep.kind = MidpointSI::Kind::Empty;
    return rep;
  }
  rep.kind = MidpointSI::Kind::Curve;
  rep.curve = plane_squarefree_part(g);
  return rep;
}

// ---------------------------------------------------------------------------
// Orbit dimension

int orbit_dimension(const QuadMap& F) {
  const int n = F.n;
  auto comps = F.to_polys();
  auto coeff_vec = [](const Poly& p) {
    QuadComponent q = QuadComponent::from_poly(p);
    return std::vector<Rational>{q.a, q.b, q.c, q.d, q.e, q.g};
  };
  std::vector<std::vector<Rational>> rows;
  auto add_row = [&](int comp_index, const Poly& p) {
    std::vector<Rational> row(6 * n, Rational(0));
    auto v = coeff_vec(p);
    for (int k = 0; k < 6; ++k) row[6 * comp_index + k] = v[k];
    rows.push_back(std::move(row));
  };
  // target linear part A_{ij}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) add_row(i, comps[j]);
  // target translation c_i
  for (int i = 0; i < n; ++i) add_row(i, Poly::constant(1));
  // source linear part B and translation d act through DF
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  std::vector<Poly> source_fields = {x, y};  // entries multiply df/dx, df/dy
  for (int which = 0; which < 2; ++which)    // row of B
    for (int entry = 0; entry < 2; ++entry) {
      std::vector<Rational> row(6 * n, Rational(0));
      for (int i = 0; i < n; ++i) {
        Poly d = comps[i].derivative(which == 0 ? VX : VY);
        Poly p = d * source_fields[entry];
        auto v = coeff_vec(p);
        for (int k = 0; k < 6; ++k) row[6 * i + k] += v[k];
      }
      rows.push_back(std::move(row));
    }
  for (int which = 0; which < 2; ++which) {
    std::vector<Rational> row(6 * n, Rational(0));
    for (int i = 0; i < n; ++i) {
      Poly d = comps[i].derivative(which == 0 ? VX : VY);
      auto v = coeff_vec(d);
      for (int k = 0; k < 6; ++k) row[6 * i + k] += v[k];
    }
    rows.push_back(std::move(row));
  }
  return matrix_rank(std::move(rows));
}

// ---------------------------------------------------------------------------
// Real signatures

ConicType classify_conic(const Poly& p) {
  QuadComponent q = QuadComponent::from_poly(p);
  if (q.a.is_zero() && q.b.is_zero() && q.c.is_zero()) return ConicType::Line;
  Rational A = q.a, B = q.b, C = q.c, D = q.d, E = q.e, G = q.g;
  Rational delta = B * B - Rational(4) * A * C;
  // det of [[A, B/2, D/2], [B/2, C, E/2], [D/2, E/2, G]]
  Rational h = Rational(1, 2);
  Rational Delta = A * (C * G - (E * h) * (E * h)) -
                   (B * h) * ((B * h) * G - (E * h) * (D * h)) +
                   (D * h) * ((B * h) * (E * h) - C * (D * h));
  if (delta.sign() < 0) {
    if (Delta.is_zero()) return ConicType::ComplexLinePair;
    return (Delta * (A + C)).sign() < 0 ? ConicType::Ellipse : ConicType::EmptyEllipse;
  }
  if (delta.sign() > 0)
    return Delta.is_zero() ? ConicType::RealLinePair : ConicType::Hyperbola;
  // delta == 0: quadratic part is s * l0^2
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  Poly l0;
  Rational s;
  if (!A.is_zero()) {
    l0 = Rational(2) * A * x + B * y;
    s = (Rational(4) * A).inverse();
  } else {
    // A == 0 and delta == 0 force B == 0
    l0 = y;
    s = C;
  }
  Poly residual = p - s * (l0 * l0);
  // residual is affine; split off the component transverse to l0
  QuadComponent r = QuadComponent::from_poly(residual);
  QuadComponent l = QuadComponent::from_poly(l0);
  Rational transverse = r.d * l.e - r.e * l.d;  // cross product of directions
  if (!transverse.is_zero()) return ConicType::Parabola;
  // p = s*l0^2 + alpha*l0 + g: a univariate quadratic in l0
  Rational alpha = !l.d.is_zero() ? r.d / l.d : r.e / l.e;
  Rational disc1 = alpha * alpha - Rational(4) * s * r.g;
  if (disc1.sign() > 0) return ConicType::RealLinePair;
  if (disc1.sign() < 0) return ConicType::ComplexLinePair;
  return ConicType::DoubleLine;
}

BinaryFormType binary_form_type(const Rational& a, const Rational& b,
                                const Rational& c) {
  if (a.is_zero() && b.is_zero() && c.is_zero()) return BinaryFormType::Zero;
  int s = (b * b - Rational(4) * a * c).sign();
  if (s > 0) return BinaryFormType::RealProduct;
  if (s < 0) return BinaryFormType::Irreducible;
  return BinaryFormType::Square;
}

RealSignatures real_signatures(const QuadMap& F) {
  if (F.field != Field::R)
    throw std::domain_error("real_signatures requires a real map");
  RealSignatures sig;
  auto crit = critical_scheme(F);
  if (crit.kind == CritKind::Finite) {
    // separate the points by a generic linear form u = x + lambda*y, then
    // count real roots of the u-eliminant by Sturm
    auto minors = nonzero_minors(F);
    long distinct = (long)crit.rational_points.size() + crit.irrational_count;
    for (long lambda = 0;; ++lambda) {
      if (lambda > 40)
        throw std::logic_error("real_signatures: no separating linear form");
      std::vector<Poly> aug = minors;
      aug.push_back(Poly::variable(VX2) - Poly::variable(VX) -
                    Rational(lambda) * Poly::variable(VY));
      auto gb = GroebnerBasis::compute(aug, MonoOrder::elim({VX, VY}, {VX2}));
      Poly elim;
      for (const auto& f : gb.eliminate({VX, VY}))
        if (!f.is_zero() && (elim.is_zero() || f.degree_in(VX2) < elim.degree_in(VX2)))
          elim = f;
      if (elim.is_zero()) continue;
      UPoly u = elim.to_upoly(VX2);
      UPoly sf = upoly_squarefree(u);
      if (sf.degree() != distinct) continue;  // lambda does not separate
      sig.real_critical_count = upoly_sturm_count(sf, std::nullopt, std::nullopt);
      break;
    }
  } else if (crit.kind == CritKind::Curve) {
    sig.critical_conic = classify_conic(crit.curve_poly);
  }
  int dq = dim_quadratic(F);
  if (dq == 1) {
    for (const auto& c : F.comps) {
      if (c.a.is_zero() && c.b.is_zero() && c.c.is_zero()) continue;
      sig.form_type = binary_form_type(c.a, c.b, c.c);
      break;
    }
  } else if (dq == 2) {
    // basis of the quadratic-part pencil
    std::vector<std::vector<Rational>> m;
    for (const auto& c : F.comps) m.push_back({c.a, c.b, c.c});
    // row reduce, take the two pivot rows
    std::vector<std::vector<Rational>> basis;
    {
      auto rows = m;
      size_t rank = 0;
      for (size_t col = 0; col < 3 && rank < rows.size(); ++col) {
        size_t p = rank;
        while (p < rows.size() && rows[p][col].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        Rational inv = rows[rank][col].inverse();
        for (auto& v : rows[rank]) v *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
          if (i == rank || rows[i][col].is_zero()) continue;
          Rational f = rows[i][col];
          for (size_t j = 0; j < 3; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
      }
      basis.assign(rows.begin(), rows.begin() + rank);
    }
    const auto& q1 = basis[0];
    const auto& q2 = basis[1];
    // disc(l*q1 + m*q2) as a quadratic form in (l, m)
    Rational p2 = q1[1] * q1[1] - Rational(4) * q1[0] * q1[2];
    Rational p1 = Rational(2) * q1[1] * q2[1] - Rational(4) * q1[0] * q2[2] -
                  Rational(4) * q2[0] * q1[2];
    Rational p0 = q2[1] * q2[1] - Rational(4) * q2[0] * q2[2];
    Rational disc = p1 * p1 - Rational(4) * p2 * p0;
    if (disc.sign() > 0) sig.pencil = PencilSignature::TwoRealDegenerate;
    else if (disc.sign() < 0) sig.pencil = PencilSignature::NoneRealDegenerate;
    else sig.pencil = PencilSignature::SharedFactor;
  }
  return sig;
}

}  // namespace qo
