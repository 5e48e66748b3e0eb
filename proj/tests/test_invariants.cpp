#include <doctest.h>

#include "qo/invariants.hpp"
#include "qo/orbitdb.hpp"
#include "qo_testutil.hpp"

using namespace qo;
using namespace qo::testutil;

namespace {

AffinePair random_pair(Rng& rng, int n) {
  while (true) {
    AffineMap L, R;
    L.A.assign(n, std::vector<Rational>(n));
    L.t.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) {
      L.t[i] = Rational(rng.range(-2, 2));
      for (int j = 0; j < n; ++j) L.A[i][j] = Rational(rng.range(-3, 3));
    }
    R.A = {{Rational(rng.range(-3, 3)), Rational(rng.range(-3, 3))},
           {Rational(rng.range(-3, 3)), Rational(rng.range(-3, 3))}};
    R.t = {Rational(rng.range(-2, 2)), Rational(rng.range(-2, 2))};
    if (L.invertible() && R.invertible()) return AffinePair{L, R};
  }
}

const QuadMap& NF(LabelId id) { return lookup(id).normal_form; }

}  // namespace

TEST_CASE("critical schemes of the normal forms") {
  auto c1 = critical_scheme(NF(LabelId::F1));
  CHECK(c1.kind == CritKind::Finite);
  CHECK(c1.total_multiplicity == 3);
  REQUIRE(c1.rational_points.size() == 1);
  CHECK(c1.rational_points[0].x == Rational(1, 2));
  CHECK(c1.rational_points[0].y == Rational(1, 2));
  CHECK(c1.rational_points[0].mult == 1);
  CHECK(c1.irrational_count == 2);
  CHECK(c1.irrational_mult_each == 1);

  auto c2 = critical_scheme(NF(LabelId::F2));
  CHECK(c2.multiplicity_partition() == std::vector<int>{1, 2});

  auto c3 = critical_scheme(NF(LabelId::F3));
  CHECK(c3.kind == CritKind::Finite);
  REQUIRE(c3.rational_points.size() == 1);
  CHECK(c3.rational_points[0].mult == 3);

  CHECK(critical_scheme(NF(LabelId::F23)).kind == CritKind::Plane);
  CHECK(critical_scheme(NF(LabelId::F6)).kind == CritKind::Empty);
  auto c7 = critical_scheme(NF(LabelId::F7));
  CHECK(c7.kind == CritKind::Curve);
  CHECK(proportional(c7.curve_poly, pc(4) * px() * py() - pc(1)));
  auto c16 = critical_scheme(NF(LabelId::F16));
  CHECK(proportional(c16.curve_poly, px() * px()));  // scheme keeps the square
}

TEST_CASE("topological degree examples") {
  CHECK(topological_degree(NF(LabelId::F7)) == DegreeReport{true, 4});
  CHECK(topological_degree(NF(LabelId::F10)) == DegreeReport{true, 3});
  CHECK(topological_degree(NF(LabelId::F25)).finite == false);
  CHECK(topological_degree(NF(LabelId::F1)) == DegreeReport{true, 1});
  CHECK(topological_degree(NF(LabelId::G2)) == DegreeReport{true, 1});
  // seven-sample protocol is deterministic per seed
  CHECK(topological_degree(NF(LabelId::F13), 7) == DegreeReport{true, 4});
  CHECK(topological_degree(NF(LabelId::F13), 99) == DegreeReport{true, 4});
}

TEST_CASE("self-intersection reports") {
  Poly x = px(), y = py();
  auto s1 = self_intersection(NF(LabelId::F1));
  CHECK(!s1.empty);
  CHECK(proportional(s1.eliminant, x * x * x + y * y * y + pc(3) * x * y - pc(1)));
  REQUIRE(s1.factors.size() == 2);
  CHECK(proportional(s1.factors[0].factor * s1.factors[1].factor, s1.eliminant));

  auto s2 = self_intersection(NF(LabelId::F2));
  Poly expect2 = (x - y) * (x - y) * (x + y - pc(1));
  CHECK(proportional(s2.eliminant, expect2));
  bool has_double = false;
  for (const auto& f : s2.factors)
    if (f.multiplicity == 2 && proportional(f.factor, x - y)) has_double = true;
  CHECK(has_double);

  CHECK(self_intersection(NF(LabelId::G1)).empty);
  CHECK_THROWS_AS((void)self_intersection(NF(LabelId::F4)), std::domain_error);

  // fold locus of the degree-two map (x^2, y^2, y)
  auto fold = fold_locus(NF(LabelId::F11));
  REQUIRE(fold.has_value());
  CHECK(proportional(*fold, x));
}

TEST_CASE("midpoint method agrees with the colon ideal at radical level") {
  Poly x = px(), y = py();
  auto m1 = self_intersection_midpoint(NF(LabelId::F1));
  CHECK(m1.kind == MidpointSI::Kind::Curve);
  // the kernel line through (1/2, 1/2) is x + y = 1 and divides the cubic
  CHECK(proportional(m1.curve,
                     (x + y - pc(1)) * (x * x - x * y + y * y + x + y + pc(1))));

  auto m5 = self_intersection_midpoint(NF(LabelId::F5));
  CHECK(proportional(m5.curve, x + y));
  auto m8 = self_intersection_midpoint(NF(LabelId::F8));
  CHECK(proportional(m8.curve, y));

  for (LabelId id : {LabelId::F1, LabelId::F2, LabelId::F3, LabelId::F5,
                     LabelId::F8, LabelId::F14, LabelId::F20, LabelId::F17,
                     LabelId::F6, LabelId::F9, LabelId::F18, LabelId::F22,
                     LabelId::F24, LabelId::G1, LabelId::G2, LabelId::G3,
                     LabelId::G4, LabelId::G0}) {
    auto si = self_intersection(NF(id));
    auto mid = self_intersection_midpoint(NF(id));
    if (si.empty) {
      CHECK(mid.kind == MidpointSI::Kind::Empty);
    } else {
      REQUIRE(mid.kind == MidpointSI::Kind::Curve);
      CHECK(proportional(plane_squarefree_part(si.eliminant), mid.curve));
    }
  }
}

TEST_CASE("midpoint identity holds exactly") {
  Rng rng(47);
  const QuadMap& F = NF(LabelId::F1);
  for (int i = 0; i < 30; ++i) {
    Rational ux = rng.rational(8, 5), uy = rng.rational(8, 5);
    Rational vx = rng.rational(8, 5), vy = rng.rational(8, 5);
    auto lhs_plus = F.eval(ux + vx / 2, uy + vy / 2);
    auto lhs_minus = F.eval(ux - vx / 2, uy - vy / 2);
    for (int k = 0; k < F.n; ++k) {
      Poly fk = F.comps[k].to_poly();
      Rational dfx = fk.derivative(VX).eval2(ux, uy);
      Rational dfy = fk.derivative(VY).eval2(ux, uy);
      CHECK(lhs_plus[k] - lhs_minus[k] == dfx * vx + dfy * vy);
    }
  }
}

TEST_CASE("orbit dimensions") {
  CHECK(orbit_dimension(NF(LabelId::F1)) == 18);
  CHECK(orbit_dimension(NF(LabelId::F16)) == 12);
  // F1 embedded in five coordinates: 4*5 + 6
  QuadMap embedded = NF(LabelId::F1);
  embedded.n = 5;
  embedded.comps.resize(5);
  CHECK(orbit_dimension(embedded) == 26);
}

TEST_CASE("embedding increments orbit dimension by 1 + dim_a") {
  for (const auto& rec : orbit_records()) {
    QuadMap F = rec.normal_form;
    int prev = orbit_dimension(F);
    CHECK(prev == rec.orbit_dim_min);
    for (int n = rec.n_min + 1; n <= 6; ++n) {
      F.n = n;
      F.comps.resize(n);
      int cur = orbit_dimension(F);
      CHECK(cur - prev == 1 + rec.dim_a);
      prev = cur;
    }
  }
}

TEST_CASE("invariance under the group action") {
  Rng rng(53);
  for (LabelId id : {LabelId::F1, LabelId::F2, LabelId::F7, LabelId::F11,
                     LabelId::F14, LabelId::F23}) {
    const QuadMap& F = NF(id);
    auto crit0 = critical_scheme(F);
    auto mu0 = topological_degree(F);
    int dim0 = orbit_dimension(F);
    for (int i = 0; i < 6; ++i) {
      auto pair = random_pair(rng, F.n);
      QuadMap G = act(pair, F);
      auto crit = critical_scheme(G);
      CHECK(crit.kind == crit0.kind);
      if (crit.kind == CritKind::Finite)
        CHECK(crit.multiplicity_partition() == crit0.multiplicity_partition());
      CHECK(topological_degree(G) == mu0);
      CHECK(orbit_dimension(G) == dim0);
      if (mu0.is_one()) {
        // SI transforms by R^{-1}: substitute R into the image SI
        auto siF = self_intersection(F);
        auto siG = self_intersection(G);
        if (!siF.empty) {
          Poly rx = Poly::constant(pair.R.t[0]) + pair.R.A[0][0] * px() +
                    pair.R.A[0][1] * py();
          Poly ry = Poly::constant(pair.R.t[1]) + pair.R.A[1][0] * px() +
                    pair.R.A[1][1] * py();
          Poly pulled = siF.eliminant.substitute(VX, rx).substitute(VY, ry);
          CHECK(proportional(pulled, siG.eliminant));
        }
      }
    }
  }
}

TEST_CASE("real signatures") {
  auto sig1 = real_signatures(NF(LabelId::F1p));
  CHECK(sig1.real_critical_count == 3);
  QuadMap f1r = NF(LabelId::F1);
  f1r.field = Field::R;
  CHECK(real_signatures(f1r).real_critical_count == 1);

  QuadMap f7r = NF(LabelId::F7);
  f7r.field = Field::R;
  CHECK(real_signatures(f7r).critical_conic == ConicType::Hyperbola);
  CHECK(real_signatures(NF(LabelId::F7p)).critical_conic == ConicType::Ellipse);
  CHECK(real_signatures(NF(LabelId::F13p)).critical_conic ==
        ConicType::ComplexLinePair);

  QuadMap f25r = NF(LabelId::F25);
  f25r.field = Field::R;
  CHECK(real_signatures(f25r).form_type == BinaryFormType::RealProduct);
  CHECK(real_signatures(NF(LabelId::F25p)).form_type == BinaryFormType::Irreducible);

  QuadMap g3r = NF(LabelId::G3);
  g3r.field = Field::R;
  CHECK(real_signatures(g3r).pencil == PencilSignature::TwoRealDegenerate);
  CHECK(real_signatures(NF(LabelId::G3p)).pencil ==
        PencilSignature::NoneRealDegenerate);
  QuadMap g4r = NF(LabelId::G4);
  g4r.field = Field::R;
  CHECK(real_signatures(g4r).pencil == PencilSignature::SharedFactor);

  CHECK_THROWS_AS((void)real_signatures(NF(LabelId::F1)), std::domain_error);
}

TEST_CASE("conic classification") {
  Poly x = px(), y = py();
  CHECK(classify_conic(pc(4) * x * y - pc(1)) == ConicType::Hyperbola);
  CHECK(classify_conic(pc(4) * x * x + pc(4) * y * y - pc(1)) == ConicType::Ellipse);
  CHECK(classify_conic(x * x + y * y + pc(1)) == ConicType::EmptyEllipse);
  CHECK(classify_conic(pc(2) * x * x - y) == ConicType::Parabola);
  CHECK(classify_conic(x * y) == ConicType::RealLinePair);
  CHECK(classify_conic(pc(2) * x * x - x) == ConicType::RealLinePair);
  CHECK(classify_conic(x * x + y * y) == ConicType::ComplexLinePair);
  CHECK(classify_conic(x * x + pc(1)) == ConicType::ComplexLinePair);
  CHECK(classify_conic(x * x) == ConicType::DoubleLine);
  CHECK(classify_conic(x - y) == ConicType::Line);
}
