#include <doctest.h>

#include "qo/classifier.hpp"
#include "qo/normalizer.hpp"
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

double check_witness(const QuadMap& F, const WitnessReport& rep, LabelId id) {
  const QuadMap& nf = NF(id);
  if (rep.exact) {
    REQUIRE(rep.exact_pair.has_value());
    CHECK(act(*rep.exact_pair, nf) == F);
    return 0.0;
  }
  REQUIRE(rep.approx_pair.has_value());
  return coeff_distance(act_complex(*rep.approx_pair, to_complex(nf)),
                        to_complex(F));
}

}  // namespace

TEST_CASE("theta normalization") {
  // fixed points of the pipeline
  auto t4 = theta(NF(LabelId::F4));
  CHECK(t4.map == NF(LabelId::F4));
  auto t1 = theta(NF(LabelId::F1));
  CHECK(t1.map == NF(LabelId::F1));

  // a generic member of the two-point orbit lands on the discriminant curve
  Rng rng(83);
  for (int i = 0; i < 5; ++i) {
    QuadMap G = act(random_pair(rng, 3), NF(LabelId::F2));
    if (det3(phi1(G)).is_zero()) continue;
    ThetaResult t = theta(G);
    CHECK(act(t.witness, G) == t.map);
    auto params = omega1_params(t.map);
    REQUIRE(params.has_value());
    if ((params->e1 * params->d2).is_zero()) continue;
    auto t1r = theta1(t.map);
    Complex a = t1r.a, b = t1r.b;
    // 2a^3 + a^2 b^2 + 9ab/2 + 2b^3 - 27/16 = 0 within roundoff
    Complex v = 2.0 * a * a * a + a * a * b * b + 4.5 * a * b + 2.0 * b * b * b -
                Complex(27.0 / 16);
    CHECK(std::abs(v) < 1e-8);
  }
  CHECK_THROWS_AS((void)theta(NF(LabelId::F5)), std::domain_error);  // det phi1 = 0
}

TEST_CASE("theta1 examples") {
  auto r = theta1(NF(LabelId::F1));
  CHECK(std::abs(r.a) < 1e-12);
  CHECK(std::abs(r.b) < 1e-12);
  CHECK(r.residual < 1e-12);

  // an Omega1 element equivalent to the triple-point class: (a, b) lands at
  // -(3/2)(eps, eps^2) for a cube root eps
  Poly x = px(), y = py();
  QuadMap m3 = QuadMap::from_polys(
      Field::C, {x * x + y, y * y + x, x * y - pc(3, 2) * x - pc(3, 2) * y});
  ThetaResult shifted = theta_shift(m3, Rational(1), Rational(0));
  auto params = omega1_params(shifted.map);
  REQUIRE(params.has_value());
  REQUIRE(!(params->e1 * params->d2).is_zero());
  auto r3 = theta1(shifted.map);
  const Complex omega(-0.5, std::sqrt(3.0) / 2);
  bool matches = false;
  for (const Complex& eps : {Complex(1.0), omega, omega * omega}) {
    if (std::abs(r3.a + 1.5 * eps) < 1e-9 &&
        std::abs(r3.b + 1.5 * eps * eps) < 1e-9)
      matches = true;
  }
  CHECK(matches);

  CHECK_THROWS_AS((void)theta1(NF(LabelId::F3)), std::domain_error);  // e1 = 0
}

TEST_CASE("theta_shift") {
  // escape from e1 = 0 for the triple-point form
  auto t = theta_shift(NF(LabelId::F3), Rational(1), Rational(0));
  auto p = omega1_params(t.map);
  REQUIRE(p.has_value());
  CHECK(p->e1 == Rational(1));
  // identity shift
  auto t0 = theta_shift(NF(LabelId::F1), Rational(0), Rational(0));
  CHECK(t0.map == NF(LabelId::F1));
  CHECK_THROWS_AS((void)theta_shift(NF(LabelId::F1), Rational(1), Rational(1)),
                  std::domain_error);
  // classification is stable through the pipeline
  Rng rng(89);
  for (int i = 0; i < 4; ++i) {
    QuadMap G = act(random_pair(rng, 3), NF(LabelId::F1));
    if (det3(phi1(G)).is_zero()) continue;
    CHECK(classify(theta(G).map).label.base == LabelId::F1);
  }
}

TEST_CASE("witnesses: exact rational routes") {
  Rng rng(97);
  for (LabelId id : {LabelId::F2, LabelId::F3, LabelId::F4, LabelId::F5,
                     LabelId::F6, LabelId::F8, LabelId::F9, LabelId::F17,
                     LabelId::F18, LabelId::F19, LabelId::F20, LabelId::F21,
                     LabelId::F22, LabelId::F23, LabelId::F24, LabelId::F25,
                     LabelId::F26, LabelId::F27, LabelId::F28, LabelId::F29}) {
    INFO("label ", label_name(id));
    for (int i = 0; i < 4; ++i) {
      QuadMap G = act(random_pair(rng, 3), NF(id));
      auto rep = find_witness(G, OrbitLabel{id, 3, Field::C});
      CHECK(rep.exact);
      CHECK(check_witness(G, rep, id) == 0.0);
    }
  }
}

TEST_CASE("witnesses: the paper-style exact instance and the identity") {
  Poly x = px(), y = py();
  QuadMap m3 = QuadMap::from_polys(
      Field::C, {x * x + y, y * y + x, x * y - pc(3, 2) * x - pc(3, 2) * y});
  auto rep = find_witness(m3, OrbitLabel{LabelId::F3, 3, Field::C});
  CHECK(rep.exact);
  CHECK(act(*rep.exact_pair, NF(LabelId::F3)) == m3);

  auto repid = find_witness(NF(LabelId::F1), OrbitLabel{LabelId::F1, 3, Field::C});
  CHECK(repid.exact);
  CHECK(repid.route == "identity");

  // constant maps form the orbit of the zero map
  QuadMap c = QuadMap::from_polys(Field::C, {pc(5), pc(-2, 3), pc(0)});
  auto repc = find_witness(c, OrbitLabel{LabelId::F29, 3, Field::C});
  CHECK(repc.exact);
}

TEST_CASE("witnesses: approximate routes within tolerance") {
  Rng rng(101);
  for (int i = 0; i < 6; ++i) {
    QuadMap G = act(random_pair(rng, 3), NF(LabelId::F1));
    auto rep = find_witness(G, OrbitLabel{LabelId::F1, 3, Field::C});
    CHECK(!rep.exact);
    CHECK(rep.residual <= 1e-8);
    CHECK(check_witness(G, rep, LabelId::F1) <= 1e-8);
  }
  // a definite form needs the complex route
  Poly x = px(), y = py();
  QuadMap m = QuadMap::from_polys(Field::C, {x * x + y * y, x, y});
  auto rep  = find_witness(m, OrbitLabel{LabelId::F17, 3, Field::C});
  CHECK(!rep.exact);
  CHECK(rep.residual <= 1e-8);
}

TEST_CASE("witnesses: unsupported labels fail loudly") {
  CHECK_THROWS_AS(
      (void)find_witness(NF(LabelId::F7), OrbitLabel{LabelId::F7, 3, Field::C}),
      UnsupportedLabelError);
  CHECK_THROWS_AS(
      (void)find_witness(NF(LabelId::G2), OrbitLabel{LabelId::G2, 4, Field::C}),
      UnsupportedLabelError);
  CHECK_THROWS_AS(
      (void)find_witness(NF(LabelId::F1p),
                         OrbitLabel{LabelId::F1p, 3, Field::R}),
      UnsupportedLabelError);
}
