// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Exit code 0 only if every criterion holds.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "qo/classifier.hpp"
#include "qo/invariants.hpp"
#include "qo/normalizer.hpp"
#include "qo/orbitdb.hpp"
#include "qo/verify.hpp"

using namespace qo;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(),
              detail.empty() || pass ? "" : ("  [" + detail + "]").c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {
    return lo + (long)(next() % (uint64_t)(hi - lo + 1));
  }
};

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

QuadMap random_map(Rng& rng, int n) {
  std::vector<QuadComponent> cs;
  for (int i = 0; i < n; ++i)
    cs.push_back(QuadComponent{Rational(rng.range(-3, 3)), Rational(rng.range(-3, 3)),
                               Rational(rng.range(-3, 3)), Rational(rng.range(-3, 3)),
                               Rational(rng.range(-3, 3)), Rational(rng.range(-3, 3))});
  return QuadMap::make(Field::C, std::move(cs));
}

const QuadMap& NF(LabelId id) { return lookup(id).normal_form; }

QuadMap embedded(LabelId id, int n) {
  QuadMap F = NF(id);
  F.n = n;
  F.comps.resize(n);
  return F;
}

bool proportional(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.primitive_part() == b.primitive_part();
}

LabelId fi(int i) { return *label_from_name("F" + std::to_string(i)); }

void criterion_1() {
  const int expected[29] = {18, 17, 16, 14, 17, 16, 15, 16, 15, 14,
                            15, 14, 13, 14, 13, 12, 14, 13, 13, 12,
                            12, 11, 10, 9,  10, 9,  8,  7,  3};
  bool pass = true;
  std::string detail;
  for (int i = 1; i <= 29; ++i) {
    int dim = orbit_dimension(NF(fi(i)));
    if (dim != expected[i - 1]) {
      pass = false;
      detail = "F" + std::to_string(i) + ": " + std::to_string(dim);
    }
  }
  report(1, "orbit dimensions of the 29 three-component normal forms", pass, detail);
}

void criterion_2() {
  bool pass = true;
  std::string detail;
  const std::pair<LabelId, int> gs[] = {
      {LabelId::G1, 24}, {LabelId::G2, 23}, {LabelId::G3, 22}, {LabelId::G4, 21}};
  for (auto [id, want] : gs) {
    if (orbit_dimension(NF(id)) != want) {
      pass = false;
      detail = label_name(id);
    }
  }
  for (int i = 1; i <= 29; ++i) {
    int want = expected_orbit_dim(fi(i), 4);
    if (orbit_dimension(embedded(fi(i), 4)) != want) {
      pass = false;
      detail = "embedded F" + std::to_string(i);
    }
  }
  report(2, "orbit dimensions in four coordinates", pass, detail);
}

void criterion_3() {
  bool pass = true;
  std::string detail;
  for (const auto& rec : orbit_records()) {
    int prev = orbit_dimension(rec.normal_form);
    for (int n = rec.n_min + 1; n <= 6; ++n) {
      int cur = orbit_dimension(embedded(rec.label, n));
      if (cur - prev != 1 + rec.dim_a) {
        pass = false;
        detail = label_name(rec.label) + " at n=" + std::to_string(n);
      }
      prev = cur;
    }
  }
  report(3, "embedding increments dim O by 1 + dim_a per coordinate", pass, detail);
}

void criterion_4() {
  bool pass = true;
  std::string detail;
  // every printed degree, plus the infinite fibers
  const std::pair<int, long> printed[] = {
      {1, 1}, {2, 1}, {3, 1}, {4, 2},  {5, 1},  {6, 1},  {7, 4},  {8, 1},
      {9, 1}, {10, 3}, {11, 2}, {12, 4}, {13, 4}, {14, 1}, {15, 2}, {16, 2},
      {17, 1}, {18, 1}, {19, 2}, {20, 1}, {21, 2}, {22, 1}, {24, 1}};
  for (auto [i, want] : printed) {
    auto mu = topological_degree(NF(fi(i)));
    if (!mu.finite || mu.value != want) {
      pass = false;
      detail = "F" + std::to_string(i);
    }
  }
  for (auto id : {LabelId::G1, LabelId::G2, LabelId::G3, LabelId::G4, LabelId::G0}) {
    auto mu = topological_degree(NF(id));
    if (!mu.is_one()) {
      pass = false;
      detail = label_name(id);
    }
  }
  for (int i = 25; i <= 29; ++i) {
    if (topological_degree(NF(fi(i))).finite) {
      pass = false;
      detail = "F" + std::to_string(i) + " should be infinite";
    }
  }
  report(4, "topological degrees (seven-sample protocol)", pass, detail);
}

void criterion_5() {
  bool pass = true;
  std::string detail;
  Poly x = Poly::variable(VX), y = Poly::variable(VY);
  auto C1 = Poly::constant(1);
  struct Row {
    LabelId id;
    Poly expect;
  };
  const Row rows[] = {
      {LabelId::F1, x * x * x + y * y * y + Rational(3) * (x * y) - C1},
      {LabelId::F2, (x - y) * (x - y) * (x + y - C1)},
      {LabelId::F3, x * x * x},
      {LabelId::F5, x + y},
      {LabelId::F8, y},
      {LabelId::G2, x},
  };
  for (const auto& r : rows) {
    auto si = self_intersection(NF(r.id));
    if (si.empty || !proportional(si.eliminant, r.expect)) {
      pass = false;
      detail = label_name(r.id);
    }
  }
  // multiplicities of the two-point case, exactly
  {
    auto si = self_intersection(NF(LabelId::F2));
    bool dbl = false, smp = false;
    for (const auto& f : si.factors) {
      if (f.multiplicity == 2 && proportional(f.factor, x - y)) dbl = true;
      if (f.multiplicity == 1 && proportional(f.factor, x + y - C1)) smp = true;
    }
    if (!dbl || !smp) {
      pass = false;
      detail = "F2 multiplicities";
    }
  }
  // the degree-two member via the degenerate-fiber locus
  auto fold = fold_locus(NF(LabelId::F11));
  if (!fold || !proportional(*fold, x)) {
    pass = false;
    detail = "F11";
  }
  report(5, "self-intersection polynomials with exact multiplicities", pass, detail);
}

void criterion_6() {
  bool pass = true;
  std::string detail;
  auto expect_partition = [&](LabelId id, std::vector<int> part) {
    auto crit = critical_scheme(NF(id));
    if (crit.kind != CritKind::Finite || crit.multiplicity_partition() != part) {
      pass = false;
      detail = label_name(id);
    }
  };
  {
    auto crit = critical_scheme(NF(LabelId::F1));
    bool has_half = false;
    for (const auto& p : crit.rational_points)
      if (p.x == Rational(1, 2) && p.y == Rational(1, 2) && p.mult == 1)
        has_half = true;
    if (crit.kind != CritKind::Finite ||
        crit.multiplicity_partition() != std::vector<int>{1, 1, 1} || !has_half) {
      pass = false;
      detail = "F1";
    }
  }
  expect_partition(LabelId::F2, {1, 2});
  expect_partition(LabelId::F3, {3});
  expect_partition(LabelId::F4, {3});
  for (auto id : {LabelId::F6, LabelId::F9, LabelId::F17, LabelId::F18,
                  LabelId::F22, LabelId::F24}) {
    if (critical_scheme(NF(id)).kind != CritKind::Empty) {
      pass = false;
      detail = label_name(id);
    }
  }
  for (int i : {23, 25, 26, 27, 28, 29}) {
    if (critical_scheme(NF(fi(i))).kind != CritKind::Plane) {
      pass = false;
      detail = "F" + std::to_string(i);
    }
  }
  report(6, "critical schemes", pass, detail);
}

void criterion_7() {
  bool pass = true;
  std::string detail;
  struct Case {
    const char* expr_label;
    LabelId primed;
  };
  // each primed representative, then its unprimed twin
  const std::pair<LabelId, LabelId> pairs[] = {
      {LabelId::F1p, LabelId::F1},   {LabelId::F7p, LabelId::F7},
      {LabelId::F13p, LabelId::F13}, {LabelId::F17p, LabelId::F17},
      {LabelId::F19p, LabelId::F19}, {LabelId::F25p, LabelId::F25},
      {LabelId::G3p, LabelId::G3}};
  for (auto [primed, plain] : pairs) {
    QuadMap rep = NF(primed);  // already field R
    auto got = classify(rep);
    if (!(got.label.base == primed)) {
      pass = false;
      detail = label_name(primed);
    }
    QuadMap twin = NF(plain);
    twin.field = Field::R;
    auto got2 = classify(twin);
    if (!(got2.label.base == plain)) {
      pass = false;
      detail = label_name(plain) + std::string(" twin");
    }
  }
  report(7, "the seven real splits resolve on the paper representatives", pass,
         detail);
}

void criterion_8() {
  auto results = verify_families(0);
  bool pass = results.size() >= 12;
  std::string detail;
  for (const auto& r : results)
    if (!r.pass) {
      pass = false;
      detail = r.name + ": " + r.detail;
    }
  report(8, "degeneration families verify at t in {1, 1/2, 1/3} and t = 0", pass,
         detail);
}

void criterion_9() {
  bool pass = true;
  std::string detail;
  Rng rng(2400);
  const LabelId panel[12] = {LabelId::F1,  LabelId::F2,  LabelId::F3,
                             LabelId::F4,  LabelId::F5,  LabelId::F7,
                             LabelId::F8,  LabelId::F11, LabelId::F14,
                             LabelId::F17, LabelId::F23, LabelId::G2};
  int checked = 0;
  for (int trial = 0; trial < 200 && pass; ++trial) {
    for (const auto& id : panel) {
      const QuadMap& F = NF(id);
      auto pair = random_pair(rng, F.n);
      auto got = classify(act(pair, F));
      ++checked;
      if (!(got.label.base == id)) {
        pass = false;
        detail = label_name(id) + std::string(" trial ") + std::to_string(trial);
        break;
      }
    }
  }
  pass = pass && checked == 2400;
  report(9, "equivariance: 200 pairs x 12 normal forms classified unchanged",
         pass, detail);
}

void criterion_10() {
  Rng rng(500);
  int f1 = 0, g0 = 0;
  for (int i = 0; i < 500; ++i)
    if (classify(random_map(rng, 3)).label.base == LabelId::F1) ++f1;
  for (int i = 0; i < 500; ++i)
    if (classify(random_map(rng, 5)).label.base == LabelId::G0) ++g0;
  std::ostringstream os;
  os << "F1: " << f1 << "/500, G0: " << g0 << "/500";
  report(10, "genericity of the dense orbits (" + os.str() + ")",
         f1 >= 450 && g0 >= 450);
}

void criterion_11() {
  bool pass = true;
  std::string detail;
  for (const auto& r : identity_selftests())
    if (!r.pass) {
      pass = false;
      detail = r.name;
    }
  Rng rng(1111);
  for (LabelId id : {LabelId::F1, LabelId::F2, LabelId::F3}) {
    for (int i = 0; i < 50; ++i) {
      QuadMap G = act(random_pair(rng, 3), NF(id));
      try {
        auto rep = find_witness(G, OrbitLabel{id, 3, Field::C}, 1e-8);
        double res = rep.residual;
        if (rep.exact) {
          res = act(*rep.exact_pair, NF(id)) == G ? 0.0 : 1.0;
        } else {
          res = coeff_distance(act_complex(*rep.approx_pair, to_complex(NF(id))),
                               to_complex(G));
        }
        if (res > 1e-8) {
          pass = false;
          detail = label_name(id) + std::string(" residual");
        }
      } catch (const std::exception& e) {
        pass = false;
        detail = label_name(id) + std::string(": ") + e.what();
      }
      if (!pass) break;
    }
    if (!pass) break;
  }
  report(11, "identity self-tests and 150 orbit-member witnesses", pass, detail);
}

void criterion_12() {
  bool pass = true;
  std::string detail;
  for (const auto& rec : orbit_records()) {
    if (!(rec.mu.cls == MuClass::Finite && rec.mu.value == 1)) continue;
    const QuadMap& F = rec.normal_form;
    auto si = self_intersection(F);
    auto mid = self_intersection_midpoint(F);
    bool ok;
    if (si.empty) {
      ok = mid.kind == MidpointSI::Kind::Empty;
    } else {
      ok = mid.kind == MidpointSI::Kind::Curve &&
           proportional(plane_squarefree_part(si.eliminant), mid.curve);
    }
    if (!ok) {
      pass = false;
      detail = label_name(rec.label);
    }
  }
  report(12, "colon-ideal and midpoint-kernel methods agree at radical level",
         pass, detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                 .count();
  std::printf("%d of 12 criteria passed in %.1fs\n", 12 - failures, s);
  return failures == 0 ? 0 : 1;
}
