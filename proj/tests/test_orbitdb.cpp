#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "qo/classifier.hpp"
#include "qo/invariants.hpp"
#include "qo/orbitdb.hpp"
#include "qo/verify.hpp"
#include "qo_testutil.hpp"

using namespace qo;
using namespace qo::testutil;

TEST_CASE("lookup") {
  const auto& f12 = lookup(LabelId::F12);
  CHECK(f12.mu.value == 4);
  CHECK(f12.orbit_dim_min == 14);
  CHECK(f12.crit.kind == CritKind::Curve);
  CHECK(proportional(f12.crit.curve, px() * py()));

  const auto& g2 = lookup(LabelId::G2);
  CHECK(g2.orbit_dim_min == 23);
  CHECK(g2.si.kind == SIDescriptor::Kind::Curve);
  CHECK(proportional(g2.si.eliminant, px()));

  CHECK(lookup(LabelId::F29).orbit_dim_min == 3);
  CHECK(label_from_name("F13'") == LabelId::F13p);
  CHECK(label_name(LabelId::G3p) == "G3'");
  CHECK(!label_from_name("F30"));
}

TEST_CASE("orbit dimension table against the enumeration") {
  const int expected[29] = {18, 17, 16, 14, 17, 16, 15, 16, 15, 14,
                            15, 14, 13, 14, 13, 12, 14, 13, 13, 12,
                            12, 11, 10, 9,  10, 9,  8,  7,  3};
  for (int i = 0; i < 29; ++i) {
    auto id = *label_from_name("F" + std::to_string(i + 1));
    CHECK(lookup(id).orbit_dim_min == expected[i]);
  }
  CHECK(lookup(LabelId::G1).orbit_dim_min == 24);
  CHECK(lookup(LabelId::G2).orbit_dim_min == 23);
  CHECK(lookup(LabelId::G3).orbit_dim_min == 22);
  CHECK(lookup(LabelId::G4).orbit_dim_min == 21);
  CHECK(lookup(LabelId::G0).orbit_dim_min == 30);
}

TEST_CASE("closure poset") {
  CHECK(is_in_closure(LabelId::G2, LabelId::G3));
  CHECK(!is_in_closure(LabelId::G4, LabelId::F4));
  CHECK(is_in_closure(LabelId::F1, LabelId::F1));
  CHECK(is_in_closure(LabelId::F1, LabelId::F29));
  CHECK(is_in_closure(LabelId::G0, LabelId::F29));
  // non-containments stated alongside the edge data
  CHECK(!is_in_closure(LabelId::G4, LabelId::F11));
  CHECK(!is_in_closure(LabelId::G4, LabelId::F7));
  CHECK(!is_in_closure(LabelId::G4, LabelId::F12));
  CHECK(!is_in_closure(LabelId::F9, LabelId::F12));
  CHECK(!is_in_closure(LabelId::F9, LabelId::F13));
  CHECK(!is_in_closure(LabelId::F14, LabelId::F13));
  CHECK(!is_in_closure(LabelId::F3, LabelId::F11));
  CHECK(!is_in_closure(LabelId::F11, LabelId::F17));
  CHECK(!is_in_closure(LabelId::F11, LabelId::F10));
  CHECK(!is_in_closure(LabelId::F4, LabelId::F20));
  CHECK(!is_in_closure(LabelId::F4, LabelId::F15));
  CHECK(!is_in_closure(LabelId::F4, LabelId::F19));
  CHECK(!is_in_closure(LabelId::F14, LabelId::F19));
  CHECK_THROWS(is_in_closure(LabelId::F1p, LabelId::F1));
}

TEST_CASE("poset sanity: dimensions decrease along edges, so it is a DAG") {
  for (const auto& e : poset_edges()) {
    const auto& up = lookup(e.upper);
    const auto& low = lookup(e.lower);
    // compare in a common ambient dimension (the larger of the two minima)
    int n = std::max(up.n_min, low.n_min);
    CHECK(expected_orbit_dim(e.upper, n) > expected_orbit_dim(e.lower, n));
  }
  // antisymmetry follows; verify on a sample anyway
  for (const auto& a : {LabelId::F5, LabelId::F13, LabelId::G3})
    for (const auto& b : {LabelId::F8, LabelId::F16, LabelId::F24})
      CHECK(!(is_in_closure(a, b) && is_in_closure(b, a)));
}

TEST_CASE("every family endpoint pair is a stored closure edge") {
  for (const auto& fam : degeneration_families()) {
    bool found = false;
    for (const auto& e : poset_edges())
      if (e.upper == fam.upper && e.lower == fam.lower) found = true;
    CHECK(found);
  }
  CHECK(degeneration_families().size() >= 12);
}

TEST_CASE("master regression: stored records agree with recomputation") {
  for (const auto& rec : orbit_records()) {
    INFO("label ", label_name(rec.label));
    const QuadMap& F = rec.normal_form;
    CHECK(dim_affine(F) == rec.dim_a);
    CHECK(dim_quadratic(F) == rec.dim_q);

    auto mu = topological_degree(F);
    if (rec.mu.cls == MuClass::Finite) {
      CHECK(mu.finite);
      CHECK(mu.value == rec.mu.value);
    } else {
      CHECK(!mu.finite);
    }

    auto crit = critical_scheme(F);
    CHECK(crit.kind == rec.crit.kind);
    if (crit.kind == CritKind::Finite)
      CHECK(crit.multiplicity_partition() == rec.crit.partition);
    if (crit.kind == CritKind::Curve)
      CHECK(proportional(crit.curve_poly, rec.crit.curve));

    switch (rec.si.kind) {
      case SIDescriptor::Kind::Empty:
        CHECK(self_intersection(F).empty);
        break;
      case SIDescriptor::Kind::Curve: {
        auto si = self_intersection(F);
        REQUIRE(!si.empty);
        CHECK(proportional(si.eliminant, rec.si.eliminant));
        // factor multisets agree up to scalar
        auto key = [](const Poly& p, int m) {
          return p.primitive_part().str() + "^" + std::to_string(m);
        };
        std::multiset<std::string> got, want;
        for (const auto& f : si.factors) got.insert(key(f.factor, f.multiplicity));
        for (const auto& [f, m] : rec.si.factors) want.insert(key(f, m));
        CHECK(got == want);
        break;
      }
      case SIDescriptor::Kind::Fold: {
        auto fold = fold_locus(F);
        REQUIRE(fold.has_value());
        CHECK(proportional(*fold, rec.si.eliminant));
        break;
      }
      case SIDescriptor::Kind::None:
        break;
    }

    CHECK(orbit_dimension(F) == rec.orbit_dim_min);
    CHECK(rec.stab_dim_min ==
          rec.n_min * (rec.n_min + 1) + 6 - rec.orbit_dim_min);
  }
}

TEST_CASE("identity self-tests all pass") {
  auto results = identity_selftests();
  CHECK(results.size() >= 15);
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("degeneration families verify through the classifier") {
  auto results = verify_families();
  for (const auto& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("canonical data file is pinned") {
  std::ifstream in(std::string(TEST_SOURCE_DIR) + "/../data/orbitdb.json");
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == orbitdb_canonical_json());
}

TEST_CASE("poset serializations") {
  std::string dot = poset_dot();
  CHECK(dot.find("\"G0\" -> \"G1\"") != std::string::npos);
  CHECK(dot.find("F29") != std::string::npos);
  // 34 complex nodes
  int nodes = 0;
  for (const auto& r : orbit_records())
    if (!label_is_primed(r.label)) ++nodes;
  CHECK(nodes == 34);
  CHECK(orbit_records().size() == 41);
}
