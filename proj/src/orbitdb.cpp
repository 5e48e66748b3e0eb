#include "qo/orbitdb.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qo {

namespace {

using nlohmann::ordered_json;

struct LabelInfo {
  LabelId id;
  const char* name;
  bool primed;
  LabelId unprimed;
};

const LabelInfo kLabels[] = {
    {LabelId::F1, "F1", false, LabelId::F1},
    {LabelId::F2, "F2", false, LabelId::F2},
    {LabelId::F3, "F3", false, LabelId::F3},
    {LabelId::F4, "F4", false, LabelId::F4},
    {LabelId::F5, "F5", false, LabelId::F5},
    {LabelId::F6, "F6", false, LabelId::F6},
    {LabelId::F7, "F7", false, LabelId::F7},
    {LabelId::F8, "F8", false, LabelId::F8},
    {LabelId::F9, "F9", false, LabelId::F9},
    {LabelId::F10, "F10", false, LabelId::F10},
    {LabelId::F11, "F11", false, LabelId::F11},
    {LabelId::F12, "F12", false, LabelId::F12},
    {LabelId::F13, "F13", false, LabelId::F13},
    {LabelId::F14, "F14", false, LabelId::F14},
    {LabelId::F15, "F15", false, LabelId::F15},
    {LabelId::F16, "F16", false, LabelId::F16},
    {LabelId::F17, "F17", false, LabelId::F17},
    {LabelId::F18, "F18", false, LabelId::F18},
    {LabelId::F19, "F19", false, LabelId::F19},
    {LabelId::F20, "F20", false, LabelId::F20},
    {LabelId::F21, "F21", false, LabelId::F21},
    {LabelId::F22, "F22", false, LabelId::F22},
    {LabelId::F23, "F23", false, LabelId::F23},
    {LabelId::F24, "F24", false, LabelId::F24},
    {LabelId::F25, "F25", false, LabelId::F25},
    {LabelId::F26, "F26", false, LabelId::F26},
    {LabelId::F27, "F27", false, LabelId::F27},
    {LabelId::F28, "F28", false, LabelId::F28},
    {LabelId::F29, "F29", false, LabelId::F29},
    {LabelId::F1p, "F1'", true, LabelId::F1},
    {LabelId::F7p, "F7'", true, LabelId::F7},
    {LabelId::F13p, "F13'", true, LabelId::F13},
    {LabelId::F17p, "F17'", true, LabelId::F17},
    {LabelId::F19p, "F19'", true, LabelId::F19},
    {LabelId::F25p, "F25'", true, LabelId::F25},
    {LabelId::G0, "G0", false, LabelId::G0},
    {LabelId::G1, "G1", false, LabelId::G1},
    {LabelId::G2, "G2", false, LabelId::G2},
    {LabelId::G3, "G3", false, LabelId::G3},
    {LabelId::G4, "G4", false, LabelId::G4},
    {LabelId::G3p, "G3'", true, LabelId::G3},
};

const LabelInfo& info(LabelId id) {
  for (const auto& li : kLabels)
    if (li.id == id) return li;
  throw std::logic_error("unknown label id");
}

Rational Q(long n, long d = 1) { return Rational(n, d); }

QuadComponent comp(Rational a, Rational b, Rational c, Rational d, Rational e,
                   Rational g) {
  return QuadComponent{a, b, c, d, e, g};
}

Poly X() { return Poly::variable(VX); }
Poly Y() { return Poly::variable(VY); }
Poly C(long n, long d = 1) { return Poly::constant(Rational(n, d)); }

QuadMap nf(std::vector<Poly> comps) {
  return QuadMap::from_polys(Field::C, comps);
}

}  // namespace

std::string label_name(LabelId id) { return info(id).name; }

std::optional<LabelId> label_from_name(const std::string& s) {
  for (const auto& li : kLabels)
    if (s == li.name) return li.id;
  return std::nullopt;
}

bool label_is_primed(LabelId id) { return info(id).primed; }
LabelId label_unprimed(LabelId id) { return info(id).unprimed; }

std::optional<LabelId> find_label(const std::string& name) {
  return label_from_name(name);
}

namespace {

std::vector<OrbitRecord> build_records() {
  std::vector<OrbitRecord> rs;
  Poly x = X(), y = Y();

  auto add = [&](LabelId id, QuadMap form, int dim_a, int dim_q, MuDescriptor mu,
                 CritDescriptor crit, SIDescriptor si, int dim, int topo_c,
                 int topo_r) {
    OrbitRecord r;
    r.label = id;
    r.normal_form = std::move(form);
    r.n_min = r.normal_form.n;
    r.dim_a = dim_a;
    r.dim_q = dim_q;
    r.mu = mu;
    r.crit = std::move(crit);
    r.si = std::move(si);
    r.orbit_dim_min = dim;
    r.stab_dim_min = r.n_min * (r.n_min + 1) + 6 - dim;
    r.topo_type_complex = topo_c;
    r.topo_type_real = topo_r;
    rs.push_back(std::move(r));
  };

  auto fin = [](long v) { return MuDescriptor{MuClass::Finite, v}; };
  auto inf = [] { return MuDescriptor{MuClass::Infinite, 0}; };
  auto crit_empty = [] { return CritDescriptor{CritKind::Empty, {}, Poly()}; };
  auto crit_plane = [] { return CritDescriptor{CritKind::Plane, {}, Poly()}; };
  auto crit_fin = [](std::vector<int> part) {
    return CritDescriptor{CritKind::Finite, std::move(part), Poly()};
  };
  auto crit_curve = [](Poly p) {
    return CritDescriptor{CritKind::Curve, {}, p.primitive_part()};
  };
  auto si_none = [] { return SIDescriptor{}; };
  auto si_empty = [] {
    SIDescriptor d;
    d.kind = SIDescriptor::Kind::Empty;
    return d;
  };
  auto si_curve = [](Poly elim, std::vector<std::pair<Poly, int>> factors) {
    SIDescriptor d;
    d.kind = SIDescriptor::Kind::Curve;
    d.eliminant = elim.primitive_part();
    for (auto& [f, m] : factors) d.factors.emplace_back(f.primitive_part(), m);
    return d;
  };
  auto si_fold = [](Poly p) {
    SIDescriptor d;
    d.kind = SIDescriptor::Kind::Fold;
    d.eliminant = p.primitive_part();
    return d;
  };

  Poly triangle = x * x * x + y * y * y + C(3) * x * y - C(1);
  Poly conic_pair = x * x - x * y + y * y + x + y + C(1);

  add(LabelId::F1, nf({x * x + y, y * y + x, x * y}), 3, 3, fin(1),
      crit_fin({1, 1, 1}),
      si_curve(triangle, {{x + y - C(1), 1}, {conic_pair, 1}}), 18, 1, 1);
  add(LabelId::F2, nf({x * x + y, y * y + x, x * y + C(1, 2) * x + C(1, 2) * y}),
      3, 3, fin(1), crit_fin({1, 2}),
      si_curve((x - y) * (x - y) * (x + y - C(1)),
               {{x + y - C(1), 1}, {x - y, 2}}),
      17, 2, 3);
  add(LabelId::F3, nf({x * x, y * y + x, x * y}), 3, 3, fin(1), crit_fin({3}),
      si_curve(x * x * x, {{x, 3}}), 16, 3, 4);
  add(LabelId::F4, nf({x * x, y * y, x * y}), 3, 3, fin(2), crit_fin({3}),
      si_none(), 14, 4, 5);
  add(LabelId::F5, nf({x * x, y * y, x + y}), 3, 2, fin(1), crit_fin({1}),
      si_curve(x + y, {{x + y, 1}}), 17, 5, 6);
  add(LabelId::F6, nf({x * x + y, y * y, x}), 3, 2, fin(1), crit_empty(),
      si_empty(), 16, 6, 7);
  add(LabelId::F7, nf({x * x + y, y * y + x, Poly()}), 2, 2, fin(4),
      crit_curve(C(4) * x * y - C(1)), si_none(), 15, 7, 8);
  add(LabelId::F8, nf({x * x, x * y, y}), 3, 2, fin(1), crit_fin({1}),
      si_curve(y, {{y, 1}}), 16, 5, 6);
  add(LabelId::F9, nf({x * x + y, x * y, x}), 3, 2, fin(1), crit_empty(),
      si_empty(), 15, 6, 7);
  add(LabelId::F10, nf({x * x + y, x * y, Poly()}), 2, 2, fin(3),
      crit_curve(C(2) * x * x - y), si_none(), 14, 8, 10);
  add(LabelId::F11, nf({x * x, y * y, y}), 3, 2, fin(2), crit_curve(x),
      si_fold(x), 15, 9, 11);
  add(LabelId::F12, nf({x * x + y, y * y, Poly()}), 2, 2, fin(4),
      crit_curve(x * y), si_none(), 14, 10, 12);
  add(LabelId::F13, nf({x * x, y * y, Poly()}), 2, 2, fin(4),
      crit_curve(x * y), si_none(), 13, 11, 13);
  add(LabelId::F14, nf({x * x, x * y, x}), 3, 2, fin(1), crit_curve(x),
      si_curve(x, {{x, 1}}), 14, 12, 15);
  add(LabelId::F15, nf({x * x - x, x * y, Poly()}), 2, 2, fin(2),
      crit_curve(C(2) * x * x - x), si_none(), 13, 13, 16);
  add(LabelId::F16, nf({x * x, x * y, Poly()}), 2, 2, fin(2),
      crit_curve(x * x), si_none(), 12, 14, 17);
  add(LabelId::F17, nf({x * y, x, y}), 3, 1, fin(1), crit_empty(), si_empty(),
      14, 6, 7);
  add(LabelId::F18, nf({x * x, x, y}), 3, 1, fin(1), crit_empty(), si_empty(),
      13, 6, 7);
  add(LabelId::F19, nf({x * y, x + y, Poly()}), 2, 1, fin(2),
      crit_curve(x - y), si_none(), 13, 9, 11);
  add(LabelId::F20, nf({x, x * y, Poly()}), 2, 1, fin(1), crit_curve(x),
      si_curve(x, {{x, 1}}), 12, 12, 15);
  add(LabelId::F21, nf({x * x, y, Poly()}), 2, 1, fin(2), crit_curve(x),
      si_none(), 12, 9, 11);
  add(LabelId::F22, nf({x * x + y, x, Poly()}), 2, 1, fin(1), crit_empty(),
      si_empty(), 11, 6, 7);
  add(LabelId::F23, nf({x * x, x, Poly()}), 2, 1, inf(), crit_plane(),
      si_none(), 10, 15, 18);
  add(LabelId::F24, nf({x, y, Poly()}), 2, 0, fin(1), crit_empty(), si_empty(),
      9, 6, 7);
  add(LabelId::F25, nf({x * y, Poly(), Poly()}), 1, 1, inf(), crit_plane(),
      si_none(), 10, 16, 19);
  add(LabelId::F26, nf({x * x + y, Poly(), Poly()}), 1, 1, inf(), crit_plane(),
      si_none(), 9, 15, 18);
  add(LabelId::F27, nf({x * x, Poly(), Poly()}), 1, 1, inf(), crit_plane(),
      si_none(), 8, 17, 21);
  add(LabelId::F28, nf({x, Poly(), Poly()}), 1, 0, inf(), crit_plane(),
      si_none(), 7, 15, 18);
  add(LabelId::F29, nf({Poly(), Poly(), Poly()}), 0, 0, inf(), crit_plane(),
      si_none(), 3, 18, 22);

  // real-only representatives of the split pairs
  auto real_nf = [&](std::vector<Poly> comps) {
    return QuadMap::from_polys(Field::R, comps);
  };
  add(LabelId::F1p, real_nf({x * x - y * y + x, C(2) * x * y - y,
                             C(-3) * x * x + y * y}),
      3, 3, fin(1), crit_fin({1, 1, 1}),
      si_curve((x - C(1, 2)) * (x * x - C(1, 3) * y * y),
               {{x - C(1, 2), 1}, {C(3) * x * x - y * y, 1}}),
      18, 0, 2);
  add(LabelId::F7p, real_nf({x * x - y * y + x, C(2) * x * y - y, Poly()}), 2,
      2, fin(4), crit_curve(C(4) * x * x + C(4) * y * y - C(1)), si_none(), 15,
      0, 9);
  add(LabelId::F13p, real_nf({x * x - y * y, x * y, Poly()}), 2, 2, fin(4),
      crit_curve(x * x + y * y), si_none(), 13, 0, 14);
  add(LabelId::F17p, real_nf({x * x + y * y, x, y}), 3, 1, fin(1), crit_empty(),
      si_empty(), 14, 0, 7);
  add(LabelId::F19p, real_nf({x * x + y * y, x, Poly()}), 2, 1, fin(2),
      crit_curve(y), si_none(), 13, 0, 11);
  add(LabelId::F25p, real_nf({x * x + y * y, Poly(), Poly()}), 1, 1, inf(),
      crit_plane(), si_none(), 10, 0, 20);

  add(LabelId::G1, nf({x * x + y, y * y, x * y, x}), 4, 3, fin(1), crit_empty(),
      si_empty(), 24, 6, 7);
  add(LabelId::G2, nf({x * x, y * y, x * y, x}), 4, 3, fin(1), crit_fin({1}),
      si_curve(x, {{x, 1}}), 23, 5, 6);
  add(LabelId::G3, nf({x * x, y * y, x, y}), 4, 2, fin(1), crit_empty(),
      si_empty(), 22, 6, 7);
  add(LabelId::G4, nf({x * x, x * y, x, y}), 4, 2, fin(1), crit_empty(),
      si_empty(), 21, 6, 7);
  add(LabelId::G3p, real_nf({x * x - y * y, x * y, x, y}), 4, 2, fin(1),
      crit_empty(), si_empty(), 22, 0, 7);
  add(LabelId::G0, nf({x * x, x * y, y * y, x, y}), 5, 3, fin(1), crit_empty(),
      si_empty(), 30, 6, 7);

  // attach the real-split tests to the unprimed rows
  auto attach = [&](LabelId base, RealSplit split) {
    for (auto& r : rs)
      if (r.label == base) {
        r.real_split = split;
        return;
      }
    throw std::logic_error("split target missing");
  };
  {
    RealSplit s;
    s.primed = LabelId::F1p;
    s.test = RealSplit::Test::CritCount;
    s.expect_count[0] = 1;
    s.expect_count[1] = 3;
    attach(LabelId::F1, s);
  }
  {
    RealSplit s;
    s.primed = LabelId::F7p;
    s.test = RealSplit::Test::Conic;
    s.expect_conic[0] = ConicType::Hyperbola;
    s.expect_conic[1] = ConicType::Ellipse;
    attach(LabelId::F7, s);
  }
  {
    RealSplit s;
    s.primed = LabelId::F13p;
    s.test = RealSplit::Test::Conic;
    s.expect_conic[0] = ConicType::RealLinePair;
    s.expect_conic[1] = ConicType::ComplexLinePair;
    attach(LabelId::F13, s);
  }
  for (LabelId base : {LabelId::F17, LabelId::F19, LabelId::F25}) {
    RealSplit s;
    s.primed = base == LabelId::F17   ? LabelId::F17p
               : base == LabelId::F19 ? LabelId::F19p
                                      : LabelId::F25p;
    s.test = RealSplit::Test::BinaryForm;
    s.expect_form[0] = BinaryFormType::RealProduct;
    s.expect_form[1] = BinaryFormType::Irreducible;
    attach(base, s);
  }
  {
    RealSplit s;
    s.primed = LabelId::G3p;
    s.test = RealSplit::Test::Pencil;
    s.expect_pencil[0] = PencilSignature::TwoRealDegenerate;
    s.expect_pencil[1] = PencilSignature::NoneRealDegenerate;
    attach(LabelId::G3, s);
  }
  return rs;
}

}  // namespace

const std::vector<OrbitRecord>& orbit_records() {
  static const std::vector<OrbitRecord> records = build_records();
  return records;
}

const OrbitRecord& lookup(LabelId id) {
  for (const auto& r : orbit_records())
    if (r.label == id) return r;
  throw std::domain_error("unknown label");
}

int expected_orbit_dim(LabelId id, int n) {
  const auto& r = lookup(id);
  return r.orbit_dim_min + (n - r.n_min) * (1 + r.dim_a);
}

// ---------------------------------------------------------------------------
// Poset

const std::vector<PosetEdge>& poset_edges() {
  using L = LabelId;
  static const std::vector<PosetEdge> edges = {
      // column chains of the orbit diagram
      {L::G0, L::G1}, {L::G1, L::G2}, {L::G2, L::F1}, {L::F1, L::F2},
      {L::F2, L::F3}, {L::F3, L::F4},
      {L::G3, L::F5}, {L::F5, L::F6}, {L::F6, L::F11}, {L::F11, L::F14},
      {L::F14, L::F18}, {L::F18, L::F23},
      {L::G4, L::F8}, {L::F8, L::F9}, {L::F9, L::F17}, {L::F17, L::F19},
      {L::F19, L::F20}, {L::F20, L::F25}, {L::F25, L::F26}, {L::F26, L::F27},
      {L::F7, L::F10}, {L::F10, L::F15}, {L::F15, L::F16},
      {L::F28, L::F29},
      {L::F12, L::F13}, {L::F13, L::F21}, {L::F21, L::F22}, {L::F22, L::F24},
      // cross edges
      {L::G2, L::G3}, {L::G3, L::G4},
      {L::F1, L::F5}, {L::F2, L::F6}, {L::F2, L::F8},
      {L::F3, L::F9}, {L::F3, L::F7}, {L::F3, L::F14},
      {L::F4, L::F18}, {L::F4, L::F13}, {L::F4, L::F25},
      {L::F5, L::F8}, {L::F6, L::F9}, {L::F6, L::F7},
      {L::F11, L::F12}, {L::F14, L::F15}, {L::F18, L::F21}, {L::F23, L::F27},
      {L::F9, L::F14}, {L::F9, L::F10}, {L::F17, L::F18}, {L::F19, L::F21},
      {L::F20, L::F23}, {L::F27, L::F28},
      {L::F7, L::F12}, {L::F10, L::F19}, {L::F15, L::F20},
      {L::F16, L::F25}, {L::F16, L::F23},
      {L::F12, L::F15}, {L::F12, L::F19}, {L::F13, L::F16},
      {L::F22, L::F23}, {L::F22, L::F26}, {L::F24, L::F28},
  };
  return edges;
}

bool is_in_closure(LabelId upper, LabelId lower) {
  if (label_is_primed(upper) || label_is_primed(lower))
    throw std::domain_error("is_in_closure takes complex labels");
  if (upper == lower) return true;
  std::set<LabelId> seen{upper};
  std::vector<LabelId> work{upper};
  while (!work.empty()) {
    LabelId cur = work.back();
    work.pop_back();
    for (const auto& e : poset_edges()) {
      if (!(e.upper == cur) || seen.count(e.lower)) continue;
      if (e.lower == lower) return true;
      seen.insert(e.lower);
      work.push_back(e.lower);
    }
  }
  return false;
}

std::string poset_dot() {
  std::ostringstream os;
  os << "digraph orbits {\n  rankdir=TB;\n";
  for (const auto& r : orbit_records()) {
    if (label_is_primed(r.label)) continue;
    os << "  \"" << label_name(r.label) << "\" [label=\"" << label_name(r.label)
       << "\\ndim " << r.orbit_dim_min << "\"];\n";
  }
  for (const auto& e : poset_edges())
    os << "  \"" << label_name(e.upper) << "\" -> \"" << label_name(e.lower)
       << "\";\n";
  os << "}\n";
  return os.str();
}

std::string poset_json() {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (const auto& r : orbit_records()) {
    if (label_is_primed(r.label)) continue;
    ordered_json node;
    node["label"] = label_name(r.label);
    node["orbit_dim"] = r.orbit_dim_min;
    node["ambient"] = r.n_min;
    j["nodes"].push_back(node);
  }
  j["edges"] = ordered_json::array();
  for (const auto& e : poset_edges())
    j["edges"].push_back({label_name(e.upper), label_name(e.lower)});
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Degeneration families

const std::vector<DegenerationFamily>& degeneration_families() {
  static const std::vector<DegenerationFamily> families = [] {
    std::vector<DegenerationFamily> fs;
    Poly x = X(), y = Y();
    auto P = [](const Rational& r) { return Poly::constant(r); };
    auto add = [&](const char* name, LabelId up, LabelId low,
                   std::function<QuadMap(const Rational&)> at) {
      fs.push_back(DegenerationFamily{name, up, low, std::move(at)});
    };
    using L = LabelId;

    add("G2->G3", L::G2, L::G3, [=](const Rational& t) {
      return nf({x * x, y * y, P(t) * x * y + y, x});
    });
    add("G3->G4", L::G3, L::G4, [=](const Rational& t) {
      return nf({x * x - P(t) * y * y, x * y, x, y});
    });
    // rational reparametrization of the F2 degeneration onto (x^2+y,y^2+x,x):
    // third component s^2(xy + a x + b y) with (a,b) on the discriminant
    // curve through the double-root parametrization at alpha = 2/t
    add("F2->F6", L::F2, L::F6, [=](const Rational& t) {
      Rational s = t / 2;
      Rational s3 = s * s * s;
      Rational ca = -(Rational(1) + Rational(2) * s3) / 2;
      Rational cb = -(Rational(2) * s + s3 * s) / 2;
      return nf({x * x + y, y * y + x, P(s * s) * x * y + P(ca) * x + P(cb) * y});
    });
    add("F2->F8", L::F2, L::F8, [=](const Rational& t) {
      return nf({x * x, P(t) * y * y + P(t) * x + y, x * y});
    });
    add("F5->F8", L::F5, L::F8, [=](const Rational& t) {
      return nf({x * x, P(t) * y * y + x * y, y});
    });
    add("F3->F9", L::F3, L::F9, [=](const Rational& t) {
      return nf({x * x + y - P(t * t * 3) * y * y, P(t * t * t) * y * y + x,
                 C(2) * x * y + P(t * 3) * y * y});
    });
    // the two linear coefficients must carry minus signs (the same map in
    // the triple-point characterization); with plus signs the slice
    // parameters (3/2, 3/2) miss the discriminant curve and the family stays
    // in the dense orbit
    add("F3->F7", L::F3, L::F7, [=](const Rational& t) {
      return nf({x * x + y, y * y + x,
                 P(t) * x * y - P(t * Rational(3, 2)) * x -
                     P(t * Rational(3, 2)) * y});
    });
    add("F6->F9", L::F6, L::F9, [=](const Rational& t) {
      return nf({x * x + y, P(t) * y * y + x * y, x});
    });
    add("F9->F14", L::F9, L::F14, [=](const Rational& t) {
      return nf({x * x + P(t) * y, x * y, x});
    });
    add("F9->F17", L::F9, L::F17, [=](const Rational& t) {
      return nf({P(t) * x * x + y, x * y, x});
    });
    add("F11->F14", L::F11, L::F14, [=](const Rational& t) {
      return nf({x * x, P(t) * y * y + x * y, x});
    });
    add("F4->F18", L::F4, L::F18, [=](const Rational& t) {
      return nf({x * x, P(t / 2) * y * y + y, P(t) * x * y + x});
    });
    add("F14->F18", L::F14, L::F18, [=](const Rational& t) {
      return nf({x * x, P(t) * x * y + y, x});
    });
    // the three-orbit chain inside the slice (x^2+y, y^2+x, xy+ax+by)
    add("F1->F2", L::F1, L::F2, [=](const Rational& t) {
      return nf({x * x + y, y * y + x,
                 x * y + P(Rational(1, 2) + t) * x + C(1, 2) * y});
    });
    add("F2->F3", L::F2, L::F3, [=](const Rational& t) {
      Rational al = Rational(1) + t;
      Rational a = -(al * al * al + 2) / (2 * al);
      Rational b = -(Rational(2) * al * al * al + 1) / (2 * al * al);
      return nf({x * x + y, y * y + x, x * y + P(a) * x + P(b) * y});
    });
    return fs;
  }();
  return families;
}

// ---------------------------------------------------------------------------
// Plane-pair table (targets of dimension one and two reduce to these)

const std::vector<PairRow>& pair_table() {
  static const std::vector<PairRow> rows = [] {
    std::vector<PairRow> out;
    Poly x = X(), y = Y();
    auto pair = [&](std::vector<Poly> comps, LabelId id) {
      out.push_back(PairRow{QuadMap::from_polys(Field::C, comps), id});
    };
    pair({x * x + y, y * y + x}, LabelId::F7);
    pair({x * x + y, x * y}, LabelId::F10);
    pair({x * x + y, y * y}, LabelId::F12);
    pair({x * x, y * y}, LabelId::F13);
    pair({x * x - x, x * y}, LabelId::F15);
    pair({x * x, x * y}, LabelId::F16);
    pair({x * y, x + y}, LabelId::F19);
    pair({x, x * y}, LabelId::F20);
    pair({x * x, y}, LabelId::F21);
    pair({x * x + y, x}, LabelId::F22);
    pair({x * x, x}, LabelId::F23);
    pair({x, y}, LabelId::F24);
    pair({x * y, Poly()}, LabelId::F25);
    pair({x * x + y, Poly()}, LabelId::F26);
    pair({x * x, Poly()}, LabelId::F27);
    pair({x, Poly()}, LabelId::F28);
    pair({Poly(), Poly()}, LabelId::F29);
    return out;
  }();
  return rows;
}

// ---------------------------------------------------------------------------
// Canonical serialization

namespace {

ordered_json map_json(const QuadMap& m) {
  ordered_json j;
  j["field"] = m.field == Field::C ? "C" : "R";
  j["n"] = m.n;
  j["components"] = ordered_json::array();
  for (const auto& c : m.comps) {
    ordered_json row = ordered_json::array();
    for (const Rational* r : {&c.a, &c.b, &c.c, &c.d, &c.e, &c.g})
      row.push_back(r->str());
    j["components"].push_back(row);
  }
  return j;
}

}  // namespace

std::string orbitdb_canonical_json() {
  ordered_json j;
  j["format"] = "quadorbits-orbitdb";
  j["version"] = 1;
  j["records"] = ordered_json::array();
  for (const auto& r : orbit_records()) {
    ordered_json rec;
    rec["label"] = label_name(r.label);
    rec["normal_form"] = map_json(r.normal_form);
    rec["n_min"] = r.n_min;
    rec["dim_a"] = r.dim_a;
    rec["dim_q"] = r.dim_q;
    rec["mu"] = r.mu.cls == MuClass::Finite ? ordered_json(r.mu.value)
                                            : ordered_json("infinite");
    switch (r.crit.kind) {
      case CritKind::Empty: rec["critical"] = "empty"; break;
      case CritKind::Plane: rec["critical"] = "plane"; break;
      case CritKind::Finite: {
        ordered_json c;
        c["kind"] = "finite";
        c["partition"] = r.crit.partition;
        rec["critical"] = c;
        break;
      }
      case CritKind::Curve: {
        ordered_json c;
        c["kind"] = "curve";
        c["poly"] = r.crit.curve.str();
        rec["critical"] = c;
        break;
      }
    }
    switch (r.si.kind) {
      case SIDescriptor::Kind::None: rec["si"] = nullptr; break;
      case SIDescriptor::Kind::Empty: rec["si"] = "empty"; break;
      case SIDescriptor::Kind::Curve:
      case SIDescriptor::Kind::Fold: {
        ordered_json s;
        s["kind"] = r.si.kind == SIDescriptor::Kind::Curve ? "curve" : "fold";
        s["eliminant"] = r.si.eliminant.str();
        if (!r.si.factors.empty()) {
          s["factors"] = ordered_json::array();
          for (const auto& [f, m] : r.si.factors)
            s["factors"].push_back({f.str(), m});
        }
        rec["si"] = s;
        break;
      }
    }
    rec["orbit_dim"] = r.orbit_dim_min;
    rec["stab_dim"] = r.stab_dim_min;
    if (r.topo_type_complex) rec["topological_type_complex"] = r.topo_type_complex;
    rec["topological_type_real"] = r.topo_type_real;
    if (r.real_split)
      rec["real_split_partner"] = label_name(r.real_split->primed);
    j["records"].push_back(rec);
  }
  j["poset"] = ordered_json::parse(poset_json());
  j["families"] = ordered_json::array();
  for (const auto& f : degeneration_families()) {
    ordered_json fam;
    fam["name"] = f.name;
    fam["upper"] = label_name(f.upper);
    fam["lower"] = label_name(f.lower);
    fam["at_1"] = map_json(f.at(Rational(1)));
    fam["at_0"] = map_json(f.at(Rational(0)));
    j["families"].push_back(fam);
  }
  j["pair_table"] = ordered_json::array();
  for (const auto& p : pair_table()) {
    ordered_json row;
    row["pair"] = map_json(p.pair_form);
    row["class"] = label_name(p.embeds_as);
    j["pair_table"].push_back(row);
  }
  return j.dump(2) + "\n";
}

}  // namespace qo
